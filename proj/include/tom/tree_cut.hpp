#ifndef TOM_TREE_CUT_HPP
#define TOM_TREE_CUT_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tom/errors.hpp"
#include "tom/linkage.hpp"

namespace tom {

/// Document labels produced by a tree cut. Unassigned leaves fell into no
/// qualifying branch; excluded documents never entered the clustering
/// (zero overlays / zero tf-idf vectors).
struct ClusterAssignment {
    static constexpr int kUnassigned = -1;
    static constexpr int kExcluded = -2;

    std::vector<std::string> doc_ids;
    std::vector<int> labels; // aligned with doc_ids
    int cluster_count = 0;
    std::vector<int> cluster_sizes;
    std::string method_tag; // "tom" or "vsm"
    bool all_unassigned_warning = false;

    int label_of(const std::string& id) const {
        for (size_t i = 0; i < doc_ids.size(); ++i)
            if (doc_ids[i] == id) return labels[i];
        throw DataError("unknown document id: " + id);
    }

    size_t assigned_count() const {
        size_t c = 0;
        for (int l : labels)
            if (l >= 0) ++c;
        return c;
    }
};

namespace detail {

// Shape-adaptive branch detection. Merges within `tau` of a branch top
// collapse into one multiway split; a child branch separated by a height
// gap exceeding tau is a split candidate. Candidates of qualifying size
// recurse; when no child qualifies, the branch itself is the cluster.
class TreeCutter {
public:
    TreeCutter(const Dendrogram& dendro, int min_cluster_size, double tau)
        : dendro_(dendro), min_size_(min_cluster_size), tau_(tau) {
        n_ = dendro.leaf_count();
        size_t total = n_ + dendro.merges.size();
        height_.assign(total, 0.0);
        leaves_.assign(total, 1);
        for (size_t m = 0; m < dendro_.merges.size(); ++m) {
            const DendrogramMerge& merge = dendro_.merges[m];
            size_t id = n_ + m;
            height_[id] = merge.height;
            leaves_[id] = leaves_[static_cast<size_t>(merge.left)] +
                          leaves_[static_cast<size_t>(merge.right)];
        }
        labels_.assign(n_, ClusterAssignment::kUnassigned);
    }

    std::vector<int> run() {
        if (dendro_.merges.empty()) {
            if (min_size_ <= 1 && n_ == 1) labels_[0] = next_cluster_++;
            return labels_;
        }
        assign(static_cast<int>(n_ + dendro_.merges.size() - 1));
        return labels_;
    }

private:
    const Dendrogram& dendro_;
    int min_size_;
    double tau_;
    size_t n_ = 0;
    std::vector<double> height_;
    std::vector<int> leaves_;
    std::vector<int> labels_;
    int next_cluster_ = 0;

    bool is_leaf(int node) const { return static_cast<size_t>(node) < n_; }

    const DendrogramMerge& merge_of(int node) const {
        return dendro_.merges[static_cast<size_t>(node) - n_];
    }

    // children of the multiway split formed by all merges within tau of `top`
    void flatten(int node, double top_height, std::vector<int>& out) const {
        for (int child : {merge_of(node).left, merge_of(node).right}) {
            if (!is_leaf(child) &&
                top_height - height_[static_cast<size_t>(child)] <= tau_) {
                flatten(child, top_height, out);
            } else {
                out.push_back(child);
            }
        }
    }

    void mark_cluster(int node, int cluster) {
        if (is_leaf(node)) {
            labels_[static_cast<size_t>(node)] = cluster;
            return;
        }
        mark_cluster(merge_of(node).left, cluster);
        mark_cluster(merge_of(node).right, cluster);
    }

    void assign(int node) {
        if (is_leaf(node)) {
            if (min_size_ <= 1) labels_[static_cast<size_t>(node)] = next_cluster_++;
            return;
        }
        std::vector<int> children;
        flatten(node, height_[static_cast<size_t>(node)], children);

        std::vector<int> qualifying;
        for (int child : children)
            if (leaves_[static_cast<size_t>(child)] >= min_size_) qualifying.push_back(child);

        if (qualifying.empty()) {
            if (leaves_[static_cast<size_t>(node)] >= min_size_)
                mark_cluster(node, next_cluster_++);
            return; // too small: leaves stay unassigned
        }
        for (int child : qualifying) assign(child);
    }
};

} // namespace detail

/// Adaptive tree cut (dynamic-hybrid style): extracts clusters from branch
/// shape instead of a fixed cut height. deep_split in {0..3} raises the
/// split sensitivity; min_cluster_size bounds qualifying branches. Leaves
/// in no qualifying branch are unassigned.
inline ClusterAssignment dynamic_tree_cut(const Dendrogram& dendrogram,
                                          int min_cluster_size = 5, int deep_split = 1) {
    if (deep_split < 0 || deep_split > 3)
        throw ConfigError("deep_split must lie in {0, 1, 2, 3}");
    if (min_cluster_size < 1) throw ConfigError("min_cluster_size must be >= 1");

    size_t n = dendrogram.leaf_count();
    ClusterAssignment out;
    out.doc_ids = dendrogram.leaf_ids;
    out.labels.assign(n, ClusterAssignment::kUnassigned);

    if (static_cast<size_t>(min_cluster_size) > n) {
        out.all_unassigned_warning = true;
        return out;
    }

    double root_height =
        dendrogram.merges.empty() ? 0.0 : dendrogram.merges.back().height;
    double tau_fraction = 0.40 - 0.10 * static_cast<double>(deep_split);
    double tau = tau_fraction * root_height;

    detail::TreeCutter cutter(dendrogram, min_cluster_size, tau);
    std::vector<int> raw = cutter.run();

    // renumber clusters by their smallest leaf index
    std::map<int, int> order;
    for (size_t i = 0; i < n; ++i)
        if (raw[i] >= 0 && !order.count(raw[i])) order[raw[i]] = static_cast<int>(order.size());
    for (size_t i = 0; i < n; ++i)
        out.labels[i] = raw[i] >= 0 ? order[raw[i]] : ClusterAssignment::kUnassigned;
    out.cluster_count = static_cast<int>(order.size());
    out.cluster_sizes.assign(static_cast<size_t>(out.cluster_count), 0);
    for (int l : out.labels)
        if (l >= 0) ++out.cluster_sizes[static_cast<size_t>(l)];
    if (out.cluster_count == 0) out.all_unassigned_warning = true;
    return out;
}

} // namespace tom

#endif
