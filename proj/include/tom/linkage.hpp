#ifndef TOM_LINKAGE_HPP
#define TOM_LINKAGE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "tom/errors.hpp"

namespace tom {

/// One agglomeration step. Node ids follow the usual convention: ids
/// 0..n-1 are leaves, id n+i is the cluster created by merge i.
struct DendrogramMerge {
    int left = 0;  // side containing the smaller minimum leaf id
    int right = 0;
    double height = 0.0;
};

struct Dendrogram {
    std::vector<std::string> leaf_ids;
    std::vector<DendrogramMerge> merges; // length n-1, heights non-decreasing

    size_t leaf_count() const { return leaf_ids.size(); }
};

/// UPGMA: repeatedly merges the pair of clusters with minimal average
/// inter-cluster dissimilarity; the merge height is that average. Ties are
/// broken in favor of the pair with the smallest minimum leaf ids.
inline Dendrogram average_linkage(const std::vector<std::vector<double>>& dissimilarity,
                                  const std::vector<std::string>& leaf_ids) {
    size_t n = dissimilarity.size();
    if (n < 2) throw DataError("average_linkage requires at least 2 items");
    if (leaf_ids.size() != n) throw ShapeError("leaf id list does not match the matrix");
    for (size_t i = 0; i < n; ++i) {
        if (dissimilarity[i].size() != n) throw ShapeError("dissimilarity matrix not square");
        if (dissimilarity[i][i] != 0.0)
            throw ShapeError("dissimilarity diagonal must be zero");
        for (size_t j = 0; j < n; ++j) {
            double v = dissimilarity[i][j];
            if (v < 0.0 || std::abs(v - dissimilarity[j][i]) > 1e-12)
                throw ShapeError("dissimilarity matrix must be symmetric and non-negative");
        }
    }

    // cross-cluster leaf-pair sums; the average for (a, b) is
    // sums[a][b] / (size[a] * size[b])
    std::vector<std::vector<double>> sums = dissimilarity;
    std::vector<long long> size(n, 1);
    std::vector<int> node_id(n);
    std::vector<bool> alive(n, true);
    for (size_t i = 0; i < n; ++i) node_id[i] = static_cast<int>(i);

    Dendrogram dendro;
    dendro.leaf_ids = leaf_ids;
    dendro.merges.reserve(n - 1);

    for (size_t step = 0; step + 1 < n; ++step) {
        size_t best_a = n, best_b = n;
        double best_avg = 0.0;
        for (size_t a = 0; a < n; ++a) {
            if (!alive[a]) continue;
            for (size_t b = a + 1; b < n; ++b) {
                if (!alive[b]) continue;
                double avg = sums[a][b] /
                             (static_cast<double>(size[a]) * static_cast<double>(size[b]));
                if (best_a == n || avg < best_avg) {
                    best_avg = avg;
                    best_a = a;
                    best_b = b;
                }
            }
        }

        dendro.merges.push_back(
            DendrogramMerge{node_id[best_a], node_id[best_b], best_avg});

        // slot best_a (the smaller minimum leaf id) absorbs best_b
        for (size_t k = 0; k < n; ++k) {
            if (!alive[k] || k == best_a || k == best_b) continue;
            double merged = sums[best_a][k] + sums[best_b][k];
            sums[best_a][k] = merged;
            sums[k][best_a] = merged;
        }
        size[best_a] += size[best_b];
        node_id[best_a] = static_cast<int>(n + step);
        alive[best_b] = false;
    }
    return dendro;
}

} // namespace tom

#endif
