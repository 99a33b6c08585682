#ifndef TOM_DOC_CLUSTERING_HPP
#define TOM_DOC_CLUSTERING_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "tom/basemap.hpp"
#include "tom/errors.hpp"
#include "tom/linkage.hpp"
#include "tom/matrix.hpp"
#include "tom/overlay.hpp"
#include "tom/parallel.hpp"
#include "tom/tree_cut.hpp"

namespace tom {

/// Pairwise PWCS similarity matrix; the diagonal is exactly 1.
inline std::vector<std::vector<double>> pairwise_pwcs_matrix(
    const std::vector<Overlay>& overlays, const std::vector<std::vector<double>>& S,
    int threads = 1) {
    size_t n = overlays.size();
    for (const Overlay& o : overlays)
        if (o.zero()) throw DataError("zero overlay in pairwise PWCS input");
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    detail::parallel_for(n, threads, [&](size_t x) {
        m[x][x] = 1.0;
        for (size_t y = x + 1; y < n; ++y) m[x][y] = pwcs(overlays[x], overlays[y], S);
    });
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < x; ++y) m[x][y] = m[y][x];
    return m;
}

/// 1 - similarity, clamped to [0, 1], zero diagonal.
inline std::vector<std::vector<double>> similarity_to_dissimilarity(
    const std::vector<std::vector<double>>& similarity) {
    size_t n = similarity.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            d[i][j] = i == j ? 0.0 : std::clamp(1.0 - similarity[i][j], 0.0, 1.0);
    return d;
}

struct TfidfVectors {
    std::vector<std::vector<std::pair<int, double>>> docs; // per doc: (term, weight)
    std::vector<int> zero_docs; // documents with no weighted terms, flagged
};

/// tf-idf document vectors: weight(t, d) = count(t, d) * ln(N / df_t).
inline TfidfVectors vsm_tfidf(const TermDocMatrix& matrix) {
    if (matrix.doc_count() == 0 || matrix.term_count() == 0)
        throw DataError("vsm_tfidf on an empty matrix");
    double n_docs = static_cast<double>(matrix.doc_count());
    TfidfVectors out;
    out.docs.assign(matrix.doc_count(), {});
    for (size_t t = 0; t < matrix.counts.size(); ++t) {
        double idf = std::log(n_docs / static_cast<double>(matrix.df[t]));
        if (idf == 0.0) continue;
        for (auto [d, c] : matrix.counts[t])
            out.docs[static_cast<size_t>(d)].emplace_back(static_cast<int>(t),
                                                          static_cast<double>(c) * idf);
    }
    for (size_t d = 0; d < out.docs.size(); ++d)
        if (out.docs[d].empty()) out.zero_docs.push_back(static_cast<int>(d));
    return out;
}

namespace detail {

inline double sparse_cosine(const std::vector<std::pair<int, double>>& a,
                            const std::vector<std::pair<int, double>>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (auto [t, w] : a) na += w * w;
    for (auto [t, w] : b) nb += w * w;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) ++i;
        else if (a[i].first > b[j].first) ++j;
        else dot += a[i].second * b[j].second, ++i, ++j;
    }
    if (na <= 0.0 || nb <= 0.0) throw DataError("cosine undefined for a zero vector");
    return dot / std::sqrt(na * nb);
}

} // namespace detail

/// One clustering run: the dendrogram over included documents and labels
/// for every corpus document (excluded ones marked kExcluded).
struct DocClusteringResult {
    Dendrogram dendrogram;
    ClusterAssignment assignment;
    std::vector<std::string> excluded_docs;
};

namespace detail {

inline ClusterAssignment scatter_assignment(const std::vector<std::string>& all_docs,
                                            const ClusterAssignment& sub,
                                            const std::string& method_tag) {
    std::unordered_map<std::string, int> sub_label;
    for (size_t i = 0; i < sub.doc_ids.size(); ++i) sub_label[sub.doc_ids[i]] = sub.labels[i];
    ClusterAssignment out;
    out.doc_ids = all_docs;
    out.labels.assign(all_docs.size(), ClusterAssignment::kExcluded);
    for (size_t i = 0; i < all_docs.size(); ++i) {
        auto it = sub_label.find(all_docs[i]);
        if (it != sub_label.end()) out.labels[i] = it->second;
    }
    out.cluster_count = sub.cluster_count;
    out.cluster_sizes = sub.cluster_sizes;
    out.method_tag = method_tag;
    out.all_unassigned_warning = sub.all_unassigned_warning;
    return out;
}

} // namespace detail

/// TOM document clustering from per-document overlays (aligned with
/// doc_ids): pairwise PWCS -> average linkage -> dynamic tree cut.
/// Documents with all-zero overlays are excluded and reported separately.
inline DocClusteringResult cluster_overlays(const std::vector<std::string>& doc_ids,
                                            const std::vector<Overlay>& doc_overlays,
                                            const std::vector<std::vector<double>>& S,
                                            int min_cluster_size = 5, int deep_split = 1,
                                            int threads = 1) {
    if (doc_ids.size() != doc_overlays.size())
        throw ShapeError("overlay list does not match document ids");
    std::vector<Overlay> overlays;
    std::vector<std::string> included;
    DocClusteringResult result;
    for (size_t i = 0; i < doc_ids.size(); ++i) {
        if (doc_overlays[i].zero()) {
            result.excluded_docs.push_back(doc_ids[i]);
        } else {
            overlays.push_back(doc_overlays[i]);
            included.push_back(doc_ids[i]);
        }
    }
    if (included.size() < 2)
        throw DataError("fewer than 2 documents with non-zero overlays");

    auto similarity = pairwise_pwcs_matrix(overlays, S, threads);
    result.dendrogram = average_linkage(similarity_to_dissimilarity(similarity), included);
    ClusterAssignment sub = dynamic_tree_cut(result.dendrogram, min_cluster_size, deep_split);
    result.assignment = detail::scatter_assignment(doc_ids, sub, "tom");
    return result;
}

inline DocClusteringResult tom_cluster(const TermDocMatrix& matrix,
                                       const TopicPartition& partition,
                                       const Basemap& basemap, int min_cluster_size = 5,
                                       int deep_split = 1, int threads = 1) {
    std::vector<Overlay> overlays;
    overlays.reserve(matrix.docs.size());
    for (const std::string& id : matrix.docs)
        overlays.push_back(compute_overlay({id}, matrix, partition));
    return cluster_overlays(matrix.docs, overlays, basemap.S, min_cluster_size, deep_split,
                            threads);
}

/// VSM baseline: tf-idf vectors -> plain cosine -> the same linkage and
/// tree-cut path as the TOM clustering.
inline DocClusteringResult vsm_cluster(const TermDocMatrix& matrix, int min_cluster_size = 5,
                                       int deep_split = 1, int threads = 1) {
    TfidfVectors tfidf = vsm_tfidf(matrix);

    std::vector<int> doc_of; // included doc indices
    std::vector<std::string> included;
    DocClusteringResult result;
    for (size_t d = 0; d < matrix.docs.size(); ++d) {
        if (tfidf.docs[d].empty()) {
            result.excluded_docs.push_back(matrix.docs[d]);
        } else {
            doc_of.push_back(static_cast<int>(d));
            included.push_back(matrix.docs[d]);
        }
    }
    if (included.size() < 2)
        throw DataError("fewer than 2 documents with non-zero tf-idf vectors");

    size_t n = included.size();
    std::vector<std::vector<double>> similarity(n, std::vector<double>(n, 0.0));
    detail::parallel_for(n, threads, [&](size_t i) {
        similarity[i][i] = 1.0;
        const auto& vi = tfidf.docs[static_cast<size_t>(doc_of[i])];
        for (size_t j = i + 1; j < n; ++j)
            similarity[i][j] =
                detail::sparse_cosine(vi, tfidf.docs[static_cast<size_t>(doc_of[j])]);
    });
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j) similarity[i][j] = similarity[j][i];

    result.dendrogram = average_linkage(similarity_to_dissimilarity(similarity), included);
    ClusterAssignment sub = dynamic_tree_cut(result.dendrogram, min_cluster_size, deep_split);
    result.assignment = detail::scatter_assignment(matrix.docs, sub, "vsm");
    return result;
}

} // namespace tom

#endif
