#ifndef TOM_OVERLAY_HPP
#define TOM_OVERLAY_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tom/community.hpp"
#include "tom/errors.hpp"
#include "tom/matrix.hpp"

namespace tom {

/// Distribution of a document set's descriptors over topics. p sums to 1,
/// or is the all-zero vector when no descriptor maps to any topic.
struct Overlay {
    std::vector<double> p;
    std::vector<std::string> doc_ids;

    size_t k() const { return p.size(); }
    bool zero() const {
        for (double v : p)
            if (v != 0.0) return false;
        return true;
    }
    std::vector<int> support() const {
        std::vector<int> s;
        for (size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0.0) s.push_back(static_cast<int>(i));
        return s;
    }
};

/// Overlay of a document set: p_i is the share of the set's in-vocabulary
/// descriptor occurrences assigned to topic i.
inline Overlay compute_overlay(const std::vector<std::string>& doc_ids,
                               const TermDocMatrix& matrix,
                               const TopicPartition& partition) {
    if (doc_ids.empty()) throw ConfigError("compute_overlay requires a non-empty doc set");
    if (partition.assignment.size() != matrix.terms.size())
        throw ShapeError("partition does not match the matrix vocabulary");

    std::unordered_map<std::string, int> doc_index;
    for (size_t d = 0; d < matrix.docs.size(); ++d)
        doc_index[matrix.docs[d]] = static_cast<int>(d);

    std::set<int> selected;
    for (const std::string& id : doc_ids) {
        auto it = doc_index.find(id);
        if (it == doc_index.end()) throw DataError("unknown document id: " + id);
        selected.insert(it->second);
    }

    Overlay overlay;
    overlay.doc_ids.assign(doc_ids.begin(), doc_ids.end());
    overlay.p.assign(static_cast<size_t>(partition.k), 0.0);

    double total = 0.0;
    for (size_t t = 0; t < matrix.counts.size(); ++t) {
        int topic = partition.assignment[t];
        for (auto [d, c] : matrix.counts[t]) {
            if (!selected.count(d)) continue;
            overlay.p[static_cast<size_t>(topic)] += static_cast<double>(c);
            total += static_cast<double>(c);
        }
    }
    if (total > 0.0)
        for (double& v : overlay.p) v /= total;
    return overlay;
}

/// Rao-Stirling diversity D = sum over i != j of d_ij * p_i * p_j.
inline double stirling_diversity(const Overlay& overlay,
                                 const std::vector<std::vector<double>>& d) {
    size_t k = overlay.k();
    if (d.size() != k) throw ShapeError("overlay and distance matrix dimensions differ");
    double sum = 0.0;
    for (size_t i = 0; i < k; ++i) {
        if (d[i].size() != k) throw ShapeError("distance matrix is not square");
        for (size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            sum += d[i][j] * overlay.p[i] * overlay.p[j];
        }
    }
    return sum;
}

namespace detail {

inline double phi_form(const std::vector<double>& a, const std::vector<double>& b,
                       const std::vector<std::vector<double>>& S) {
    double sum = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (size_t j = 0; j < b.size(); ++j) sum += S[i][j] * a[i] * b[j];
    }
    return sum;
}

} // namespace detail

/// Proximity-weighted cosine similarity
/// phi(X, Y) = Phi_XY / sqrt(Phi_XX * Phi_YY), with
/// Phi_AB = sum over all index pairs (i, j), diagonal included, of
/// S_ij * p_A(i) * p_B(j).
inline double pwcs(const Overlay& x, const Overlay& y,
                   const std::vector<std::vector<double>>& S) {
    size_t k = x.k();
    if (y.k() != k || S.size() != k)
        throw ShapeError("pwcs inputs must share one dimension");
    for (const auto& row : S)
        if (row.size() != k) throw ShapeError("proximity matrix is not square");
    if (x.zero() || y.zero())
        throw DataError("pwcs is undefined for an all-zero overlay");

    double xy = detail::phi_form(x.p, y.p, S);
    double xx = detail::phi_form(x.p, x.p, S);
    double yy = detail::phi_form(y.p, y.p, S);
    if (xx <= 0.0 || yy <= 0.0)
        throw DataError("degenerate proximity: non-positive self-similarity");
    return xy / std::sqrt(xx * yy);
}

} // namespace tom

#endif
