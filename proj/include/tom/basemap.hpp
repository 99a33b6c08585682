#ifndef TOM_BASEMAP_HPP
#define TOM_BASEMAP_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "tom/community.hpp"
#include "tom/errors.hpp"
#include "tom/graph.hpp"

namespace tom {

struct BasemapTopic {
    int id = 0;
    std::string label;                    // top display term
    std::vector<std::string> label_terms; // top-m display terms
    int size = 0;                         // member term count
    bool residual = false;
};

/// Topic-level proximity network. S is the overlap matrix normalized by
/// its global maximum, with unit diagonal; d = 1 - S elementwise.
struct Basemap {
    std::vector<BasemapTopic> topics;
    std::vector<std::vector<double>> overlap;
    std::vector<std::vector<double>> S;
    std::vector<std::vector<double>> d;
    std::vector<std::pair<double, double>> layout; // unit square, empty until laid out
    double link_threshold = 0.1; // display-only; never affects the matrices

    size_t k() const { return topics.size(); }
    bool has_layout() const { return layout.size() == topics.size(); }
};

/// Cross-pair edge density between two topics: the sum of cross-edge
/// weights over |A| * |B|, absent edges contributing zero.
inline double topic_overlap(const TermGraph& graph, const TopicPartition& partition,
                            int topic_a, int topic_b) {
    if (topic_a == topic_b) throw ConfigError("topic_overlap requires two distinct topics");
    long long size_a = 0, size_b = 0;
    for (int t : partition.assignment) {
        if (t == topic_a) ++size_a;
        if (t == topic_b) ++size_b;
    }
    if (size_a == 0 || size_b == 0) throw DataError("topic_overlap on an empty topic");
    double sum = 0.0;
    for (const GraphEdge& e : graph.edges) {
        int tu = partition.assignment[static_cast<size_t>(e.u)];
        int tv = partition.assignment[static_cast<size_t>(e.v)];
        if ((tu == topic_a && tv == topic_b) || (tu == topic_b && tv == topic_a)) sum += e.w;
    }
    return sum / (static_cast<double>(size_a) * static_cast<double>(size_b));
}

inline Basemap build_basemap(const TermGraph& graph, const TopicPartition& partition,
                             double link_threshold = 0.1) {
    size_t k = static_cast<size_t>(partition.k);
    if (k < 2) throw DataError("degenerate basemap: fewer than 2 topics");
    if (partition.assignment.size() != graph.nodes.size())
        throw ShapeError("partition does not match graph");

    Basemap map;
    map.link_threshold = link_threshold;

    std::vector<int> sizes(k, 0);
    for (int t : partition.assignment) ++sizes[static_cast<size_t>(t)];

    map.topics.reserve(k);
    for (size_t t = 0; t < k; ++t) {
        BasemapTopic topic;
        topic.id = static_cast<int>(t);
        topic.size = sizes[t];
        topic.residual = partition.is_residual(static_cast<int>(t));
        if (t < partition.topic_labels.size() && !partition.topic_labels[t].empty()) {
            topic.label_terms = partition.topic_labels[t];
            topic.label = topic.label_terms.front();
        }
        map.topics.push_back(std::move(topic));
    }

    map.overlap.assign(k, std::vector<double>(k, 0.0));
    for (const GraphEdge& e : graph.edges) {
        size_t tu = static_cast<size_t>(partition.assignment[static_cast<size_t>(e.u)]);
        size_t tv = static_cast<size_t>(partition.assignment[static_cast<size_t>(e.v)]);
        if (tu == tv) continue;
        map.overlap[tu][tv] += e.w;
        map.overlap[tv][tu] += e.w;
    }
    double max_overlap = 0.0;
    for (size_t a = 0; a < k; ++a) {
        for (size_t b = 0; b < k; ++b) {
            if (a == b) continue;
            map.overlap[a][b] /= static_cast<double>(sizes[a]) * static_cast<double>(sizes[b]);
            max_overlap = std::max(max_overlap, map.overlap[a][b]);
        }
    }

    map.S.assign(k, std::vector<double>(k, 0.0));
    map.d.assign(k, std::vector<double>(k, 0.0));
    for (size_t a = 0; a < k; ++a) {
        for (size_t b = 0; b < k; ++b) {
            double s;
            if (a == b) s = 1.0;
            else if (max_overlap > 0.0) s = map.overlap[a][b] / max_overlap;
            else s = 0.0;
            map.S[a][b] = s;
            map.d[a][b] = 1.0 - s;
        }
    }
    return map;
}

} // namespace tom

#endif
