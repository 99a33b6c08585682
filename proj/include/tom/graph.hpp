#ifndef TOM_GRAPH_HPP
#define TOM_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "tom/errors.hpp"
#include "tom/matrix.hpp"
#include "tom/parallel.hpp"

namespace tom {

struct GraphNode {
    std::string canonical;
    std::string display;
    int df = 0;
    long long total = 0;
};

struct GraphEdge {
    int u = 0; // u < v
    int v = 0;
    double w = 0.0; // in (0, 1]
};

/// Undirected weighted term-similarity graph. Edges are stored once,
/// sorted by (u, v) with u < v; no self-loops, no duplicates.
struct TermGraph {
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    std::vector<int> component; // dense labels, ordered by smallest member index

    size_t node_count() const { return nodes.size(); }
    size_t edge_count() const { return edges.size(); }

    std::vector<std::vector<std::pair<int, double>>> adjacency() const {
        std::vector<std::vector<std::pair<int, double>>> adj(nodes.size());
        for (const GraphEdge& e : edges) {
            adj[static_cast<size_t>(e.u)].emplace_back(e.v, e.w);
            adj[static_cast<size_t>(e.v)].emplace_back(e.u, e.w);
        }
        for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
        return adj;
    }
};

/// Assigns dense connected-component labels; component 0 contains node 0.
inline void label_components(TermGraph& graph) {
    size_t n = graph.nodes.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const GraphEdge& e : graph.edges) {
        int ru = find(e.u), rv = find(e.v);
        if (ru != rv) parent[static_cast<size_t>(std::max(ru, rv))] = std::min(ru, rv);
    }
    graph.component.assign(n, -1);
    int next = 0;
    for (size_t i = 0; i < n; ++i) {
        int root = find(static_cast<int>(i));
        if (graph.component[static_cast<size_t>(root)] < 0)
            graph.component[static_cast<size_t>(root)] = next++;
        graph.component[i] = graph.component[static_cast<size_t>(root)];
    }
}

namespace detail {

inline double row_dot(const std::vector<std::pair<int, int>>& a,
                      const std::vector<std::pair<int, int>>& b) {
    double dot = 0.0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) ++i;
        else if (a[i].first > b[j].first) ++j;
        else {
            dot += static_cast<double>(a[i].second) * static_cast<double>(b[j].second);
            ++i;
            ++j;
        }
    }
    return dot;
}

inline double row_norm(const std::vector<std::pair<int, int>>& a) {
    double s = 0.0;
    for (auto [d, c] : a) s += static_cast<double>(c) * static_cast<double>(c);
    return std::sqrt(s);
}

} // namespace detail

/// Cosine similarity of two term rows on raw counts.
inline double cosine_similarity_terms(const TermDocMatrix& matrix, int t1, int t2) {
    const auto& r1 = matrix.counts.at(static_cast<size_t>(t1));
    const auto& r2 = matrix.counts.at(static_cast<size_t>(t2));
    double n1 = detail::row_norm(r1), n2 = detail::row_norm(r2);
    if (n1 <= 0.0 || n2 <= 0.0)
        throw DataError("cosine similarity undefined for a zero term row");
    return detail::row_dot(r1, r2) / (n1 * n2);
}

/// Builds the term graph: an edge (u, v, w) exists iff the cosine
/// similarity w of the two term rows exceeds edge_threshold.
inline TermGraph build_term_graph(const TermDocMatrix& matrix, double edge_threshold,
                                  int threads = 1) {
    if (edge_threshold < 0.0 || edge_threshold >= 1.0)
        throw ConfigError("edge_threshold must lie in [0, 1)");
    size_t n = matrix.terms.size();

    TermGraph graph;
    graph.nodes.reserve(n);
    for (size_t t = 0; t < n; ++t)
        graph.nodes.push_back(GraphNode{matrix.terms[t].canonical, matrix.terms[t].display,
                                        matrix.df[t], matrix.term_total[t]});

    std::vector<double> norms(n);
    for (size_t t = 0; t < n; ++t) {
        norms[t] = detail::row_norm(matrix.counts[t]);
        if (norms[t] <= 0.0) throw DataError("zero term row in selected vocabulary");
    }

    std::vector<std::vector<GraphEdge>> buckets(n);
    detail::parallel_for(n, threads, [&](size_t u) {
        for (size_t v = u + 1; v < n; ++v) {
            double dot = detail::row_dot(matrix.counts[u], matrix.counts[v]);
            if (dot <= 0.0) continue;
            double w = dot / (norms[u] * norms[v]);
            if (w > edge_threshold)
                buckets[u].push_back(
                    GraphEdge{static_cast<int>(u), static_cast<int>(v), w});
        }
    });
    for (auto& bucket : buckets)
        graph.edges.insert(graph.edges.end(), bucket.begin(), bucket.end());

    label_components(graph);
    return graph;
}

} // namespace tom

#endif
