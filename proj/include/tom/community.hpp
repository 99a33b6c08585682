#ifndef TOM_COMMUNITY_HPP
#define TOM_COMMUNITY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tom/errors.hpp"
#include "tom/graph.hpp"

namespace tom {

/// Community structure of the term graph: topics as dense ids 0..K-1.
struct TopicPartition {
    std::vector<int> assignment; // node index -> topic id
    int k = 0;
    std::vector<std::vector<std::string>> topic_labels; // top display terms per topic
    int residual_topic = -1; // pooled small components, -1 when absent

    bool is_residual(int topic) const { return topic == residual_topic; }
};

/// Weighted Newman modularity Q = sum_c (e_cc - a_c^2).
inline double modularity(const TermGraph& graph, const std::vector<int>& assignment) {
    if (assignment.size() != graph.nodes.size())
        throw ShapeError("partition does not cover all nodes");
    int k = 0;
    for (int a : assignment) k = std::max(k, a + 1);
    std::vector<double> internal(static_cast<size_t>(k), 0.0);
    std::vector<double> strength(static_cast<size_t>(k), 0.0);
    double total = 0.0;
    for (const GraphEdge& e : graph.edges) {
        int cu = assignment[static_cast<size_t>(e.u)];
        int cv = assignment[static_cast<size_t>(e.v)];
        if (cu == cv) internal[static_cast<size_t>(cu)] += e.w;
        strength[static_cast<size_t>(cu)] += e.w;
        strength[static_cast<size_t>(cv)] += e.w;
        total += e.w;
    }
    if (total <= 0.0) return 0.0;
    double q = 0.0;
    for (int c = 0; c < k; ++c) {
        double a = strength[static_cast<size_t>(c)] / (2.0 * total);
        q += internal[static_cast<size_t>(c)] / total - a * a;
    }
    return q;
}

namespace detail {

// Random-walk agglomeration over one frozen graph. Communities are merged
// bottom-up by the walk-distance criterion of Pons & Latapy; the returned
// merge sweep lets the caller pick the level maximizing modularity.
class WalktrapEngine {
public:
    WalktrapEngine(const TermGraph& graph, int walk_length) : graph_(graph) {
        n_ = graph.nodes.size();
        adj_ = graph.adjacency();

        // self-loops with the mean incident weight make the walk lazy enough
        // to be stable on bipartite-ish structures
        self_.assign(n_, 1.0);
        degree_.assign(n_, 0.0);
        for (size_t i = 0; i < n_; ++i) {
            double sum = 0.0;
            for (auto [j, w] : adj_[i]) sum += w;
            if (!adj_[i].empty()) self_[i] = sum / static_cast<double>(adj_[i].size());
            degree_[i] = sum + self_[i];
        }

        walk_.assign(n_, std::vector<double>(n_, 0.0));
        for (size_t i = 0; i < n_; ++i) {
            std::vector<double> cur(n_, 0.0), next(n_, 0.0);
            cur[i] = 1.0;
            for (int step = 0; step < walk_length; ++step) {
                std::fill(next.begin(), next.end(), 0.0);
                for (size_t j = 0; j < n_; ++j) {
                    if (cur[j] == 0.0) continue;
                    double share = cur[j] / degree_[j];
                    next[j] += share * self_[j];
                    for (auto [t, w] : adj_[j]) next[static_cast<size_t>(t)] += share * w;
                }
                cur.swap(next);
            }
            walk_[i] = std::move(cur);
        }
    }

    /// Runs the full agglomeration and returns the assignment with maximal
    /// modularity over all merge levels (the singleton level included).
    std::vector<int> best_partition() {
        init_communities();

        std::vector<int> current(n_), best(n_);
        for (size_t i = 0; i < n_; ++i) current[i] = static_cast<int>(i);
        best = current;
        double best_q = modularity(graph_, densify(current));

        while (!candidates_.empty()) {
            auto pick = candidates_.begin();
            for (auto it = candidates_.begin(); it != candidates_.end(); ++it)
                if (it->second < pick->second) pick = it;
            auto [ra, rb] = pick->first;
            merge(rep_to_slot_.at(ra), rep_to_slot_.at(rb), current);
            double q = modularity(graph_, densify(current));
            if (q > best_q) {
                best_q = q;
                best = current;
            }
        }
        return densify(best);
    }

private:
    struct Community {
        bool alive = false;
        int rep = 0; // smallest member node index; the tie-break key
        long long size = 0;
        std::vector<double> pvec;
        std::map<int, double> cross; // rep of neighbor -> cross edge weight
    };

    const TermGraph& graph_;
    size_t n_ = 0;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<double> self_, degree_;
    std::vector<std::vector<double>> walk_;
    std::vector<Community> comms_;
    std::map<int, size_t> rep_to_slot_;
    std::map<std::pair<int, int>, double> candidates_; // (repA < repB) -> delta sigma

    void init_communities() {
        comms_.resize(n_);
        for (size_t i = 0; i < n_; ++i) {
            comms_[i].alive = true;
            comms_[i].rep = static_cast<int>(i);
            comms_[i].size = 1;
            comms_[i].pvec = walk_[i];
            rep_to_slot_[static_cast<int>(i)] = i;
        }
        for (const GraphEdge& e : graph_.edges) {
            comms_[static_cast<size_t>(e.u)].cross[e.v] += e.w;
            comms_[static_cast<size_t>(e.v)].cross[e.u] += e.w;
        }
        for (const GraphEdge& e : graph_.edges) {
            std::pair<int, int> key{std::min(e.u, e.v), std::max(e.u, e.v)};
            if (!candidates_.count(key))
                candidates_[key] = delta_sigma(static_cast<size_t>(e.u),
                                               static_cast<size_t>(e.v));
        }
    }

    double delta_sigma(size_t a, size_t b) const {
        const Community& ca = comms_[a];
        const Community& cb = comms_[b];
        double r2 = 0.0;
        for (size_t k = 0; k < n_; ++k) {
            double diff = ca.pvec[k] - cb.pvec[k];
            r2 += diff * diff / degree_[k];
        }
        double sa = static_cast<double>(ca.size), sb = static_cast<double>(cb.size);
        return sa * sb / (sa + sb) * r2 / static_cast<double>(n_);
    }

    void merge(size_t a, size_t b, std::vector<int>& current) {
        if (comms_[b].rep < comms_[a].rep) std::swap(a, b);
        Community& ca = comms_[a]; // survivor, keeps the smaller rep
        Community& cb = comms_[b];

        double wa = static_cast<double>(ca.size), wb = static_cast<double>(cb.size);
        for (size_t k = 0; k < n_; ++k)
            ca.pvec[k] = (wa * ca.pvec[k] + wb * cb.pvec[k]) / (wa + wb);
        ca.size += cb.size;

        // retire all candidate pairs touching either side
        for (auto& [nbr, w] : ca.cross) erase_candidate(ca.rep, nbr);
        for (auto& [nbr, w] : cb.cross) erase_candidate(cb.rep, nbr);

        // fold b's neighborhood into a's
        for (auto& [nbr, w] : cb.cross) {
            if (nbr == ca.rep) continue;
            ca.cross[nbr] += w;
            Community& cn = comms_[rep_to_slot_.at(nbr)];
            cn.cross.erase(cb.rep);
            cn.cross[ca.rep] += w;
        }
        ca.cross.erase(cb.rep);
        cb.alive = false;
        rep_to_slot_.erase(cb.rep);

        for (size_t i = 0; i < n_; ++i)
            if (current[i] == cb.rep) current[i] = ca.rep;

        for (auto& [nbr, w] : ca.cross) {
            std::pair<int, int> key{std::min(ca.rep, nbr), std::max(ca.rep, nbr)};
            candidates_[key] = delta_sigma(a, rep_to_slot_.at(nbr));
        }
    }

    void erase_candidate(int ra, int rb) {
        candidates_.erase({std::min(ra, rb), std::max(ra, rb)});
    }

    static std::vector<int> densify(const std::vector<int>& labels) {
        std::map<int, int> remap;
        for (int l : labels)
            if (!remap.count(l)) remap[l] = 0;
        int next = 0;
        for (auto& [l, id] : remap) id = next++;
        std::vector<int> out(labels.size());
        for (size_t i = 0; i < labels.size(); ++i) out[i] = remap[labels[i]];
        return out;
    }
};

} // namespace detail

/// Detects topics as term communities via random-walk agglomeration,
/// choosing the merge level that maximizes weighted modularity. Graph
/// components smaller than min_component pool into one residual topic.
/// Deterministic: ties are broken by the smallest member node index,
/// which is the lexicographic order of canonical terms.
inline TopicPartition detect_topics(const TermGraph& graph, int walk_length = 4,
                                    int min_component = 4, int label_terms = 5) {
    if (graph.edges.empty()) throw DataError("term graph has no edges (no structure)");
    if (walk_length < 1) throw ConfigError("walk_length must be >= 1");
    if (min_component < 1) throw ConfigError("min_component must be >= 1");

    detail::WalktrapEngine engine(graph, walk_length);
    std::vector<int> communities = engine.best_partition();

    size_t n = graph.nodes.size();
    std::vector<int> comp_size;
    for (int c : graph.component) {
        if (static_cast<size_t>(c) >= comp_size.size())
            comp_size.resize(static_cast<size_t>(c) + 1, 0);
        ++comp_size[static_cast<size_t>(c)];
    }

    std::vector<bool> residual(n, false);
    bool any_residual = false;
    for (size_t i = 0; i < n; ++i) {
        if (comp_size[static_cast<size_t>(graph.component[i])] < min_component) {
            residual[i] = true;
            any_residual = true;
        }
    }

    // dense topic ids ordered by smallest member node; residual last
    std::map<int, int> topic_of_community;
    TopicPartition part;
    part.assignment.assign(n, -1);
    int next_id = 0;
    for (size_t i = 0; i < n; ++i) {
        if (residual[i]) continue;
        int c = communities[i];
        auto it = topic_of_community.find(c);
        if (it == topic_of_community.end())
            it = topic_of_community.emplace(c, next_id++).first;
        part.assignment[i] = it->second;
    }
    if (any_residual) {
        part.residual_topic = next_id++;
        for (size_t i = 0; i < n; ++i)
            if (residual[i]) part.assignment[i] = part.residual_topic;
    }
    part.k = next_id;

    // label topics by their highest-frequency member terms
    part.topic_labels.assign(static_cast<size_t>(part.k), {});
    std::vector<std::vector<int>> members(static_cast<size_t>(part.k));
    for (size_t i = 0; i < n; ++i)
        members[static_cast<size_t>(part.assignment[i])].push_back(static_cast<int>(i));
    for (int t = 0; t < part.k; ++t) {
        auto& nodes = members[static_cast<size_t>(t)];
        std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
            const GraphNode& na = graph.nodes[static_cast<size_t>(a)];
            const GraphNode& nb = graph.nodes[static_cast<size_t>(b)];
            if (na.total != nb.total) return na.total > nb.total;
            return na.canonical < nb.canonical;
        });
        size_t take = std::min<size_t>(static_cast<size_t>(std::max(label_terms, 1)),
                                       nodes.size());
        for (size_t i = 0; i < take; ++i)
            part.topic_labels[static_cast<size_t>(t)].push_back(
                graph.nodes[static_cast<size_t>(nodes[i])].display);
    }
    return part;
}

} // namespace tom

#endif
