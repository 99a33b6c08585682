// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failed criteria. Tolerances are pinned in the checks themselves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "tom/tom.hpp"

namespace fs = std::filesystem;

namespace {

struct Criterion {
    std::string name;
    std::function<std::string()> run; // empty string = pass, else failure detail
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

tom::Overlay overlay_from(std::vector<double> p) {
    tom::Overlay o;
    o.p = std::move(p);
    return o;
}

std::string check(bool ok, const std::string& detail) { return ok ? "" : detail; }

// ---- shared machinery for the planted-corpus criteria ----

struct PlantedRun {
    tom::DocClusteringResult tom;
    tom::DocClusteringResult vsm;
    tom::TermDocMatrix matrix;
    tom::TermGraph graph;
    tom::TopicPartition partition;
    tom::Basemap basemap;
};

PlantedRun run_planted(const tom::Corpus& corpus) {
    PlantedRun run;
    tom::TermDocMatrix full = tom::build_term_doc_matrix(
        corpus, tom::DescriptorSources{}, tom::StopwordSet::builtin(), 2);
    run.matrix = tom::select_vocabulary(full, 300, 5);
    run.graph = tom::build_term_graph(run.matrix, 0.05);
    run.partition = tom::detect_topics(run.graph, 4, 4);
    run.basemap = tom::build_basemap(run.graph, run.partition, 0.1);
    run.tom = tom::tom_cluster(run.matrix, run.partition, run.basemap, 5, 1);
    run.vsm = tom::vsm_cluster(run.matrix, 5, 1);
    return run;
}

// unassigned or excluded documents count as singleton clusters
std::vector<int> ari_labels(const tom::ClusterAssignment& assignment) {
    std::vector<int> labels;
    int next_singleton = assignment.cluster_count;
    for (int l : assignment.labels)
        labels.push_back(l >= 0 ? l : next_singleton++);
    return labels;
}

} // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({"PWCS identity: phi(X,X)=1 within 1e-12 on 1000 overlays, <1s", [] {
        std::mt19937 rng(901);
        auto start = std::chrono::steady_clock::now();
        for (int trial = 0; trial < 1000; ++trial) {
            size_t k = 2 + rng() % 9; // K in {2..10}
            tom::Overlay x = overlay_from(oracles::random_overlay(rng, k));
            auto S = oracles::random_psd_proximity(rng, k);
            double phi = tom::pwcs(x, x, S);
            if (std::abs(phi - 1.0) > 1e-12)
                return "phi(X,X) deviates by " + std::to_string(std::abs(phi - 1.0));
        }
        double elapsed = seconds_since(start);
        return check(elapsed < 1.0, "runtime " + std::to_string(elapsed) + "s >= 1s");
    }});

    criteria.push_back({"PWCS reduction: identity S equals plain cosine within 1e-12", [] {
        std::mt19937 rng(902);
        for (int trial = 0; trial < 100; ++trial) {
            size_t k = 2 + rng() % 9;
            tom::Overlay x = overlay_from(oracles::random_overlay(rng, k));
            tom::Overlay y = overlay_from(oracles::random_overlay(rng, k));
            std::vector<std::vector<double>> S(k, std::vector<double>(k, 0.0));
            for (size_t i = 0; i < k; ++i) S[i][i] = 1.0;
            double phi = tom::pwcs(x, y, S);
            double cosine = oracles::dense_cosine(x.p, y.p);
            if (std::abs(phi - cosine) > 1e-12)
                return "phi vs cosine gap " + std::to_string(std::abs(phi - cosine));
        }
        return std::string{};
    }});

    criteria.push_back({"Stirling oracle: brute force within 1e-12, unit overlays exact 0", [] {
        std::mt19937 rng(903);
        for (int trial = 0; trial < 1000; ++trial) {
            size_t k = 2 + rng() % 5; // K <= 6
            tom::Overlay o = overlay_from(oracles::random_overlay(rng, k));
            auto d = oracles::random_distance(rng, k);
            double got = tom::stirling_diversity(o, d);
            double expected = oracles::naive_stirling(o.p, d);
            if (std::abs(got - expected) > 1e-12)
                return "diversity gap " + std::to_string(std::abs(got - expected));
        }
        for (size_t k = 2; k <= 6; ++k) {
            std::vector<double> unit(k, 0.0);
            unit[k / 2] = 1.0;
            auto d = oracles::random_distance(rng, k);
            if (tom::stirling_diversity(overlay_from(unit), d) != 0.0)
                return std::string("single-topic overlay did not return exactly 0");
        }
        return std::string{};
    }});

    criteria.push_back({"Linkage oracle: exact merge sequence on 200 random n<=8 matrices", [] {
        std::mt19937 rng(904);
        for (int trial = 0; trial < 200; ++trial) {
            size_t n = 2 + rng() % 7;
            auto d = oracles::random_dissimilarity(rng, n);
            std::vector<std::string> ids;
            for (size_t i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i));
            tom::Dendrogram dendro = tom::average_linkage(d, ids);
            auto expected = oracles::upgma_oracle(d);
            if (dendro.merges.size() != expected.size())
                return std::string("merge count mismatch");
            for (size_t m = 0; m < expected.size(); ++m) {
                if (dendro.merges[m].left != expected[m].left ||
                    dendro.merges[m].right != expected[m].right)
                    return "merge order diverges at step " + std::to_string(m) +
                           " of trial " + std::to_string(trial);
                if (std::abs(dendro.merges[m].height - expected[m].height) > 1e-12)
                    return "merge height gap at step " + std::to_string(m);
            }
        }
        return std::string{};
    }});

    criteria.push_back({"Planted partition: two 10-cliques recovered, modularity >= 0.45", [] {
        tom::TermGraph g;
        for (int i = 0; i < 20; ++i)
            g.nodes.push_back(
                tom::GraphNode{"n" + std::to_string(i), "n" + std::to_string(i), 1, 1});
        for (int u = 0; u < 10; ++u)
            for (int v = u + 1; v < 10; ++v) g.edges.push_back(tom::GraphEdge{u, v, 1.0});
        for (int u = 10; u < 20; ++u)
            for (int v = u + 1; v < 20; ++v) g.edges.push_back(tom::GraphEdge{u, v, 1.0});
        g.edges.push_back(tom::GraphEdge{9, 10, 0.05});
        std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        tom::label_components(g);

        tom::TopicPartition part = tom::detect_topics(g, 4, 4);
        if (part.k != 2) return "expected 2 topics, got " + std::to_string(part.k);
        for (int i = 1; i < 10; ++i)
            if (part.assignment[static_cast<size_t>(i)] != part.assignment[0])
                return std::string("first clique split");
        for (int i = 11; i < 20; ++i)
            if (part.assignment[static_cast<size_t>(i)] != part.assignment[10])
                return std::string("second clique split");
        if (part.assignment[0] == part.assignment[10])
            return std::string("cliques merged");
        double q = tom::modularity(g, part.assignment);
        return check(q >= 0.45, "modularity " + std::to_string(q) + " < 0.45");
    }});

    criteria.push_back({"Dynamic tree cut: 3 planted groups of 10, zero unassigned", [] {
        std::mt19937 rng(906);
        int n = 30;
        std::vector<std::vector<double>> d(static_cast<size_t>(n),
                                           std::vector<double>(static_cast<size_t>(n), 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                bool same = i / 10 == j / 10;
                double v = same ? 0.02 + 0.08 * oracles::uniform01(rng)
                                : 0.9 + 0.1 * oracles::uniform01(rng);
                d[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                d[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            }
        }
        std::vector<std::string> ids;
        for (int i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i));
        tom::Dendrogram dendro = tom::average_linkage(d, ids);
        tom::ClusterAssignment cut = tom::dynamic_tree_cut(dendro); // defaults 5, 1
        if (cut.cluster_count != 3)
            return "expected 3 clusters, got " + std::to_string(cut.cluster_count);
        if (cut.assigned_count() != 30)
            return "unassigned leaves: " + std::to_string(30 - cut.assigned_count());
        for (int s : cut.cluster_sizes)
            if (s != 10) return std::string("cluster size != 10");
        for (int g = 0; g < 3; ++g)
            for (int i = 1; i < 10; ++i)
                if (cut.labels[static_cast<size_t>(g * 10 + i)] !=
                    cut.labels[static_cast<size_t>(g * 10)])
                    return std::string("planted group split across clusters");
        return std::string{};
    }});

    criteria.push_back({"TOM vs VSM: ARI margin >= 0.05 over 10 seeds, <60s", [] {
        auto start = std::chrono::steady_clock::now();
        double tom_total = 0.0, vsm_total = 0.0;
        for (uint32_t seed = 1; seed <= 10; ++seed) {
            synthetic::PlantedCorpus planted = synthetic::make_planted_corpus(seed);
            PlantedRun run = run_planted(planted.corpus);
            tom_total += oracles::adjusted_rand_index(ari_labels(run.tom.assignment),
                                                      planted.line_labels);
            vsm_total += oracles::adjusted_rand_index(ari_labels(run.vsm.assignment),
                                                      planted.line_labels);
        }
        double tom_mean = tom_total / 10.0, vsm_mean = vsm_total / 10.0;
        double elapsed = seconds_since(start);
        std::string detail = "TOM ARI " + std::to_string(tom_mean) + " vs VSM ARI " +
                             std::to_string(vsm_mean) + " (" + std::to_string(elapsed) + "s)";
        if (elapsed >= 60.0) return "runtime " + std::to_string(elapsed) + "s >= 60s";
        if (tom_mean - vsm_mean < 0.05) return "margin too small: " + detail;
        std::fprintf(stderr, "       %s\n", detail.c_str());
        return std::string{};
    }});

    criteria.push_back({"Cross-tab integrity: rows sum to 100 +- 0.1, self-tab diagonal", [] {
        std::mt19937 rng(908);
        for (int trial = 0; trial < 50; ++trial) {
            size_t n = 30 + rng() % 50;
            std::vector<std::string> ids;
            std::vector<int> la, lb;
            for (size_t i = 0; i < n; ++i) {
                ids.push_back("d" + std::to_string(i));
                la.push_back(rng() % 6 == 0 ? tom::ClusterAssignment::kUnassigned
                                            : static_cast<int>(rng() % 5));
                lb.push_back(static_cast<int>(rng() % 4));
            }
            tom::ClusterAssignment a, b;
            a.doc_ids = ids;
            a.labels = la;
            a.cluster_count = 5;
            b.doc_ids = ids;
            b.labels = lb;
            b.cluster_count = 4;

            tom::CrossTab ct = tom::cross_tabulate(a, b);
            for (size_t r = 0; r < ct.row_labels.size(); ++r) {
                double total = 0.0;
                for (double cell : ct.cells[r]) total += cell;
                if (std::abs(total - 100.0) > 0.1)
                    return "row sum " + std::to_string(total);
            }
            tom::CrossTab self = tom::cross_tabulate(a, a);
            for (size_t r = 0; r < self.row_labels.size(); ++r)
                for (size_t c = 0; c < self.col_labels.size(); ++c) {
                    bool diagonal = self.row_labels[r] == self.col_labels[c];
                    double expected = diagonal ? 100.0 : 0.0;
                    if (std::abs(self.cells[r][c] - expected) > 1e-9)
                        return std::string("self cross-tab not diagonal");
                }
        }
        return std::string{};
    }});

    criteria.push_back({"Trend arithmetic: moving-average example and annual sums", [] {
        tom::TimeSeries ts;
        ts.first_year = 2000;
        ts.values = {0, 10, 20, 30, 40};
        tom::TimeSeries ma = tom::moving_average(ts, 3);
        std::vector<double> expected = {5, 10, 20, 30, 35};
        for (size_t i = 0; i < expected.size(); ++i)
            if (std::abs(ma.values[i] - expected[i]) > 1e-12)
                return "moving average mismatch at index " + std::to_string(i);

        tom::TimeSeries constant;
        constant.first_year = 1990;
        constant.values = std::vector<double>(9, 12.5);
        tom::TimeSeries smoothed = tom::moving_average(constant, 5);
        for (double v : smoothed.values)
            if (std::abs(v - 12.5) > 1e-12) return std::string("constant series moved");

        // per-cluster annual series sum to 100 +- 0.01
        std::mt19937 rng(909);
        tom::Corpus corpus;
        for (int i = 0; i < 60; ++i) {
            tom::CorpusRecord rec;
            rec.id = "d" + std::to_string(i);
            rec.year = 1990 + static_cast<int>(rng() % 15);
            corpus.records.push_back(std::move(rec));
        }
        for (int cluster = 0; cluster < 3; ++cluster) {
            std::vector<const tom::CorpusRecord*> docs;
            for (int i = cluster; i < 60; i += 3)
                docs.push_back(&corpus.records[static_cast<size_t>(i)]);
            tom::TimeSeries annual = tom::annual_relative_size(docs, corpus);
            double total = 0.0;
            for (double v : annual.values) total += v;
            if (std::abs(total - 100.0) > 0.01)
                return "annual series sums to " + std::to_string(total);
        }
        return std::string{};
    }});

    criteria.push_back({"End-to-end determinism: identical artifact trees, <2min", [] {
        auto start = std::chrono::steady_clock::now();
        synthetic::PlantedCorpus planted = synthetic::make_planted_corpus(42);
        fs::create_directories("acceptance_work");
        tom::write_text_file("acceptance_work/planted.csv",
                             synthetic::corpus_to_csv(planted.corpus));

        tom::PipelineConfig cfg;
        cfg.input_path = "acceptance_work/planted.csv";
        cfg.input_format = "csv";
        cfg.output_dir = "acceptance_work/out";

        fs::remove_all(cfg.output_dir);
        tom::run_pipeline(cfg);
        std::map<std::string, std::string> first;
        for (const auto& entry : fs::recursive_directory_iterator(cfg.output_dir))
            if (entry.is_regular_file())
                first[fs::relative(entry.path(), cfg.output_dir).string()] =
                    tom::read_text_file(entry.path());

        tom::run_pipeline(cfg);
        size_t second_count = 0;
        for (const auto& entry : fs::recursive_directory_iterator(cfg.output_dir)) {
            if (!entry.is_regular_file()) continue;
            ++second_count;
            std::string rel = fs::relative(entry.path(), cfg.output_dir).string();
            std::string bytes = tom::read_text_file(entry.path());
            if (!first.count(rel)) return "new artifact appeared: " + rel;
            if (rel == "manifest.json") {
                nlohmann::json a = nlohmann::json::parse(first[rel]);
                nlohmann::json b = nlohmann::json::parse(bytes);
                a.erase("timestamp");
                a.erase("timings_ms");
                b.erase("timestamp");
                b.erase("timings_ms");
                if (a != b) return std::string("manifest differs beyond timestamps");
            } else if (first[rel] != bytes) {
                return "artifact differs between runs: " + rel;
            }
        }
        if (second_count != first.size()) return std::string("artifact count changed");
        double elapsed = seconds_since(start);
        return check(elapsed < 120.0, "runtime " + std::to_string(elapsed) + "s >= 120s");
    }});

    criteria.push_back({"Basemap invariance: x3.7 edge weights change nothing downstream", [] {
        synthetic::PlantedCorpus planted = synthetic::make_planted_corpus(7);
        PlantedRun base = run_planted(planted.corpus);

        tom::TermGraph scaled_graph = base.graph;
        for (tom::GraphEdge& e : scaled_graph.edges) e.w *= 3.7;
        tom::TopicPartition part = tom::detect_topics(scaled_graph, 4, 4);
        if (part.assignment != base.partition.assignment)
            return std::string("topic assignment changed under scaling");
        tom::Basemap scaled_map = tom::build_basemap(scaled_graph, part, 0.1);

        for (size_t a = 0; a < base.basemap.k(); ++a)
            for (size_t b = 0; b < base.basemap.k(); ++b) {
                if (std::abs(scaled_map.S[a][b] - base.basemap.S[a][b]) > 1e-12)
                    return std::string("S changed under scaling");
                if (std::abs(scaled_map.d[a][b] - base.basemap.d[a][b]) > 1e-12)
                    return std::string("d changed under scaling");
            }

        // overlays depend only on the matrix and partition
        std::vector<tom::Overlay> overlays_base, overlays_scaled;
        for (const std::string& id : base.matrix.docs) {
            overlays_base.push_back(tom::compute_overlay({id}, base.matrix, base.partition));
            overlays_scaled.push_back(tom::compute_overlay({id}, base.matrix, part));
        }
        for (size_t i = 0; i < overlays_base.size(); ++i)
            for (size_t k = 0; k < overlays_base[i].k(); ++k)
                if (overlays_base[i].p[k] != overlays_scaled[i].p[k])
                    return std::string("overlay changed under scaling");

        // phi values within 1e-12 on a sample of pairs
        std::mt19937 rng(911);
        for (int trial = 0; trial < 200; ++trial) {
            size_t x = rng() % overlays_base.size();
            size_t y = rng() % overlays_base.size();
            if (overlays_base[x].zero() || overlays_base[y].zero()) continue;
            double a = tom::pwcs(overlays_base[x], overlays_base[y], base.basemap.S);
            double b = tom::pwcs(overlays_scaled[x], overlays_scaled[y], scaled_map.S);
            if (std::abs(a - b) > 1e-12) return std::string("phi changed under scaling");
        }

        tom::DocClusteringResult tom_scaled =
            tom::tom_cluster(base.matrix, part, scaled_map, 5, 1);
        if (tom_scaled.assignment.labels != base.tom.assignment.labels)
            return std::string("TOM assignment changed under scaling");
        tom::DocClusteringResult vsm_again = tom::vsm_cluster(base.matrix, 5, 1);
        if (vsm_again.assignment.labels != base.vsm.assignment.labels)
            return std::string("VSM assignment changed");
        return std::string{};
    }});

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        try {
            detail = criteria[i].run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        bool ok = detail.empty();
        if (!ok) ++failures;
        std::printf("[%s] %02zu %s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), ok ? "" : " -- ", detail.c_str());
    }
    std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures;
}
