#ifndef TOM_PIPELINE_HPP
#define TOM_PIPELINE_HPP

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "tom/artifacts.hpp"
#include "tom/config.hpp"
#include "tom/doc_clustering.hpp"
#include "tom/export.hpp"
#include "tom/layout.hpp"
#include "tom/render.hpp"
#include "tom/trends.hpp"

#include <json.hpp>

namespace tom {

inline constexpr const char* kVersion = "0.1.0";

struct PipelineResult {
    PipelineConfig config;
    Corpus corpus;
    TermDocMatrix matrix; // selected vocabulary
    TermGraph graph;
    TopicPartition partition;
    Basemap basemap;
    std::vector<Overlay> doc_overlays; // one per document, zero overlays included
    DocClusteringResult tom;
    DocClusteringResult vsm;
    CrossTab crosstab;
    std::vector<ClusterProfile> profiles;
    nlohmann::json manifest;
    std::filesystem::path out_dir;
};

namespace detail {

struct ArtifactWriter {
    std::filesystem::path root;
    std::vector<std::string> written;

    void write(const std::string& rel, const std::string& content) {
        std::filesystem::path path = root / rel;
        std::filesystem::create_directories(path.parent_path());
        write_text_file(path, content);
        written.push_back(rel);
    }
};

inline std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

/// Runs the full pipeline: ingest -> term graph -> topics -> basemap ->
/// overlays -> TOM clustering -> VSM baseline -> cross-tab -> profiles ->
/// renders. Every intermediate artifact is written under the output
/// directory; identical config and input produce byte-identical artifacts
/// (timestamps and timings live only in the manifest). A stage error
/// aborts with the stage name after writing a partial-artifact manifest.
inline PipelineResult run_pipeline(const PipelineConfig& config, bool quiet = true) {
    config.validate();
    if (config.input_path.empty()) throw ConfigError("pipeline requires input.path");

    PipelineResult result;
    result.config = config;
    result.out_dir = config.output_dir;
    std::filesystem::create_directories(result.out_dir);

    detail::ArtifactWriter artifacts{result.out_dir, {}};
    nlohmann::json timings = nlohmann::json::object();
    nlohmann::json counts = nlohmann::json::object();
    std::vector<std::string> stages;

    StopwordSet stopwords = config.stopword_path.empty()
                                ? StopwordSet::builtin()
                                : StopwordSet::from_file(config.stopword_path);

    auto finish_manifest = [&](const std::string& failed_stage, const std::string& error) {
        nlohmann::json manifest;
        manifest["version"] = kVersion;
        manifest["config"] = config.to_toml();
        manifest["stages"] = stages;
        std::vector<std::string> files = artifacts.written;
        std::sort(files.begin(), files.end());
        manifest["artifacts"] = files;
        manifest["counts"] = counts;
        manifest["timings_ms"] = timings;
        manifest["timestamp"] = detail::iso_timestamp();
        if (!failed_stage.empty()) {
            manifest["failed_stage"] = failed_stage;
            manifest["error"] = error;
        }
        write_text_file(result.out_dir / "manifest.json", manifest.dump(2) + "\n");
        return manifest;
    };

    std::string current_stage;
    auto stage = [&](const std::string& name, const std::function<void()>& body) {
        current_stage = name;
        if (!quiet) std::fprintf(stderr, "[tom] stage %s\n", name.c_str());
        auto begin = std::chrono::steady_clock::now();
        body();
        auto end = std::chrono::steady_clock::now();
        timings[name] =
            std::chrono::duration_cast<std::chrono::milliseconds>(end - begin).count();
        stages.push_back(name);
    };

    try {
        stage("ingest", [&] {
            result.corpus = parse_records_file(config.input_path,
                                               corpus_format_from_string(config.input_format));
            counts["records"] = result.corpus.size();
            counts["skipped_rows"] = result.corpus.provenance.report.skipped;
            artifacts.write("corpus.json", corpus_to_json(result.corpus).dump(2) + "\n");
        });

        stage("termgraph", [&] {
            TermDocMatrix full = build_term_doc_matrix(result.corpus, config.sources,
                                                       stopwords, config.min_len);
            counts["terms_raw"] = full.term_count();
            result.matrix = select_vocabulary(full, config.top_n, config.min_df);
            counts["terms_selected"] = result.matrix.term_count();
            result.graph =
                build_term_graph(result.matrix, config.edge_threshold, config.threads);
            counts["graph_edges"] = result.graph.edge_count();
            artifacts.write("matrix.json", matrix_to_json(result.matrix).dump(2) + "\n");
        });

        stage("topics", [&] {
            result.partition =
                detect_topics(result.graph, config.walk_length, config.min_component);
            counts["topics"] = result.partition.k;
            artifacts.write("topics.json", partition_to_json(result.partition).dump(2) + "\n");
            artifacts.write("termgraph.graphml",
                            term_graph_to_graphml(result.graph, &result.partition));
            artifacts.write("termgraph.dot",
                            term_graph_to_dot(result.graph, &result.partition));
        });

        stage("basemap", [&] {
            result.basemap =
                build_basemap(result.graph, result.partition, config.link_threshold);
            result.basemap.layout = basemap_layout(result.basemap, config.layout_seed);
            artifacts.write("basemap.json", basemap_to_json(result.basemap).dump(2) + "\n");
            artifacts.write("basemap.graphml", basemap_to_graphml(result.basemap));
        });

        stage("overlay", [&] {
            std::vector<double> diversities;
            for (const CorpusRecord& rec : result.corpus.records) {
                Overlay o = compute_overlay({rec.id}, result.matrix, result.partition);
                diversities.push_back(o.zero() ? 0.0
                                               : stirling_diversity(o, result.basemap.d));
                result.doc_overlays.push_back(std::move(o));
            }
            size_t zero = 0;
            for (const Overlay& o : result.doc_overlays)
                if (o.zero()) ++zero;
            counts["zero_overlay_docs"] = zero;
            artifacts.write("overlays.json",
                            overlays_to_json(result.doc_overlays, diversities).dump(2) + "\n");
        });

        stage("cluster", [&] {
            result.tom =
                cluster_overlays(result.matrix.docs, result.doc_overlays, result.basemap.S,
                                 config.min_cluster_size, config.deep_split, config.threads);
            counts["tom_clusters"] = result.tom.assignment.cluster_count;
            counts["tom_unassigned"] =
                result.tom.assignment.doc_ids.size() - result.tom.assignment.assigned_count();
            artifacts.write("tom_dendrogram.newick",
                            dendrogram_to_newick(result.tom.dendrogram) + "\n");
            artifacts.write("tom_dendrogram.json",
                            dendrogram_to_json(result.tom.dendrogram).dump(2) + "\n");
            artifacts.write("tom_clusters.csv",
                            cluster_assignment_to_csv(result.tom.assignment));
        });

        stage("baseline", [&] {
            result.vsm = vsm_cluster(result.matrix, config.min_cluster_size,
                                     config.deep_split, config.threads);
            counts["vsm_clusters"] = result.vsm.assignment.cluster_count;
            artifacts.write("vsm_dendrogram.newick",
                            dendrogram_to_newick(result.vsm.dendrogram) + "\n");
            artifacts.write("vsm_dendrogram.json",
                            dendrogram_to_json(result.vsm.dendrogram).dump(2) + "\n");
            artifacts.write("vsm_clusters.csv",
                            cluster_assignment_to_csv(result.vsm.assignment));
        });

        stage("trends", [&] {
            result.profiles = build_cluster_profiles(
                result.tom.assignment, result.corpus, result.matrix, result.partition,
                result.basemap, stopwords, config.window, config.top_keywords,
                config.min_len);
            counts["profiles"] = result.profiles.size();
            for (const ClusterProfile& profile : result.profiles) {
                std::string dir = "profiles/" + std::to_string(profile.cluster_id) + "/";
                artifacts.write(dir + "keywords.csv", keyword_profile_to_csv(profile.keywords));
                artifacts.write(dir + "profile.json", profile_to_json(profile).dump(2) + "\n");
                if (profile.has_timeline)
                    artifacts.write(dir + "timeline.csv", timeseries_to_csv(profile.annual));
            }
        });

        stage("crosstab", [&] {
            result.crosstab = cross_tabulate(result.tom.assignment, result.vsm.assignment);
            counts["crosstab_shared_docs"] = result.crosstab.shared_docs;
            artifacts.write("crosstab.csv", crosstab_to_csv(result.crosstab));
        });

        stage("render", [&] {
            RenderOptions options;
            options.edge_display_threshold = config.link_threshold;
            for (const ClusterProfile& profile : result.profiles) {
                std::string dir = "profiles/" + std::to_string(profile.cluster_id) + "/";
                artifacts.write(dir + "overlay.svg",
                                render_overlay_svg(result.basemap, profile.overlay, options));
                if (profile.has_timeline)
                    artifacts.write(dir + "timeline.svg",
                                    render_timeline_svg(profile, options));
            }
        });
    } catch (const std::exception& e) {
        finish_manifest(current_stage, e.what());
        throw Error("stage '" + current_stage + "' failed: " + e.what());
    }

    result.manifest = finish_manifest("", "");
    return result;
}

} // namespace tom

#endif
