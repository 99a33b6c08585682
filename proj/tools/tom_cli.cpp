// tom: topic overlay mapping pipeline over bibliographic corpora.
//
// Subcommands mirror the pipeline stages and exchange artifacts through
// the output directory, so each stage can rerun from serialized inputs.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tom/tom.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    int threads = 0;
    bool quiet = false;
    bool dump_config = false;
};

tom::PipelineConfig effective_config(const CliOptions& cli) {
    tom::PipelineConfig config;
    if (!cli.config_path.empty()) config = tom::PipelineConfig::from_file(cli.config_path);
    if (!cli.out_dir.empty()) config.output_dir = cli.out_dir;
    if (cli.seed >= 0) config.layout_seed = static_cast<uint32_t>(cli.seed);
    if (cli.threads > 0) config.threads = cli.threads;
    return config;
}

nlohmann::json load_json(const fs::path& path) {
    return nlohmann::json::parse(tom::read_text_file(path));
}

tom::Corpus load_corpus(const fs::path& out) {
    return tom::corpus_from_json(load_json(out / "corpus.json"));
}

tom::TermDocMatrix load_matrix(const fs::path& out) {
    return tom::matrix_from_json(load_json(out / "matrix.json"));
}

tom::TermGraph load_graph(const fs::path& out) {
    return tom::term_graph_from_graphml(tom::read_text_file(out / "termgraph.graphml"));
}

tom::TopicPartition load_partition(const fs::path& out) {
    return tom::partition_from_json(load_json(out / "topics.json"));
}

tom::Basemap load_basemap(const fs::path& out) {
    return tom::basemap_from_json(load_json(out / "basemap.json"));
}

tom::StopwordSet load_stopwords(const tom::PipelineConfig& config) {
    return config.stopword_path.empty() ? tom::StopwordSet::builtin()
                                        : tom::StopwordSet::from_file(config.stopword_path);
}

void write_artifact(const fs::path& out, const std::string& rel, const std::string& content,
                    bool quiet) {
    fs::path path = out / rel;
    fs::create_directories(path.parent_path());
    tom::write_text_file(path, content);
    if (!quiet) std::fprintf(stderr, "[tom] wrote %s\n", path.string().c_str());
}

std::vector<tom::ClusterProfile> build_profiles(const tom::PipelineConfig& config,
                                                const fs::path& out) {
    tom::Corpus corpus = load_corpus(out);
    tom::TermDocMatrix matrix = load_matrix(out);
    tom::TopicPartition partition = load_partition(out);
    tom::Basemap basemap = load_basemap(out);
    tom::ClusterAssignment tom_clusters =
        tom::cluster_assignment_from_csv(tom::read_text_file(out / "tom_clusters.csv"));
    return tom::build_cluster_profiles(tom_clusters, corpus, matrix, partition, basemap,
                                       load_stopwords(config), config.window,
                                       config.top_keywords, config.min_len);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topic overlay mapping for bibliographic corpora"};
    app.require_subcommand(0, 1);

    CliOptions cli;
    app.add_option("--config", cli.config_path, "Pipeline config file (TOML)");
    app.add_option("--out", cli.out_dir, "Artifact directory (overrides config)");
    app.add_option("--seed", cli.seed, "Layout seed (overrides config)");
    app.add_option("--threads", cli.threads, "Worker thread cap (overrides config)");
    app.add_flag("--quiet", cli.quiet, "Suppress progress output");
    app.add_flag("--dump-config", cli.dump_config,
                 "Print the effective config as TOML and exit");

    std::string input_path, input_format = "csv", doc_list;
    bool pairwise = false;

    CLI::App* cmd_ingest = app.add_subcommand("ingest", "Parse a corpus file");
    cmd_ingest->add_option("--input", input_path, "Corpus file");
    cmd_ingest->add_option("--format", input_format, "wos-tab | csv | jsonl");

    app.add_subcommand("termgraph", "Build the term-document matrix and term graph");
    app.add_subcommand("topics", "Detect topics on the term graph");
    app.add_subcommand("basemap", "Build the topic basemap and layout");

    CLI::App* cmd_overlay =
        app.add_subcommand("overlay", "Compute document overlays over the basemap");
    cmd_overlay->add_option("--docs", doc_list,
                            "Comma-separated doc ids: print their set overlay instead");
    cmd_overlay->add_flag("--pairwise", pairwise,
                          "Also export the pairwise PWCS matrix as pwcs_matrix.csv");

    app.add_subcommand("cluster", "TOM clustering from overlays (PWCS + linkage + tree cut)");
    app.add_subcommand("baseline", "VSM tf-idf baseline clustering");
    app.add_subcommand("trends", "Per-cluster keyword profiles and timelines");
    app.add_subcommand("crosstab", "Cross-tabulate TOM vs VSM clusterings");
    app.add_subcommand("render", "Render per-cluster overlay and timeline SVGs");

    CLI::App* cmd_run = app.add_subcommand("run", "Run the full pipeline");
    cmd_run->add_option("--input", input_path, "Corpus file (overrides config)");
    cmd_run->add_option("--format", input_format, "wos-tab | csv | jsonl");

    CLI11_PARSE(app, argc, argv);

    try {
        tom::PipelineConfig config = effective_config(cli);
        fs::path out = config.output_dir;

        if (cli.dump_config && app.get_subcommands().empty()) {
            std::cout << config.to_toml();
            return 0;
        }
        if (app.get_subcommands().empty()) {
            std::cout << app.help();
            return 0;
        }
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();

        if (name == "ingest") {
            if (!input_path.empty()) {
                config.input_path = input_path;
                config.input_format = input_format;
            }
            if (config.input_path.empty())
                throw tom::ConfigError("ingest requires --input or input.path in the config");
            tom::Corpus corpus = tom::parse_records_file(
                config.input_path, tom::corpus_format_from_string(config.input_format));
            fs::create_directories(out);
            write_artifact(out, "corpus.json", tom::corpus_to_json(corpus).dump(2) + "\n",
                           cli.quiet);
            if (!cli.quiet)
                std::fprintf(stderr, "[tom] %zu records (%zu rows skipped)\n", corpus.size(),
                             corpus.provenance.report.skipped);
        } else if (name == "termgraph") {
            tom::Corpus corpus = load_corpus(out);
            tom::TermDocMatrix full = tom::build_term_doc_matrix(
                corpus, config.sources, load_stopwords(config), config.min_len);
            tom::TermDocMatrix matrix =
                tom::select_vocabulary(full, config.top_n, config.min_df);
            tom::TermGraph graph =
                tom::build_term_graph(matrix, config.edge_threshold, config.threads);
            write_artifact(out, "matrix.json", tom::matrix_to_json(matrix).dump(2) + "\n",
                           cli.quiet);
            write_artifact(out, "termgraph.graphml", tom::term_graph_to_graphml(graph),
                           cli.quiet);
            write_artifact(out, "termgraph.dot", tom::term_graph_to_dot(graph), cli.quiet);
        } else if (name == "topics") {
            tom::TermGraph graph = load_graph(out);
            tom::TopicPartition partition =
                tom::detect_topics(graph, config.walk_length, config.min_component);
            write_artifact(out, "topics.json", tom::partition_to_json(partition).dump(2) + "\n",
                           cli.quiet);
            write_artifact(out, "termgraph.graphml",
                           tom::term_graph_to_graphml(graph, &partition), cli.quiet);
            write_artifact(out, "termgraph.dot", tom::term_graph_to_dot(graph, &partition),
                           cli.quiet);
        } else if (name == "basemap") {
            tom::TermGraph graph = load_graph(out);
            tom::TopicPartition partition = load_partition(out);
            tom::Basemap basemap =
                tom::build_basemap(graph, partition, config.link_threshold);
            basemap.layout = tom::basemap_layout(basemap, config.layout_seed);
            write_artifact(out, "basemap.json", tom::basemap_to_json(basemap).dump(2) + "\n",
                           cli.quiet);
            write_artifact(out, "basemap.graphml", tom::basemap_to_graphml(basemap),
                           cli.quiet);
        } else if (name == "overlay") {
            tom::TermDocMatrix matrix = load_matrix(out);
            tom::TopicPartition partition = load_partition(out);
            tom::Basemap basemap = load_basemap(out);
            if (!doc_list.empty()) {
                std::vector<std::string> ids;
                for (const std::string& id : tom::detail::split(doc_list, ','))
                    ids.push_back(tom::detail::trim(id));
                tom::Overlay overlay = tom::compute_overlay(ids, matrix, partition);
                double diversity =
                    overlay.zero() ? 0.0 : tom::stirling_diversity(overlay, basemap.d);
                std::cout << tom::overlay_to_json(overlay, diversity).dump(2) << "\n";
            } else {
                std::vector<tom::Overlay> overlays;
                std::vector<double> diversities;
                for (const std::string& id : matrix.docs) {
                    tom::Overlay o = tom::compute_overlay({id}, matrix, partition);
                    diversities.push_back(
                        o.zero() ? 0.0 : tom::stirling_diversity(o, basemap.d));
                    overlays.push_back(std::move(o));
                }
                write_artifact(out, "overlays.json",
                               tom::overlays_to_json(overlays, diversities).dump(2) + "\n",
                               cli.quiet);
                if (pairwise) {
                    std::vector<tom::Overlay> nonzero;
                    std::vector<std::string> ids;
                    for (size_t d = 0; d < overlays.size(); ++d) {
                        if (overlays[d].zero()) continue;
                        nonzero.push_back(overlays[d]);
                        ids.push_back(matrix.docs[d]);
                    }
                    auto phi = tom::pairwise_pwcs_matrix(nonzero, basemap.S, config.threads);
                    write_artifact(out, "pwcs_matrix.csv",
                                   tom::similarity_matrix_to_csv(ids, phi), cli.quiet);
                }
            }
        } else if (name == "cluster") {
            tom::TermDocMatrix matrix = load_matrix(out);
            tom::Basemap basemap = load_basemap(out);
            std::vector<tom::Overlay> overlays =
                tom::overlays_from_json(load_json(out / "overlays.json"));
            tom::DocClusteringResult res =
                tom::cluster_overlays(matrix.docs, overlays, basemap.S,
                                      config.min_cluster_size, config.deep_split,
                                      config.threads);
            write_artifact(out, "tom_dendrogram.newick",
                           tom::dendrogram_to_newick(res.dendrogram) + "\n", cli.quiet);
            write_artifact(out, "tom_dendrogram.json",
                           tom::dendrogram_to_json(res.dendrogram).dump(2) + "\n", cli.quiet);
            write_artifact(out, "tom_clusters.csv",
                           tom::cluster_assignment_to_csv(res.assignment), cli.quiet);
        } else if (name == "baseline") {
            tom::TermDocMatrix matrix = load_matrix(out);
            tom::DocClusteringResult res = tom::vsm_cluster(
                matrix, config.min_cluster_size, config.deep_split, config.threads);
            write_artifact(out, "vsm_dendrogram.newick",
                           tom::dendrogram_to_newick(res.dendrogram) + "\n", cli.quiet);
            write_artifact(out, "vsm_dendrogram.json",
                           tom::dendrogram_to_json(res.dendrogram).dump(2) + "\n", cli.quiet);
            write_artifact(out, "vsm_clusters.csv",
                           tom::cluster_assignment_to_csv(res.assignment), cli.quiet);
        } else if (name == "crosstab") {
            tom::ClusterAssignment a = tom::cluster_assignment_from_csv(
                tom::read_text_file(out / "tom_clusters.csv"));
            tom::ClusterAssignment b = tom::cluster_assignment_from_csv(
                tom::read_text_file(out / "vsm_clusters.csv"));
            tom::CrossTab ct = tom::cross_tabulate(a, b);
            write_artifact(out, "crosstab.csv", tom::crosstab_to_csv(ct), cli.quiet);
        } else if (name == "trends") {
            for (const tom::ClusterProfile& profile : build_profiles(config, out)) {
                std::string dir = "profiles/" + std::to_string(profile.cluster_id) + "/";
                write_artifact(out, dir + "keywords.csv",
                               tom::keyword_profile_to_csv(profile.keywords), cli.quiet);
                write_artifact(out, dir + "profile.json",
                               tom::profile_to_json(profile).dump(2) + "\n", cli.quiet);
                if (profile.has_timeline)
                    write_artifact(out, dir + "timeline.csv",
                                   tom::timeseries_to_csv(profile.annual), cli.quiet);
            }
        } else if (name == "render") {
            tom::Basemap basemap = load_basemap(out);
            tom::RenderOptions options;
            options.edge_display_threshold = config.link_threshold;
            for (const tom::ClusterProfile& profile : build_profiles(config, out)) {
                std::string dir = "profiles/" + std::to_string(profile.cluster_id) + "/";
                write_artifact(out, dir + "overlay.svg",
                               tom::render_overlay_svg(basemap, profile.overlay, options),
                               cli.quiet);
                if (profile.has_timeline)
                    write_artifact(out, dir + "timeline.svg",
                                   tom::render_timeline_svg(profile, options), cli.quiet);
            }
        } else if (name == "run") {
            if (!input_path.empty()) {
                config.input_path = input_path;
                config.input_format = input_format;
            }
            if (cli.dump_config) {
                std::cout << config.to_toml();
                return 0;
            }
            tom::PipelineResult result = tom::run_pipeline(config, cli.quiet);
            if (!cli.quiet)
                std::fprintf(stderr,
                             "[tom] done: %zu records, %d topics, %d TOM / %d VSM clusters\n",
                             result.corpus.size(), result.partition.k,
                             result.tom.assignment.cluster_count,
                             result.vsm.assignment.cluster_count);
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "tom: error: %s\n", e.what());
        return 1;
    }
}
