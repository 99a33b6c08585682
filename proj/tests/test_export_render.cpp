#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "tom/artifacts.hpp"
#include "tom/config.hpp"
#include "tom/export.hpp"
#include "tom/render.hpp"

using namespace tom;

namespace {

TermGraph tiny_graph() {
    TermGraph g;
    g.nodes = {GraphNode{"speci", "Species", 3, 7}, GraphNode{"concept", "concept", 2, 4},
               GraphNode{"taxonomi", "Taxonomy & more", 1, 1}};
    g.edges = {{0, 1, 0.5}, {1, 2, 0.25}};
    label_components(g);
    return g;
}

Basemap tiny_basemap() {
    Basemap map;
    map.topics = {BasemapTopic{0, "Species", {"Species"}, 4, false},
                  BasemapTopic{1, "Taxonomy", {"Taxonomy"}, 3, false},
                  BasemapTopic{2, "residual", {"residual"}, 1, true}};
    map.S = {{1.0, 0.8, 0.0}, {0.8, 1.0, 0.05}, {0.0, 0.05, 1.0}};
    map.d = {{0.0, 0.2, 1.0}, {0.2, 0.0, 0.95}, {1.0, 0.95, 0.0}};
    map.overlap = map.S;
    map.link_threshold = 0.1;
    map.layout = {{0.1, 0.2}, {0.9, 0.3}, {0.5, 0.9}};
    return map;
}

double svg_radius(const std::string& svg, int topic) {
    std::regex re("id=\"topic-" + std::to_string(topic) + "\"[^/]*?r=\"([0-9.]+)\"");
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, re));
    return std::stod(m[1]);
}

} // namespace

TEST_CASE("graphml round trip preserves nodes, edges, weights") {
    TermGraph g = tiny_graph();
    TopicPartition part;
    part.k = 2;
    part.assignment = {0, 0, 1};
    part.topic_labels = {{"Species"}, {"Taxonomy"}};

    std::string xml = term_graph_to_graphml(g, &part);
    CHECK(xml.find("<node id=\"n0\">") != std::string::npos);
    CHECK(xml.find("Taxonomy &amp; more") != std::string::npos); // escaping
    CHECK(xml.find("0.500000") != std::string::npos);            // 6 fractional digits

    TermGraph back = term_graph_from_graphml(xml);
    REQUIRE(back.node_count() == g.node_count());
    REQUIRE(back.edge_count() == g.edge_count());
    for (size_t i = 0; i < g.node_count(); ++i) {
        CHECK(back.nodes[i].canonical == g.nodes[i].canonical);
        CHECK(back.nodes[i].display == g.nodes[i].display);
        CHECK(back.nodes[i].df == g.nodes[i].df);
        CHECK(back.nodes[i].total == g.nodes[i].total);
    }
    for (size_t e = 0; e < g.edge_count(); ++e) {
        CHECK(back.edges[e].u == g.edges[e].u);
        CHECK(back.edges[e].v == g.edges[e].v);
        CHECK(back.edges[e].w == doctest::Approx(g.edges[e].w).epsilon(1e-6));
    }
    CHECK(back.component == g.component);
}

TEST_CASE("dot export carries topics and weights") {
    TermGraph g = tiny_graph();
    std::string dot = term_graph_to_dot(g);
    CHECK(dot.find("graph termgraph {") == 0);
    CHECK(dot.find("n0 -- n1 [weight=0.500000]") != std::string::npos);
    CHECK(dot.find("topic=-1") != std::string::npos); // no partition given
}

TEST_CASE("basemap exports filter edges by the display threshold") {
    Basemap map = tiny_basemap();
    std::string xml = basemap_to_graphml(map);
    CHECK(xml.find("source=\"t0\" target=\"t1\"") != std::string::npos);
    CHECK(xml.find("source=\"t1\" target=\"t2\"") == std::string::npos); // 0.05 <= 0.1
    std::string dot = basemap_to_dot(map);
    CHECK(dot.find("t0 -- t1") != std::string::npos);
    CHECK(dot.find("t1 -- t2") == std::string::npos);
}

TEST_CASE("newick: two leaves at height 0.4") {
    Dendrogram d;
    d.leaf_ids = {"a", "b"};
    d.merges = {DendrogramMerge{0, 1, 0.4}};
    CHECK(dendrogram_to_newick(d) == "(a:0.4,b:0.4);");
}

TEST_CASE("newick: special characters are quoted") {
    Dendrogram d;
    d.leaf_ids = {"doc one", "doc(2)"};
    d.merges = {DendrogramMerge{0, 1, 0.5}};
    CHECK(dendrogram_to_newick(d) == "('doc one':0.5,'doc(2)':0.5);");
}

TEST_CASE("newick: re-parse recovers the merge-height multiset") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        size_t n = 2 + rng() % 9;
        auto dm = oracles::random_dissimilarity(rng, n);
        std::vector<std::string> ids;
        for (size_t i = 0; i < n; ++i) ids.push_back("doc " + std::to_string(i));
        Dendrogram dendro = average_linkage(dm, ids);
        std::string newick = dendrogram_to_newick(dendro);

        oracles::NewickParser parser(newick);
        std::vector<double> parsed = parser.heights();
        std::vector<double> expected;
        for (const DendrogramMerge& m : dendro.merges) expected.push_back(m.height);
        std::sort(parsed.begin(), parsed.end());
        std::sort(expected.begin(), expected.end());
        REQUIRE(parsed.size() == expected.size());
        for (size_t i = 0; i < parsed.size(); ++i)
            CHECK(parsed[i] == doctest::Approx(expected[i]).epsilon(1e-4));
    }
}

TEST_CASE("dendrogram json export holds n-1 merges") {
    std::mt19937 rng(42);
    auto dm = oracles::random_dissimilarity(rng, 7);
    std::vector<std::string> ids;
    for (size_t i = 0; i < 7; ++i) ids.push_back("x" + std::to_string(i));
    Dendrogram dendro = average_linkage(dm, ids);
    nlohmann::json j = dendrogram_to_json(dendro);
    CHECK(j.at("merges").size() == 6);
    Dendrogram back = dendrogram_from_json(j);
    REQUIRE(back.merges.size() == dendro.merges.size());
    CHECK(back.leaf_ids == dendro.leaf_ids);
    for (size_t i = 0; i < back.merges.size(); ++i)
        CHECK(back.merges[i].height == dendro.merges[i].height);
}

TEST_CASE("cluster assignment csv round trip") {
    ClusterAssignment a;
    a.doc_ids = {"d1", "d2, with comma", "d3", "d4"};
    a.labels = {0, 1, ClusterAssignment::kUnassigned, ClusterAssignment::kExcluded};
    a.cluster_count = 2;
    a.cluster_sizes = {1, 1};
    a.method_tag = "tom";
    std::string csv = cluster_assignment_to_csv(a);
    CHECK(csv.find("doc_id,cluster,method_tag") == 0);
    CHECK(csv.find("\"d2, with comma\",1,tom") != std::string::npos);
    CHECK(csv.find("d3,unassigned,tom") != std::string::npos);
    CHECK(csv.find("d4,excluded,tom") != std::string::npos);

    ClusterAssignment back = cluster_assignment_from_csv(csv);
    CHECK(back.doc_ids == a.doc_ids);
    CHECK(back.labels == a.labels);
    CHECK(back.method_tag == "tom");
    CHECK(back.cluster_count == 2);
}

TEST_CASE("crosstab csv: integer percent grid in Fig-5 orientation") {
    CrossTab ct;
    ct.row_labels = {1, 2};
    ct.col_labels = {0, 1, 2};
    ct.cells = {{14.4, 3.2, 82.4}, {50.0, 25.0, 25.0}};
    ct.raw = {{14, 3, 82}, {2, 1, 1}};
    ct.shared_docs = 103;
    std::string csv = crosstab_to_csv(ct);
    CHECK(csv == "cluster,0,1,2\n1,14,3,82\n2,50,25,25\n");
    std::string exact = crosstab_to_csv(ct, false);
    CHECK(exact.find("14.40") != std::string::npos);
}

TEST_CASE("similarity matrix csv carries ids and full precision") {
    std::vector<std::string> ids = {"a", "b"};
    std::vector<std::vector<double>> m = {{1.0, 0.25}, {0.25, 1.0}};
    std::string csv = similarity_matrix_to_csv(ids, m);
    CHECK(csv == "doc_id,a,b\na,1,0.25\nb,0.25,1\n");
    CHECK_THROWS_AS(similarity_matrix_to_csv({"a"}, m), ShapeError);
}

TEST_CASE("profile json holds overlay, keywords and the timeline triple") {
    ClusterProfile profile;
    profile.cluster_id = 3;
    profile.overlay.p = {0.25, 0.75};
    profile.diversity = 0.4;
    profile.keywords = {{"speci", 5}};
    profile.annual.first_year = 1990;
    profile.annual.values = {50, 50};
    profile.smoothed = moving_average(profile.annual, 5);
    profile.corpus_trend = profile.smoothed;
    profile.has_timeline = true;

    nlohmann::json j = profile_to_json(profile);
    CHECK(j.at("cluster") == 3);
    CHECK(j.at("overlay").at("diversity") == doctest::Approx(0.4));
    CHECK(j.at("overlay").at("support") == nlohmann::json::array({0, 1}));
    CHECK(j.at("keywords")[0].at("term") == "speci");
    CHECK(j.at("annual").at("first_year") == 1990);
    CHECK(j.at("smoothed").at("kind") == "moving_average");
}

TEST_CASE("timeseries and keyword csv") {
    TimeSeries ts;
    ts.first_year = 1999;
    ts.values = {50.0, 25.0, 25.0};
    std::string csv = timeseries_to_csv(ts);
    CHECK(csv == "year,value\n1999,50.0000\n2000,25.0000\n2001,25.0000\n");

    std::vector<KeywordProfileEntry> kw = {{"speci_concept", 4}, {"taxonomi", 2}};
    CHECK(keyword_profile_to_csv(kw) == "term,frequency\nspeci_concept,4\ntaxonomi,2\n");
}

TEST_CASE("config: defaults serialize explicitly and round trip losslessly") {
    PipelineConfig cfg;
    cfg.input_path = "corpus.csv";
    std::string toml = cfg.to_toml();
    // all defaults appear explicitly
    for (const char* key :
         {"top_n = 300", "min_df = 5", "edge_threshold = 0.05", "walk_length = 4",
          "min_component = 4", "link_threshold = 0.1", "layout_seed = 42",
          "min_cluster_size = 5", "deep_split = 1", "window = 5", "min_len = 2",
          "threads = 1"})
        CHECK(toml.find(key) != std::string::npos);

    PipelineConfig back = PipelineConfig::from_toml(toml);
    CHECK(back.to_toml() == toml);
    CHECK(back.input_path == "corpus.csv");
    CHECK(back.top_n == 300);
    CHECK(back.sources.author_keywords);
    CHECK(back.sources.title);
    CHECK(back.sources.reference_titles);
}

TEST_CASE("config: validation rejects out-of-range parameters") {
    PipelineConfig cfg;
    cfg.window = 4;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = PipelineConfig{};
    cfg.edge_threshold = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = PipelineConfig{};
    cfg.deep_split = 5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = PipelineConfig{};
    cfg.sources = DescriptorSources{false, false, false};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_toml("[graph]\nedge_threshold = nope\n"),
                    ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_toml("[input]\nsources = [\"bogus\"]\n"),
                    ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_file("/no/such/config.toml"), IoError);
    // typo'd keys fail loudly instead of being silently ignored
    CHECK_THROWS_AS(PipelineConfig::from_toml("[vocabulary]\ntop_m = 300\n"), ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_toml("[nosuch]\nkey = 1\n"), ConfigError);
}

TEST_CASE("render_overlay_svg: zero overlay draws outline-only minimum markers") {
    Basemap map = tiny_basemap();
    Overlay zero;
    zero.p = {0.0, 0.0, 0.0};
    RenderOptions options;
    std::string svg = render_overlay_svg(map, zero, options);
    CHECK(svg_radius(svg, 0) == doctest::Approx(options.min_radius));
    CHECK(svg_radius(svg, 1) == doctest::Approx(options.min_radius));
    CHECK(svg.find("fill=\"none\"") != std::string::npos);
    // residual topic hidden by default
    CHECK(svg.find("id=\"topic-2\"") == std::string::npos);
}

TEST_CASE("render_overlay_svg: unit overlay puts the loaded topic at max radius") {
    Basemap map = tiny_basemap();
    Overlay unit;
    unit.p = {1.0, 0.0, 0.0};
    RenderOptions options;
    std::string svg = render_overlay_svg(map, unit, options);
    CHECK(svg_radius(svg, 0) == doctest::Approx(options.max_radius));
    CHECK(svg_radius(svg, 1) == doctest::Approx(options.min_radius));
}

TEST_CASE("render_overlay_svg: area-proportional sizing, 4x share doubles radius") {
    Basemap map = tiny_basemap();
    Overlay o;
    o.p = {0.8, 0.2, 0.0};
    std::string svg = render_overlay_svg(map, o, RenderOptions{});
    double r0 = svg_radius(svg, 0);
    double r1 = svg_radius(svg, 1);
    CHECK(r0 / r1 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("render_overlay_svg: deterministic bytes, errors on missing layout") {
    Basemap map = tiny_basemap();
    Overlay o;
    o.p = {0.5, 0.5, 0.0};
    CHECK(render_overlay_svg(map, o) == render_overlay_svg(map, o));
    Basemap no_layout = map;
    no_layout.layout.clear();
    CHECK_THROWS_AS(render_overlay_svg(no_layout, o), DataError);
    Overlay wrong;
    wrong.p = {1.0};
    CHECK_THROWS_AS(render_overlay_svg(map, wrong), ShapeError);
}

TEST_CASE("render_timeline_svg: three polylines on a shared axis") {
    ClusterProfile profile;
    profile.cluster_id = 0;
    profile.annual.first_year = 1990;
    profile.annual.values = {10, 20, 30, 20, 20};
    profile.smoothed = moving_average(profile.annual, 5);
    profile.corpus_trend = profile.smoothed;
    profile.has_timeline = true;

    std::string svg = render_timeline_svg(profile);
    size_t count = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++count;
        pos += 9;
    }
    CHECK(count == 3);

    // year ticks span exactly the series range
    std::regex tick("class=\"xtick\"[^>]*>([0-9]{4})<");
    std::vector<int> years;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tick);
         it != std::sregex_iterator(); ++it)
        years.push_back(std::stoi((*it)[1]));
    REQUIRE_FALSE(years.empty());
    CHECK(*std::min_element(years.begin(), years.end()) == 1990);
    CHECK(*std::max_element(years.begin(), years.end()) == 1994);
}

TEST_CASE("render_timeline_svg: constant series is a horizontal polyline") {
    ClusterProfile profile;
    profile.annual.first_year = 2000;
    profile.annual.values = {25, 25, 25, 25};
    profile.smoothed = moving_average(profile.annual, 5);
    profile.corpus_trend = profile.smoothed;
    profile.has_timeline = true;
    std::string svg = render_timeline_svg(profile);

    std::regex poly("<polyline[^>]*points=\"([^\"]+)\"");
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, poly));
    std::string points = m[1];
    // all y coordinates equal
    std::regex pair("[0-9.]+,([0-9.]+)");
    std::vector<std::string> ys;
    for (auto it = std::sregex_iterator(points.begin(), points.end(), pair);
         it != std::sregex_iterator(); ++it)
        ys.push_back((*it)[1]);
    REQUIRE(ys.size() == 4);
    for (const std::string& y : ys) CHECK(y == ys[0]);

    ClusterProfile empty;
    CHECK_THROWS_AS(render_timeline_svg(empty), DataError);
}
