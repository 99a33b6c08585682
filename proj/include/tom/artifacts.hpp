#ifndef TOM_ARTIFACTS_HPP
#define TOM_ARTIFACTS_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tom/basemap.hpp"
#include "tom/community.hpp"
#include "tom/corpus.hpp"
#include "tom/errors.hpp"
#include "tom/linkage.hpp"
#include "tom/matrix.hpp"
#include "tom/overlay.hpp"
#include "tom/trends.hpp"

#include <json.hpp>

namespace tom {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---- corpus ----

inline nlohmann::json corpus_to_json(const Corpus& corpus) {
    nlohmann::json records = nlohmann::json::array();
    for (const CorpusRecord& rec : corpus.records) {
        nlohmann::json r;
        r["id"] = rec.id;
        if (rec.year) r["year"] = *rec.year;
        r["title"] = rec.title;
        r["author_keywords"] = rec.author_keywords;
        r["reference_titles"] = rec.reference_titles;
        if (rec.abstract) r["abstract"] = *rec.abstract;
        records.push_back(std::move(r));
    }
    return nlohmann::json{
        {"provenance",
         {{"source", corpus.provenance.source},
          {"format", corpus.provenance.format},
          {"accepted", corpus.provenance.report.accepted},
          {"skipped", corpus.provenance.report.skipped}}},
        {"records", std::move(records)},
    };
}

inline Corpus corpus_from_json(const nlohmann::json& j) {
    Corpus corpus;
    corpus.provenance.source = j.at("provenance").at("source").get<std::string>();
    corpus.provenance.format = j.at("provenance").at("format").get<std::string>();
    corpus.provenance.report.accepted = j.at("provenance").at("accepted").get<size_t>();
    corpus.provenance.report.skipped = j.at("provenance").at("skipped").get<size_t>();
    for (const auto& r : j.at("records")) {
        CorpusRecord rec;
        rec.id = r.at("id").get<std::string>();
        if (r.contains("year")) rec.year = r.at("year").get<int>();
        rec.title = r.value("title", std::string{});
        if (r.contains("author_keywords"))
            rec.author_keywords = r.at("author_keywords").get<std::vector<std::string>>();
        if (r.contains("reference_titles"))
            rec.reference_titles = r.at("reference_titles").get<std::vector<std::string>>();
        if (r.contains("abstract")) rec.abstract = r.at("abstract").get<std::string>();
        corpus.records.push_back(std::move(rec));
    }
    if (corpus.records.empty()) throw DataError("corpus artifact holds no records");
    return corpus;
}

// ---- term-document matrix ----

inline nlohmann::json matrix_to_json(const TermDocMatrix& matrix) {
    nlohmann::json terms = nlohmann::json::array();
    for (size_t t = 0; t < matrix.terms.size(); ++t)
        terms.push_back(nlohmann::json{{"canonical", matrix.terms[t].canonical},
                                       {"display", matrix.terms[t].display},
                                       {"df", matrix.df[t]},
                                       {"total", matrix.term_total[t]}});
    nlohmann::json cells = nlohmann::json::array();
    for (size_t t = 0; t < matrix.counts.size(); ++t)
        for (auto [d, c] : matrix.counts[t])
            cells.push_back(nlohmann::json::array({static_cast<int>(t), d, c}));
    return nlohmann::json{
        {"docs", matrix.docs}, {"terms", std::move(terms)}, {"counts", std::move(cells)}};
}

inline TermDocMatrix matrix_from_json(const nlohmann::json& j) {
    TermDocMatrix m;
    m.docs = j.at("docs").get<std::vector<std::string>>();
    for (const auto& t : j.at("terms")) {
        m.terms.push_back(Term{t.at("canonical").get<std::string>(),
                               t.at("display").get<std::string>()});
        m.df.push_back(t.at("df").get<int>());
        m.term_total.push_back(t.at("total").get<long long>());
    }
    m.counts.assign(m.terms.size(), {});
    for (const auto& cell : j.at("counts"))
        m.counts.at(cell.at(0).get<size_t>())
            .emplace_back(cell.at(1).get<int>(), cell.at(2).get<int>());
    return m;
}

// ---- topic partition ----

inline nlohmann::json partition_to_json(const TopicPartition& partition) {
    return nlohmann::json{{"k", partition.k},
                          {"assignment", partition.assignment},
                          {"labels", partition.topic_labels},
                          {"residual_topic", partition.residual_topic}};
}

inline TopicPartition partition_from_json(const nlohmann::json& j) {
    TopicPartition p;
    p.k = j.at("k").get<int>();
    p.assignment = j.at("assignment").get<std::vector<int>>();
    p.topic_labels = j.at("labels").get<std::vector<std::vector<std::string>>>();
    p.residual_topic = j.at("residual_topic").get<int>();
    return p;
}

// ---- basemap ----

inline nlohmann::json basemap_to_json(const Basemap& map) {
    nlohmann::json topics = nlohmann::json::array();
    for (const BasemapTopic& t : map.topics)
        topics.push_back(nlohmann::json{{"id", t.id},
                                        {"label", t.label},
                                        {"label_terms", t.label_terms},
                                        {"members", t.size},
                                        {"residual", t.residual}});
    nlohmann::json j{{"topics", std::move(topics)},
                     {"overlap", map.overlap},
                     {"S", map.S},
                     {"d", map.d},
                     {"link_threshold", map.link_threshold}};
    if (map.has_layout()) {
        nlohmann::json layout = nlohmann::json::array();
        for (auto [x, y] : map.layout) layout.push_back(nlohmann::json::array({x, y}));
        j["layout"] = std::move(layout);
    }
    return j;
}

inline Basemap basemap_from_json(const nlohmann::json& j) {
    Basemap map;
    for (const auto& t : j.at("topics")) {
        BasemapTopic topic;
        topic.id = t.at("id").get<int>();
        topic.label = t.at("label").get<std::string>();
        topic.label_terms = t.at("label_terms").get<std::vector<std::string>>();
        topic.size = t.at("members").get<int>();
        topic.residual = t.at("residual").get<bool>();
        map.topics.push_back(std::move(topic));
    }
    map.overlap = j.at("overlap").get<std::vector<std::vector<double>>>();
    map.S = j.at("S").get<std::vector<std::vector<double>>>();
    map.d = j.at("d").get<std::vector<std::vector<double>>>();
    map.link_threshold = j.at("link_threshold").get<double>();
    if (j.contains("layout"))
        for (const auto& p : j.at("layout"))
            map.layout.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return map;
}

// ---- overlays ----

inline nlohmann::json overlay_to_json(const Overlay& overlay, double diversity) {
    return nlohmann::json{{"doc_ids", overlay.doc_ids},
                          {"p", overlay.p},
                          {"support", overlay.support()},
                          {"diversity", diversity}};
}

inline nlohmann::json overlays_to_json(const std::vector<Overlay>& overlays,
                                       const std::vector<double>& diversities) {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < overlays.size(); ++i)
        arr.push_back(overlay_to_json(overlays[i], diversities[i]));
    return nlohmann::json{{"k", overlays.empty() ? 0 : overlays[0].k()},
                          {"overlays", std::move(arr)}};
}

inline std::vector<Overlay> overlays_from_json(const nlohmann::json& j) {
    std::vector<Overlay> out;
    for (const auto& o : j.at("overlays")) {
        Overlay overlay;
        overlay.doc_ids = o.at("doc_ids").get<std::vector<std::string>>();
        overlay.p = o.at("p").get<std::vector<double>>();
        out.push_back(std::move(overlay));
    }
    return out;
}

// ---- cluster profile ----

inline nlohmann::json timeseries_to_json(const TimeSeries& ts) {
    return nlohmann::json{
        {"first_year", ts.first_year},
        {"values", ts.values},
        {"kind", ts.kind == TimeSeriesKind::Annual ? "annual" : "moving_average"}};
}

inline nlohmann::json profile_to_json(const ClusterProfile& profile) {
    nlohmann::json keywords = nlohmann::json::array();
    for (const KeywordProfileEntry& e : profile.keywords)
        keywords.push_back(nlohmann::json{{"term", e.term}, {"frequency", e.frequency}});
    nlohmann::json j{{"cluster", profile.cluster_id},
                     {"overlay", overlay_to_json(profile.overlay, profile.diversity)},
                     {"keywords", std::move(keywords)},
                     {"undated_docs", profile.undated_docs},
                     {"issues", profile.issues}};
    if (profile.has_timeline) {
        j["annual"] = timeseries_to_json(profile.annual);
        j["smoothed"] = timeseries_to_json(profile.smoothed);
        j["corpus_trend"] = timeseries_to_json(profile.corpus_trend);
    }
    return j;
}

// ---- dendrogram ----

inline nlohmann::json dendrogram_to_json(const Dendrogram& dendro) {
    nlohmann::json merges = nlohmann::json::array();
    for (const DendrogramMerge& m : dendro.merges)
        merges.push_back(
            nlohmann::json{{"left", m.left}, {"right", m.right}, {"height", m.height}});
    return nlohmann::json{{"leaf_ids", dendro.leaf_ids}, {"merges", std::move(merges)}};
}

inline Dendrogram dendrogram_from_json(const nlohmann::json& j) {
    Dendrogram d;
    d.leaf_ids = j.at("leaf_ids").get<std::vector<std::string>>();
    for (const auto& m : j.at("merges"))
        d.merges.push_back(DendrogramMerge{m.at("left").get<int>(), m.at("right").get<int>(),
                                           m.at("height").get<double>()});
    return d;
}

} // namespace tom

#endif
