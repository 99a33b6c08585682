#ifndef TOM_TRENDS_HPP
#define TOM_TRENDS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tom/basemap.hpp"
#include "tom/corpus.hpp"
#include "tom/errors.hpp"
#include "tom/overlay.hpp"
#include "tom/text.hpp"
#include "tom/tree_cut.hpp"

namespace tom {

enum class TimeSeriesKind { Annual, MovingAverage };

struct TimeSeries {
    int first_year = 0;         // years run first_year .. first_year + size - 1
    std::vector<double> values; // percent, 0..100
    TimeSeriesKind kind = TimeSeriesKind::Annual;

    size_t size() const { return values.size(); }
    int last_year() const { return first_year + static_cast<int>(values.size()) - 1; }
};

/// Centered moving average with clipped windows at the series boundaries
/// (shorter effective windows at the ends, no padding).
inline TimeSeries moving_average(const TimeSeries& series, int window = 5) {
    if (window < 1 || window % 2 == 0)
        throw ConfigError("moving-average window must be odd and >= 1");
    int h = window / 2;
    int n = static_cast<int>(series.values.size());
    TimeSeries out;
    out.first_year = series.first_year;
    out.kind = TimeSeriesKind::MovingAverage;
    out.values.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int a = std::max(0, i - h);
        int b = std::min(n - 1, i + h);
        double sum = 0.0;
        for (int j = a; j <= b; ++j) sum += series.values[static_cast<size_t>(j)];
        out.values[static_cast<size_t>(i)] = sum / static_cast<double>(b - a + 1);
    }
    return out;
}

namespace detail {

inline std::pair<int, int> corpus_year_span(const Corpus& corpus) {
    std::optional<int> lo, hi;
    for (const CorpusRecord& rec : corpus.records) {
        if (!rec.year) continue;
        if (!lo || *rec.year < *lo) lo = *rec.year;
        if (!hi || *rec.year > *hi) hi = *rec.year;
    }
    if (!lo) throw DataError("corpus has no dated documents");
    return {*lo, *hi};
}

} // namespace detail

/// Annual relative size of a document set over the corpus year span:
/// 100 * |set docs dated y| / |dated set docs| for each year y. Undated
/// documents are excluded; their count is reported via undated_out.
inline TimeSeries annual_relative_size(const std::vector<const CorpusRecord*>& docs,
                                       const Corpus& corpus, size_t* undated_out = nullptr) {
    auto [lo, hi] = detail::corpus_year_span(corpus);
    TimeSeries ts;
    ts.first_year = lo;
    ts.kind = TimeSeriesKind::Annual;
    ts.values.assign(static_cast<size_t>(hi - lo + 1), 0.0);
    size_t dated = 0, undated = 0;
    for (const CorpusRecord* rec : docs) {
        if (!rec->year) {
            ++undated;
            continue;
        }
        ++dated;
        ts.values[static_cast<size_t>(*rec->year - lo)] += 1.0;
    }
    if (undated_out) *undated_out = undated;
    if (dated == 0) throw DataError("document set has no dated documents (no timeline)");
    for (double& v : ts.values) v = 100.0 * v / static_cast<double>(dated);
    return ts;
}

/// 5-year moving average of the whole corpus's annual relative size.
inline TimeSeries corpus_trendline(const Corpus& corpus, int window = 5) {
    std::vector<const CorpusRecord*> all;
    all.reserve(corpus.records.size());
    for (const CorpusRecord& rec : corpus.records) all.push_back(&rec);
    return moving_average(annual_relative_size(all, corpus), window);
}

struct KeywordProfileEntry {
    std::string term;
    long long frequency = 0;
};

/// Frequency ranking of normalized author keywords (kept as phrases) and
/// reference-title keywords over a document set; ties break
/// lexicographically.
inline std::vector<KeywordProfileEntry> keyword_profile(
    const std::vector<const CorpusRecord*>& docs, const StopwordSet& stopwords,
    int top_k = 20, int min_len = 2) {
    if (docs.empty()) throw ConfigError("keyword_profile requires a non-empty cluster");
    std::map<std::string, long long> freq;
    for (const CorpusRecord* rec : docs) {
        for (const std::string& kw : rec->author_keywords)
            if (auto c = normalize_term(kw, stopwords, min_len)) ++freq[*c];
        for (const std::string& title : rec->reference_titles)
            for (const std::string& tok : detail::split_ws(title))
                if (auto c = normalize_term(tok, stopwords, min_len)) ++freq[*c];
    }
    std::vector<KeywordProfileEntry> entries;
    entries.reserve(freq.size());
    for (auto& [term, n] : freq) entries.push_back(KeywordProfileEntry{term, n});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const KeywordProfileEntry& a, const KeywordProfileEntry& b) {
                         if (a.frequency != b.frequency) return a.frequency > b.frequency;
                         return a.term < b.term;
                     });
    if (top_k >= 0 && entries.size() > static_cast<size_t>(top_k))
        entries.resize(static_cast<size_t>(top_k));
    return entries;
}

/// Row-percentage contingency table of two clusterings (rows: A, columns:
/// B), over documents assigned in both.
struct CrossTab {
    std::vector<int> row_labels;
    std::vector<int> col_labels;
    std::vector<std::vector<double>> cells;   // percent of row totals
    std::vector<std::vector<long long>> raw;  // shared doc counts
    size_t shared_docs = 0;
};

inline CrossTab cross_tabulate(const ClusterAssignment& a, const ClusterAssignment& b) {
    std::unordered_map<std::string, int> b_label;
    for (size_t i = 0; i < b.doc_ids.size(); ++i)
        if (b.labels[i] >= 0) b_label[b.doc_ids[i]] = b.labels[i];

    std::map<std::pair<int, int>, long long> joint;
    std::map<int, long long> row_totals;
    std::map<int, long long> col_totals;
    size_t shared = 0;
    for (size_t i = 0; i < a.doc_ids.size(); ++i) {
        if (a.labels[i] < 0) continue;
        auto it = b_label.find(a.doc_ids[i]);
        if (it == b_label.end()) continue;
        ++shared;
        ++joint[{a.labels[i], it->second}];
        ++row_totals[a.labels[i]];
        ++col_totals[it->second];
    }
    if (shared == 0) throw DataError("cross-tabulation has no shared documents");

    CrossTab ct;
    ct.shared_docs = shared;
    for (auto& [r, n] : row_totals) ct.row_labels.push_back(r);
    for (auto& [c, n] : col_totals) ct.col_labels.push_back(c);
    ct.raw.assign(ct.row_labels.size(), std::vector<long long>(ct.col_labels.size(), 0));
    ct.cells.assign(ct.row_labels.size(), std::vector<double>(ct.col_labels.size(), 0.0));
    std::unordered_map<int, size_t> col_pos;
    for (size_t c = 0; c < ct.col_labels.size(); ++c) col_pos[ct.col_labels[c]] = c;
    for (size_t r = 0; r < ct.row_labels.size(); ++r) {
        long long total = row_totals[ct.row_labels[r]];
        for (size_t c = 0; c < ct.col_labels.size(); ++c) {
            auto it = joint.find({ct.row_labels[r], ct.col_labels[c]});
            long long n = it == joint.end() ? 0 : it->second;
            ct.raw[r][c] = n;
            ct.cells[r][c] = 100.0 * static_cast<double>(n) / static_cast<double>(total);
        }
    }
    return ct;
}

/// Per-cluster analytics: overlay, keyword profile and the timeline triple
/// (annual series, its moving average, the corpus-wide moving average).
struct ClusterProfile {
    int cluster_id = 0;
    Overlay overlay;
    double diversity = 0.0;
    std::vector<KeywordProfileEntry> keywords;
    TimeSeries annual;
    TimeSeries smoothed;
    TimeSeries corpus_trend;
    bool has_timeline = false;
    size_t undated_docs = 0;
    std::vector<std::string> issues; // per-cluster problems, batch never aborts
};

inline std::vector<ClusterProfile> build_cluster_profiles(
    const ClusterAssignment& assignment, const Corpus& corpus, const TermDocMatrix& matrix,
    const TopicPartition& partition, const Basemap& basemap, const StopwordSet& stopwords,
    int window = 5, int top_k = 20, int min_len = 2) {
    std::unordered_map<std::string, const CorpusRecord*> by_id;
    for (const CorpusRecord& rec : corpus.records) by_id[rec.id] = &rec;

    std::map<int, std::vector<std::string>> members;
    for (size_t i = 0; i < assignment.doc_ids.size(); ++i)
        if (assignment.labels[i] >= 0)
            members[assignment.labels[i]].push_back(assignment.doc_ids[i]);

    std::optional<TimeSeries> trend;
    try {
        trend = corpus_trendline(corpus, window);
    } catch (const DataError&) {
        // undated corpus: profiles carry no timelines
    }

    std::vector<ClusterProfile> profiles;
    for (auto& [cluster, ids] : members) {
        ClusterProfile profile;
        profile.cluster_id = cluster;

        std::vector<const CorpusRecord*> docs;
        for (const std::string& id : ids) docs.push_back(by_id.at(id));

        try {
            profile.overlay = compute_overlay(ids, matrix, partition);
            profile.diversity = stirling_diversity(profile.overlay, basemap.d);
        } catch (const Error& e) {
            profile.issues.push_back(std::string("overlay: ") + e.what());
        }
        try {
            profile.keywords = keyword_profile(docs, stopwords, top_k, min_len);
            if (profile.keywords.empty())
                profile.issues.push_back("keywords: cluster has no keywords");
        } catch (const Error& e) {
            profile.issues.push_back(std::string("keywords: ") + e.what());
        }
        if (trend) {
            try {
                profile.annual = annual_relative_size(docs, corpus, &profile.undated_docs);
                profile.smoothed = moving_average(profile.annual, window);
                profile.corpus_trend = *trend;
                profile.has_timeline = true;
            } catch (const Error& e) {
                profile.issues.push_back(std::string("timeline: ") + e.what());
            }
        } else {
            profile.issues.push_back("timeline: corpus has no dated documents");
        }
        profiles.push_back(std::move(profile));
    }
    return profiles;
}

} // namespace tom

#endif
