#ifndef TOM_MATRIX_HPP
#define TOM_MATRIX_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "tom/corpus.hpp"
#include "tom/errors.hpp"
#include "tom/text.hpp"

namespace tom {

struct Term {
    std::string canonical; // normalized, stemmed, '_'-joined phrases
    std::string display;   // most frequent surface form
};

/// Sparse term x document occurrence counts over normalized descriptors.
/// Terms are indexed lexicographically by canonical form; the document
/// index preserves corpus order.
struct TermDocMatrix {
    std::vector<Term> terms;
    std::vector<std::string> docs;
    std::vector<std::vector<std::pair<int, int>>> counts; // per term: (doc, count), doc ascending
    std::vector<int> df;
    std::vector<long long> term_total; // total occurrences per term

    size_t term_count() const { return terms.size(); }
    size_t doc_count() const { return docs.size(); }

    int term_index(const std::string& canonical) const {
        auto it = std::lower_bound(terms.begin(), terms.end(), canonical,
                                   [](const Term& t, const std::string& c) {
                                       return t.canonical < c;
                                   });
        if (it == terms.end() || it->canonical != canonical) return -1;
        return static_cast<int>(it - terms.begin());
    }

};

inline TermDocMatrix build_term_doc_matrix(const Corpus& corpus,
                                           const DescriptorSources& sources,
                                           const StopwordSet& stopwords,
                                           int min_len = 2) {
    if (corpus.empty()) throw DataError("corpus is empty");

    struct Row {
        std::vector<std::pair<int, int>> cells;
        long long total = 0;
        std::map<std::string, long long> surfaces;
    };
    std::map<std::string, Row> rows; // canonical -> row, lexicographic

    for (size_t d = 0; d < corpus.records.size(); ++d) {
        std::unordered_map<std::string, int> doc_counts;
        std::unordered_map<std::string, std::map<std::string, long long>> doc_surfaces;
        for (const std::string& raw : extract_descriptors(corpus.records[d], sources)) {
            auto canonical = normalize_term(raw, stopwords, min_len);
            if (!canonical) continue;
            ++doc_counts[*canonical];
            ++doc_surfaces[*canonical][detail::trim(raw)];
        }
        for (auto& [canonical, count] : doc_counts) {
            Row& row = rows[canonical];
            row.cells.emplace_back(static_cast<int>(d), count);
            row.total += count;
            for (auto& [surface, n] : doc_surfaces[canonical]) row.surfaces[surface] += n;
        }
    }
    if (rows.empty()) throw DataError("no terms survive normalization (empty vocabulary)");

    TermDocMatrix m;
    m.docs.reserve(corpus.records.size());
    for (const CorpusRecord& rec : corpus.records) m.docs.push_back(rec.id);
    for (auto& [canonical, row] : rows) {
        // display form: most frequent surface, ties to the smallest string
        std::string display;
        long long best = -1;
        for (const auto& [surface, n] : row.surfaces) {
            if (n > best) {
                best = n;
                display = surface;
            }
        }
        m.terms.push_back(Term{canonical, display});
        std::sort(row.cells.begin(), row.cells.end());
        m.df.push_back(static_cast<int>(row.cells.size()));
        m.term_total.push_back(row.total);
        m.counts.push_back(std::move(row.cells));
    }
    return m;
}

/// Keeps the top_n terms by document frequency (ties broken
/// lexicographically by canonical form), then drops terms with df below
/// min_df. The document index is unchanged.
inline TermDocMatrix select_vocabulary(const TermDocMatrix& matrix, int top_n, int min_df) {
    if (top_n < 2) throw ConfigError("top_n must be >= 2");
    if (min_df < 1) throw ConfigError("min_df must be >= 1");

    std::vector<int> order(matrix.terms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (matrix.df[static_cast<size_t>(a)] != matrix.df[static_cast<size_t>(b)])
            return matrix.df[static_cast<size_t>(a)] > matrix.df[static_cast<size_t>(b)];
        return matrix.terms[static_cast<size_t>(a)].canonical <
               matrix.terms[static_cast<size_t>(b)].canonical;
    });
    if (static_cast<size_t>(top_n) < order.size()) order.resize(static_cast<size_t>(top_n));

    std::vector<int> kept;
    for (int t : order)
        if (matrix.df[static_cast<size_t>(t)] >= min_df) kept.push_back(t);
    if (kept.size() < 2) throw DataError("vocabulary too small after selection");
    std::sort(kept.begin(), kept.end()); // restore lexicographic term order

    TermDocMatrix out;
    out.docs = matrix.docs;
    out.terms.reserve(kept.size());
    for (int t : kept) {
        size_t ti = static_cast<size_t>(t);
        out.terms.push_back(matrix.terms[ti]);
        out.counts.push_back(matrix.counts[ti]);
        out.df.push_back(matrix.df[ti]);
        out.term_total.push_back(matrix.term_total[ti]);
    }
    return out;
}

} // namespace tom

#endif
