#ifndef TOM_CORPUS_HPP
#define TOM_CORPUS_HPP

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tom/errors.hpp"
#include "tom/strings.hpp"
#include "tom/text.hpp"

#include <json.hpp>

namespace tom {

enum class CorpusFormat { WosTab, Csv, Jsonl };

inline const char* to_string(CorpusFormat f) {
    switch (f) {
        case CorpusFormat::WosTab: return "wos-tab";
        case CorpusFormat::Csv: return "csv";
        case CorpusFormat::Jsonl: return "jsonl";
    }
    return "?";
}

inline CorpusFormat corpus_format_from_string(const std::string& tag) {
    if (tag == "wos-tab" || tag == "wos") return CorpusFormat::WosTab;
    if (tag == "csv") return CorpusFormat::Csv;
    if (tag == "jsonl") return CorpusFormat::Jsonl;
    throw ConfigError("unknown corpus format tag: '" + tag + "'");
}

struct CorpusRecord {
    std::string id;
    std::optional<int> year; // calendar year in [1500, 2100] when present
    std::string title;
    std::vector<std::string> author_keywords;
    std::vector<std::string> reference_titles;
    std::optional<std::string> abstract; // ingested but unused by default
};

struct ParseReport {
    size_t accepted = 0;
    size_t skipped = 0;
};

struct Provenance {
    std::string source;
    std::string format;
    ParseReport report;
};

struct Corpus {
    std::vector<CorpusRecord> records; // stable, equals input order
    Provenance provenance;

    size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

namespace detail {

constexpr int kMinYear = 1500;
constexpr int kMaxYear = 2100;

inline std::optional<int> parse_year(const std::string& s) {
    std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    size_t pos = 0;
    int y = 0;
    try {
        y = std::stoi(t, &pos);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (pos != t.size()) return std::nullopt;
    if (y < kMinYear || y > kMaxYear) return std::nullopt;
    return y;
}

// RFC 4180 style row reader: quoted fields, "" escapes, fields split on ','.
// Returns false at end of stream.
inline bool read_csv_row(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    int c = in.get();
    if (c == EOF) return false;
    std::string field;
    bool quoted = false;
    bool any = false;
    while (true) {
        if (c == EOF) {
            fields.push_back(field);
            return true;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                int nxt = in.peek();
                if (nxt == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty() && !any) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(field);
            field.clear();
            any = false;
            c = in.get();
            continue;
        } else if (ch == '\r') {
            // swallow; newline decides the row end
        } else if (ch == '\n') {
            fields.push_back(field);
            return true;
        } else {
            field.push_back(ch);
        }
        any = true;
        c = in.get();
    }
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    for (const std::string& part : split(s, ';')) {
        std::string t = trim(part);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

// Cited-reference entries carry the harvested title segment between the
// 3rd and 4th comma when present, else the entry verbatim.
inline std::string cr_title_segment(const std::string& entry) {
    std::vector<std::string> parts = split(entry, ',');
    if (parts.size() >= 5) return trim(parts[3]);
    return trim(entry);
}

inline Corpus parse_csv(std::istream& in, ParseReport& report) {
    Corpus corpus;
    std::vector<std::string> header;
    if (!read_csv_row(in, header)) throw DataError("empty CSV input");
    int col_id = -1, col_year = -1, col_title = -1, col_keywords = -1, col_refs = -1,
        col_abstract = -1;
    for (size_t i = 0; i < header.size(); ++i) {
        std::string name = to_lower(trim(header[i]));
        if (name == "id") col_id = static_cast<int>(i);
        else if (name == "year") col_year = static_cast<int>(i);
        else if (name == "title") col_title = static_cast<int>(i);
        else if (name == "keywords") col_keywords = static_cast<int>(i);
        else if (name == "references") col_refs = static_cast<int>(i);
        else if (name == "abstract") col_abstract = static_cast<int>(i);
    }
    if (col_id < 0) throw ConfigError("CSV header is missing the 'id' column");

    std::set<std::string> seen_ids;
    std::vector<std::string> row;
    while (read_csv_row(in, row)) {
        if (row.size() == 1 && trim(row[0]).empty()) continue; // blank line
        if (row.size() != header.size()) {
            ++report.skipped;
            continue;
        }
        CorpusRecord rec;
        rec.id = trim(row[static_cast<size_t>(col_id)]);
        if (rec.id.empty() || !seen_ids.insert(rec.id).second) {
            ++report.skipped;
            continue;
        }
        if (col_year >= 0) rec.year = parse_year(row[static_cast<size_t>(col_year)]);
        if (col_title >= 0) rec.title = trim(row[static_cast<size_t>(col_title)]);
        if (col_keywords >= 0)
            rec.author_keywords = split_list(row[static_cast<size_t>(col_keywords)]);
        if (col_refs >= 0) {
            for (const std::string& entry : split_list(row[static_cast<size_t>(col_refs)]))
                rec.reference_titles.push_back(cr_title_segment(entry));
        }
        if (col_abstract >= 0) {
            std::string ab = trim(row[static_cast<size_t>(col_abstract)]);
            if (!ab.empty()) rec.abstract = ab;
        }
        corpus.records.push_back(std::move(rec));
        ++report.accepted;
    }
    return corpus;
}

inline Corpus parse_jsonl(std::istream& in, ParseReport& report) {
    Corpus corpus;
    std::set<std::string> seen_ids;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        nlohmann::json obj = nlohmann::json::parse(t, nullptr, false);
        if (obj.is_discarded() || !obj.is_object() || !obj.contains("id") ||
            !obj["id"].is_string()) {
            ++report.skipped;
            continue;
        }
        CorpusRecord rec;
        rec.id = obj["id"].get<std::string>();
        if (rec.id.empty() || !seen_ids.insert(rec.id).second) {
            ++report.skipped;
            continue;
        }
        if (obj.contains("year")) {
            if (obj["year"].is_number_integer()) {
                int y = obj["year"].get<int>();
                if (y >= kMinYear && y <= kMaxYear) rec.year = y;
            } else if (obj["year"].is_string()) {
                rec.year = parse_year(obj["year"].get<std::string>());
            }
        }
        if (obj.contains("title") && obj["title"].is_string())
            rec.title = obj["title"].get<std::string>();
        if (obj.contains("author_keywords") && obj["author_keywords"].is_array())
            for (const auto& kw : obj["author_keywords"])
                if (kw.is_string()) rec.author_keywords.push_back(kw.get<std::string>());
        if (obj.contains("reference_titles") && obj["reference_titles"].is_array())
            for (const auto& rt : obj["reference_titles"])
                if (rt.is_string()) rec.reference_titles.push_back(rt.get<std::string>());
        if (obj.contains("abstract") && obj["abstract"].is_string())
            rec.abstract = obj["abstract"].get<std::string>();
        corpus.records.push_back(std::move(rec));
        ++report.accepted;
    }
    return corpus;
}

// Tab-delimited field-tagged export: two-letter tags, three-space
// continuation lines, records closed by ER. Harvested tags: UT, TI, DE,
// PY, CR, AB.
inline Corpus parse_wos(std::istream& in, ParseReport& report) {
    Corpus corpus;
    std::set<std::string> seen_ids;

    struct RawRecord {
        std::string id;
        std::string title;
        std::string year;
        std::string keywords;
        std::string abstract;
        std::vector<std::string> cr_entries;
        bool any = false;
    };

    auto flush = [&](RawRecord& raw) {
        if (!raw.any) return;
        if (raw.id.empty()) {
            ++report.skipped;
            raw = RawRecord{};
            return;
        }
        if (!seen_ids.insert(raw.id).second) {
            ++report.skipped;
            raw = RawRecord{};
            return;
        }
        CorpusRecord rec;
        rec.id = raw.id;
        rec.title = trim(raw.title);
        rec.year = parse_year(raw.year);
        rec.author_keywords = split_list(raw.keywords);
        for (const std::string& entry : raw.cr_entries) {
            std::string seg = cr_title_segment(entry);
            if (!seg.empty()) rec.reference_titles.push_back(seg);
        }
        if (!trim(raw.abstract).empty()) rec.abstract = trim(raw.abstract);
        corpus.records.push_back(std::move(rec));
        ++report.accepted;
        raw = RawRecord{};
    };

    RawRecord raw;
    std::string tag; // active tag for continuation lines
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string field_tag;
        std::string value;
        if (line.size() >= 3 && line.substr(0, 3) == "   ") {
            field_tag = tag; // continuation of the previous tag
            value = line.substr(3);
        } else if (line.size() >= 2 && std::isupper(static_cast<unsigned char>(line[0]))) {
            field_tag = line.substr(0, 2);
            value = line.size() > 3 ? line.substr(3) : "";
            tag = field_tag;
        } else {
            continue;
        }
        if (field_tag == "ER") {
            flush(raw);
            tag.clear();
            continue;
        }
        if (field_tag == "EF") break;
        if (field_tag == "FN" || field_tag == "VR") continue;
        if (field_tag == "UT") {
            raw.id = trim(value);
            raw.any = true;
        } else if (field_tag == "TI") {
            if (!raw.title.empty()) raw.title.push_back(' ');
            raw.title += trim(value);
            raw.any = true;
        } else if (field_tag == "DE") {
            if (!raw.keywords.empty()) raw.keywords.push_back(' ');
            raw.keywords += trim(value);
            raw.any = true;
        } else if (field_tag == "PY") {
            raw.year = trim(value);
            raw.any = true;
        } else if (field_tag == "CR") {
            std::string entry = trim(value);
            if (!entry.empty()) raw.cr_entries.push_back(entry);
            raw.any = true;
        } else if (field_tag == "AB") {
            if (!raw.abstract.empty()) raw.abstract.push_back(' ');
            raw.abstract += trim(value);
            raw.any = true;
        }
    }
    flush(raw); // record not closed by ER still counts
    return corpus;
}

} // namespace detail

/// Parses bibliographic records from a byte stream. Malformed rows are
/// skipped and counted in the provenance report.
inline Corpus parse_records(std::istream& source, CorpusFormat format,
                            const std::string& source_name = "<stream>") {
    if (!source) throw IoError("unreadable corpus source: " + source_name);
    ParseReport report;
    Corpus corpus;
    switch (format) {
        case CorpusFormat::Csv: corpus = detail::parse_csv(source, report); break;
        case CorpusFormat::Jsonl: corpus = detail::parse_jsonl(source, report); break;
        case CorpusFormat::WosTab: corpus = detail::parse_wos(source, report); break;
    }
    if (source.bad()) throw IoError("I/O failure while reading: " + source_name);
    if (corpus.records.empty())
        throw DataError("no parseable records in: " + source_name);
    corpus.provenance = Provenance{source_name, to_string(format), report};
    return corpus;
}

inline Corpus parse_records_file(const std::string& path, CorpusFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);
    return parse_records(in, format, path);
}

/// Raw descriptor stream of one record, in source order: author keywords
/// (multi-word keywords kept whole and also contributing their tokens),
/// then title tokens, then reference-title tokens.
inline std::vector<std::string> extract_descriptors(const CorpusRecord& record,
                                                    const DescriptorSources& sources) {
    if (!sources.any()) throw ConfigError("descriptor sources must be non-empty");
    std::vector<std::string> out;
    if (sources.author_keywords) {
        for (const std::string& kw : record.author_keywords) {
            std::vector<std::string> tokens = detail::split_ws(kw);
            if (tokens.size() > 1) {
                out.push_back(detail::trim(kw));
                for (std::string& t : tokens) out.push_back(std::move(t));
            } else if (tokens.size() == 1) {
                out.push_back(std::move(tokens[0]));
            }
        }
    }
    if (sources.title) {
        for (std::string& t : detail::split_ws(record.title)) out.push_back(std::move(t));
    }
    if (sources.reference_titles) {
        for (const std::string& title : record.reference_titles)
            for (std::string& t : detail::split_ws(title)) out.push_back(std::move(t));
    }
    return out;
}

} // namespace tom

#endif
