#ifndef TOM_CONFIG_HPP
#define TOM_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tom/corpus.hpp"
#include "tom/errors.hpp"
#include "tom/strings.hpp"
#include "tom/text.hpp"

namespace tom {

/// Every pipeline parameter, with the defaults the tool ships with. The
/// serialized form lists all keys explicitly, so a generated config is
/// self-documenting.
struct PipelineConfig {
    // [input]
    std::string input_path;
    std::string input_format = "csv"; // wos-tab | csv | jsonl
    std::string stopword_path;        // empty -> built-in list
    DescriptorSources sources;        // author_keywords, title, reference_titles
    int min_len = 2;

    // [vocabulary]
    int top_n = 300;
    int min_df = 5;

    // [graph]
    double edge_threshold = 0.05;
    int walk_length = 4;
    int min_component = 4;

    // [basemap]
    double link_threshold = 0.1;
    uint32_t layout_seed = 42;

    // [clustering]
    int min_cluster_size = 5;
    int deep_split = 1;

    // [trends]
    int window = 5;
    int top_keywords = 20;

    // [output]
    std::string output_dir = "tom-out";
    int threads = 1;

    void validate() const {
        corpus_format_from_string(input_format);
        if (!sources.any()) throw ConfigError("at least one descriptor source is required");
        if (min_len < 1) throw ConfigError("min_len must be >= 1");
        if (top_n < 2) throw ConfigError("top_n must be >= 2");
        if (min_df < 1) throw ConfigError("min_df must be >= 1");
        if (edge_threshold < 0.0 || edge_threshold >= 1.0)
            throw ConfigError("edge_threshold must lie in [0, 1)");
        if (walk_length < 1) throw ConfigError("walk_length must be >= 1");
        if (min_component < 1) throw ConfigError("min_component must be >= 1");
        if (link_threshold < 0.0 || link_threshold > 1.0)
            throw ConfigError("link_threshold must lie in [0, 1]");
        if (min_cluster_size < 1) throw ConfigError("min_cluster_size must be >= 1");
        if (deep_split < 0 || deep_split > 3)
            throw ConfigError("deep_split must lie in {0, 1, 2, 3}");
        if (window < 1 || window % 2 == 0)
            throw ConfigError("trend window must be odd and >= 1");
        if (top_keywords < 1) throw ConfigError("top_keywords must be >= 1");
        if (threads < 1) throw ConfigError("threads must be >= 1");
    }

    std::vector<std::string> source_names() const {
        std::vector<std::string> names;
        if (sources.author_keywords) names.push_back("author_keywords");
        if (sources.title) names.push_back("title");
        if (sources.reference_titles) names.push_back("reference_titles");
        return names;
    }

    std::string to_toml() const;
    static PipelineConfig from_toml(const std::string& text);

    static PipelineConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot read config file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_toml(buf.str());
    }
};

namespace detail {

inline std::string toml_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// key/value scanner for the TOML subset used by the config file:
// [section] headers, string/int/float/bool scalars and string arrays.
struct TomlDoc {
    std::map<std::string, std::string> values; // "section.key" -> raw value

    static TomlDoc parse(const std::string& text) {
        TomlDoc doc;
        std::string section;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw ConfigError("config line " + std::to_string(lineno) +
                                      ": malformed section header");
                section = trim(t.substr(1, t.size() - 2));
                continue;
            }
            size_t eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
            std::string key = trim(t.substr(0, eq));
            std::string value = trim(t.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": empty key or value");
            doc.values[section.empty() ? key : section + "." + key] = value;
        }
        return doc;
    }

    bool has(const std::string& key) const { return values.count(key) > 0; }

    std::string raw(const std::string& key) const { return values.at(key); }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        return unquote(raw(key), key);
    }

    long long get_int(const std::string& key, long long fallback) const {
        if (!has(key)) return fallback;
        try {
            size_t pos = 0;
            long long v = std::stoll(raw(key), &pos);
            if (pos != raw(key).size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": expected an integer");
        }
    }

    double get_float(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        try {
            size_t pos = 0;
            double v = std::stod(raw(key), &pos);
            if (pos != raw(key).size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": expected a number");
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string& v = raw(key);
        if (v == "true") return true;
        if (v == "false") return false;
        throw ConfigError("config key " + key + ": expected true or false");
    }

    std::vector<std::string> get_string_array(const std::string& key) const {
        std::vector<std::string> out;
        if (!has(key)) return out;
        std::string v = raw(key);
        if (v.size() < 2 || v.front() != '[' || v.back() != ']')
            throw ConfigError("config key " + key + ": expected an array");
        std::string inner = trim(v.substr(1, v.size() - 2));
        if (inner.empty()) return out;
        for (const std::string& item : split(inner, ','))
            out.push_back(unquote(trim(item), key));
        return out;
    }

private:
    static std::string unquote(const std::string& v, const std::string& key) {
        if (v.size() < 2 || v.front() != '"' || v.back() != '"')
            throw ConfigError("config key " + key + ": expected a quoted string");
        std::string out;
        for (size_t i = 1; i + 1 < v.size(); ++i) {
            if (v[i] == '\\' && i + 2 < v.size()) ++i;
            out.push_back(v[i]);
        }
        return out;
    }
};

} // namespace detail

inline std::string PipelineConfig::to_toml() const {
    std::ostringstream out;
    out << "[input]\n";
    out << "path = " << detail::toml_quote(input_path) << "\n";
    out << "format = " << detail::toml_quote(input_format) << "\n";
    out << "stopwords = " << detail::toml_quote(stopword_path) << "\n";
    out << "sources = [";
    std::vector<std::string> names = source_names();
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out << ", ";
        out << detail::toml_quote(names[i]);
    }
    out << "]\n";
    out << "min_len = " << min_len << "\n\n";
    out << "[vocabulary]\n";
    out << "top_n = " << top_n << "\n";
    out << "min_df = " << min_df << "\n\n";
    out << "[graph]\n";
    out << "edge_threshold = " << detail::format_g(edge_threshold) << "\n";
    out << "walk_length = " << walk_length << "\n";
    out << "min_component = " << min_component << "\n\n";
    out << "[basemap]\n";
    out << "link_threshold = " << detail::format_g(link_threshold) << "\n";
    out << "layout_seed = " << layout_seed << "\n\n";
    out << "[clustering]\n";
    out << "min_cluster_size = " << min_cluster_size << "\n";
    out << "deep_split = " << deep_split << "\n\n";
    out << "[trends]\n";
    out << "window = " << window << "\n";
    out << "top_keywords = " << top_keywords << "\n\n";
    out << "[output]\n";
    out << "directory = " << detail::toml_quote(output_dir) << "\n";
    out << "threads = " << threads << "\n";
    return out.str();
}

inline PipelineConfig PipelineConfig::from_toml(const std::string& text) {
    detail::TomlDoc doc = detail::TomlDoc::parse(text);
    static const std::set<std::string> kKnownKeys = {
        "input.path",         "input.format",        "input.stopwords",
        "input.sources",      "input.min_len",       "vocabulary.top_n",
        "vocabulary.min_df",  "graph.edge_threshold", "graph.walk_length",
        "graph.min_component", "basemap.link_threshold", "basemap.layout_seed",
        "clustering.min_cluster_size", "clustering.deep_split", "trends.window",
        "trends.top_keywords", "output.directory",   "output.threads"};
    for (const auto& [key, value] : doc.values)
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key: " + key);
    PipelineConfig cfg;
    cfg.input_path = doc.get_string("input.path", cfg.input_path);
    cfg.input_format = doc.get_string("input.format", cfg.input_format);
    cfg.stopword_path = doc.get_string("input.stopwords", cfg.stopword_path);
    if (doc.has("input.sources")) {
        DescriptorSources sources{false, false, false};
        for (const std::string& name : doc.get_string_array("input.sources")) {
            if (name == "author_keywords") sources.author_keywords = true;
            else if (name == "title") sources.title = true;
            else if (name == "reference_titles") sources.reference_titles = true;
            else throw ConfigError("unknown descriptor source: " + name);
        }
        cfg.sources = sources;
    }
    cfg.min_len = static_cast<int>(doc.get_int("input.min_len", cfg.min_len));
    cfg.top_n = static_cast<int>(doc.get_int("vocabulary.top_n", cfg.top_n));
    cfg.min_df = static_cast<int>(doc.get_int("vocabulary.min_df", cfg.min_df));
    cfg.edge_threshold = doc.get_float("graph.edge_threshold", cfg.edge_threshold);
    cfg.walk_length = static_cast<int>(doc.get_int("graph.walk_length", cfg.walk_length));
    cfg.min_component =
        static_cast<int>(doc.get_int("graph.min_component", cfg.min_component));
    cfg.link_threshold = doc.get_float("basemap.link_threshold", cfg.link_threshold);
    cfg.layout_seed =
        static_cast<uint32_t>(doc.get_int("basemap.layout_seed", cfg.layout_seed));
    cfg.min_cluster_size =
        static_cast<int>(doc.get_int("clustering.min_cluster_size", cfg.min_cluster_size));
    cfg.deep_split = static_cast<int>(doc.get_int("clustering.deep_split", cfg.deep_split));
    cfg.window = static_cast<int>(doc.get_int("trends.window", cfg.window));
    cfg.top_keywords = static_cast<int>(doc.get_int("trends.top_keywords", cfg.top_keywords));
    cfg.output_dir = doc.get_string("output.directory", cfg.output_dir);
    cfg.threads = static_cast<int>(doc.get_int("output.threads", cfg.threads));
    cfg.validate();
    return cfg;
}

} // namespace tom

#endif
