#ifndef TOM_EXPORT_HPP
#define TOM_EXPORT_HPP

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tom/basemap.hpp"
#include "tom/community.hpp"
#include "tom/errors.hpp"
#include "tom/graph.hpp"
#include "tom/linkage.hpp"
#include "tom/strings.hpp"
#include "tom/tree_cut.hpp"
#include "tom/trends.hpp"

namespace tom {

/// GraphML with node attributes canonical/display/topic and the edge
/// weight printed with 6 fractional digits. partition may be null when
/// topics are not yet known (topic written as -1).
inline std::string term_graph_to_graphml(const TermGraph& graph,
                                         const TopicPartition* partition = nullptr) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"canonical\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"node\" attr.name=\"display\" attr.type=\"string\"/>\n"
        << "  <key id=\"d2\" for=\"node\" attr.name=\"topic\" attr.type=\"int\"/>\n"
        << "  <key id=\"d3\" for=\"node\" attr.name=\"df\" attr.type=\"int\"/>\n"
        << "  <key id=\"d4\" for=\"node\" attr.name=\"total\" attr.type=\"long\"/>\n"
        << "  <key id=\"d5\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <graph id=\"termgraph\" edgedefault=\"undirected\">\n";
    for (size_t i = 0; i < graph.nodes.size(); ++i) {
        const GraphNode& node = graph.nodes[i];
        int topic = partition ? partition->assignment[i] : -1;
        out << "    <node id=\"n" << i << "\">"
            << "<data key=\"d0\">" << detail::xml_escape(node.canonical) << "</data>"
            << "<data key=\"d1\">" << detail::xml_escape(node.display) << "</data>"
            << "<data key=\"d2\">" << topic << "</data>"
            << "<data key=\"d3\">" << node.df << "</data>"
            << "<data key=\"d4\">" << node.total << "</data>"
            << "</node>\n";
    }
    for (const GraphEdge& e : graph.edges) {
        out << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v << "\">"
            << "<data key=\"d5\">" << detail::format_fixed(e.w, 6) << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

/// Minimal reader for the GraphML emitted by term_graph_to_graphml.
inline TermGraph term_graph_from_graphml(const std::string& xml) {
    TermGraph graph;
    size_t pos = 0;
    auto read_data = [&](const std::string& chunk, const std::string& key) -> std::string {
        std::string open = "<data key=\"" + key + "\">";
        size_t a = chunk.find(open);
        if (a == std::string::npos) return "";
        a += open.size();
        size_t b = chunk.find("</data>", a);
        std::string raw = chunk.substr(a, b - a);
        std::string out;
        for (size_t i = 0; i < raw.size();) {
            if (raw.compare(i, 5, "&amp;") == 0) { out += '&'; i += 5; }
            else if (raw.compare(i, 4, "&lt;") == 0) { out += '<'; i += 4; }
            else if (raw.compare(i, 4, "&gt;") == 0) { out += '>'; i += 4; }
            else if (raw.compare(i, 6, "&quot;") == 0) { out += '"'; i += 6; }
            else if (raw.compare(i, 6, "&apos;") == 0) { out += '\''; i += 6; }
            else out += raw[i++];
        }
        return out;
    };
    while ((pos = xml.find("<node ", pos)) != std::string::npos) {
        size_t end = xml.find("</node>", pos);
        if (end == std::string::npos) throw IoError("malformed GraphML: unclosed node");
        std::string chunk = xml.substr(pos, end - pos);
        GraphNode node;
        node.canonical = read_data(chunk, "d0");
        node.display = read_data(chunk, "d1");
        node.df = std::stoi(read_data(chunk, "d3").empty() ? "0" : read_data(chunk, "d3"));
        std::string total = read_data(chunk, "d4");
        node.total = total.empty() ? 0 : std::stoll(total);
        graph.nodes.push_back(std::move(node));
        pos = end;
    }
    pos = 0;
    while ((pos = xml.find("<edge ", pos)) != std::string::npos) {
        size_t end = xml.find("</edge>", pos);
        if (end == std::string::npos) throw IoError("malformed GraphML: unclosed edge");
        std::string chunk = xml.substr(pos, end - pos);
        auto attr = [&](const std::string& name) {
            std::string open = name + "=\"";
            size_t a = chunk.find(open);
            if (a == std::string::npos) throw IoError("malformed GraphML edge");
            a += open.size();
            size_t b = chunk.find('"', a);
            return chunk.substr(a, b - a);
        };
        GraphEdge e;
        e.u = std::stoi(attr("source").substr(1));
        e.v = std::stoi(attr("target").substr(1));
        e.w = std::stod(read_data(chunk, "d5"));
        graph.edges.push_back(e);
        pos = end;
    }
    label_components(graph);
    return graph;
}

inline std::string term_graph_to_dot(const TermGraph& graph,
                                     const TopicPartition* partition = nullptr) {
    std::ostringstream out;
    out << "graph termgraph {\n";
    for (size_t i = 0; i < graph.nodes.size(); ++i) {
        int topic = partition ? partition->assignment[i] : -1;
        out << "  n" << i << " [label=\"" << detail::xml_escape(graph.nodes[i].display)
            << "\" canonical=\"" << detail::xml_escape(graph.nodes[i].canonical)
            << "\" topic=" << topic << "];\n";
    }
    for (const GraphEdge& e : graph.edges)
        out << "  n" << e.u << " -- n" << e.v << " [weight="
            << detail::format_fixed(e.w, 6) << "];\n";
    out << "}\n";
    return out.str();
}

inline std::string basemap_to_graphml(const Basemap& map) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"node\" attr.name=\"members\" attr.type=\"int\"/>\n"
        << "  <key id=\"d2\" for=\"node\" attr.name=\"residual\" attr.type=\"boolean\"/>\n"
        << "  <key id=\"d3\" for=\"edge\" attr.name=\"S\" attr.type=\"double\"/>\n"
        << "  <graph id=\"basemap\" edgedefault=\"undirected\">\n";
    for (const BasemapTopic& t : map.topics) {
        out << "    <node id=\"t" << t.id << "\">"
            << "<data key=\"d0\">" << detail::xml_escape(t.label) << "</data>"
            << "<data key=\"d1\">" << t.size << "</data>"
            << "<data key=\"d2\">" << (t.residual ? "true" : "false") << "</data>"
            << "</node>\n";
    }
    for (size_t a = 0; a < map.k(); ++a)
        for (size_t b = a + 1; b < map.k(); ++b)
            if (map.S[a][b] > map.link_threshold)
                out << "    <edge source=\"t" << a << "\" target=\"t" << b << "\">"
                    << "<data key=\"d3\">" << detail::format_fixed(map.S[a][b], 6)
                    << "</data></edge>\n";
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

inline std::string basemap_to_dot(const Basemap& map) {
    std::ostringstream out;
    out << "graph basemap {\n";
    for (const BasemapTopic& t : map.topics)
        out << "  t" << t.id << " [label=\"" << detail::xml_escape(t.label)
            << "\" members=" << t.size << "];\n";
    for (size_t a = 0; a < map.k(); ++a)
        for (size_t b = a + 1; b < map.k(); ++b)
            if (map.S[a][b] > map.link_threshold)
                out << "  t" << a << " -- t" << b << " [S="
                    << detail::format_fixed(map.S[a][b], 6) << "];\n";
    out << "}\n";
    return out.str();
}

/// Newick with branch lengths derived from merge heights:
/// child branch length = parent height - child height.
inline std::string dendrogram_to_newick(const Dendrogram& dendro) {
    size_t n = dendro.leaf_count();
    std::function<void(std::ostringstream&, int, double)> emit =
        [&](std::ostringstream& out, int node, double parent_height) {
            if (static_cast<size_t>(node) < n) {
                out << detail::newick_escape(dendro.leaf_ids[static_cast<size_t>(node)])
                    << ':' << detail::format_g(parent_height);
                return;
            }
            const DendrogramMerge& m = dendro.merges[static_cast<size_t>(node) - n];
            out << '(';
            emit(out, m.left, m.height);
            out << ',';
            emit(out, m.right, m.height);
            out << ')';
            if (parent_height >= 0.0) out << ':' << detail::format_g(parent_height - m.height);
        };
    std::ostringstream out;
    if (dendro.merges.empty()) {
        if (n == 1) out << detail::newick_escape(dendro.leaf_ids[0]);
    } else {
        emit(out, static_cast<int>(n + dendro.merges.size() - 1), -1.0);
    }
    out << ';';
    return out.str();
}

/// doc_id,cluster,method_tag rows; tree-cut residuals print "unassigned",
/// documents excluded before clustering print "excluded".
inline std::string cluster_assignment_to_csv(const ClusterAssignment& assignment) {
    std::ostringstream out;
    out << "doc_id,cluster,method_tag\n";
    for (size_t i = 0; i < assignment.doc_ids.size(); ++i) {
        out << detail::csv_escape(assignment.doc_ids[i]) << ',';
        if (assignment.labels[i] >= 0) out << assignment.labels[i];
        else if (assignment.labels[i] == ClusterAssignment::kUnassigned) out << "unassigned";
        else out << "excluded";
        out << ',' << assignment.method_tag << '\n';
    }
    return out.str();
}

inline ClusterAssignment cluster_assignment_from_csv(const std::string& csv) {
    ClusterAssignment out;
    std::istringstream in(csv);
    std::vector<std::string> fields;
    if (!detail::read_csv_row(in, fields)) throw IoError("empty cluster CSV");
    int max_label = -1;
    while (detail::read_csv_row(in, fields)) {
        if (fields.size() == 1 && detail::trim(fields[0]).empty()) continue;
        if (fields.size() < 3)
            throw IoError("malformed cluster CSV row for: " +
                          (fields.empty() ? std::string{} : fields[0]));
        out.doc_ids.push_back(fields[0]);
        if (fields[1] == "unassigned") out.labels.push_back(ClusterAssignment::kUnassigned);
        else if (fields[1] == "excluded") out.labels.push_back(ClusterAssignment::kExcluded);
        else {
            int label = std::stoi(fields[1]);
            out.labels.push_back(label);
            max_label = std::max(max_label, label);
        }
        out.method_tag = fields[2];
    }
    out.cluster_count = max_label + 1;
    out.cluster_sizes.assign(static_cast<size_t>(out.cluster_count), 0);
    for (int l : out.labels)
        if (l >= 0) ++out.cluster_sizes[static_cast<size_t>(l)];
    return out;
}

/// Fig.-5-style integer-percent grid: rows are the first clustering,
/// columns the second, cells rounded percent of row totals.
inline std::string crosstab_to_csv(const CrossTab& ct, bool integer_percent = true) {
    std::ostringstream out;
    out << "cluster";
    for (int c : ct.col_labels) out << ',' << c;
    out << '\n';
    for (size_t r = 0; r < ct.row_labels.size(); ++r) {
        out << ct.row_labels[r];
        for (size_t c = 0; c < ct.col_labels.size(); ++c) {
            out << ',';
            if (integer_percent) out << static_cast<long long>(std::llround(ct.cells[r][c]));
            else out << detail::format_fixed(ct.cells[r][c], 2);
        }
        out << '\n';
    }
    return out.str();
}

/// Square similarity matrix (e.g. pairwise PWCS) with ids as both header
/// and row labels.
inline std::string similarity_matrix_to_csv(const std::vector<std::string>& ids,
                                            const std::vector<std::vector<double>>& m) {
    if (ids.size() != m.size()) throw ShapeError("id list does not match the matrix");
    std::ostringstream out;
    out << "doc_id";
    for (const std::string& id : ids) out << ',' << detail::csv_escape(id);
    out << '\n';
    for (size_t r = 0; r < m.size(); ++r) {
        out << detail::csv_escape(ids[r]);
        for (double v : m[r]) out << ',' << detail::format_g(v);
        out << '\n';
    }
    return out.str();
}

inline std::string timeseries_to_csv(const TimeSeries& series) {
    std::ostringstream out;
    out << "year,value\n";
    for (size_t i = 0; i < series.values.size(); ++i)
        out << (series.first_year + static_cast<int>(i)) << ','
            << detail::format_fixed(series.values[i], 4) << '\n';
    return out.str();
}

inline std::string keyword_profile_to_csv(const std::vector<KeywordProfileEntry>& profile) {
    std::ostringstream out;
    out << "term,frequency\n";
    for (const KeywordProfileEntry& e : profile)
        out << detail::csv_escape(e.term) << ',' << e.frequency << '\n';
    return out.str();
}

} // namespace tom

#endif
