#ifndef TOM_RENDER_HPP
#define TOM_RENDER_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "tom/basemap.hpp"
#include "tom/errors.hpp"
#include "tom/overlay.hpp"
#include "tom/strings.hpp"
#include "tom/trends.hpp"

namespace tom {

enum class NodeScaleMode { SqrtArea }; // radius proportional to sqrt(share)

struct RenderOptions {
    NodeScaleMode scale_mode = NodeScaleMode::SqrtArea;
    double min_render_share = 0.0; // shares at or below render as outline markers
    double edge_display_threshold = 0.1;
    int canvas = 800;
    bool show_residual = false;
    double max_radius = 40.0;
    double min_radius = 4.0;

    static const std::vector<std::string>& palette() {
        static const std::vector<std::string> colors = {
            "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
            "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
        };
        return colors;
    }
};

namespace detail {

inline std::string svg_open(int width, int height) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    return out.str();
}

inline std::string fmt2(double v) { return format_fixed(v, 2); }

} // namespace detail

/// Overlay map: the basemap rendered with node areas proportional to the
/// topic shares (radius proportional to sqrt p). Deterministic bytes.
inline std::string render_overlay_svg(const Basemap& map, const Overlay& overlay,
                                      const RenderOptions& options = {}) {
    if (!map.has_layout()) throw DataError("basemap has no layout; run basemap_layout first");
    if (overlay.k() != map.k()) throw ShapeError("overlay does not match basemap dimension");
    if (options.min_render_share < 0.0 || options.min_render_share >= 1.0)
        throw ConfigError("min_render_share must lie in [0, 1)");

    int size = options.canvas;
    double margin = options.max_radius + 14.0;
    double span = static_cast<double>(size) - 2.0 * margin;
    auto px = [&](double unit) { return margin + unit * span; };

    std::vector<bool> rendered(map.k());
    for (size_t i = 0; i < map.k(); ++i)
        rendered[i] = options.show_residual || !map.topics[i].residual;

    std::ostringstream out;
    out << detail::svg_open(size, size);
    out << "  <rect width=\"" << size << "\" height=\"" << size << "\" fill=\"#ffffff\"/>\n";

    out << "  <g stroke=\"#b0b0b0\" fill=\"none\">\n";
    for (size_t a = 0; a < map.k(); ++a) {
        for (size_t b = a + 1; b < map.k(); ++b) {
            if (!rendered[a] || !rendered[b]) continue;
            if (map.S[a][b] <= options.edge_display_threshold) continue;
            out << "    <line x1=\"" << detail::fmt2(px(map.layout[a].first)) << "\" y1=\""
                << detail::fmt2(px(map.layout[a].second)) << "\" x2=\""
                << detail::fmt2(px(map.layout[b].first)) << "\" y2=\""
                << detail::fmt2(px(map.layout[b].second)) << "\" stroke-width=\""
                << detail::fmt2(0.5 + 3.0 * map.S[a][b]) << "\"/>\n";
        }
    }
    out << "  </g>\n";

    const auto& palette = RenderOptions::palette();
    for (size_t i = 0; i < map.k(); ++i) {
        if (!rendered[i]) continue;
        double share = overlay.p[i];
        double x = px(map.layout[i].first);
        double y = px(map.layout[i].second);
        const std::string& color = palette[i % palette.size()];
        bool outline_only = share <= options.min_render_share || share <= 0.0;
        double radius =
            outline_only ? options.min_radius
                         : std::max(options.min_radius, options.max_radius * std::sqrt(share));
        out << "  <circle id=\"topic-" << map.topics[i].id << "\" cx=\"" << detail::fmt2(x)
            << "\" cy=\"" << detail::fmt2(y) << "\" r=\"" << detail::fmt2(radius) << "\"";
        if (outline_only)
            out << " fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        else
            out << " fill=\"" << color << "\" fill-opacity=\"0.85\" stroke=\"#333333\""
                << " stroke-width=\"0.8\"";
        out << "/>\n";
        out << "  <text x=\"" << detail::fmt2(x) << "\" y=\""
            << detail::fmt2(y - radius - 4.0)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << map.topics[i].id << ": " << detail::xml_escape(map.topics[i].label)
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

/// Timeline chart: the annual series with point markers, its moving
/// average and the corpus trendline as three polylines on a shared axis.
inline std::string render_timeline_svg(const ClusterProfile& profile,
                                       const RenderOptions& options = {}) {
    if (!profile.has_timeline || profile.annual.values.empty())
        throw DataError("profile has no timeline to render");
    if (profile.smoothed.first_year != profile.annual.first_year ||
        profile.corpus_trend.first_year != profile.annual.first_year ||
        profile.smoothed.size() != profile.annual.size() ||
        profile.corpus_trend.size() != profile.annual.size())
        throw ShapeError("profile time series do not share one year axis");

    int width = options.canvas;
    int height = options.canvas / 2;
    double left = 48.0, right = 16.0, top = 20.0, bottom = 36.0;
    double plot_w = static_cast<double>(width) - left - right;
    double plot_h = static_cast<double>(height) - top - bottom;

    int first = profile.annual.first_year;
    int last = profile.annual.last_year();
    int years = last - first;

    double max_v = 0.0;
    for (const TimeSeries* s : {&profile.annual, &profile.smoothed, &profile.corpus_trend})
        for (double v : s->values) max_v = std::max(max_v, v);
    if (max_v <= 0.0) max_v = 1.0;
    double y_top = max_v * 1.05;

    auto px = [&](int year) {
        return years == 0 ? left + plot_w / 2.0
                          : left + plot_w * static_cast<double>(year - first) /
                                       static_cast<double>(years);
    };
    auto py = [&](double v) { return top + plot_h * (1.0 - v / y_top); };

    auto polyline = [&](const TimeSeries& s, const std::string& stroke, bool dashed) {
        std::ostringstream p;
        p << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"";
        if (dashed) p << " stroke-dasharray=\"5,3\"";
        p << " points=\"";
        for (size_t i = 0; i < s.values.size(); ++i) {
            if (i) p << ' ';
            p << detail::fmt2(px(s.first_year + static_cast<int>(i))) << ','
              << detail::fmt2(py(s.values[i]));
        }
        p << "\"/>\n";
        return p.str();
    };

    std::ostringstream out;
    out << detail::svg_open(width, height);
    out << "  <rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";
    out << "  <line x1=\"" << detail::fmt2(left) << "\" y1=\"" << detail::fmt2(top + plot_h)
        << "\" x2=\"" << detail::fmt2(left + plot_w) << "\" y2=\""
        << detail::fmt2(top + plot_h) << "\" stroke=\"#000000\"/>\n";
    out << "  <line x1=\"" << detail::fmt2(left) << "\" y1=\"" << detail::fmt2(top)
        << "\" x2=\"" << detail::fmt2(left) << "\" y2=\"" << detail::fmt2(top + plot_h)
        << "\" stroke=\"#000000\"/>\n";

    // x ticks span exactly the series year range
    int step = years <= 12 ? 1 : (years + 9) / 10;
    for (int year = first; year <= last; year += step) {
        out << "  <text class=\"xtick\" x=\"" << detail::fmt2(px(year)) << "\" y=\""
            << detail::fmt2(top + plot_h + 16.0)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
            << year << "</text>\n";
    }
    if (years > 0 && (years % step) != 0)
        out << "  <text class=\"xtick\" x=\"" << detail::fmt2(px(last)) << "\" y=\""
            << detail::fmt2(top + plot_h + 16.0)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
            << last << "</text>\n";

    for (int i = 0; i <= 4; ++i) {
        double v = y_top * static_cast<double>(i) / 4.0;
        out << "  <text x=\"" << detail::fmt2(left - 6.0) << "\" y=\""
            << detail::fmt2(py(v) + 3.0)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
            << detail::format_fixed(v, 1) << "</text>\n";
    }

    out << polyline(profile.annual, "#1f77b4", false);
    out << polyline(profile.smoothed, "#d62728", false);
    out << polyline(profile.corpus_trend, "#7f7f7f", true);
    for (size_t i = 0; i < profile.annual.values.size(); ++i)
        out << "  <circle cx=\""
            << detail::fmt2(px(profile.annual.first_year + static_cast<int>(i))) << "\" cy=\""
            << detail::fmt2(py(profile.annual.values[i]))
            << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace tom

#endif
