#ifndef TOM_LAYOUT_HPP
#define TOM_LAYOUT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tom/basemap.hpp"

namespace tom {

namespace detail {

// mt19937 mapped to [0,1) directly; std::uniform_real_distribution is
// implementation-defined and would break cross-library reproducibility.
inline double next_unit(std::mt19937& rng) {
    return static_cast<double>(rng()) / 4294967296.0;
}

} // namespace detail

/// Force-directed (Fruchterman-Reingold style) layout of the basemap on
/// the unit square. Only links with S above the basemap's link_threshold
/// attract; all pairs repel. Deterministic given the seed.
inline std::vector<std::pair<double, double>> basemap_layout(const Basemap& map,
                                                             uint32_t seed = 42) {
    size_t k = map.k();
    std::vector<std::pair<double, double>> pos(k);
    if (k == 0) return pos;
    if (k == 1) {
        pos[0] = {0.5, 0.5};
        return pos;
    }

    std::mt19937 rng(seed);
    for (auto& p : pos) {
        p.first = detail::next_unit(rng);
        p.second = detail::next_unit(rng);
    }

    std::vector<std::pair<size_t, size_t>> springs;
    for (size_t a = 0; a < k; ++a)
        for (size_t b = a + 1; b < k; ++b)
            if (map.S[a][b] > map.link_threshold) springs.emplace_back(a, b);

    const double ideal = std::sqrt(1.0 / static_cast<double>(k));
    const int iterations = 200;
    double temperature = 0.1;
    std::vector<std::pair<double, double>> disp(k);

    for (int iter = 0; iter < iterations; ++iter) {
        for (auto& d : disp) d = {0.0, 0.0};
        for (size_t a = 0; a < k; ++a) {
            for (size_t b = a + 1; b < k; ++b) {
                double dx = pos[a].first - pos[b].first;
                double dy = pos[a].second - pos[b].second;
                double dist = std::sqrt(dx * dx + dy * dy);
                if (dist < 1e-9) { // coincident points nudge apart on a fixed diagonal
                    dx = 1e-4;
                    dy = 1e-4;
                    dist = std::sqrt(dx * dx + dy * dy);
                }
                double force = ideal * ideal / dist;
                disp[a].first += dx / dist * force;
                disp[a].second += dy / dist * force;
                disp[b].first -= dx / dist * force;
                disp[b].second -= dy / dist * force;
            }
        }
        for (auto [a, b] : springs) {
            double dx = pos[a].first - pos[b].first;
            double dy = pos[a].second - pos[b].second;
            double dist = std::sqrt(dx * dx + dy * dy);
            if (dist < 1e-9) continue;
            double force = dist * dist / ideal * map.S[a][b];
            disp[a].first -= dx / dist * force;
            disp[a].second -= dy / dist * force;
            disp[b].first += dx / dist * force;
            disp[b].second += dy / dist * force;
        }
        for (size_t a = 0; a < k; ++a) {
            double dx = disp[a].first, dy = disp[a].second;
            double len = std::sqrt(dx * dx + dy * dy);
            if (len < 1e-12) continue;
            double step = std::min(len, temperature);
            pos[a].first += dx / len * step;
            pos[a].second += dy / len * step;
        }
        temperature *= 0.985;
    }

    // normalize to the unit square
    double min_x = pos[0].first, max_x = pos[0].first;
    double min_y = pos[0].second, max_y = pos[0].second;
    for (const auto& p : pos) {
        min_x = std::min(min_x, p.first);
        max_x = std::max(max_x, p.first);
        min_y = std::min(min_y, p.second);
        max_y = std::max(max_y, p.second);
    }
    double span_x = max_x - min_x, span_y = max_y - min_y;
    for (auto& p : pos) {
        p.first = span_x > 1e-12 ? (p.first - min_x) / span_x : 0.5;
        p.second = span_y > 1e-12 ? (p.second - min_y) / span_y : 0.5;
    }
    return pos;
}

} // namespace tom

#endif
