#include "anisocell/floorfield.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace anisocell {

const char* to_string(FieldVariant v) {
    switch (v) {
        case FieldVariant::real_euclidean: return "real_euclidean";
        case FieldVariant::integer_euclidean: return "integer_euclidean";
        case FieldVariant::grid_geodesic: return "grid_geodesic";
    }
    return "?";
}

FieldVariant parse_field_variant(const std::string& s) {
    if (s == "real" || s == "real_euclidean") return FieldVariant::real_euclidean;
    if (s == "integer" || s == "integer_euclidean") return FieldVariant::integer_euclidean;
    if (s == "geodesic" || s == "grid_geodesic") return FieldVariant::grid_geodesic;
    throw std::invalid_argument("unknown field variant: " + s);
}

std::vector<double> geodesic_distances(const Scenario& sc) {
    std::vector<double> dist(sc.cell_count(), kUnreachable);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (const auto& e : sc.exits()) {
        dist[sc.index(e)] = 0.0;
        pq.push({0.0, sc.index(e)});
    }
    static constexpr int kDx[] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int kDy[] = {0, 0, 1, -1, 1, -1, 1, -1};
    while (!pq.empty()) {
        const auto [d, i] = pq.top();
        pq.pop();
        if (d > dist[i]) continue;
        const Cell c = sc.cell_at(i);
        for (int k = 0; k < 8; ++k) {
            const Cell n{c.x + kDx[k], c.y + kDy[k]};
            if (!sc.walkable(n)) continue;
            const double nd = d + (k < 4 ? 1.0 : std::numbers::sqrt2);
            const std::size_t ni = sc.index(n);
            if (nd < dist[ni]) {
                dist[ni] = nd;
                pq.push({nd, ni});
            }
        }
    }
    return dist;
}

StaticField compute_static_field(const Scenario& sc, FieldVariant variant) {
    StaticField f;
    f.requested = variant;
    f.variant = variant;
    f.width = sc.width();
    f.height = sc.height();
    f.values.assign(sc.cell_count(), kUnreachable);

    const auto geo = geodesic_distances(sc);
    if (variant != FieldVariant::grid_geodesic) {
        const double octile_bound = std::sqrt(4.0 - 2.0 * std::numbers::sqrt2);
        bool obstructed = false;
        for (std::size_t i = 0; i < sc.cell_count() && !obstructed; ++i) {
            const Cell c = sc.cell_at(i);
            if (sc.is_wall(c)) continue;
            double best = kUnreachable;
            for (const auto& e : sc.exits()) best = std::min(best, std::hypot(c.x - e.x, c.y - e.y));
            if (geo[i] > octile_bound * best + 1e-9) obstructed = true;
            f.values[i] = variant == FieldVariant::integer_euclidean ? std::round(best) : best;
        }
        if (obstructed) {
            f.variant = FieldVariant::grid_geodesic;
            f.warning = std::string("walls obstruct straight-line paths; ") + to_string(variant) +
                        " field replaced by grid_geodesic";
        }
    }
    if (f.variant == FieldVariant::grid_geodesic) {
        for (std::size_t i = 0; i < sc.cell_count(); ++i) f.values[i] = sc.is_wall(sc.cell_at(i)) ? kUnreachable : geo[i];
    }
    for (std::size_t i = 0; i < sc.cell_count(); ++i)
        if (!sc.is_wall(sc.cell_at(i)) && std::isinf(f.values[i])) ++f.unreachable_cells;
    return f;
}

}  // namespace anisocell
