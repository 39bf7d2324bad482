#pragma once

#include <limits>
#include <string>
#include <vector>

#include "anisocell/scenario.hpp"

namespace anisocell {

enum class FieldVariant { real_euclidean, integer_euclidean, grid_geodesic };

const char* to_string(FieldVariant v);
/// Accepts the long names above and the CLI short forms real|integer|geodesic.
FieldVariant parse_field_variant(const std::string& s);

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Static floor field S: distance to the nearest exit, in cells.
/// Walls and unreachable cells hold kUnreachable.
struct StaticField {
    FieldVariant requested = FieldVariant::integer_euclidean;
    /// Variant actually used; Euclidean requests on obstructed scenarios
    /// fall back to grid_geodesic.
    FieldVariant variant = FieldVariant::integer_euclidean;
    int width = 0;
    int height = 0;
    std::vector<double> values;
    std::size_t unreachable_cells = 0;
    std::string warning;

    double at(Cell c) const {
        return values[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c.x)];
    }
    bool fell_back() const { return requested != variant; }
};

/// Multi-source Dijkstra over walkable cells with Moore steps of length 1
/// (axis) and sqrt(2) (diagonal). Diagonal steps may cut wall corners, the
/// same adjacency the movement rule uses.
std::vector<double> geodesic_distances(const Scenario& scenario);

/// Builds the field. Euclidean variants take the straight-line distance to
/// the nearest exit; if any walkable cell's geodesic distance exceeds the
/// free-space octile bound (sqrt(4 - 2 sqrt 2) times Euclidean), a wall is
/// in the way and the geodesic field is returned instead, with `warning`
/// set. Integer values use round-half-away-from-zero.
StaticField compute_static_field(const Scenario& scenario, FieldVariant variant);

}  // namespace anisocell
