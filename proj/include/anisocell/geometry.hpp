#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace anisocell {

/// Integer displacement on the square lattice (cells).
struct CellOffset {
    int x = 0;
    int y = 0;

    constexpr std::int64_t norm2() const {
        return static_cast<std::int64_t>(x) * x + static_cast<std::int64_t>(y) * y;
    }

    friend constexpr CellOffset operator+(CellOffset a, CellOffset b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr CellOffset operator-(CellOffset a, CellOffset b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr auto operator<=>(const CellOffset&, const CellOffset&) = default;
};

/// Raised when a lattice construction violates a structural assumption
/// (e.g. a border step that cannot be expressed as vertical/antidiagonal).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Complete neighborhood: every cell with x^2 + y^2 <= d2.
///
/// Cells are kept sorted (lexicographic on x, then y) so that equality of two
/// neighborhoods is plain vector equality.
class Neighborhood {
public:
    explicit Neighborhood(int d2);

    int d2() const { return d2_; }
    const std::vector<CellOffset>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool contains(CellOffset c) const { return c.norm2() <= d2_; }
    /// floor(sqrt(d2)): horizontal extent, i.e. the speed along the axes.
    int extent() const { return extent_; }

private:
    int d2_;
    int extent_;
    std::vector<CellOffset> cells_;
};

enum class StepKind { vertical, antidiagonal, other };

const char* to_string(StepKind k);

/// First-octant border of a complete neighborhood, walked row by row from
/// (floor(sqrt(d2)), 0) up to the first cell on or past the diagonal.
struct BorderStaircase {
    int d2 = 0;
    std::vector<CellOffset> border;
    std::vector<StepKind> kinds;  // kinds[i] classifies border[i] -> border[i+1]
};

/// Exact floor(sqrt(n)) for n >= 0.
int isqrt(std::int64_t n);

/// Squared radii of all complete neighborhoods with axis extent <= v_max,
/// sorted ascending and including 0 (the center cell alone).
std::vector<int> enumerate_complete_neighborhoods(int v_max);

Neighborhood cells_of(int d2);

BorderStaircase border_staircase(int d2);

/// Vertices of the convex hull of the neighborhood in the first octant,
/// ordered by angle from (floor(sqrt(d2)), 0) to the first vertex on or past
/// the 45 degree diagonal. Collinear points are dropped.
std::vector<CellOffset> hull_vertices(int d2);

struct Composition {
    int n_von_neumann = 0;
    int n_moore = 0;
    friend bool operator==(const Composition&, const Composition&) = default;
};

/// Set of cells reachable with n_vn von Neumann steps followed by n_moore
/// Moore steps (each step may also stay put). Computed by explicit
/// Minkowski sums on a box of half-width n_vn + n_moore; sorted like
/// Neighborhood::cells().
std::vector<CellOffset> reachable_set(int n_vn, int n_moore);

/// Finds N + M = v such that N von Neumann steps plus M Moore steps reach
/// exactly cells_of(d2). Smallest N wins when several splits work.
std::optional<Composition> moore_vn_composition(int d2, int v);

}  // namespace anisocell
