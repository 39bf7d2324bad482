#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anisocell/geometry.hpp"

namespace anisocell {

/// Which first-octant border the speed profile is built from.
///
/// `staircase` follows every border cell (gradients restricted to vertical
/// and antidiagonal); `hull` uses only convex hull vertices, which is the
/// true asymptotic reachable speed but differs from the staircase wherever
/// the border has concave corners.
enum class BorderMode { staircase, hull };

const char* to_string(BorderMode m);
BorderMode parse_border_mode(const std::string& s);

enum class SegmentKind { vertical, antidiagonal, general };

/// One analytic piece of v(phi) between two consecutive border cells.
///
/// For every phi in [phi_lo, phi_hi], v(phi) = coeff / cos(phi - theta)
/// with theta the direction of the border line's outward normal. The two
/// kinds the integrals special-case reduce to
///   vertical:     v = dx / cos(phi)                    (gradient r = inf)
///   antidiagonal: v = (dx + dy) / (sin(phi) + cos(phi)) (gradient r = -1)
struct ProfileSegment {
    double phi_lo = 0.0;
    double phi_hi = 0.0;
    CellOffset delta_lo;
    CellOffset delta_hi;
    SegmentKind kind = SegmentKind::general;
    /// Border gradient r = r_num / r_den; r_den == 0 encodes r = infinity.
    int r_num = 0;
    int r_den = 0;
    /// C = dy_hi - r * dx_hi, the numerator of v(phi); for r = inf the limit
    /// dx_hi is stored.
    double C = 0.0;
    /// Normal form: v(phi) = coeff / cos(phi - theta).
    double coeff = 0.0;
    double theta = 0.0;

    double speed(double phi) const;
};

struct SpeedProfile {
    int d2 = 0;
    BorderMode mode = BorderMode::staircase;
    std::vector<ProfileSegment> segments;
};

struct Deviation {
    double dev_abs = 0.0;  // cells per round
    double dev_rel = 0.0;  // dev_abs / v_av
};

struct NeighborhoodReport {
    int d2 = 0;
    double v_av = 0.0;
    double dev_abs = 0.0;
    double dev_rel = 0.0;
    std::optional<Composition> composable;
};

/// Builds v(phi) on [0, pi/4] from border cells ordered by strictly
/// increasing angle. The last cell may lie past the diagonal; its segment
/// is clipped at pi/4.
SpeedProfile build_profile(std::span<const CellOffset> border, BorderMode mode, int d2 = 0);

/// Convenience: border_staircase or hull_vertices of d2, then build_profile.
SpeedProfile speed_profile(int d2, BorderMode mode = BorderMode::staircase);

/// Reduces phi into the first octant using the lattice symmetries.
double reduce_to_octant(double phi);

double v_of_phi(const SpeedProfile& profile, double phi);

/// Direction-averaged speed, (4/pi) times the octant integral of v(phi),
/// using closed-form integrals per segment.
double average_speed(const SpeedProfile& profile);

/// Root mean square of v(phi) - v_av over all directions, closed form.
Deviation angular_deviation(const SpeedProfile& profile, double v_av);

struct QuadratureResult {
    double v_av = 0.0;
    double dev_abs = 0.0;
};

/// Adaptive Gauss-Kronrod integration of the same two averages. Evaluates
/// v(phi) by intersecting the direction ray with the border chord directly,
/// without the segment coefficients used by the closed forms.
QuadratureResult quadrature_oracle(const SpeedProfile& profile);

NeighborhoodReport report(int d2, BorderMode mode = BorderMode::staircase);

/// One report per complete neighborhood with 1 <= extent <= v_max.
std::vector<NeighborhoodReport> report_all(int v_max = 10, BorderMode mode = BorderMode::staircase);

enum class SelectionMode { canonical, scoring };

const char* to_string(SelectionMode m);
SelectionMode parse_selection_mode(const std::string& s);

/// Tie window for scoring-mode selection (cells per round).
inline constexpr double kScoringTieWindow = 0.02;

/// Canonical neighborhood choice for speeds 1..10.
int canonical_neighborhood(int v);

/// Scoring rule: argmin |v_av - v| over complete neighborhoods with extent
/// <= v + 1; candidates within `tie_window` of the best distance are ranked
/// by smaller dev_rel, then smaller d2.
int scoring_neighborhood(int v, double tie_window = kScoringTieWindow,
                         BorderMode mode = BorderMode::staircase);

int select_neighborhood(int v, SelectionMode mode = SelectionMode::canonical);

/// Quarter-plane map: entry [y][x] is the smallest speed whose canonical
/// neighborhood contains (x, y); 0 for the origin, nullopt if no speed up
/// to v_max reaches it. Size (v_max + 1) x (v_max + 1).
using SpeedMap = std::vector<std::vector<std::optional<int>>>;
SpeedMap speed_map(int v_max = 10);

}  // namespace anisocell
