#include "anisocell/kinematics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace anisocell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarterPi = kPi / 4.0;

// Octant integrals of 1/cos(phi) (range A) and 1/(sin(phi) + cos(phi))
// (range B) in their half-angle tangent forms.
double integral_vertical(double lo, double hi) {
    return std::log(std::tan(hi / 2.0 + kPi / 4.0) / std::tan(lo / 2.0 + kPi / 4.0));
}

double integral_antidiagonal(double lo, double hi) {
    return std::log(std::tan(hi / 2.0 + kPi / 8.0) / std::tan(lo / 2.0 + kPi / 8.0)) / std::numbers::sqrt2;
}

double integral_vertical_sq(double lo, double hi) { return std::tan(hi) - std::tan(lo); }

double integral_antidiagonal_sq(double lo, double hi) {
    return 0.5 * (std::tan(hi - kQuarterPi) - std::tan(lo - kQuarterPi));
}

// Rotated forms for arbitrary border gradients: 1/cos(phi - theta).
double integral_general(double theta, double lo, double hi) {
    return std::log(std::tan((hi - theta) / 2.0 + kPi / 4.0) / std::tan((lo - theta) / 2.0 + kPi / 4.0));
}

double integral_general_sq(double theta, double lo, double hi) {
    return std::tan(hi - theta) - std::tan(lo - theta);
}

// Linear and quadratic integrals of v(phi) over one segment.
std::array<double, 2> segment_moments(const ProfileSegment& s) {
    switch (s.kind) {
        case SegmentKind::vertical:
            return {s.C * integral_vertical(s.phi_lo, s.phi_hi),
                    s.C * s.C * integral_vertical_sq(s.phi_lo, s.phi_hi)};
        case SegmentKind::antidiagonal:
            return {s.C * integral_antidiagonal(s.phi_lo, s.phi_hi),
                    s.C * s.C * integral_antidiagonal_sq(s.phi_lo, s.phi_hi)};
        case SegmentKind::general:
            break;
    }
    return {s.coeff * integral_general(s.theta, s.phi_lo, s.phi_hi),
            s.coeff * s.coeff * integral_general_sq(s.theta, s.phi_lo, s.phi_hi)};
}

}  // namespace

const char* to_string(BorderMode m) { return m == BorderMode::staircase ? "staircase" : "hull"; }

BorderMode parse_border_mode(const std::string& s) {
    if (s == "staircase") return BorderMode::staircase;
    if (s == "hull") return BorderMode::hull;
    throw std::invalid_argument("unknown border mode: " + s);
}

const char* to_string(SelectionMode m) { return m == SelectionMode::canonical ? "canonical" : "scoring"; }

SelectionMode parse_selection_mode(const std::string& s) {
    if (s == "canonical") return SelectionMode::canonical;
    if (s == "scoring") return SelectionMode::scoring;
    throw std::invalid_argument("unknown selection mode: " + s);
}

double ProfileSegment::speed(double phi) const { return coeff / std::cos(phi - theta); }

SpeedProfile build_profile(std::span<const CellOffset> border, BorderMode mode, int d2) {
    if (border.size() < 2) throw std::invalid_argument("border needs at least two cells");
    SpeedProfile prof;
    prof.d2 = d2;
    prof.mode = mode;

    double prev_angle = -1.0;
    for (const auto& c : border) {
        const double a = std::atan2(c.y, c.x);
        if (a <= prev_angle) throw std::invalid_argument("border angles must be strictly increasing");
        prev_angle = a;
    }
    if (std::atan2(border.front().y, border.front().x) != 0.0)
        throw std::invalid_argument("border must start on the positive x axis");

    for (std::size_t i = 0; i + 1 < border.size(); ++i) {
        const CellOffset a = border[i];
        const CellOffset b = border[i + 1];
        ProfileSegment s;
        s.delta_lo = a;
        s.delta_hi = b;
        s.phi_lo = std::atan2(a.y, a.x);
        if (s.phi_lo >= kQuarterPi) break;
        s.phi_hi = std::min(std::atan2(b.y, b.x), kQuarterPi);

        const int dx = b.x - a.x;
        const int dy = b.y - a.y;
        const double cr = static_cast<double>(a.x) * b.y - static_cast<double>(a.y) * b.x;
        if (dx == 0) {
            s.kind = SegmentKind::vertical;
            s.r_num = 1;
            s.r_den = 0;
            s.C = b.x;
        } else {
            const int g = std::gcd(dx, dy);
            s.r_num = dy / g;
            s.r_den = dx / g;
            if (s.r_den < 0) {
                s.r_num = -s.r_num;
                s.r_den = -s.r_den;
            }
            s.kind = (s.r_num == -1 && s.r_den == 1) ? SegmentKind::antidiagonal : SegmentKind::general;
            s.C = -cr / dx;
        }
        const double R = std::hypot(dx, dy);
        s.theta = std::atan2(-static_cast<double>(dx), static_cast<double>(dy));
        s.coeff = cr / R;
        prof.segments.push_back(s);
        if (s.phi_hi >= kQuarterPi) break;
    }
    if (prof.segments.empty() || prof.segments.back().phi_hi < kQuarterPi)
        throw std::invalid_argument("border does not reach the 45 degree diagonal");
    return prof;
}

SpeedProfile speed_profile(int d2, BorderMode mode) {
    if (mode == BorderMode::staircase) {
        const auto st = border_staircase(d2);
        return build_profile(st.border, mode, d2);
    }
    const auto hull = hull_vertices(d2);
    return build_profile(hull, mode, d2);
}

double reduce_to_octant(double phi) {
    double p = std::fmod(phi, kPi / 2.0);
    if (p < 0) p += kPi / 2.0;
    if (p > kQuarterPi) p = kPi / 2.0 - p;
    return p;
}

double v_of_phi(const SpeedProfile& profile, double phi) {
    const double p = reduce_to_octant(phi);
    for (const auto& s : profile.segments)
        if (p <= s.phi_hi) return s.speed(p);
    return profile.segments.back().speed(p);
}

double average_speed(const SpeedProfile& profile) {
    double lin = 0.0;
    for (const auto& s : profile.segments) lin += segment_moments(s)[0];
    return lin / kQuarterPi;
}

Deviation angular_deviation(const SpeedProfile& profile, double v_av) {
    // sum over segments of  int v^2 - 2 v_av int v + v_av^2 (phi_hi - phi_lo)
    double acc = 0.0;
    for (const auto& s : profile.segments) {
        const auto [lin, sq] = segment_moments(s);
        acc += sq - 2.0 * v_av * lin + v_av * v_av * (s.phi_hi - s.phi_lo);
    }
    Deviation d;
    d.dev_abs = std::sqrt(std::max(0.0, acc / kQuarterPi));
    d.dev_rel = d.dev_abs / v_av;
    return d;
}

NeighborhoodReport report(int d2, BorderMode mode) {
    const auto prof = speed_profile(d2, mode);
    NeighborhoodReport r;
    r.d2 = d2;
    r.v_av = average_speed(prof);
    const auto dev = angular_deviation(prof, r.v_av);
    r.dev_abs = dev.dev_abs;
    r.dev_rel = dev.dev_rel;
    r.composable = moore_vn_composition(d2, isqrt(d2));
    return r;
}

std::vector<NeighborhoodReport> report_all(int v_max, BorderMode mode) {
    std::vector<NeighborhoodReport> out;
    for (int d2 : enumerate_complete_neighborhoods(v_max))
        if (d2 > 0) out.push_back(report(d2, mode));
    return out;
}

int canonical_neighborhood(int v) {
    static constexpr std::array<int, 10> kChoice = {2, 5, 10, 18, 29, 40, 53, 72, 89, 109};
    if (v < 1 || v > 10) throw std::out_of_range("canonical selection covers speeds 1..10");
    return kChoice[static_cast<std::size_t>(v - 1)];
}

int scoring_neighborhood(int v, double tie_window, BorderMode mode) {
    if (v < 1) throw std::invalid_argument("speed must be positive");
    const auto reports = report_all(v + 1, mode);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : reports) best = std::min(best, std::abs(r.v_av - v));
    const NeighborhoodReport* pick = nullptr;
    for (const auto& r : reports) {
        if (std::abs(r.v_av - v) > best + tie_window) continue;
        if (!pick || r.dev_rel < pick->dev_rel || (r.dev_rel == pick->dev_rel && r.d2 < pick->d2)) pick = &r;
    }
    return pick->d2;
}

int select_neighborhood(int v, SelectionMode mode) {
    return mode == SelectionMode::canonical ? canonical_neighborhood(v) : scoring_neighborhood(v);
}

SpeedMap speed_map(int v_max) {
    if (v_max < 1 || v_max > 10) throw std::out_of_range("speed_map covers speeds 1..10");
    SpeedMap grid(static_cast<std::size_t>(v_max + 1), std::vector<std::optional<int>>(static_cast<std::size_t>(v_max + 1)));
    for (int y = 0; y <= v_max; ++y)
        for (int x = 0; x <= v_max; ++x) {
            const int n2 = x * x + y * y;
            auto& cell = grid[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
            if (n2 == 0) {
                cell = 0;
                continue;
            }
            for (int v = 1; v <= v_max; ++v)
                if (n2 <= canonical_neighborhood(v)) {
                    cell = v;
                    break;
                }
        }
    return grid;
}

}  // namespace anisocell
