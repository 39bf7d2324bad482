#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "anisocell/kinematics.hpp"

namespace anisocell {

namespace {

// Distance along direction phi to the chord a-b (Cramer's rule on
// t (cos, sin) = a + s (b - a)).
double ray_chord(CellOffset a, CellOffset b, double phi) {
    const double ux = std::cos(phi), uy = std::sin(phi);
    const double ex = b.x - a.x, ey = b.y - a.y;
    const double det = ux * (-ey) - uy * (-ex);
    return (a.x * (-ey) - a.y * (-ex)) / det;
}

template <class F>
double integrate(F f, double lo, double hi) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    return gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-12, &err);
}

}  // namespace

QuadratureResult quadrature_oracle(const SpeedProfile& profile) {
    double lin = 0.0;
    for (const auto& s : profile.segments)
        lin += integrate([&](double phi) { return ray_chord(s.delta_lo, s.delta_hi, phi); }, s.phi_lo, s.phi_hi);
    const double span = std::numbers::pi / 4.0;
    QuadratureResult q;
    q.v_av = lin / span;
    double sq = 0.0;
    for (const auto& s : profile.segments)
        sq += integrate(
            [&](double phi) {
                const double d = ray_chord(s.delta_lo, s.delta_hi, phi) - q.v_av;
                return d * d;
            },
            s.phi_lo, s.phi_hi);
    q.dev_abs = std::sqrt(sq / span);
    return q;
}

}  // namespace anisocell
