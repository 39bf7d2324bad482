#include <cmath>
#include <numbers>

#include "anisocell/kinematics.hpp"
#include "doctest.h"
#include "reference_values.hpp"

using namespace anisocell;
using std::numbers::pi;

namespace {

double round_to(double v, int decimals) {
    const double s = std::pow(10.0, decimals);
    return std::round(v * s) / s;
}

std::vector<int> all_d2() {
    auto e = enumerate_complete_neighborhoods(10);
    e.erase(e.begin());
    return e;
}

}  // namespace

TEST_CASE("von Neumann and Moore profiles in closed form") {
    const auto vn = speed_profile(1);
    for (double phi : {0.0, 0.1, 0.5, pi / 4}) CHECK(v_of_phi(vn, phi) == doctest::Approx(1.0 / (std::sin(phi) + std::cos(phi))));
    const auto moore = speed_profile(2);
    for (double phi : {0.0, 0.3, pi / 4}) CHECK(v_of_phi(moore, phi) == doctest::Approx(1.0 / std::cos(phi)));

    // (4/pi) * integral_0^{pi/4} dphi / cos(phi) = (4/pi) ln tan(3 pi / 8)
    CHECK(average_speed(moore) == doctest::Approx(4.0 / pi * std::log(std::tan(3 * pi / 8))).epsilon(1e-13));
    CHECK(average_speed(vn) ==
          doctest::Approx(4.0 / pi / std::sqrt(2.0) * std::log(std::tan(pi / 4 + pi / 8))).epsilon(1e-13));
}

TEST_CASE("segment metadata") {
    const auto p = speed_profile(5);
    REQUIRE(p.segments.size() == 2);
    // (2,0) -> (2,1) is vertical, (2,1) -> (1,2) antidiagonal
    CHECK(p.segments[0].kind == SegmentKind::vertical);
    CHECK(p.segments[0].r_den == 0);
    CHECK(p.segments[0].C == doctest::Approx(2.0));
    CHECK(p.segments[1].kind == SegmentKind::antidiagonal);
    CHECK(p.segments[1].r_num == -1);
    CHECK(p.segments[1].r_den == 1);
    CHECK(p.segments[1].C == doctest::Approx(3.0));
    CHECK(p.segments[1].phi_hi == doctest::Approx(pi / 4));
}

TEST_CASE("v(phi) hits every border cell at its own angle") {
    for (auto mode : {BorderMode::staircase, BorderMode::hull}) {
        for (int d2 : all_d2()) {
            const auto cells = mode == BorderMode::staircase ? border_staircase(d2).border : hull_vertices(d2);
            const auto p = speed_profile(d2, mode);
            for (const auto& c : cells) {
                const double phi = std::atan2(c.y, c.x);
                if (phi > pi / 4 + 1e-12) continue;
                CAPTURE(d2);
                CHECK(v_of_phi(p, phi) == doctest::Approx(std::sqrt(static_cast<double>(c.norm2()))).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("v(phi) symmetry and continuity") {
    for (int d2 : all_d2()) {
        CAPTURE(d2);
        const auto p = speed_profile(d2);
        for (std::size_t i = 0; i + 1 < p.segments.size(); ++i) {
            const auto& a = p.segments[i];
            const auto& b = p.segments[i + 1];
            CHECK(a.phi_hi == b.phi_lo);
            CHECK(a.speed(a.phi_hi) == doctest::Approx(b.speed(b.phi_lo)).epsilon(1e-12));
        }
        for (int k = 0; k <= 40; ++k) {
            const double phi = 0.013 + k * pi / 41;
            const double v = v_of_phi(p, phi);
            CHECK(v_of_phi(p, -phi) == doctest::Approx(v).epsilon(1e-12));
            CHECK(v_of_phi(p, pi / 2 - phi) == doctest::Approx(v).epsilon(1e-12));
            CHECK(v_of_phi(p, phi + pi / 2) == doctest::Approx(v).epsilon(1e-12));
            CHECK(v_of_phi(p, phi + 2 * pi) == doctest::Approx(v).epsilon(1e-12));
        }
    }
}

TEST_CASE("hull profile never falls below the staircase") {
    for (int d2 : all_d2()) {
        const auto s = speed_profile(d2, BorderMode::staircase);
        const auto h = speed_profile(d2, BorderMode::hull);
        for (int k = 0; k <= 200; ++k) {
            const double phi = k * (pi / 4) / 200;
            CHECK(v_of_phi(h, phi) >= v_of_phi(s, phi) - 1e-12);
        }
    }
}

TEST_CASE("closed forms agree with quadrature") {
    for (auto mode : {BorderMode::staircase, BorderMode::hull}) {
        for (int d2 : all_d2()) {
            CAPTURE(d2);
            const auto p = speed_profile(d2, mode);
            const double v_av = average_speed(p);
            const auto dev = angular_deviation(p, v_av);
            const auto q = quadrature_oracle(p);
            CHECK(std::abs(v_av - q.v_av) <= 1e-9 * std::abs(q.v_av));
            CHECK(std::abs(dev.dev_abs - q.dev_abs) <= 1e-9 * std::abs(q.dev_abs));
            CHECK(dev.dev_rel == doctest::Approx(dev.dev_abs / v_av));
        }
    }
}

TEST_CASE("staircase reports reproduce the reference table") {
    const auto reports = report_all(10, BorderMode::staircase);
    REQUIRE(reports.size() == reference::kResultsTable.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& row = reference::kResultsTable[i];
        CAPTURE(row.d2);
        CHECK(reports[i].d2 == row.d2);
        CHECK(round_to(reports[i].v_av, 2) == doctest::Approx(row.v_av).epsilon(1e-12));
        CHECK(round_to(reports[i].dev_rel, 3) == doctest::Approx(row.dev_rel).epsilon(1e-12));
    }
}

TEST_CASE("build_profile validates its input") {
    const std::vector<CellOffset> not_on_axis = {{2, 1}, {1, 2}};
    CHECK_THROWS_AS(build_profile(not_on_axis, BorderMode::staircase), std::invalid_argument);
    const std::vector<CellOffset> backwards = {{2, 0}, {2, 1}, {3, 1}};
    CHECK_THROWS_AS(build_profile(backwards, BorderMode::staircase), std::invalid_argument);
    const std::vector<CellOffset> short_of_diagonal = {{3, 0}, {3, 1}};
    CHECK_THROWS_AS(build_profile(short_of_diagonal, BorderMode::staircase), std::invalid_argument);
    const std::vector<CellOffset> single = {{1, 0}};
    CHECK_THROWS_AS(build_profile(single, BorderMode::staircase), std::invalid_argument);
}

TEST_CASE("neighborhood selection") {
    for (int v = 1; v <= 10; ++v) CHECK(canonical_neighborhood(v) == reference::kCanonical[v - 1]);
    CHECK_THROWS_AS(canonical_neighborhood(0), std::out_of_range);
    CHECK_THROWS_AS(canonical_neighborhood(11), std::out_of_range);

    for (int v = 1; v <= 9; ++v) CHECK(scoring_neighborhood(v) == canonical_neighborhood(v));
    CHECK(scoring_neighborhood(10) == 106);

    // A wider tie window pulls in candidates with visibly worse v_av.
    CHECK(scoring_neighborhood(8, 0.05) == 68);
    CHECK(scoring_neighborhood(9, 0.05) == 85);

    CHECK(select_neighborhood(4, SelectionMode::canonical) == 18);
    CHECK(select_neighborhood(10, SelectionMode::scoring) == 106);
    CHECK(parse_selection_mode("scoring") == SelectionMode::scoring);
    CHECK_THROWS_AS(parse_selection_mode("best"), std::invalid_argument);
}

TEST_CASE("speed map matches the reference quarter grid") {
    const auto map = speed_map(10);
    REQUIRE(map.size() == 11);
    for (int row = 0; row < 11; ++row) {
        const int y = 10 - row;
        for (int x = 0; x < 11; ++x) {
            CAPTURE(x);
            CAPTURE(y);
            const int want = reference::kSpeedMap[row][x];
            const auto& got = map[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
            if (want < 0)
                CHECK_FALSE(got.has_value());
            else
                CHECK(got == want);
        }
    }
}

TEST_CASE("border mode names") {
    CHECK(parse_border_mode("hull") == BorderMode::hull);
    CHECK(std::string(to_string(BorderMode::staircase)) == "staircase");
    CHECK_THROWS_AS(parse_border_mode("convex"), std::invalid_argument);
}
