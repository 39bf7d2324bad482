#include <cmath>
#include <numbers>
#include <set>

#include "anisocell/experiments.hpp"
#include "doctest.h"

using namespace anisocell;

TEST_CASE("summary statistics use n-1") {
    const std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
    const auto s = summarize(xs);
    CHECK(s.n == 8);
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.sd == doctest::Approx(std::sqrt(32.0 / 7.0)));
    CHECK(s.min == 2.0);
    CHECK(s.max == 9.0);
    const std::vector<double> one = {3.0};
    CHECK(summarize(one).sd == 0.0);
    CHECK(coefficient_of_variation(xs) == doctest::Approx(std::sqrt(32.0 / 7.0) / 5.0));
}

TEST_CASE("derived seeds are deterministic and distinct") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t m = 0; m < 4; ++m)
        for (std::uint64_t s = 0; s < 256; ++s) seen.insert(derive_seed(m, s));
    CHECK(seen.size() == 1024);
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("course displacements all have length 325") {
    for (const auto& d : kCourseDisplacements) CHECK(d.norm2() == 325 * 325);
}

TEST_CASE("single agent run respects the geometric lower bound") {
    const auto t = run_single_agent({40, 0}, 2, 10.0, FieldVariant::integer_euclidean, 1, 500);
    REQUIRE(t);
    CHECK(*t >= 20);
    CHECK(*t <= 25);
    CHECK_FALSE(run_single_agent({40, 0}, 1, 10.0, FieldVariant::integer_euclidean, 1, 5));
}

TEST_CASE("directional experiment is independent of thread count") {
    const std::vector<int> speeds = {1, 5};
    auto specs = directional_specs(speeds, 10.0, 4, 77, FieldVariant::integer_euclidean);
    CHECK(specs.size() == 16);
    for (auto& s : specs) s.displacement = {s.displacement.x / 5, s.displacement.y / 5};
    const auto one = experiment_directional(specs, 1);
    const auto many = experiment_directional(specs, 4);
    REQUIRE(one.rows.size() == many.rows.size());
    CHECK(to_csv(one) == to_csv(many));
    for (const auto& row : one.rows) {
        CHECK(row.removal.mean == doctest::Approx(row.arrival.mean + 1.0));
        CHECK(row.arrival.min >= row.lower_bound);
        CHECK(row.timeouts == 0);
    }
    REQUIRE(one.anisotropy_ratio);
    CHECK(one.per_speed.size() == 2);
    CHECK(to_json(one).find("\"anisotropy_ratio\"") != std::string::npos);
}

TEST_CASE("front radii per angular bin") {
    const auto d = disc_scenario(20);
    auto sc = std::make_shared<const Scenario>(d.scenario);
    auto f = std::make_shared<const StaticField>(compute_static_field(*sc, FieldVariant::integer_euclidean));
    Simulation sim(sc, f, {}, 1);
    // relative cell centres (10.5, 0.5) and (3.5, 0.5) fall in bin 0, (-2.5, 5.5) in bin 1
    sim.add_agent({20 + 10, 20}, 1);
    sim.add_agent({20 + 3, 20}, 1);
    sim.add_agent({20 - 3, 20 + 5}, 1);
    const auto r = front_radii(sim, d.center_x, d.center_y, 4);
    REQUIRE(r.size() == 4);
    CHECK(r[0] == doctest::Approx(std::hypot(10.5, 0.5)));
    CHECK(r[1] == doctest::Approx(std::hypot(2.5, 5.5)));
    CHECK(r[2] == 0.0);
    CHECK(r[3] == 0.0);
    CHECK_THROWS_AS(front_radii(sim, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("small radial run") {
    RadialSpec spec;
    spec.radius = 30;
    spec.n_agents = 100;
    spec.v_max = 3;
    spec.snapshot_rounds = {10, 0};
    spec.check_invariants = true;
    const auto r = experiment_radial(spec);
    REQUIRE(r.snapshots.size() == 2);
    CHECK(r.snapshots[0].round == 0);
    CHECK(r.snapshots[0].active == 100);
    CHECK(r.snapshots[1].active < 100);
    CHECK(r.snapshots[0].pgm.rfind("P5\n60 60\n255\n", 0) == 0);
    CHECK(r.snapshots[0].pgm.size() == std::string("P5\n60 60\n255\n").size() + 3600);
    CHECK(to_csv(r).find("round") != std::string::npos);
    spec.n_agents = 1000000;
    CHECK_THROWS_AS(experiment_radial(spec), std::invalid_argument);
}

TEST_CASE("route geometry") {
    double len_a = 0.0, len_b = 0.0;
    for (const auto& l : route_a_legs(24)) len_a += std::sqrt(static_cast<double>(l.norm2()));
    for (const auto& l : route_b_legs(24)) len_b += std::sqrt(static_cast<double>(l.norm2()));
    CHECK(len_b == doctest::Approx(std::numbers::sqrt2 * len_a));
    CellOffset end_a, end_b;
    for (const auto& l : route_a_legs(24)) end_a = end_a + l;
    for (const auto& l : route_b_legs(24)) end_b = end_b + l;
    CHECK(end_a == CellOffset{192, 96});
    CHECK(end_b == CellOffset{288, 0});
}

TEST_CASE("two-route run on a small unit") {
    TwoRouteSpec spec;
    spec.v_max = 2;
    spec.unit = 4;
    spec.repetitions = 3;
    const auto r = experiment_two_routes(spec, 2);
    CHECK_FALSE(r.timed_out);
    CHECK(r.route_a.n == 3);
    CHECK(r.ratio == doctest::Approx(r.route_b.mean / r.route_a.mean));
    CHECK(r.normalized_ratio == doctest::Approx(r.ratio / std::numbers::sqrt2));
    const std::vector<TwoRouteResult> rows = {r};
    CHECK(to_csv(rows).rfind("v_max,field,reps,T_A,T_B", 0) == 0);
    spec.repetitions = 0;
    CHECK_THROWS_AS(experiment_two_routes(spec), std::invalid_argument);
}
