#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <sstream>

#include "anisocell/simulator.hpp"
#include "doctest.h"

using namespace anisocell;

namespace {

struct World {
    std::shared_ptr<const Scenario> scenario;
    std::shared_ptr<const StaticField> field;
};

World make_world(const Scenario& s, FieldVariant v = FieldVariant::integer_euclidean) {
    auto sc = std::make_shared<const Scenario>(s);
    return {sc, std::make_shared<const StaticField>(compute_static_field(*sc, v))};
}

SimulationOptions with_ks(double k) {
    SimulationOptions o;
    o.k_s = k;
    return o;
}

double probability_of(const DestinationChoice& d, Cell c) {
    for (std::size_t i = 0; i < d.candidates.size(); ++i)
        if (d.candidates[i] == c) return d.probabilities[i];
    return 0.0;
}

Simulation crowd(std::uint64_t seed, bool check) {
    const auto w = make_world(open_room(30, 30, {{0, 15}, {29, 0}}));
    SimulationOptions o;
    o.check_invariants = check;
    Simulation sim(w.scenario, w.field, o, seed);
    int placed = 0;
    for (int y = 3; y < 27 && placed < 150; y += 2)
        for (int x = 5; x < 28 && placed < 150; x += 2) sim.add_agent({x, y}, 1 + placed++ % 10);
    return sim;
}

}  // namespace

TEST_CASE("destination probabilities follow exp(k (S_max - S))") {
    const auto w = make_world(scenario_from_string("2 1\nE.\n"));
    Simulation sim(w.scenario, w.field, with_ks(std::log(2.0)), 1);
    const int id = sim.add_agent({1, 0}, 1);
    const auto d = sim.destination_distribution(id);
    REQUIRE(d.candidates.size() == 2);
    CHECK(probability_of(d, {0, 0}) == doctest::Approx(2.0 / 3.0));
    CHECK(probability_of(d, {1, 0}) == doctest::Approx(1.0 / 3.0));

    const auto w3 = make_world(scenario_from_string("3 1\nE..\n"));
    Simulation sim3(w3.scenario, w3.field, with_ks(std::log(2.0)), 1);
    const auto d3 = sim3.destination_distribution(sim3.add_agent({1, 0}, 1));
    CHECK(probability_of(d3, {0, 0}) == doctest::Approx(4.0 / 7.0));
    CHECK(probability_of(d3, {1, 0}) == doctest::Approx(2.0 / 7.0));
    CHECK(probability_of(d3, {2, 0}) == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("candidates exclude walls and include occupied cells") {
    const auto w = make_world(scenario_from_string("4 3\n....\n.#..\nE...\n"));
    Simulation sim(w.scenario, w.field, {}, 1);
    const int a = sim.add_agent({1, 0}, 1);
    sim.add_agent({2, 0}, 1);
    const auto d = sim.destination_distribution(a);
    CHECK(d.candidates.size() == 5);  // (0,0) (1,0) (2,0) (0,1) (2,1); (1,1) is a wall
    CHECK(probability_of(d, {2, 0}) > 0.0);
    CHECK(probability_of(d, {1, 1}) == 0.0);
    double total = 0.0;
    for (double p : d.probabilities) total += p;
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("softmax is invariant under a constant field shift") {
    const auto base = make_world(open_room(15, 15, {{0, 7}}), FieldVariant::real_euclidean);
    auto shifted_field = std::make_shared<StaticField>(*base.field);
    for (auto& v : shifted_field->values) v += 1000.0;

    const SimulationOptions opt = with_ks(0.8);
    Simulation ref(base.scenario, base.field, opt, 3);
    Simulation sim(base.scenario, shifted_field, opt, 4);
    const int id_ref = ref.add_agent({8, 7}, 2);
    const int id = sim.add_agent({8, 7}, 2);

    const auto expected = ref.destination_distribution(id_ref);
    const auto got = sim.destination_distribution(id);
    REQUIRE(expected.candidates == got.candidates);
    for (std::size_t i = 0; i < got.probabilities.size(); ++i)
        CHECK(got.probabilities[i] == doctest::Approx(expected.probabilities[i]).epsilon(1e-12));

    constexpr int draws = 20000;
    std::map<Cell, int> counts;
    for (int i = 0; i < draws; ++i) ++counts[sim.choose_destination(id)];
    double chi2 = 0.0;
    for (std::size_t i = 0; i < expected.candidates.size(); ++i) {
        const double e = draws * expected.probabilities[i];
        const double o = counts[expected.candidates[i]];
        chi2 += (o - e) * (o - e) / e;
    }
    const boost::math::chi_squared dist(static_cast<double>(expected.candidates.size() - 1));
    const double p = boost::math::cdf(boost::math::complement(dist, chi2));
    CAPTURE(chi2);
    CHECK(p > 0.01);
}

TEST_CASE("greedy walk reaches the destination in one round") {
    const auto w = make_world(open_room(10, 10, {{7, 4}}));
    Simulation sim(w.scenario, w.field, with_ks(60.0), 9);
    const int id = sim.add_agent({2, 2}, 5);
    sim.step();
    CHECK(sim.agents()[static_cast<std::size_t>(id)].evacuated_at == 1);
    CHECK(sim.agents()[static_cast<std::size_t>(id)].position == Cell{7, 4});
    for (Cell c : {Cell{2, 2}, Cell{3, 3}, Cell{4, 4}, Cell{5, 4}, Cell{6, 4}, Cell{7, 4}}) CHECK(sim.is_blocked(c));
    CHECK_FALSE(sim.is_blocked({3, 2}));
    CHECK(sim.active_count() == 0);
}

TEST_CASE("surrounded agent keeps its cell") {
    const auto w = make_world(open_room(7, 7, {{0, 0}}));
    Simulation sim(w.scenario, w.field, with_ks(60.0), 1);
    const int id = sim.add_agent({3, 3}, 2);
    for (const auto& d : kCompass) sim.add_agent({3 + d.x, 3 + d.y}, 1);
    sim.choose_destination(id);
    CHECK(sim.move_agent(id) == Cell{3, 3});
}

TEST_CASE("blocked detours stay inside the neighborhood") {
    // destination (2,0) from (0,0) with v = 2 (d2 = 5); the direct cells are
    // occupied, so any detour must stay within distance^2 5 of the start
    const auto w = make_world(open_room(9, 9, {{8, 8}}));
    Simulation sim(w.scenario, w.field, with_ks(60.0), 1);
    const int id = sim.add_agent({3, 4}, 2);
    sim.add_agent({4, 4}, 1);
    sim.add_agent({4, 3}, 1);
    sim.add_agent({4, 5}, 1);
    sim.choose_destination(id);
    const Cell end = sim.move_agent(id);
    const CellOffset disp{end.x - 3, end.y - 4};
    CHECK(disp.norm2() <= 5);
}

TEST_CASE("greedy ties follow compass order") {
    const auto w = make_world(open_room(5, 5, {{4, 4}}));
    Simulation sim(w.scenario, w.field, with_ks(60.0), 1);
    const int id = sim.add_agent({2, 2}, 1);
    sim.choose_destination(id);
    // destination (3,3): NE is the only closest step
    CHECK(sim.move_agent(id) == Cell{3, 3});
    CHECK(kCompass[0] == CellOffset{0, 1});
    CHECK(kCompass[4] == CellOffset{1, 1});
}

TEST_CASE("start cells stay blocked for the rest of the round") {
    const auto w = make_world(scenario_from_string("4 1\nE...\n"));
    Simulation sim(w.scenario, w.field, with_ks(50.0), 5);
    const int a = sim.add_agent({1, 0}, 1);
    const int b = sim.add_agent({2, 0}, 1);
    const int c = sim.add_agent({3, 0}, 1);
    sim.step();
    CHECK(sim.agents()[static_cast<std::size_t>(a)].evacuated_at == 1);
    CHECK(sim.agents()[static_cast<std::size_t>(b)].position == Cell{2, 0});
    CHECK(sim.agents()[static_cast<std::size_t>(c)].position == Cell{3, 0});
    sim.step();
    CHECK(sim.agents()[static_cast<std::size_t>(b)].position == Cell{1, 0});
    CHECK(sim.agents()[static_cast<std::size_t>(c)].position == Cell{3, 0});
    sim.step();
    CHECK(sim.agents()[static_cast<std::size_t>(b)].evacuated_at == 3);
    CHECK(sim.agents()[static_cast<std::size_t>(c)].position == Cell{2, 0});
}

TEST_CASE("agent without reachable candidates stays put") {
    const auto w = make_world(scenario_from_string("5 3\nE.###\n..#.#\n..###\n"), FieldVariant::grid_geodesic);
    Simulation sim(w.scenario, w.field, {}, 1);
    const int id = sim.add_agent({3, 1}, 1);
    CHECK(sim.destination_distribution(id).candidates.empty());
    for (int i = 0; i < 3; ++i) sim.step();
    CHECK(sim.agents()[0].position == Cell{3, 1});
    CHECK(sim.agents()[0].active());
    const auto r = sim.run_until_empty(5);
    CHECK(r.timed_out);
    CHECK(r.rounds == 5);

    // a faster agent sees cells beyond the wall but cannot walk there
    Simulation fast(w.scenario, w.field, {}, 1);
    fast.add_agent({3, 1}, 3);
    CHECK_FALSE(fast.destination_distribution(0).candidates.empty());
    for (int i = 0; i < 3; ++i) fast.step();
    CHECK(fast.agents()[0].position == Cell{3, 1});
}

TEST_CASE("single agent advances along a corridor no faster than its speed") {
    std::string row(31, '.');
    row[0] = 'E';
    const auto w = make_world(scenario_from_string("31 1\n" + row + "\n"));
    for (int v : {1, 3, 5}) {
        Simulation sim(w.scenario, w.field, {}, static_cast<std::uint64_t>(v));
        sim.add_agent({30, 0}, v);
        const auto r = sim.run_until_empty(200);
        REQUIRE_FALSE(r.timed_out);
        const int lower = (30 + v - 1) / v;
        CHECK(*r.evacuated_at[0] >= lower);
        CHECK(*r.evacuated_at[0] <= lower + 3);
    }
}

TEST_CASE("crowd run keeps exclusion and containment") {
    auto sim = crowd(11, true);
    const auto r = sim.run_until_empty(2000);
    CHECK_FALSE(r.timed_out);
    for (const auto& e : r.evacuated_at) CHECK(e.has_value());
}

TEST_CASE("same seed, same run; generator state round trip") {
    auto a = crowd(21, false);
    auto b = crowd(21, false);
    CHECK(a.run_until_empty(2000).evacuated_at == b.run_until_empty(2000).evacuated_at);

    auto c = crowd(21, false);
    auto d = crowd(22, false);
    CHECK(c.run_until_empty(2000).evacuated_at != d.run_until_empty(2000).evacuated_at);

    auto e = crowd(5, false);
    auto f = crowd(99, false);
    f.set_rng_state(e.rng_state());
    CHECK(e.run_until_empty(2000).evacuated_at == f.run_until_empty(2000).evacuated_at);
    CHECK_THROWS_AS(f.set_rng_state("not a state"), std::invalid_argument);
}

TEST_CASE("agent placement errors") {
    const auto w = make_world(scenario_from_string("3 2\n.#E\n...\n"));
    Simulation sim(w.scenario, w.field, {}, 1);
    CHECK_THROWS_AS(sim.add_agent({1, 0}, 1), ScenarioError);
    CHECK_THROWS_AS(sim.add_agent({5, 0}, 1), ScenarioError);
    CHECK_THROWS_AS(sim.add_agent({0, 0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(sim.add_agent({0, 0}, 11), std::invalid_argument);
    const int id = sim.add_agent({0, 0}, 1);
    CHECK_THROWS_AS(sim.add_agent({0, 0}, 1), ScenarioError);
    CHECK(sim.occupant({0, 0}) == id);
    CHECK_THROWS_AS(sim.move_agent(id), std::logic_error);
    CHECK(sim.neighborhood_offsets(2).size() == 21);
}

TEST_CASE("trajectory log") {
    const auto w = make_world(scenario_from_string("3 1\nE..\n"));
    Simulation sim(w.scenario, w.field, with_ks(60.0), 1);
    sim.add_agent({2, 0}, 1);
    std::ostringstream os;
    TrajectoryLog log(os);
    log.record(sim);
    sim.set_round_observer([&](const Simulation& s) { log.record(s); });
    sim.run_until_empty(10);
    CHECK(os.str() == "round,agent_id,x,y\n0,0,2,0\n1,0,1,0\n");
}
