#include "anisocell/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "anisocell/kinematics.hpp"
#include "json.hpp"

namespace anisocell {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Runs body(i) for i in [0, n) on a small pool; body writes only to slot i.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mu);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::string fixed(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

double max_speed(int v_max) {
    const auto prof = speed_profile(canonical_neighborhood(v_max));
    double m = 0.0;
    for (const auto& s : prof.segments) m = std::max({m, s.speed(s.phi_lo), s.speed(s.phi_hi)});
    return m;
}

nlohmann::json stats_json(const Stats& s) {
    return {{"n", s.n}, {"mean", s.mean}, {"sd", s.sd}, {"min", s.min}, {"max", s.max}};
}

}  // namespace

Stats summarize(std::span<const double> xs) {
    Stats s;
    s.n = xs.size();
    if (xs.empty()) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    s.min = *std::min_element(xs.begin(), xs.end());
    s.max = *std::max_element(xs.begin(), xs.end());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream));
}

std::optional<int> run_single_agent(CellOffset displacement, int v_max, double k_s, FieldVariant field,
                                    std::uint64_t seed, int max_rounds, int margin) {
    const int min_x = std::min(0, displacement.x) - margin, max_x = std::max(0, displacement.x) + margin;
    const int min_y = std::min(0, displacement.y) - margin, max_y = std::max(0, displacement.y) + margin;
    const Cell start{-min_x, -min_y};
    const Cell exit{displacement.x - min_x, displacement.y - min_y};
    auto sc = std::make_shared<const Scenario>(open_room(max_x - min_x + 1, max_y - min_y + 1, {exit}));
    auto f = std::make_shared<const StaticField>(compute_static_field(*sc, field));
    SimulationOptions opt;
    opt.k_s = k_s;
    Simulation sim(sc, f, opt, seed);
    sim.add_agent(start, v_max);
    const auto r = sim.run_until_empty(max_rounds);
    return r.evacuated_at.front();
}

std::vector<DirectionalRunSpec> directional_specs(std::span<const int> speeds, double k_s, int repetitions,
                                                  std::uint64_t seed, FieldVariant field) {
    std::vector<DirectionalRunSpec> out;
    for (int v : speeds)
        for (const auto& d : kCourseDisplacements) {
            DirectionalRunSpec s;
            s.displacement = d;
            s.v_max = v;
            s.k_s = k_s;
            s.repetitions = repetitions;
            s.seed = seed;
            s.field = field;
            out.push_back(s);
        }
    return out;
}

DirectionalResult experiment_directional(std::span<const DirectionalRunSpec> specs, unsigned threads) {
    struct Job {
        std::size_t spec;
        int rep;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (specs[i].repetitions < 1) throw std::invalid_argument("repetitions must be positive");
        for (int r = 0; r < specs[i].repetitions; ++r) jobs.push_back({i, r});
    }
    std::vector<std::optional<int>> times(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        const auto& s = specs[jobs[j].spec];
        // stream id mixes direction, speed and repetition
        const std::uint64_t stream = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.displacement.x)) << 40) ^
                                     (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.displacement.y)) << 20) ^
                                     (static_cast<std::uint64_t>(s.v_max) << 16) ^ static_cast<std::uint64_t>(jobs[j].rep);
        times[j] = run_single_agent(s.displacement, s.v_max, s.k_s, s.field, derive_seed(s.seed, stream),
                                    s.max_rounds, s.margin);
    });

    DirectionalResult res;
    std::size_t j = 0;
    for (const auto& s : specs) {
        DirectionalRow row;
        row.displacement = s.displacement;
        row.angle_deg = std::atan2(s.displacement.y, s.displacement.x) * 180.0 / std::numbers::pi;
        row.v_max = s.v_max;
        std::vector<double> arr, rem;
        for (int r = 0; r < s.repetitions; ++r, ++j) {
            if (!times[j]) {
                ++row.timeouts;
                continue;
            }
            arr.push_back(*times[j]);
            rem.push_back(*times[j] + 1.0);
        }
        row.arrival = summarize(arr);
        row.removal = summarize(rem);
        row.lower_bound = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(s.displacement.norm2())) /
                                                     max_speed(s.v_max) - 1e-12));
        if (row.timeouts) res.timed_out = true;
        res.rows.push_back(row);
    }

    std::vector<int> speeds;
    for (const auto& r : res.rows)
        if (std::find(speeds.begin(), speeds.end(), r.v_max) == speeds.end()) speeds.push_back(r.v_max);
    for (int v : speeds) {
        std::vector<double> means;
        for (const auto& r : res.rows)
            if (r.v_max == v && r.removal.n) means.push_back(r.removal.mean);
        const auto st = summarize(means);
        res.per_speed.push_back({v, st.mean, st.sd, st.mean > 0 ? st.sd / st.mean : 0.0});
    }
    const DirectionalSpeedSummary* s1 = nullptr;
    const DirectionalSpeedSummary* s5 = nullptr;
    for (const auto& p : res.per_speed) {
        if (p.v_max == 1) s1 = &p;
        if (p.v_max == 5) s5 = &p;
    }
    if (s1 && s5 && s5->rel_spread > 0) res.anisotropy_ratio = s1->rel_spread / s5->rel_spread;
    return res;
}

// ---------------------------------------------------------------------------

double coefficient_of_variation(std::span<const double> xs) {
    const auto s = summarize(xs);
    return s.mean > 0 ? s.sd / s.mean : 0.0;
}

std::vector<double> front_radii(const Simulation& sim, double cx, double cy, int bins) {
    if (bins < 1) throw std::invalid_argument("need at least one angular bin");
    std::vector<double> out(static_cast<std::size_t>(bins), 0.0);
    for (const auto& a : sim.agents()) {
        if (!a.active()) continue;
        const double dx = a.position.x + 0.5 - cx, dy = a.position.y + 0.5 - cy;
        double ang = std::atan2(dy, dx);
        if (ang < 0) ang += 2.0 * std::numbers::pi;
        auto b = static_cast<std::size_t>(ang / (2.0 * std::numbers::pi) * bins);
        if (b >= out.size()) b = out.size() - 1;
        out[b] = std::max(out[b], std::hypot(dx, dy));
    }
    return out;
}

std::string occupancy_pgm(const Simulation& sim) {
    const auto& sc = sim.scenario();
    std::string img = "P5\n" + std::to_string(sc.width()) + " " + std::to_string(sc.height()) + "\n255\n";
    const std::size_t header = img.size();
    img.resize(header + sc.cell_count());
    for (std::size_t i = 0; i < sc.cell_count(); ++i) {
        const Cell c = sc.cell_at(i);
        unsigned char px = 255;
        if (sc.is_wall(c))
            px = 128;
        else if (sim.occupant(c) >= 0)
            px = 0;
        img[header + i] = static_cast<char>(px);
    }
    return img;
}

RadialResult experiment_radial(const RadialSpec& spec) {
    const auto disc = disc_scenario(spec.radius);
    auto sc = std::make_shared<const Scenario>(disc.scenario);
    auto f = std::make_shared<const StaticField>(compute_static_field(*sc, spec.field));
    SimulationOptions opt;
    opt.k_s = spec.k_s;
    opt.check_invariants = spec.check_invariants;
    Simulation sim(sc, f, opt, spec.seed);

    std::vector<Cell> free;
    for (std::size_t i = 0; i < sc->cell_count(); ++i) {
        const Cell c = sc->cell_at(i);
        if (sc->walkable(c) && !sc->is_exit(c)) free.push_back(c);
    }
    if (spec.n_agents < 0 || static_cast<std::size_t>(spec.n_agents) > free.size())
        throw std::invalid_argument("agent count exceeds free cells");
    for (int k = 0; k < spec.n_agents; ++k) {
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(k), free.size() - 1);
        std::swap(free[static_cast<std::size_t>(k)], free[pick(sim.rng())]);
        sim.add_agent(free[static_cast<std::size_t>(k)], spec.v_max);
    }

    RadialResult res;
    res.free_cells = sc->free_cell_count();
    auto rounds = spec.snapshot_rounds;
    std::sort(rounds.begin(), rounds.end());
    for (int target : rounds) {
        if (target < 0) throw std::invalid_argument("snapshot rounds must be non-negative");
        while (sim.round() < target && sim.active_count() > 0) sim.step();
        RadialSnapshot snap;
        snap.round = target;
        snap.active = sim.active_count();
        snap.bin_radius = front_radii(sim, disc.center_x, disc.center_y, spec.bins);
        snap.front_cv = coefficient_of_variation(snap.bin_radius);
        snap.pgm = occupancy_pgm(sim);
        res.snapshots.push_back(std::move(snap));
    }
    return res;
}

// ---------------------------------------------------------------------------

std::vector<CellOffset> route_a_legs(int unit) {
    const int l = 4 * unit;
    return {{l, 0}, {0, l}, {l, 0}};
}

std::vector<CellOffset> route_b_legs(int unit) {
    const int l = 3 * unit;
    return {{l, l}, {l, -l}, {l, l}, {l, -l}};
}

TwoRouteResult experiment_two_routes(const TwoRouteSpec& spec, unsigned threads) {
    if (spec.repetitions < 1) throw std::invalid_argument("repetitions must be positive");
    if (spec.unit < 1) throw std::invalid_argument("route unit must be positive");
    const auto legs_a = route_a_legs(spec.unit);
    const auto legs_b = route_b_legs(spec.unit);

    struct Leg {
        std::shared_ptr<const Scenario> scenario;
        std::shared_ptr<const StaticField> field;
        Cell start;
    };
    auto prepare = [&](const std::vector<CellOffset>& legs) {
        std::vector<Leg> out;
        for (const auto& d : legs) {
            const auto cor = corridor_scenario(d.x, d.y, spec.corridor_width);
            auto sc = std::make_shared<const Scenario>(cor.scenario);
            out.push_back({sc, std::make_shared<const StaticField>(compute_static_field(*sc, spec.field)), cor.start});
        }
        return out;
    };
    const auto prep_a = prepare(legs_a);
    const auto prep_b = prepare(legs_b);

    std::vector<std::optional<double>> ta(static_cast<std::size_t>(spec.repetitions));
    std::vector<std::optional<double>> tb(static_cast<std::size_t>(spec.repetitions));
    auto walk = [&](const std::vector<Leg>& legs, std::uint64_t route, int rep) -> std::optional<double> {
        double total = 0.0;
        for (std::size_t i = 0; i < legs.size(); ++i) {
            SimulationOptions opt;
            opt.k_s = spec.k_s;
            const std::uint64_t stream = (route << 40) ^ (static_cast<std::uint64_t>(i) << 32) ^
                                         (static_cast<std::uint64_t>(spec.v_max) << 24) ^
                                         static_cast<std::uint64_t>(rep);
            Simulation sim(legs[i].scenario, legs[i].field, opt, derive_seed(spec.seed, stream));
            sim.add_agent(legs[i].start, spec.v_max);
            const auto r = sim.run_until_empty(spec.max_rounds);
            if (!r.evacuated_at.front()) return std::nullopt;
            total += *r.evacuated_at.front();
        }
        return total;
    };
    parallel_for(static_cast<std::size_t>(2 * spec.repetitions), threads, [&](std::size_t j) {
        const int rep = static_cast<int>(j / 2);
        if (j % 2 == 0)
            ta[static_cast<std::size_t>(rep)] = walk(prep_a, 1, rep);
        else
            tb[static_cast<std::size_t>(rep)] = walk(prep_b, 2, rep);
    });

    TwoRouteResult res;
    res.v_max = spec.v_max;
    res.field = spec.field;
    std::vector<double> a, b;
    for (const auto& t : ta)
        t ? a.push_back(*t) : void(res.timed_out = true);
    for (const auto& t : tb)
        t ? b.push_back(*t) : void(res.timed_out = true);
    res.route_a = summarize(a);
    res.route_b = summarize(b);
    if (res.route_a.mean > 0) {
        res.ratio = res.route_b.mean / res.route_a.mean;
        res.normalized_ratio = res.ratio / std::numbers::sqrt2;
    }
    return res;
}

// ---------------------------------------------------------------------------

std::string to_csv(const DirectionalResult& r) {
    std::ostringstream os;
    os << "dx,dy,angle_deg,v_max,reps,mean_removal,sd_removal,mean_arrival,sd_arrival,min_arrival,max_arrival,"
          "lower_bound,timeouts\n";
    for (const auto& row : r.rows)
        os << row.displacement.x << ',' << row.displacement.y << ',' << fixed(row.angle_deg, 1) << ',' << row.v_max
           << ',' << row.arrival.n << ',' << fixed(row.removal.mean, 2) << ',' << fixed(row.removal.sd, 2) << ','
           << fixed(row.arrival.mean, 2) << ',' << fixed(row.arrival.sd, 2) << ',' << fixed(row.arrival.min, 0)
           << ',' << fixed(row.arrival.max, 0) << ',' << row.lower_bound << ',' << row.timeouts << '\n';
    return os.str();
}

std::string to_json(const DirectionalResult& r) {
    nlohmann::json j;
    j["convention"] = "removal = arrival + 1 (agent leaves the grid the round after stepping onto the exit)";
    for (const auto& row : r.rows)
        j["rows"].push_back({{"dx", row.displacement.x},
                             {"dy", row.displacement.y},
                             {"angle_deg", row.angle_deg},
                             {"v_max", row.v_max},
                             {"arrival", stats_json(row.arrival)},
                             {"removal", stats_json(row.removal)},
                             {"lower_bound", row.lower_bound},
                             {"timeouts", row.timeouts}});
    for (const auto& p : r.per_speed)
        j["per_speed"].push_back({{"v_max", p.v_max}, {"mean", p.mean}, {"sd", p.sd}, {"rel_spread", p.rel_spread}});
    j["anisotropy_ratio"] = r.anisotropy_ratio ? nlohmann::json(*r.anisotropy_ratio) : nlohmann::json(nullptr);
    j["timed_out"] = r.timed_out;
    return j.dump(2) + "\n";
}

std::string to_csv(const RadialResult& r) {
    std::ostringstream os;
    os << "round,active,front_cv,mean_front_radius\n";
    for (const auto& s : r.snapshots)
        os << s.round << ',' << s.active << ',' << fixed(s.front_cv, 5) << ','
           << fixed(summarize(s.bin_radius).mean, 3) << '\n';
    return os.str();
}

std::string to_json(const RadialResult& r) {
    nlohmann::json j;
    j["free_cells"] = r.free_cells;
    for (const auto& s : r.snapshots)
        j["snapshots"].push_back(
            {{"round", s.round}, {"active", s.active}, {"front_cv", s.front_cv}, {"bin_radius", s.bin_radius}});
    return j.dump(2) + "\n";
}

std::string to_csv(std::span<const TwoRouteResult> rows) {
    std::ostringstream os;
    os << "v_max,field,reps,T_A,T_B,T_B_over_T_A,T_B_over_sqrt2_T_A\n";
    for (const auto& r : rows)
        os << r.v_max << ',' << to_string(r.field) << ',' << r.route_a.n << ',' << fixed(r.route_a.mean, 1) << ','
           << fixed(r.route_b.mean, 1) << ',' << fixed(r.ratio, 2) << ',' << fixed(r.normalized_ratio, 2) << '\n';
    return os.str();
}

std::string to_json(std::span<const TwoRouteResult> rows) {
    nlohmann::json j = nlohmann::json::object();
    j["realization"] = "each leg walked in its own width-3 corridor with the leg end as relay exit; times summed";
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
        j["rows"].push_back({{"v_max", r.v_max},
                             {"field", to_string(r.field)},
                             {"route_a", stats_json(r.route_a)},
                             {"route_b", stats_json(r.route_b)},
                             {"ratio", r.ratio},
                             {"normalized_ratio", r.normalized_ratio},
                             {"timed_out", r.timed_out}});
    return j.dump(2) + "\n";
}

}  // namespace anisocell
