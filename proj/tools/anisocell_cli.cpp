// anisocell: lattice speed-neighborhood tables and floor-field CA experiments.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 simulation timeout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anisocell/experiments.hpp"
#include "anisocell/kinematics.hpp"
#include "anisocell/sim_config.hpp"
#include "anisocell/tables.hpp"

namespace fs = std::filesystem;
using namespace anisocell;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitTimeout = 2;

void write_or_print(const std::string& body, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << body)) throw std::runtime_error("cannot write " + out);
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << body)) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice speed neighborhoods and floor-field cellular automaton experiments"};
    app.require_subcommand(1);

    std::string format = "csv", mode = "staircase", out;

    auto* table = app.add_subcommand("table", "Average speed and angular deviation of every complete neighborhood");
    int table_vmax = 10;
    table->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--mode", mode, "border mode")->check(CLI::IsMember({"staircase", "hull"}));
    table->add_option("--vmax", table_vmax, "largest axis extent")->check(CLI::Range(1, 32));
    table->add_option("--out", out, "output file (default stdout)");

    auto* select = app.add_subcommand("select", "Neighborhood chosen for a speed");
    int speed = 1;
    std::string sel_mode = "both";
    select->add_option("--speed", speed)->required()->check(CLI::PositiveNumber);
    select->add_option("--mode", sel_mode)->check(CLI::IsMember({"canonical", "scoring", "both"}));

    auto* profile = app.add_subcommand("profile", "Sampled v(phi) over the first octant");
    int d2 = 5, samples = 91;
    profile->add_option("--d2", d2)->required()->check(CLI::PositiveNumber);
    profile->add_option("--samples", samples)->check(CLI::Range(2, 1000000));
    profile->add_option("--mode", mode)->check(CLI::IsMember({"staircase", "hull"}));
    profile->add_option("--out", out);

    auto* smap = app.add_subcommand("speed-map", "Quarter-plane map of the smallest speed reaching each cell");
    int smap_vmax = 10;
    smap->add_option("--vmax", smap_vmax)->check(CLI::Range(1, 10));
    smap->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    smap->add_option("--out", out);

    auto* emit = app.add_subcommand("emit-tables", "Write results, selection and speed-map tables to a directory");
    std::string out_dir = ".";
    emit->add_option("--out", out_dir)->required();
    emit->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    emit->add_option("--mode", mode)->check(CLI::IsMember({"staircase", "hull"}));

    auto* experiment = app.add_subcommand("experiment", "Run a simulation experiment");
    std::string which;
    std::vector<int> speeds;
    double ks = 10.0;
    std::uint64_t seed = 1;
    int reps = -1;
    std::string field = "integer";
    bool pgm = false;
    unsigned threads = 0;
    std::vector<int> snap_rounds;
    int radius = 249, n_agents = 1948;
    experiment->add_option("kind", which)->required()->check(CLI::IsMember({"directional", "radial", "two-routes"}));
    experiment->add_option("--speed", speeds, "speed(s) to run")->check(CLI::Range(1, 10));
    experiment->add_option("--ks", ks, "coupling to the static floor field");
    experiment->add_option("--seed", seed);
    experiment->add_option("--reps", reps, "repetitions (directional 100, two-routes 10)");
    experiment->add_option("--field", field)->check(CLI::IsMember({"integer", "real", "geodesic"}));
    experiment->add_option("--out", out_dir, "output directory");
    experiment->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    experiment->add_flag("--pgm", pgm, "write occupancy snapshots (radial)");
    experiment->add_option("--threads", threads, "worker threads (0 = all cores)");
    experiment->add_option("--rounds", snap_rounds, "snapshot rounds (radial)");
    experiment->add_option("--radius", radius)->check(CLI::PositiveNumber);
    experiment->add_option("--agents", n_agents)->check(CLI::NonNegativeNumber);

    auto* simulate = app.add_subcommand("simulate", "Run a simulation from a JSON config");
    std::string config_path, trajectory;
    simulate->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    simulate->add_option("--trajectory", trajectory, "CSV trajectory log (round,agent_id,x,y)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        const TableFormat fmt = parse_table_format(format);
        if (*table) {
            const auto reports = report_all(table_vmax, parse_border_mode(mode));
            write_or_print(results_table(reports, fmt), out);
        } else if (*select) {
            if (sel_mode != "scoring") {
                if (speed > 10) throw std::out_of_range("canonical selection covers speeds 1..10");
                std::cout << "canonical " << canonical_neighborhood(speed) << '\n';
            }
            if (sel_mode != "canonical") std::cout << "scoring " << scoring_neighborhood(speed) << '\n';
        } else if (*profile) {
            write_or_print(profile_csv(speed_profile(d2, parse_border_mode(mode)), samples), out);
        } else if (*smap) {
            write_or_print(speed_map_table(speed_map(smap_vmax), fmt), out);
        } else if (*emit) {
            for (const auto& p : emit_tables(out_dir, fmt, parse_border_mode(mode))) std::cout << p << '\n';
        } else if (*experiment) {
            const FieldVariant fv = parse_field_variant(field);
            fs::create_directories(out_dir);
            const std::string ext = fmt == TableFormat::csv ? ".csv" : ".json";
            bool timed_out = false;
            if (which == "directional") {
                if (speeds.empty()) speeds = {1, 5};
                const auto specs = directional_specs(speeds, ks, reps < 0 ? 100 : reps, seed, fv);
                const auto res = experiment_directional(specs, threads);
                write_file(fs::path(out_dir) / ("directional" + ext), fmt == TableFormat::csv ? to_csv(res) : to_json(res));
                for (const auto& p : res.per_speed)
                    std::cout << "v=" << p.v_max << " mean " << p.mean << " sd " << p.sd << " rel " << p.rel_spread
                              << '\n';
                if (res.anisotropy_ratio) std::cout << "anisotropy ratio (v=1 / v=5) " << *res.anisotropy_ratio << '\n';
                timed_out = res.timed_out;
            } else if (which == "radial") {
                if (speeds.empty()) speeds = {1, 5};
                for (int v : speeds) {
                    RadialSpec spec;
                    spec.radius = radius;
                    spec.n_agents = n_agents;
                    spec.v_max = v;
                    spec.k_s = ks;
                    spec.field = fv;
                    spec.seed = seed;
                    spec.snapshot_rounds = snap_rounds;
                    if (spec.snapshot_rounds.empty()) spec.snapshot_rounds = {0, v == 1 ? 180 : 36};
                    const auto res = experiment_radial(spec);
                    const std::string stem = "radial_v" + std::to_string(v);
                    write_file(fs::path(out_dir) / (stem + ext), fmt == TableFormat::csv ? to_csv(res) : to_json(res));
                    for (const auto& s : res.snapshots) {
                        std::cout << "v=" << v << " round " << s.round << " active " << s.active << " front_cv "
                                  << s.front_cv << '\n';
                        if (pgm) write_file(fs::path(out_dir) / (stem + "_r" + std::to_string(s.round) + ".pgm"), s.pgm);
                    }
                }
            } else {
                if (speeds.empty()) speeds = {1, 2, 3, 4, 5};
                std::vector<TwoRouteResult> rows;
                for (int v : speeds) {
                    TwoRouteSpec spec;
                    spec.v_max = v;
                    spec.repetitions = reps < 0 ? 10 : reps;
                    spec.field = fv;
                    spec.k_s = ks;
                    spec.seed = seed;
                    rows.push_back(experiment_two_routes(spec, threads));
                    timed_out = timed_out || rows.back().timed_out;
                }
                const std::string body = fmt == TableFormat::csv ? to_csv(rows) : to_json(rows);
                write_file(fs::path(out_dir) / ("two_routes" + ext), body);
                std::cout << to_csv(rows);
            }
            if (timed_out) {
                std::cerr << "anisocell: simulation timed out\n";
                return kExitTimeout;
            }
        } else if (*simulate) {
            const auto cfg = load_sim_config(config_path);
            auto sim = instantiate(cfg);
            if (!sim.field().warning.empty()) std::cerr << "anisocell: warning: " << sim.field().warning << '\n';
            std::ofstream traj_file;
            std::optional<TrajectoryLog> log;
            if (!trajectory.empty()) {
                traj_file.open(trajectory, std::ios::binary);
                if (!traj_file) throw std::runtime_error("cannot write " + trajectory);
                log.emplace(traj_file);
                log->record(sim);
                sim.set_round_observer([&](const Simulation& s) { log->record(s); });
            }
            const auto res = sim.run_until_empty(cfg.max_rounds);
            std::cout << "rounds " << res.rounds << '\n';
            std::cout << "agent_id,evacuated_at\n";
            for (std::size_t i = 0; i < res.evacuated_at.size(); ++i)
                std::cout << i << ',' << (res.evacuated_at[i] ? std::to_string(*res.evacuated_at[i]) : "") << '\n';
            if (res.timed_out) {
                std::cerr << "anisocell: timeout after " << res.rounds << " rounds\n";
                return kExitTimeout;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "anisocell: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
