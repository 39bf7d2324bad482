#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anisocell/floorfield.hpp"
#include "anisocell/geometry.hpp"
#include "anisocell/simulator.hpp"

namespace anisocell {

/// Summary statistics; sd uses the n-1 convention (0 for n < 2).
struct Stats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double max = 0.0;
};

Stats summarize(std::span<const double> xs);

/// Per-repetition generator seeds: splitmix64 of master ^ splitmix64(stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// ---------------------------------------------------------------------------
// Directional single-agent runs.

/// Integer displacements of length exactly 325 used for the direction scan.
inline constexpr std::array<CellOffset, 8> kCourseDisplacements = {
    CellOffset{253, 204}, CellOffset{260, 195}, CellOffset{280, 165}, CellOffset{300, 125},
    CellOffset{312, 91},  CellOffset{315, 80},  CellOffset{323, 36},  CellOffset{325, 0}};

struct DirectionalRunSpec {
    CellOffset displacement{325, 0};
    int v_max = 1;
    double k_s = 10.0;
    int repetitions = 100;
    std::uint64_t seed = 1;
    FieldVariant field = FieldVariant::integer_euclidean;
    int max_rounds = 5000;
    int margin = 10;
};

struct DirectionalRow {
    CellOffset displacement;
    double angle_deg = 0.0;
    int v_max = 1;
    /// Round of stepping onto the exit.
    Stats arrival;
    /// Round in which the agent is gone from the grid (arrival + 1).
    Stats removal;
    int timeouts = 0;
    /// ceil(|displacement| / max_phi v(phi)) for the agent's neighborhood.
    int lower_bound = 0;
};

struct DirectionalSpeedSummary {
    int v_max = 1;
    /// Mean and n-1 spread of the per-direction mean removal times.
    double mean = 0.0;
    double sd = 0.0;
    double rel_spread = 0.0;
};

struct DirectionalResult {
    std::vector<DirectionalRow> rows;
    std::vector<DirectionalSpeedSummary> per_speed;
    /// rel_spread(v = 1) / rel_spread(v = 5), when both speeds were run.
    std::optional<double> anisotropy_ratio;
    bool timed_out = false;
};

/// Rectangular free room with margin, agent at the origin, exit at the
/// displaced endpoint. Returns the arrival round, or nullopt on timeout.
std::optional<int> run_single_agent(CellOffset displacement, int v_max, double k_s, FieldVariant field,
                                    std::uint64_t seed, int max_rounds, int margin = 10);

/// Standard spec set: 8 course displacements x the given speeds.
std::vector<DirectionalRunSpec> directional_specs(std::span<const int> speeds, double k_s, int repetitions,
                                                  std::uint64_t seed, FieldVariant field);

/// Runs every spec; repetitions execute on `threads` workers (0 = hardware
/// concurrency) with per-repetition seeds derived from the spec seed.
DirectionalResult experiment_directional(std::span<const DirectionalRunSpec> specs, unsigned threads = 0);

// ---------------------------------------------------------------------------
// Radially contracting crowd.

struct RadialSpec {
    int radius = 249;
    int n_agents = 1948;
    int v_max = 1;
    double k_s = 10.0;
    FieldVariant field = FieldVariant::integer_euclidean;
    std::vector<int> snapshot_rounds;
    std::uint64_t seed = 1;
    int bins = 64;
    bool check_invariants = false;
};

struct RadialSnapshot {
    int round = 0;
    std::size_t active = 0;
    /// Largest agent distance from the centre per angular bin (0 if empty).
    std::vector<double> bin_radius;
    /// Coefficient of variation (n-1 sd / mean) of bin_radius.
    double front_cv = 0.0;
    /// 8-bit PGM occupancy image (0 agent, 128 wall, 255 free).
    std::string pgm;
};

struct RadialResult {
    std::size_t free_cells = 0;
    std::vector<RadialSnapshot> snapshots;
};

/// Crowd-front metric for a simulation state around centre (cx, cy) in
/// continuous grid coordinates (cell centres at +0.5).
std::vector<double> front_radii(const Simulation& sim, double cx, double cy, int bins);
double coefficient_of_variation(std::span<const double> xs);

RadialResult experiment_radial(const RadialSpec& spec);

// ---------------------------------------------------------------------------
// Axis-aligned vs diagonal routes.

struct TwoRouteSpec {
    int v_max = 1;
    int repetitions = 10;
    FieldVariant field = FieldVariant::integer_euclidean;
    double k_s = 10.0;
    std::uint64_t seed = 1;
    /// Route A legs are 4 * unit cells along the axes (3 legs); route B legs
    /// are 3 * unit cells along both axes (4 diagonal legs), so route B is
    /// sqrt(2) times as long.
    int unit = 24;
    double corridor_width = 3.0;
    int max_rounds = 5000;
};

struct TwoRouteResult {
    int v_max = 1;
    FieldVariant field = FieldVariant::integer_euclidean;
    Stats route_a;
    Stats route_b;
    double ratio = 0.0;             // T_B / T_A
    double normalized_ratio = 0.0;  // T_B / (sqrt(2) T_A)
    bool timed_out = false;
};

std::vector<CellOffset> route_a_legs(int unit);
std::vector<CellOffset> route_b_legs(int unit);

/// Each leg is walked in its own corridor with the leg end as exit; a
/// route time is the sum of leg arrival rounds.
TwoRouteResult experiment_two_routes(const TwoRouteSpec& spec, unsigned threads = 0);

// ---------------------------------------------------------------------------
// Output.

std::string to_csv(const DirectionalResult& r);
std::string to_json(const DirectionalResult& r);
std::string to_csv(const RadialResult& r);
std::string to_json(const RadialResult& r);
std::string to_csv(std::span<const TwoRouteResult> rows);
std::string to_json(std::span<const TwoRouteResult> rows);

std::string occupancy_pgm(const Simulation& sim);

}  // namespace anisocell
