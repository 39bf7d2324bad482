#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "anisocell/floorfield.hpp"
#include "anisocell/geometry.hpp"
#include "anisocell/scenario.hpp"

namespace anisocell {

struct AgentState {
    int id = 0;
    Cell position;
    int v_max = 1;
    std::optional<Cell> destination;
    /// Round in which the agent stepped onto an exit cell (1-based).
    std::optional<int> evacuated_at;

    bool active() const { return !evacuated_at.has_value(); }
};

struct SimulationOptions {
    double k_s = 10.0;
    /// Whether the cell an agent starts the round on is blocked for agents
    /// that move after it.
    bool block_start_cell = true;
    /// Verify exclusion after every move and displacement containment after
    /// every round; violations throw std::logic_error.
    bool check_invariants = false;
};

struct DestinationChoice {
    std::vector<Cell> candidates;
    std::vector<double> probabilities;
};

struct RunResult {
    /// Arrival round per agent id (nullopt for agents still inside).
    std::vector<std::optional<int>> evacuated_at;
    int rounds = 0;
    bool timed_out = false;
};

/// Round-based floor-field cellular automaton.
///
/// Each round: every active agent samples a destination from its speed
/// neighborhood against the pre-round state, then agents move one at a time
/// in a freshly shuffled order, walking greedy Moore steps toward their
/// destination. Cells used during a round stay blocked until the next one.
class Simulation {
public:
    using Rng = std::mt19937_64;
    using RoundObserver = std::function<void(const Simulation&)>;

    Simulation(std::shared_ptr<const Scenario> scenario, std::shared_ptr<const StaticField> field,
               SimulationOptions options, std::uint64_t seed);

    /// Places an agent; throws ScenarioError if the cell is not walkable or
    /// already occupied, std::invalid_argument if v_max is outside 1..10.
    int add_agent(Cell position, int v_max);

    const Scenario& scenario() const { return *scenario_; }
    const StaticField& field() const { return *field_; }
    const SimulationOptions& options() const { return options_; }
    const std::vector<AgentState>& agents() const { return agents_; }
    int round() const { return round_; }
    std::size_t active_count() const;

    bool is_blocked(Cell c) const { return blocked_[scenario_->index(c)] != 0; }
    /// Id of the active agent on c, or -1.
    int occupant(Cell c) const { return occupancy_[scenario_->index(c)]; }

    /// Offsets of the canonical neighborhood for a speed.
    const std::vector<CellOffset>& neighborhood_offsets(int v_max) const;

    /// Candidate cells and their normalized probabilities for an agent,
    /// p(c) ~ exp(k_s (S_max - S(c))) with S_max the largest S among the
    /// candidates. Walls, out-of-grid and unreachable cells are excluded.
    DestinationChoice destination_distribution(int agent_id) const;

    /// Samples and stores a destination. An agent with no candidates keeps
    /// its current cell.
    Cell choose_destination(int agent_id);

    /// Greedy walk toward the stored destination, never leaving the speed
    /// neighborhood around the round-start cell; returns the final cell.
    Cell move_agent(int agent_id);

    /// One full round (destination choice, shuffled sequential movement).
    void step();

    RunResult run_until_empty(int max_rounds);

    void set_round_observer(RoundObserver obs) { observer_ = std::move(obs); }

    std::string rng_state() const;
    void set_rng_state(const std::string& state);
    Rng& rng() { return rng_; }

private:
    void block(Cell c);
    void clear_blocked();
    void check_exclusion(int moved_id) const;

    std::shared_ptr<const Scenario> scenario_;
    std::shared_ptr<const StaticField> field_;
    SimulationOptions options_;
    Rng rng_;
    std::vector<AgentState> agents_;
    std::vector<int> occupancy_;
    std::vector<char> blocked_;
    std::vector<std::size_t> blocked_list_;
    std::vector<std::vector<CellOffset>> offsets_;  // by v_max
    int round_ = 0;
    RoundObserver observer_;
};

/// Compass priority used to break ties between equally good greedy steps:
/// N, E, S, W, NE, SE, SW, NW with N = +y.
inline constexpr CellOffset kCompass[8] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}, {1, 1}, {1, -1}, {-1, -1}, {-1, 1}};

/// CSV trajectory log: header "round,agent_id,x,y", one row per active agent
/// per round (round 0 is the initial placement).
class TrajectoryLog {
public:
    explicit TrajectoryLog(std::ostream& out);
    void record(const Simulation& sim);

private:
    std::ostream& out_;
};

}  // namespace anisocell
