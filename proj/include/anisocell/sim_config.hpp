#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anisocell/floorfield.hpp"
#include "anisocell/scenario.hpp"
#include "anisocell/simulator.hpp"

namespace anisocell {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AgentSpec {
    Cell position;
    int speed = 1;
};

/// Parsed simulation config (JSON).
///
///   {
///     "scenario": "room.map" | {"builtin": "open_room", "width": 20, "height": 10, "exits": [[19, 5]]}
///                            | {"builtin": "disc", "radius": 249}
///                            | {"builtin": "corridor", "dx": 96, "dy": 0, "width": 3},
///     "k_s": 10.0,
///     "speeds": 5 | {"1": 0.5, "5": 0.5},      // for randomly placed agents
///     "agents": [{"x": 1, "y": 1, "speed": 5}] | {"random": 100},
///     "seed": 42,
///     "max_rounds": 10000,
///     "field": "integer" | "real" | "geodesic",
///     "blocking": {"start_cell": true}
///   }
///
/// Keys for couplings the engine does not model ("herding", "inertia",
/// "wall_distance", "agent_distance") are reserved and rejected.
struct SimConfig {
    std::string scenario_source;  // file path or builtin name
    std::optional<Scenario> scenario;
    SimulationOptions options;
    std::map<int, double> speed_weights{{1, 1.0}};
    std::vector<AgentSpec> agents;
    int random_agents = 0;
    std::uint64_t seed = 1;
    int max_rounds = 10000;
    FieldVariant field = FieldVariant::integer_euclidean;
};

/// `base_dir` resolves relative scenario paths.
SimConfig parse_sim_config(const std::string& json_text, const std::string& base_dir = ".");
SimConfig load_sim_config(const std::string& path);

/// Builds the field and the simulation and places agents (explicit first,
/// then random ones on free non-exit cells, drawn from the simulation RNG).
Simulation instantiate(const SimConfig& cfg);

}  // namespace anisocell
