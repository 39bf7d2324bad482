#include "anisocell/sim_config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace anisocell {

using nlohmann::json;

namespace {

constexpr const char* kReservedKeys[] = {"herding", "inertia", "wall_distance", "agent_distance"};

Cell parse_cell(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("cell must be [x, y]");
    return {j[0].get<int>(), j[1].get<int>()};
}

Scenario parse_scenario(const json& j, const std::string& base_dir, std::string& source) {
    if (j.is_string()) {
        std::filesystem::path p = j.get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        source = p.string();
        return load_scenario(source);
    }
    if (!j.is_object() || !j.contains("builtin")) throw ConfigError("scenario must be a path or {\"builtin\": ...}");
    const auto name = j.at("builtin").get<std::string>();
    source = name;
    if (name == "open_room") {
        std::vector<Cell> exits;
        for (const auto& e : j.at("exits")) exits.push_back(parse_cell(e));
        return open_room(j.at("width").get<int>(), j.at("height").get<int>(), exits);
    }
    if (name == "disc") return disc_scenario(j.at("radius").get<int>()).scenario;
    if (name == "corridor")
        return corridor_scenario(j.at("dx").get<int>(), j.at("dy").get<int>(), j.value("width", 3.0)).scenario;
    throw ConfigError("unknown builtin scenario: " + name);
}

}  // namespace

SimConfig parse_sim_config(const std::string& json_text, const std::string& base_dir) {
    SimConfig cfg;
    try {
        const json j = json::parse(json_text);
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        for (const char* key : kReservedKeys)
            if (j.contains(key) && !j.at(key).is_null())
                throw ConfigError(std::string("coupling '") + key + "' is reserved but not implemented");

        if (!j.contains("scenario")) throw ConfigError("config needs a scenario");
        cfg.scenario = parse_scenario(j.at("scenario"), base_dir, cfg.scenario_source);

        cfg.options.k_s = j.value("k_s", cfg.options.k_s);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.max_rounds = j.value("max_rounds", cfg.max_rounds);
        if (cfg.max_rounds <= 0) throw ConfigError("max_rounds must be positive");
        if (j.contains("field")) cfg.field = parse_field_variant(j.at("field").get<std::string>());
        if (j.contains("blocking")) cfg.options.block_start_cell = j.at("blocking").value("start_cell", true);

        if (j.contains("speeds")) {
            const auto& s = j.at("speeds");
            cfg.speed_weights.clear();
            if (s.is_number_integer()) {
                cfg.speed_weights[s.get<int>()] = 1.0;
            } else if (s.is_object()) {
                for (const auto& [k, w] : s.items()) cfg.speed_weights[std::stoi(k)] = w.get<double>();
            } else {
                throw ConfigError("speeds must be an integer or an object of weights");
            }
            for (const auto& [v, w] : cfg.speed_weights)
                if (v < 1 || v > 10 || w < 0) throw ConfigError("speed weights need speeds in 1..10 and weights >= 0");
        }

        if (j.contains("agents")) {
            const auto& a = j.at("agents");
            if (a.is_array()) {
                for (const auto& e : a)
                    cfg.agents.push_back({{e.at("x").get<int>(), e.at("y").get<int>()},
                                          e.value("speed", cfg.speed_weights.begin()->first)});
            } else if (a.is_object()) {
                cfg.random_agents = a.at("random").get<int>();
                if (cfg.random_agents < 0) throw ConfigError("random agent count must be non-negative");
            } else {
                throw ConfigError("agents must be a list or {\"random\": n}");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    } catch (const ScenarioError& e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sim_config(ss.str(), std::filesystem::path(path).parent_path().string());
}

Simulation instantiate(const SimConfig& cfg) {
    if (!cfg.scenario) throw ConfigError("config has no scenario");
    auto scenario = std::make_shared<const Scenario>(*cfg.scenario);
    auto field = std::make_shared<const StaticField>(compute_static_field(*scenario, cfg.field));
    Simulation sim(scenario, field, cfg.options, cfg.seed);
    try {
        for (const auto& a : cfg.agents) sim.add_agent(a.position, a.speed);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad agent placement: ") + e.what());
    }

    if (cfg.random_agents > 0) {
        std::vector<Cell> free;
        for (std::size_t i = 0; i < scenario->cell_count(); ++i) {
            const Cell c = scenario->cell_at(i);
            if (scenario->walkable(c) && !scenario->is_exit(c) && sim.occupant(c) < 0) free.push_back(c);
        }
        if (static_cast<std::size_t>(cfg.random_agents) > free.size())
            throw ConfigError("more random agents than free cells");
        std::vector<int> speeds;
        std::vector<double> weights;
        for (const auto& [v, w] : cfg.speed_weights) {
            speeds.push_back(v);
            weights.push_back(w);
        }
        std::discrete_distribution<std::size_t> pick_speed(weights.begin(), weights.end());
        auto& rng = sim.rng();
        for (int k = 0; k < cfg.random_agents; ++k) {
            std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(k), free.size() - 1);
            std::swap(free[static_cast<std::size_t>(k)], free[pick(rng)]);
            sim.add_agent(free[static_cast<std::size_t>(k)], speeds[pick_speed(rng)]);
        }
    }
    return sim;
}

}  // namespace anisocell
