#include "anisocell/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "anisocell/kinematics.hpp"

namespace anisocell {

namespace {

std::int64_t dist2(Cell a, Cell b) {
    const std::int64_t dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

}  // namespace

Simulation::Simulation(std::shared_ptr<const Scenario> scenario, std::shared_ptr<const StaticField> field,
                       SimulationOptions options, std::uint64_t seed)
    : scenario_(std::move(scenario)), field_(std::move(field)), options_(options), rng_(seed) {
    if (!scenario_ || !field_) throw std::invalid_argument("simulation needs a scenario and a field");
    if (field_->width != scenario_->width() || field_->height != scenario_->height())
        throw std::invalid_argument("field does not match scenario dimensions");
    occupancy_.assign(scenario_->cell_count(), -1);
    blocked_.assign(scenario_->cell_count(), 0);
    offsets_.resize(11);
    for (int v = 1; v <= 10; ++v) offsets_[static_cast<std::size_t>(v)] = cells_of(canonical_neighborhood(v)).cells();
}

int Simulation::add_agent(Cell position, int v_max) {
    if (v_max < 1 || v_max > 10) throw std::invalid_argument("agent speed must be in 1..10");
    if (!scenario_->walkable(position)) throw ScenarioError("agent placed outside walkable area");
    if (occupancy_[scenario_->index(position)] >= 0) throw ScenarioError("agent placed on an occupied cell");
    AgentState a;
    a.id = static_cast<int>(agents_.size());
    a.position = position;
    a.v_max = v_max;
    occupancy_[scenario_->index(position)] = a.id;
    agents_.push_back(a);
    return a.id;
}

std::size_t Simulation::active_count() const {
    return static_cast<std::size_t>(
        std::count_if(agents_.begin(), agents_.end(), [](const AgentState& a) { return a.active(); }));
}

const std::vector<CellOffset>& Simulation::neighborhood_offsets(int v_max) const {
    return offsets_.at(static_cast<std::size_t>(v_max));
}

DestinationChoice Simulation::destination_distribution(int agent_id) const {
    const AgentState& a = agents_.at(static_cast<std::size_t>(agent_id));
    DestinationChoice out;
    std::vector<double> s;
    for (const auto& off : neighborhood_offsets(a.v_max)) {
        const Cell c{a.position.x + off.x, a.position.y + off.y};
        if (!scenario_->walkable(c)) continue;
        const double sv = field_->at(c);
        if (std::isinf(sv)) continue;
        out.candidates.push_back(c);
        s.push_back(sv);
    }
    if (s.empty()) return out;
    const double s_max = *std::max_element(s.begin(), s.end());
    const double s_min = *std::min_element(s.begin(), s.end());
    // exp(k (S_max - S)) rescaled by exp(-k (S_max - S_min)) so the largest
    // weight is 1; the normalized distribution is unchanged.
    double total = 0.0;
    out.probabilities.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.probabilities[i] = std::exp(options_.k_s * ((s_max - s[i]) - (s_max - s_min)));
        total += out.probabilities[i];
    }
    for (auto& p : out.probabilities) p /= total;
    return out;
}

Cell Simulation::choose_destination(int agent_id) {
    AgentState& a = agents_.at(static_cast<std::size_t>(agent_id));
    if (!a.active()) throw std::logic_error("evacuated agents do not choose destinations");
    const auto choice = destination_distribution(agent_id);
    if (choice.candidates.empty()) {
        a.destination = a.position;
        return a.position;
    }
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = uni(rng_);
    double acc = 0.0;
    std::size_t pick = choice.candidates.size() - 1;
    for (std::size_t i = 0; i < choice.candidates.size(); ++i) {
        acc += choice.probabilities[i];
        if (u < acc) {
            pick = i;
            break;
        }
    }
    a.destination = choice.candidates[pick];
    return *a.destination;
}

void Simulation::block(Cell c) {
    const auto i = scenario_->index(c);
    if (!blocked_[i]) {
        blocked_[i] = 1;
        blocked_list_.push_back(i);
    }
}

void Simulation::clear_blocked() {
    for (auto i : blocked_list_) blocked_[i] = 0;
    blocked_list_.clear();
}

void Simulation::check_exclusion(int moved_id) const {
    const AgentState& a = agents_[static_cast<std::size_t>(moved_id)];
    if (a.active() && occupancy_[scenario_->index(a.position)] != a.id)
        throw std::logic_error("exclusion violated: occupancy grid disagrees with agent position");
}

Cell Simulation::move_agent(int agent_id) {
    AgentState& a = agents_.at(static_cast<std::size_t>(agent_id));
    if (!a.active()) return a.position;
    if (!a.destination) throw std::logic_error("move_agent called before choose_destination");
    const Cell dest = *a.destination;

    if (options_.block_start_cell) block(a.position);
    // detours around blocked cells stay inside this round's reach
    const Cell origin = a.position;
    const std::int64_t reach = canonical_neighborhood(a.v_max);
    while (a.position != dest) {
        const std::int64_t here = dist2(a.position, dest);
        std::int64_t best = here;
        std::optional<Cell> next;
        for (const auto& d : kCompass) {
            const Cell c{a.position.x + d.x, a.position.y + d.y};
            if (!scenario_->walkable(c) || dist2(c, origin) > reach) continue;
            const auto ci = scenario_->index(c);
            if (occupancy_[ci] >= 0 || blocked_[ci]) continue;
            const std::int64_t dc = dist2(c, dest);
            if (dc < best) {
                best = dc;
                next = c;
            }
        }
        if (!next) break;
        if (options_.check_invariants && occupancy_[scenario_->index(*next)] >= 0)
            throw std::logic_error("exclusion violated: stepping onto an occupied cell");
        occupancy_[scenario_->index(a.position)] = -1;
        a.position = *next;
        block(a.position);
        if (scenario_->is_exit(a.position)) {
            a.evacuated_at = round_;
            return a.position;
        }
        occupancy_[scenario_->index(a.position)] = a.id;
        if (options_.check_invariants) check_exclusion(agent_id);
    }
    return a.position;
}

void Simulation::step() {
    ++round_;
    clear_blocked();

    std::vector<int> order;
    for (const auto& a : agents_) {
        if (!a.active()) continue;
        if (scenario_->is_exit(a.position)) {
            // placed directly on an exit: leaves without moving
            agents_[static_cast<std::size_t>(a.id)].evacuated_at = round_;
            occupancy_[scenario_->index(a.position)] = -1;
            continue;
        }
        order.push_back(a.id);
    }
    for (int id : order) choose_destination(id);

    std::vector<Cell> start;
    if (options_.check_invariants)
        for (const auto& a : agents_) start.push_back(a.position);

    std::shuffle(order.begin(), order.end(), rng_);
    for (int id : order) move_agent(id);

    if (options_.check_invariants) {
        std::vector<int> seen(scenario_->cell_count(), -1);
        for (const auto& a : agents_) {
            if (!a.active()) continue;
            auto& s = seen[scenario_->index(a.position)];
            if (s >= 0) throw std::logic_error("exclusion violated: two agents share a cell");
            s = a.id;
            const Cell from = start[static_cast<std::size_t>(a.id)];
            const CellOffset disp{a.position.x - from.x, a.position.y - from.y};
            if (disp.norm2() > canonical_neighborhood(a.v_max))
                throw std::logic_error("agent " + std::to_string(a.id) + " left its speed neighborhood: (" +
                                       std::to_string(from.x) + "," + std::to_string(from.y) + ") -> (" +
                                       std::to_string(a.position.x) + "," + std::to_string(a.position.y) +
                                       "), destination (" + std::to_string(a.destination->x) + "," +
                                       std::to_string(a.destination->y) + "), v_max " + std::to_string(a.v_max));
        }
    }
    if (observer_) observer_(*this);
}

RunResult Simulation::run_until_empty(int max_rounds) {
    if (max_rounds <= 0) throw std::invalid_argument("max_rounds must be positive");
    RunResult r;
    while (active_count() > 0 && r.rounds < max_rounds) {
        step();
        ++r.rounds;
    }
    r.timed_out = active_count() > 0;
    for (const auto& a : agents_) r.evacuated_at.push_back(a.evacuated_at);
    return r;
}

std::string Simulation::rng_state() const {
    std::ostringstream os;
    os << rng_;
    return os.str();
}

void Simulation::set_rng_state(const std::string& state) {
    std::istringstream is(state);
    is >> rng_;
    if (!is) throw std::invalid_argument("malformed generator state");
}

TrajectoryLog::TrajectoryLog(std::ostream& out) : out_(out) { out_ << "round,agent_id,x,y\n"; }

void TrajectoryLog::record(const Simulation& sim) {
    for (const auto& a : sim.agents())
        if (a.active()) out_ << sim.round() << ',' << a.id << ',' << a.position.x << ',' << a.position.y << '\n';
}

}  // namespace anisocell
