#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anisocell/experiments.hpp"
#include "anisocell/floorfield.hpp"
#include "anisocell/geometry.hpp"
#include "anisocell/kinematics.hpp"
#include "anisocell/scenario.hpp"
#include "anisocell/simulator.hpp"
#include "anisocell/tables.hpp"

namespace py = pybind11;
using namespace anisocell;

namespace {

Cell to_cell(const std::pair<int, int>& p) { return {p.first, p.second}; }
std::pair<int, int> from_cell(Cell c) { return {c.x, c.y}; }

std::vector<Cell> to_cells(const std::vector<std::pair<int, int>>& v) {
    std::vector<Cell> out;
    for (const auto& p : v) out.push_back(to_cell(p));
    return out;
}

}  // namespace

PYBIND11_MODULE(_anisocell, m) {
    m.doc() = "Lattice speed neighborhoods and a floor-field cellular automaton";

    py::register_exception<StructuralError>(m, "StructuralError");
    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

    // geometry ---------------------------------------------------------------
    py::class_<CellOffset>(m, "CellOffset")
        .def(py::init<int, int>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &CellOffset::x)
        .def_readwrite("y", &CellOffset::y)
        .def("norm2", &CellOffset::norm2)
        .def("__eq__", [](const CellOffset& a, const CellOffset& b) { return a == b; })
        .def("__iter__", [](const CellOffset& c) { return py::iter(py::make_tuple(c.x, c.y)); })
        .def("__repr__", [](const CellOffset& c) {
            return "CellOffset(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
        });

    py::class_<Neighborhood>(m, "Neighborhood")
        .def_property_readonly("d2", &Neighborhood::d2)
        .def_property_readonly("cells", &Neighborhood::cells)
        .def_property_readonly("extent", &Neighborhood::extent)
        .def("__len__", &Neighborhood::size)
        .def("__contains__", [](const Neighborhood& n, const CellOffset& c) { return n.contains(c); });

    py::enum_<StepKind>(m, "StepKind")
        .value("vertical", StepKind::vertical)
        .value("antidiagonal", StepKind::antidiagonal)
        .value("other", StepKind::other);

    py::class_<BorderStaircase>(m, "BorderStaircase")
        .def_readonly("d2", &BorderStaircase::d2)
        .def_readonly("border", &BorderStaircase::border)
        .def_readonly("kinds", &BorderStaircase::kinds);

    py::class_<Composition>(m, "Composition")
        .def_readonly("n_von_neumann", &Composition::n_von_neumann)
        .def_readonly("n_moore", &Composition::n_moore)
        .def("__repr__", [](const Composition& c) {
            return "Composition(n_von_neumann=" + std::to_string(c.n_von_neumann) +
                   ", n_moore=" + std::to_string(c.n_moore) + ")";
        });

    m.def("enumerate_complete_neighborhoods", &enumerate_complete_neighborhoods, py::arg("v_max"));
    m.def("cells_of", &cells_of, py::arg("d2"));
    m.def("border_staircase", &border_staircase, py::arg("d2"));
    m.def("hull_vertices", &hull_vertices, py::arg("d2"));
    m.def("moore_vn_composition", &moore_vn_composition, py::arg("d2"), py::arg("v"));

    // kinematics -------------------------------------------------------------
    py::enum_<BorderMode>(m, "BorderMode")
        .value("staircase", BorderMode::staircase)
        .value("hull", BorderMode::hull);

    py::enum_<SegmentKind>(m, "SegmentKind")
        .value("vertical", SegmentKind::vertical)
        .value("antidiagonal", SegmentKind::antidiagonal)
        .value("general", SegmentKind::general);

    py::class_<ProfileSegment>(m, "ProfileSegment")
        .def_readonly("phi_lo", &ProfileSegment::phi_lo)
        .def_readonly("phi_hi", &ProfileSegment::phi_hi)
        .def_readonly("delta_lo", &ProfileSegment::delta_lo)
        .def_readonly("delta_hi", &ProfileSegment::delta_hi)
        .def_readonly("kind", &ProfileSegment::kind)
        .def_readonly("r_num", &ProfileSegment::r_num)
        .def_readonly("r_den", &ProfileSegment::r_den)
        .def_readonly("C", &ProfileSegment::C)
        .def("speed", &ProfileSegment::speed, py::arg("phi"));

    py::class_<SpeedProfile>(m, "SpeedProfile")
        .def_readonly("d2", &SpeedProfile::d2)
        .def_readonly("mode", &SpeedProfile::mode)
        .def_readonly("segments", &SpeedProfile::segments);

    py::class_<NeighborhoodReport>(m, "NeighborhoodReport")
        .def_readonly("d2", &NeighborhoodReport::d2)
        .def_readonly("v_av", &NeighborhoodReport::v_av)
        .def_readonly("dev_abs", &NeighborhoodReport::dev_abs)
        .def_readonly("dev_rel", &NeighborhoodReport::dev_rel)
        .def_readonly("composable", &NeighborhoodReport::composable);

    m.def(
        "build_profile",
        [](const std::vector<CellOffset>& border, BorderMode mode, int d2) { return build_profile(border, mode, d2); },
        py::arg("border"), py::arg("mode") = BorderMode::staircase, py::arg("d2") = 0);
    m.def("speed_profile", &speed_profile, py::arg("d2"), py::arg("mode") = BorderMode::staircase);
    m.def("v_of_phi", &v_of_phi, py::arg("profile"), py::arg("phi"));
    m.def("average_speed", &average_speed, py::arg("profile"));
    m.def(
        "angular_deviation",
        [](const SpeedProfile& p, double v_av) {
            const auto d = angular_deviation(p, v_av);
            return py::make_tuple(d.dev_abs, d.dev_rel);
        },
        py::arg("profile"), py::arg("v_av"));
    m.def(
        "quadrature_oracle",
        [](const SpeedProfile& p) {
            const auto q = quadrature_oracle(p);
            return py::make_tuple(q.v_av, q.dev_abs);
        },
        py::arg("profile"));
    m.def("report_all", &report_all, py::arg("v_max") = 10, py::arg("mode") = BorderMode::staircase);
    m.def("canonical_neighborhood", &canonical_neighborhood, py::arg("v"));
    m.def("scoring_neighborhood", &scoring_neighborhood, py::arg("v"), py::arg("tie_window") = kScoringTieWindow,
          py::arg("mode") = BorderMode::staircase);
    m.def(
        "select_neighborhood",
        [](int v, const std::string& mode) { return select_neighborhood(v, parse_selection_mode(mode)); },
        py::arg("v"), py::arg("mode") = "canonical");
    m.def("speed_map", &speed_map, py::arg("v_max") = 10);
    m.def(
        "results_table",
        [](int v_max, BorderMode mode, const std::string& fmt) {
            const auto reports = report_all(v_max, mode);
            return results_table(reports, parse_table_format(fmt));
        },
        py::arg("v_max") = 10, py::arg("mode") = BorderMode::staircase, py::arg("fmt") = "csv");

    // floor field ------------------------------------------------------------
    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](int w, int h, const std::vector<std::pair<int, int>>& walls,
                         const std::vector<std::pair<int, int>>& exits) {
                 return build_scenario(w, h, to_cells(walls), to_cells(exits));
             }),
             py::arg("width"), py::arg("height"), py::arg("walls"), py::arg("exits"))
        .def_property_readonly("width", &Scenario::width)
        .def_property_readonly("height", &Scenario::height)
        .def_property_readonly("free_cell_count", &Scenario::free_cell_count)
        .def_property_readonly("exits",
                               [](const Scenario& s) {
                                   std::vector<std::pair<int, int>> out;
                                   for (const auto& e : s.exits()) out.push_back(from_cell(e));
                                   return out;
                               })
        .def("is_wall", [](const Scenario& s, int x, int y) { return s.is_wall({x, y}); })
        .def("is_exit", [](const Scenario& s, int x, int y) { return s.is_exit({x, y}); });

    m.def("open_room", [](int w, int h, const std::vector<std::pair<int, int>>& exits) {
        return open_room(w, h, to_cells(exits));
    });
    m.def("disc_scenario", [](int radius) { return disc_scenario(radius).scenario; }, py::arg("radius"));
    m.def("scenario_to_string", &scenario_to_string);
    m.def("scenario_from_string", &scenario_from_string);

    py::enum_<FieldVariant>(m, "FieldVariant")
        .value("real_euclidean", FieldVariant::real_euclidean)
        .value("integer_euclidean", FieldVariant::integer_euclidean)
        .value("grid_geodesic", FieldVariant::grid_geodesic);

    py::class_<StaticField, std::shared_ptr<StaticField>>(m, "StaticField")
        .def_readonly("variant", &StaticField::variant)
        .def_readonly("requested", &StaticField::requested)
        .def_readonly("warning", &StaticField::warning)
        .def_readonly("unreachable_cells", &StaticField::unreachable_cells)
        .def("at", [](const StaticField& f, int x, int y) { return f.at({x, y}); });

    m.def(
        "compute_static_field",
        [](const Scenario& s, FieldVariant v) { return std::make_shared<StaticField>(compute_static_field(s, v)); },
        py::arg("scenario"), py::arg("variant") = FieldVariant::integer_euclidean);

    // simulator --------------------------------------------------------------
    py::class_<SimulationOptions>(m, "SimulationOptions")
        .def(py::init<>())
        .def_readwrite("k_s", &SimulationOptions::k_s)
        .def_readwrite("block_start_cell", &SimulationOptions::block_start_cell)
        .def_readwrite("check_invariants", &SimulationOptions::check_invariants);

    py::class_<AgentState>(m, "AgentState")
        .def_readonly("id", &AgentState::id)
        .def_property_readonly("position", [](const AgentState& a) { return from_cell(a.position); })
        .def_readonly("v_max", &AgentState::v_max)
        .def_readonly("evacuated_at", &AgentState::evacuated_at);

    py::class_<Simulation>(m, "Simulation")
        .def(py::init([](const Scenario& s, FieldVariant v, const SimulationOptions& opt, std::uint64_t seed) {
                 auto sc = std::make_shared<const Scenario>(s);
                 auto f = std::make_shared<const StaticField>(compute_static_field(*sc, v));
                 return Simulation(sc, f, opt, seed);
             }),
             py::arg("scenario"), py::arg("field") = FieldVariant::integer_euclidean,
             py::arg("options") = SimulationOptions{}, py::arg("seed") = 1)
        .def("add_agent", [](Simulation& s, int x, int y, int v) { return s.add_agent({x, y}, v); }, py::arg("x"),
             py::arg("y"), py::arg("v_max"))
        .def("step", &Simulation::step)
        .def(
            "run_until_empty",
            [](Simulation& s, int max_rounds) {
                const auto r = s.run_until_empty(max_rounds);
                return py::make_tuple(r.evacuated_at, r.rounds, r.timed_out);
            },
            py::arg("max_rounds"))
        .def_property_readonly("round", &Simulation::round)
        .def_property_readonly("agents", &Simulation::agents)
        .def_property_readonly("active_count", &Simulation::active_count)
        .def("destination_distribution", [](const Simulation& s, int id) {
            const auto d = s.destination_distribution(id);
            std::vector<std::pair<int, int>> cells;
            for (const auto& c : d.candidates) cells.push_back(from_cell(c));
            return py::make_tuple(cells, d.probabilities);
        });

    // experiments ------------------------------------------------------------
    py::class_<DirectionalRunSpec>(m, "DirectionalRunSpec")
        .def(py::init<>())
        .def_readwrite("displacement", &DirectionalRunSpec::displacement)
        .def_readwrite("v_max", &DirectionalRunSpec::v_max)
        .def_readwrite("k_s", &DirectionalRunSpec::k_s)
        .def_readwrite("repetitions", &DirectionalRunSpec::repetitions)
        .def_readwrite("seed", &DirectionalRunSpec::seed)
        .def_readwrite("field", &DirectionalRunSpec::field);

    m.def(
        "experiment_directional",
        [](const std::vector<DirectionalRunSpec>& specs, unsigned threads) {
            return to_json(experiment_directional(specs, threads));
        },
        py::arg("specs"), py::arg("threads") = 0, "Runs the specs and returns the JSON report.");

    py::class_<RadialSpec>(m, "RadialSpec")
        .def(py::init<>())
        .def_readwrite("radius", &RadialSpec::radius)
        .def_readwrite("n_agents", &RadialSpec::n_agents)
        .def_readwrite("v_max", &RadialSpec::v_max)
        .def_readwrite("k_s", &RadialSpec::k_s)
        .def_readwrite("field", &RadialSpec::field)
        .def_readwrite("snapshot_rounds", &RadialSpec::snapshot_rounds)
        .def_readwrite("seed", &RadialSpec::seed)
        .def_readwrite("bins", &RadialSpec::bins);

    m.def("experiment_radial", [](const RadialSpec& s) { return to_json(experiment_radial(s)); }, py::arg("spec"));

    py::class_<TwoRouteSpec>(m, "TwoRouteSpec")
        .def(py::init<>())
        .def_readwrite("v_max", &TwoRouteSpec::v_max)
        .def_readwrite("repetitions", &TwoRouteSpec::repetitions)
        .def_readwrite("field", &TwoRouteSpec::field)
        .def_readwrite("k_s", &TwoRouteSpec::k_s)
        .def_readwrite("seed", &TwoRouteSpec::seed)
        .def_readwrite("unit", &TwoRouteSpec::unit);

    m.def(
        "experiment_two_routes",
        [](const TwoRouteSpec& s, unsigned threads) {
            const auto r = experiment_two_routes(s, threads);
            py::dict d;
            d["v_max"] = r.v_max;
            d["t_a"] = r.route_a.mean;
            d["t_b"] = r.route_b.mean;
            d["ratio"] = r.ratio;
            d["normalized_ratio"] = r.normalized_ratio;
            d["timed_out"] = r.timed_out;
            return d;
        },
        py::arg("spec"), py::arg("threads") = 0);
}
