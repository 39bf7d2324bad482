"""Lattice speed neighborhoods and a floor-field cellular automaton."""

from ._anisocell import (  # noqa: F401
    AgentState,
    BorderMode,
    BorderStaircase,
    CellOffset,
    Composition,
    DirectionalRunSpec,
    FieldVariant,
    NeighborhoodReport,
    ProfileSegment,
    RadialSpec,
    Scenario,
    Simulation,
    SimulationOptions,
    SpeedProfile,
    StaticField,
    TwoRouteSpec,
    angular_deviation,
    average_speed,
    border_staircase,
    build_profile,
    canonical_neighborhood,
    cells_of,
    compute_static_field,
    disc_scenario,
    enumerate_complete_neighborhoods,
    experiment_directional,
    experiment_radial,
    experiment_two_routes,
    hull_vertices,
    moore_vn_composition,
    open_room,
    quadrature_oracle,
    report_all,
    results_table,
    scenario_from_string,
    scenario_to_string,
    scoring_neighborhood,
    select_neighborhood,
    speed_map,
    speed_profile,
    v_of_phi,
)

__all__ = [name for name in dir() if not name.startswith("_")]
