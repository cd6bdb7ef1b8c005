"""Weighted shortest paths on a triangular tessellation."""

from ._trigrid import (
    Instance,
    TrigridError,
    approx_shortest_path,
    crossing_path,
    export_svg,
    gen_random,
    gen_strip,
    gen_two_weight_maze,
    law_of_cosines_dist,
    parse_instance,
    ratio_report,
    refine_until,
    run_cli,
    search_p2_anomaly,
    serialize_instance,
    shortest_grid_path,
    shortest_vertex_path,
    svp_lower_bound_constant,
    svp_lower_bound_offset,
)

__all__ = [
    "Instance",
    "TrigridError",
    "approx_shortest_path",
    "crossing_path",
    "export_svg",
    "gen_random",
    "gen_strip",
    "gen_two_weight_maze",
    "law_of_cosines_dist",
    "parse_instance",
    "ratio_report",
    "refine_until",
    "run_cli",
    "search_p2_anomaly",
    "serialize_instance",
    "shortest_grid_path",
    "shortest_vertex_path",
    "svp_lower_bound_constant",
    "svp_lower_bound_offset",
]
