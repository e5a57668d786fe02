"""Translative packings of a centrally symmetric convex polygon.

Core objects: the disc with its gauge norm (geometry), maximal unit-sided
inscribed polygons and the disc profile (extremal), the piecewise density
lower bound with its corollaries (bounds), equality-case packings with
neighbour graphs and subdivisions (packing), and brute-force reference
scans (oracle).
"""

from .bounds import (
    BoundQuery,
    BoundResult,
    BoundsRangeError,
    Branch,
    Objective,
    avg_sides,
    cell_area_caps,
    concave_profile,
    corollary1_bound,
    corollary2_ratio_bound,
    density_bound_from_profile,
    minimize_bound_over_d0,
    theorem_lower_bound,
    vertex_polygon_ratio,
)
from .extremal import (
    ExtremalProfile,
    UnitSidedPolygon,
    convexify_flips,
    make_theorem_hexagon,
    max_kgon_area,
    max_triangle_area,
    polygon_from_sides,
    profile,
    symmetrize_even,
)
from .geometry import (
    ConvexDisc,
    GeometryError,
    centrosymmetrize,
    convex_hull,
    load_disc,
    minkowski_sum,
    regular_ngon,
    save_disc,
    validate_disc,
)
from .oracle import corollary_min_oracle, grid_max_kgon, grid_max_triangle
from .packing import (
    NeighbourGraph,
    Packing,
    PackingInvalidError,
    PackingStats,
    Subdivision,
    build_subdivision,
    check_proposition,
    four_neighbour_lattice,
    load_packing,
    measure_stats,
    mixed_strip_packing,
    neighbour_graph,
    save_packing,
    six_neighbour_lattice,
    three_neighbour_honeycomb,
    validate_packing,
)

__version__ = "0.1.0"

__all__ = [
    "BoundQuery",
    "BoundResult",
    "BoundsRangeError",
    "Branch",
    "ConvexDisc",
    "ExtremalProfile",
    "GeometryError",
    "NeighbourGraph",
    "Objective",
    "Packing",
    "PackingInvalidError",
    "PackingStats",
    "Subdivision",
    "UnitSidedPolygon",
    "avg_sides",
    "build_subdivision",
    "cell_area_caps",
    "centrosymmetrize",
    "check_proposition",
    "concave_profile",
    "convex_hull",
    "convexify_flips",
    "corollary1_bound",
    "corollary2_ratio_bound",
    "corollary_min_oracle",
    "density_bound_from_profile",
    "four_neighbour_lattice",
    "grid_max_kgon",
    "grid_max_triangle",
    "load_disc",
    "load_packing",
    "make_theorem_hexagon",
    "max_kgon_area",
    "max_triangle_area",
    "measure_stats",
    "minimize_bound_over_d0",
    "minkowski_sum",
    "mixed_strip_packing",
    "neighbour_graph",
    "polygon_from_sides",
    "profile",
    "regular_ngon",
    "save_disc",
    "save_packing",
    "six_neighbour_lattice",
    "symmetrize_even",
    "theorem_lower_bound",
    "three_neighbour_honeycomb",
    "validate_disc",
    "validate_packing",
    "vertex_polygon_ratio",
]
