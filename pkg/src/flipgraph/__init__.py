"""Flip graphs of polygon triangulations with flat vertices and punctures."""

from .engine import (
    FlipPath,
    ResourceLimitError,
    comb_upper_bound_path,
    diameter,
    distance,
    enumerate_geodesics,
    geodesic_dag,
    reachable_set,
)
from .geometry import (
    CORNER,
    FLAT,
    PUNCTURE,
    ArcError,
    ConfigError,
    FlatObstruction,
    GeometryError,
    PointConfig,
    comb,
    contract_edge,
    convex_polygon,
    full_comb,
    is_triangulation,
    polygon_with_flats,
    zigzag,
)
from .heuristics import TieRule, greedy_path

__all__ = [
    "CORNER",
    "FLAT",
    "PUNCTURE",
    "ArcError",
    "ConfigError",
    "FlatObstruction",
    "FlipPath",
    "GeometryError",
    "PointConfig",
    "ResourceLimitError",
    "TieRule",
    "comb",
    "comb_upper_bound_path",
    "contract_edge",
    "convex_polygon",
    "diameter",
    "distance",
    "enumerate_geodesics",
    "full_comb",
    "geodesic_dag",
    "greedy_path",
    "is_triangulation",
    "polygon_with_flats",
    "reachable_set",
    "zigzag",
]
