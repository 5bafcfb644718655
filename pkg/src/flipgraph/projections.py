"""Projections of triangulations onto the triangulations that contain a given arc.

Each projector replaces the triangles of T around an arc (or a half of the
polygon cut by it) with a fixed pattern, so flip paths map to flip paths
once consecutive repeats are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .engine import FlipPath
from .geometry import (
    FLAT,
    FlatObstruction,
    GeometryError,
    PointConfig,
    bits,
    comb,
    is_triangulation,
    orient,
)

Arc = tuple[int, int]


def _require_polygon(config: PointConfig) -> None:
    if config.n_punctures:
        raise GeometryError("projections are implemented for polygons without punctures")


def _crossing_arcs(config: PointConfig, T: int, e: int) -> int:
    return T & config.crossing_row(e)


def crossed_region(config: PointConfig, T: int, eps) -> list[int]:
    """Vertices, in boundary order, of the union of triangles of T crossed by eps."""
    e = config.arc_id(eps)
    verts = set(config.arcs[e])
    for i in bits(_crossing_arcs(config, T, e)):
        verts.update(config.arcs[i])
    return sorted(verts)


def _replace(config: PointConfig, T: int, region: list[int], new_arcs: Iterable[Arc]) -> int:
    """Remove the arcs of T strictly inside the convex region, then add new_arcs."""
    inside = set(region)
    ring = {tuple(sorted((region[k], region[(k + 1) % len(region)]))) for k in range(len(region))}
    out = T
    for i in bits(T & config.interior_mask):
        a, b = config.arcs[i]
        if a in inside and b in inside and (a, b) not in ring:
            out &= ~(1 << i)
    for arc in new_arcs:
        out |= 1 << config.arc_id(arc)
    return out


def _checked(config: PointConfig, T: int, what: str) -> int:
    if not is_triangulation(config, T):
        raise GeometryError(f"{what} did not produce a triangulation")
    return T


def project_arc(config: PointConfig, T: int, eps, x: int) -> int:
    """Pull every arc of T crossing eps to the endpoint x of eps."""
    _require_polygon(config)
    e = config.arc_id(eps)
    if x not in config.arcs[e]:
        raise GeometryError(f"{x} is not an endpoint of {config.arcs[e]}")
    if T >> e & 1:
        return T
    region = crossed_region(config, T, e)
    return _checked(config, _replace(config, T, region, comb(config, region, x)), "projection")


def _side_of(config: PointConfig, eps: Arc, v: int) -> int:
    a, b = eps
    return orient(config.xy(a), config.xy(b), config.xy(v))


def two_sided_apexes(config: PointConfig, eps) -> dict[int, int]:
    """Apex used on each side (+1 left, -1 right) of eps for the two-sided pull.

    On a side where the boundary neighbour of one endpoint is flat, arcs are
    pulled to the other endpoint.  Raises FlatObstruction when both
    endpoints have a flat neighbour on the same side.
    """
    e = config.arc_id(eps)
    a, b = config.arcs[e]
    if config.is_boundary_arc(e):
        return {1: b, -1: a}
    apex = {}
    for side, default in ((1, b), (-1, a)):
        blocked = set()
        for end in (a, b):
            for nb in config.boundary_neighbors(end):
                if config.kind(nb) == FLAT and _side_of(config, (a, b), nb) == side:
                    blocked.add(end)
        if blocked == {a, b}:
            raise FlatObstruction(
                f"flat vertices next to both ends of {(a, b)} on the same side"
            )
        apex[side] = default if default not in blocked else ({a, b} - {default}).pop()
    return apex


def project_arc_two_sided(config: PointConfig, T: int, eps) -> int:
    """Pull arcs crossing eps to one endpoint on each side of eps."""
    _require_polygon(config)
    e = config.arc_id(eps)
    apex = two_sided_apexes(config, e)
    if T >> e & 1:
        return T
    a, b = config.arcs[e]
    region = crossed_region(config, T, e)
    new_arcs = {(a, b)}
    for side in (1, -1):
        half = [v for v in region if v in (a, b) or _side_of(config, (a, b), v) == side]
        new_arcs |= comb(config, half, apex[side])
    return _checked(config, _replace(config, T, region, new_arcs), "two-sided projection")


@dataclass(frozen=True)
class RegionSpec:
    """The part of the polygon on one side of ``eps`` (sign of ``side``), with its
    prescribed triangulation ``fixed_inner`` given as arcs."""

    eps: Arc
    side: int
    fixed_inner: frozenset[Arc]

    def vertices(self, config: PointConfig) -> list[int]:
        a, b = self.eps
        return sorted(
            v for v in range(config.n_boundary)
            if v in (a, b) or _side_of(config, (a, b), v) * self.side > 0
        )


def region_spec(config: PointConfig, eps, side: int, fixed_inner: Iterable) -> RegionSpec:
    arc = config.arcs[config.arc_id(eps)]
    inner = frozenset(config.arcs[config.arc_id(f)] for f in fixed_inner)
    spec = RegionSpec(arc, 1 if side > 0 else -1, inner)
    _check_inner(config, spec)
    return spec


def restrict(config: PointConfig, T: int, vertices: Iterable[int]) -> frozenset[Arc]:
    """Arcs of T with both endpoints in ``vertices``."""
    vs = set(vertices)
    return frozenset(arc for arc in config.arcs_of(T) if arc[0] in vs and arc[1] in vs)


def _check_inner(config: PointConfig, spec: RegionSpec) -> None:
    verts = spec.vertices(config)
    vs = set(verts)
    ring = {tuple(sorted((verts[k], verts[(k + 1) % len(verts)]))) for k in range(len(verts))}
    arcs = set(spec.fixed_inner) | ring
    if len(verts) < 3:
        if not spec.fixed_inner <= ring:
            raise GeometryError("fixed_inner must be empty for a degenerate region")
        return
    if any(a not in vs or b not in vs for a, b in arcs):
        raise GeometryError("fixed_inner leaves the region")
    ids = [config.arc_id(arc) for arc in arcs]
    if len(ids) != 2 * len(verts) - 3:
        raise GeometryError("fixed_inner does not triangulate the region")
    mask = 0
    for i in ids:
        mask |= 1 << i
    if any(config.crossing_row(i) & mask for i in ids):
        raise GeometryError("fixed_inner has crossing arcs")


def project_region(config: PointConfig, T: int, region: RegionSpec, x: int) -> int:
    """Install region.fixed_inner and comb the leftover crossed part at x."""
    _require_polygon(config)
    a, b = region.eps
    if x not in (a, b):
        raise GeometryError(f"{x} is not an endpoint of {region.eps}")
    _check_inner(config, region)
    strict = {v for v in region.vertices(config) if v not in (a, b)}
    if not strict:
        return T
    touched = set()
    for tri in config.triangles(T):
        if strict & set(tri):
            touched.update(tri)
    big = sorted(touched)
    outer = [v for v in big if v not in strict]
    new_arcs = set(region.fixed_inner) | {(a, b)}
    if len(outer) >= 3:
        new_arcs |= comb(config, outer, x)
    return _checked(config, _replace(config, T, big, new_arcs), "region projection")


def meets_region_minus(config: PointConfig, region: RegionSpec, arc, y: int) -> bool:
    """Whether the closed segment meets the region with the point y removed."""
    i = config.arc_id(arc)
    a, b = region.eps
    strict = set(region.vertices(config)) - {a, b}
    u, v = config.arcs[i]
    if strict & {u, v}:
        return True
    if ({u, v} & {a, b}) - {y}:
        return True
    e = config.arc_id(region.eps)
    return i == e or config.arcs_cross(i, e)


# ----------------------------------------------------------------------
# projectors as values


Projector = Callable[[int], int]


def arc_projector(config: PointConfig, eps, x: int) -> Projector:
    return lambda T: project_arc(config, T, eps, x)


def two_sided_projector(config: PointConfig, eps) -> Projector:
    return lambda T: project_arc_two_sided(config, T, eps)


def region_projector(config: PointConfig, region: RegionSpec, x: int) -> Projector:
    return lambda T: project_region(config, T, region, x)


def project_path(path: FlipPath, projector: Projector) -> FlipPath:
    """Project every snapshot and drop consecutive duplicates."""
    return FlipPath.from_snapshots(path.config, [projector(T) for T in path.snapshots()])


__all__ = [
    "RegionSpec",
    "arc_projector",
    "crossed_region",
    "meets_region_minus",
    "project_arc",
    "project_arc_two_sided",
    "project_path",
    "project_region",
    "region_projector",
    "region_spec",
    "restrict",
    "two_sided_apexes",
    "two_sided_projector",
]
