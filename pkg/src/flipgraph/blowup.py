"""Time-indexed complex of a flip path: arc and triangle occurrences plus one tetrahedron per flip.

An occurrence is a maximal run of consecutive snapshots containing a given
arc or triangle.  The same segment present at two separate times gives two
distinct occurrences.  Occurrence f lies below g when their planar
projections overlap and f dies before g is born.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Union

from .engine import FlipPath, distance
from .geometry import GeometryError, PointConfig, bits

Tri = tuple[int, int, int]


@dataclass(frozen=True, order=True)
class ArcOccurrence:
    arc: int
    birth: int
    death: int

    def alive(self, i: int) -> bool:
        return self.birth <= i <= self.death


@dataclass(frozen=True, order=True)
class TriangleOccurrence:
    triangle: Tri
    birth: int
    death: int

    def alive(self, i: int) -> bool:
        return self.birth <= i <= self.death


Occurrence = Union[ArcOccurrence, TriangleOccurrence]


@dataclass(frozen=True)
class Tetra:
    time: int
    quad: tuple[int, int, int, int]
    removed: int
    inserted: int


def _runs(times: list[int]) -> Iterator[tuple[int, int]]:
    start = prev = times[0]
    for t in times[1:]:
        if t != prev + 1:
            yield start, prev
            start = t
        prev = t
    yield start, prev


@dataclass
class BlowUpComplex:
    config: PointConfig
    path: FlipPath
    snapshots: list[int]
    arcs: dict[int, list[ArcOccurrence]]
    triangles: dict[Tri, list[TriangleOccurrence]]
    tetrahedra: list[Tetra]
    _tri_sets: list[set[Tri]] = field(default_factory=list, repr=False)

    @property
    def k(self) -> int:
        return len(self.tetrahedra)

    def arc_occurrences(self) -> list[ArcOccurrence]:
        return sorted(o for occ in self.arcs.values() for o in occ)

    def triangle_occurrences(self) -> list[TriangleOccurrence]:
        return sorted(o for occ in self.triangles.values() for o in occ)

    def occurrence_at(self, arc: int, i: int) -> ArcOccurrence | None:
        for o in self.arcs.get(arc, ()):
            if o.alive(i):
                return o
        return None

    def triangles_at(self, i: int) -> set[Tri]:
        return self._tri_sets[i]

    def dump(self) -> str:
        """Plain-text listing of occurrences and tetrahedra."""
        arcs = self.config.arcs
        lines = [f"k = {self.k}", "arcs:"]
        for o in self.arc_occurrences():
            a, b = arcs[o.arc]
            lines.append(f"  {a}-{b} [{o.birth},{o.death}]")
        lines.append("triangles:")
        for o in self.triangle_occurrences():
            lines.append(f"  {o.triangle} [{o.birth},{o.death}]")
        lines.append("tetrahedra:")
        for t in self.tetrahedra:
            r, s = arcs[t.removed], arcs[t.inserted]
            lines.append(f"  t={t.time} quad={t.quad} {r[0]}-{r[1]} -> {s[0]}-{s[1]}")
        return "\n".join(lines)


def build(config: PointConfig, path: FlipPath) -> BlowUpComplex:
    path.validate()
    snaps = path.snapshots()
    arc_times: dict[int, list[int]] = {}
    tri_times: dict[Tri, list[int]] = {}
    tri_sets = []
    for i, T in enumerate(snaps):
        for a in bits(T):
            arc_times.setdefault(a, []).append(i)
        tris = config.triangles(T)
        tri_sets.append(set(tris))
        for t in tris:
            tri_times.setdefault(t, []).append(i)
    arcs = {a: [ArcOccurrence(a, s, e) for s, e in _runs(ts)] for a, ts in arc_times.items()}
    tris = {t: [TriangleOccurrence(t, s, e) for s, e in _runs(ts)] for t, ts in tri_times.items()}
    tetra = []
    for i, (rem, ins) in enumerate(path.steps, start=1):
        a, b = config.arcs[rem]
        c, d = config.arcs[ins]
        tetra.append(Tetra(i, tuple(sorted((a, b, c, d))), rem, ins))
    return BlowUpComplex(config, path, snaps, arcs, tris, tetra, tri_sets)


# ----------------------------------------------------------------------
# above / below


def _tri_sides(t: Tri) -> list[tuple[int, int]]:
    a, b, c = t
    return [tuple(sorted(p)) for p in ((a, b), (b, c), (a, c))]


def _overlap(config: PointConfig, f: Occurrence, g: Occurrence) -> bool:
    """Whether the open planar projections of f and g intersect."""
    if isinstance(f, ArcOccurrence) and isinstance(g, ArcOccurrence):
        return f.arc == g.arc or config.arcs_cross(f.arc, g.arc)
    if isinstance(f, TriangleOccurrence) and isinstance(g, TriangleOccurrence):
        if f.triangle == g.triangle:
            return True
        return any(
            config.arcs_cross(s, t)
            for s in _tri_sides(f.triangle)
            for t in _tri_sides(g.triangle)
        )
    arc, tri = (f, g) if isinstance(f, ArcOccurrence) else (g, f)
    return any(config.arcs_cross(arc.arc, s) for s in _tri_sides(tri.triangle))


def below(K: BlowUpComplex, f: Occurrence, g: Occurrence) -> bool:
    return f.death < g.birth and _overlap(K.config, f, g)


# ----------------------------------------------------------------------
# three-arc circles


Triple = tuple[ArcOccurrence, ArcOccurrence, ArcOccurrence]


def geometric_triangles(K: BlowUpComplex) -> list[Tri]:
    """Empty triangles of the config whose three sides all occur in K."""
    cfg = K.config
    present = set(K.arcs)
    found = set()
    for e in present:
        a, b = cfg.arcs[e]
        left, right = cfg.apex_masks(e)
        for c in bits(left | right):
            if c < b:
                continue
            if cfg.index.get(tuple(sorted((a, c)))) in present and \
               cfg.index.get(tuple(sorted((b, c)))) in present:
                found.add(tuple(sorted((a, b, c))))
    return sorted(found)


def _side_ids(cfg: PointConfig, t: Tri) -> list[int]:
    return [cfg.index[s] for s in _tri_sides(t)]


def circles3(K: BlowUpComplex) -> list[Triple]:
    out = []
    for t in geometric_triangles(K):
        ids = _side_ids(K.config, t)
        out.extend(product(*(K.arcs[i] for i in ids)))
    return out


def _triangle_key(K: BlowUpComplex, triple: Triple) -> Tri:
    verts = set()
    for o in triple:
        verts.update(K.config.arcs[o.arc])
    if len(verts) != 3:
        raise GeometryError("triple does not form a triangle")
    return tuple(sorted(verts))


def _canonical(t: Tri, K: BlowUpComplex) -> list[TriangleOccurrence]:
    # triangle occurrences are stored counterclockwise from the smallest index
    return [
        o for key, occ in K.triangles.items() if tuple(sorted(key)) == t for o in occ
    ]


def bounds_triangle(K: BlowUpComplex, triple: Triple) -> TriangleOccurrence | None:
    """Triangle occurrence whose three edge occurrences are exactly the triple."""
    t = _triangle_key(K, triple)
    for occ in _canonical(t, K):
        if all(o.birth <= occ.birth and occ.death <= o.death for o in triple):
            return occ
    return None


def penetrates(K: BlowUpComplex, o: ArcOccurrence, triple: Triple) -> bool:
    return any(below(K, f, o) for f in triple) and any(below(K, o, g) for g in triple)


def penetration_witness(K: BlowUpComplex, triple: Triple) -> ArcOccurrence | None:
    """An arc occurrence above one arc of the triple and below another."""
    for o in K.arc_occurrences():
        if penetrates(K, o, triple):
            return o
    return None


def tetra_edges(K: BlowUpComplex, tet: Tetra) -> list[ArcOccurrence]:
    """The six edge occurrences of a tetrahedron."""
    cfg = K.config
    a, b = cfg.arcs[tet.removed]
    c, d = cfg.arcs[tet.inserted]
    i = tet.time
    out = [K.occurrence_at(tet.removed, i - 1), K.occurrence_at(tet.inserted, i)]
    for u, v in ((a, c), (c, b), (b, d), (d, a)):
        out.append(K.occurrence_at(cfg.index[tuple(sorted((u, v)))], i))
    return out


def tetra_incident(K: BlowUpComplex, tet: Tetra, occ: ArcOccurrence) -> bool:
    return occ in tetra_edges(K, tet)


def star_has_projected_triangle(K: BlowUpComplex, triple: Triple, beta: ArcOccurrence) -> bool:
    """Some triangle occurrence with edge beta projects onto the triple's triangle."""
    t = _triangle_key(K, triple)
    return any(beta.birth <= o.birth and o.death <= beta.death for o in _canonical(t, K))


def penetration_property_holds(K: BlowUpComplex, triple: Triple, beta: ArcOccurrence) -> bool:
    """If no triangle around beta projects onto the circle's triangle, some
    tetrahedron incident to beta has an edge penetrating the circle."""
    if star_has_projected_triangle(K, triple, beta):
        return True
    for tet in K.tetrahedra:
        edges = tetra_edges(K, tet)
        if beta in edges and any(penetrates(K, e, triple) for e in edges):
            return True
    return False


# ----------------------------------------------------------------------
# checks


def flag_check(K: BlowUpComplex) -> Triple | None:
    """None when every three-arc circle bounds a triangle occurrence."""
    for triple in circles3(K):
        if bounds_triangle(K, triple) is None:
            return triple
    return None


def geodesic_triangle_check(
    config: PointConfig, path: FlipPath, require_geodesic: bool = True
) -> Tri | None:
    """None when every triangle whose sides all appear along the path is a
    triangle of some snapshot; otherwise that triangle."""
    if require_geodesic and path.length != distance(config, path.start, path.end):
        raise GeometryError("path is not a geodesic")
    snaps = path.snapshots()
    seen = 0
    for T in snaps:
        seen |= T
    tri_sets = [{tuple(sorted(t)) for t in config.triangles(T)} for T in snaps]
    for e in bits(seen):
        a, b = config.arcs[e]
        left, right = config.apex_masks(e)
        for c in bits(left | right):
            if c < b:
                continue
            ac, bc = config.index.get(tuple(sorted((a, c)))), config.index.get(tuple(sorted((b, c))))
            if ac is None or bc is None or not (seen >> ac & 1 and seen >> bc & 1):
                continue
            t = tuple(sorted((a, b, c)))
            if not any(t in s for s in tri_sets):
                return t
    return None


__all__ = [
    "ArcOccurrence",
    "BlowUpComplex",
    "Tetra",
    "TriangleOccurrence",
    "below",
    "bounds_triangle",
    "build",
    "circles3",
    "flag_check",
    "geometric_triangles",
    "penetrates",
    "penetration_property_holds",
    "penetration_witness",
    "star_has_projected_triangle",
    "tetra_edges",
    "geodesic_triangle_check",
]
