"""Exact planar model: point configurations, arcs, triangulations and flips.

Coordinates are integers and every geometric question is answered by two
predicates, ``orient`` and ``on_open_segment``.  A triangulation is a plain
``int`` used as a bitset over ``PointConfig.arcs`` (lexicographic order), so it
hashes in O(1) and can be stored by the million.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

CORNER = "corner"
FLAT = "flat"
PUNCTURE = "puncture"
KINDS = (CORNER, FLAT, PUNCTURE)

Arc = tuple[int, int]

# int64 products of coordinate differences stay exact below this bound
_INT64_SAFE = 1 << 30


class GeometryError(ValueError):
    """Base class for geometric precondition failures."""


class ConfigError(GeometryError):
    """The point list does not describe a valid configuration."""


class ArcError(GeometryError):
    """An arc is unknown, invalid, or not usable for the requested operation."""


class FlatObstruction(GeometryError):
    """A constructed segment would pass through a configuration point."""


class Point(NamedTuple):
    x: int
    y: int
    kind: str


def orient(p: Sequence[int], q: Sequence[int], r: Sequence[int]) -> int:
    """Sign of the turn p -> q -> r: 1 for left, -1 for right, 0 if collinear."""
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (det > 0) - (det < 0)


def on_open_segment(r: Sequence[int], p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff r lies strictly between p and q on the segment pq."""
    if orient(p, q, r) != 0:
        return False
    return (r[0] - p[0]) * (r[0] - q[0]) + (r[1] - p[1]) * (r[1] - q[1]) < 0


def segments_cross(p, q, r, s) -> bool:
    """Proper crossing of the open segments pq and rs.

    Touching at an endpoint and collinear overlap both return False; for
    valid arcs the latter cannot happen because an overlap would put a
    configuration point inside one of the segments.
    """
    return orient(p, q, r) * orient(p, q, s) < 0 and orient(r, s, p) * orient(r, s, q) < 0


def _sign(arr: np.ndarray) -> np.ndarray:
    return (arr > 0).astype(np.int8) - (arr < 0).astype(np.int8)


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    if mask.bit_length() < 2048:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out
    raw = mask.to_bytes((mask.bit_length() + 7) // 8, "little")
    flags = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return np.flatnonzero(flags).tolist()


def _mask_from_bools(flags: np.ndarray) -> int:
    packed = np.packbits(flags.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


class PointConfig:
    """Boundary points (counterclockwise) followed by punctures.

    Derived data: ``arcs`` (valid arcs in lexicographic order), ``index``
    (arc -> position), ``boundary_mask`` and ``interior_mask`` bitsets, and
    per-vertex incidence bitsets.  Crossing rows and empty-triangle apex
    masks are computed lazily and cached, which keeps configurations with a
    few hundred points cheap to build.
    """

    def __init__(self, points: Iterable[Sequence]):
        pts = tuple(Point(int(p[0]), int(p[1]), str(p[2])) for p in points)
        _validate_points(pts)
        self.points = pts
        self.n = len(pts)
        self.n_boundary = sum(1 for p in pts if p.kind != PUNCTURE)
        big = max(max(abs(p.x), abs(p.y)) for p in pts) >= _INT64_SAFE
        dtype = object if big else np.int64
        self._xs = np.array([p.x for p in pts], dtype=dtype)
        self._ys = np.array([p.y for p in pts], dtype=dtype)
        self._build_arcs()
        self._rows: dict[int, int] = {}
        self._apex: dict[int, tuple[int, int]] = {}
        self._diag: dict[tuple[int, int, int], int] = {}

    # ------------------------------------------------------------------
    # construction
    def _build_arcs(self) -> None:
        n = self.n
        if all(p.kind == CORNER for p in self.points):
            pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        else:
            pairs = []
            xs, ys = self._xs, self._ys
            for a in range(n - 1):
                bs = np.arange(a + 1, n)
                dx = (xs[bs] - xs[a])[:, None]
                dy = (ys[bs] - ys[a])[:, None]
                cx = (xs - xs[a])[None, :]
                cy = (ys - ys[a])[None, :]
                collinear = dx * cy - dy * cx == 0
                # c strictly between a and b: 0 < (c-a).(b-a) < |b-a|^2
                dot = cx * dx + cy * dy
                inside = collinear & (dot > 0) & (dot < dx * dx + dy * dy)
                blocked = inside.any(axis=1)
                pairs.extend((a, int(b)) for b in bs[~blocked])
        self.arcs: list[Arc] = pairs
        self.index: dict[Arc, int] = {arc: i for i, arc in enumerate(pairs)}
        self._arc_a = np.array([a for a, _ in pairs], dtype=np.int64)
        self._arc_b = np.array([b for _, b in pairs], dtype=np.int64)
        B = self.n_boundary
        bmask = 0
        for k in range(B):
            edge = _key(k, (k + 1) % B)
            if edge not in self.index:
                raise ConfigError(f"boundary edge {edge} is blocked by another point")
            bmask |= 1 << self.index[edge]
        self.boundary_mask = bmask
        self.interior_mask = ((1 << len(pairs)) - 1) & ~bmask
        incident = [0] * n
        for i, (a, b) in enumerate(pairs):
            incident[a] |= 1 << i
            incident[b] |= 1 << i
        self.incident = incident

    # ------------------------------------------------------------------
    # basic queries
    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def n_punctures(self) -> int:
        return self.n - self.n_boundary

    @property
    def triangulation_size(self) -> int:
        """Number of arcs (boundary included) in every triangulation."""
        return 3 * self.n - 3 - self.n_boundary

    @property
    def triangle_count(self) -> int:
        return 2 * self.n - 2 - self.n_boundary

    def xy(self, v: int) -> tuple[int, int]:
        p = self.points[v]
        return (p.x, p.y)

    def kind(self, v: int) -> str:
        return self.points[v].kind

    def arc_id(self, arc) -> int:
        """Index of an arc given as an index or as an endpoint pair."""
        if isinstance(arc, (int, np.integer)):
            i = int(arc)
            if not 0 <= i < len(self.arcs):
                raise ArcError(f"arc index {i} out of range")
            return i
        a, b = arc
        key = _key(int(a), int(b))
        try:
            return self.index[key]
        except KeyError:
            raise ArcError(f"{key} is not a valid arc") from None

    def is_valid_arc(self, a: int, b: int) -> bool:
        return a != b and _key(a, b) in self.index

    def is_boundary_arc(self, arc) -> bool:
        return bool(self.boundary_mask >> self.arc_id(arc) & 1)

    def boundary_neighbors(self, v: int) -> tuple[int, int]:
        """Previous and next boundary points of boundary point v."""
        B = self.n_boundary
        if not 0 <= v < B:
            raise ConfigError(f"{v} is not a boundary point")
        return ((v - 1) % B, (v + 1) % B)

    # ------------------------------------------------------------------
    # crossings
    def arcs_cross(self, e, f) -> bool:
        a, b = self.arcs[self.arc_id(e)]
        c, d = self.arcs[self.arc_id(f)]
        if len({a, b, c, d}) < 4:
            return False
        return segments_cross(self.xy(a), self.xy(b), self.xy(c), self.xy(d))

    def crossing_row(self, e) -> int:
        """Bitset of all valid arcs crossing arc e."""
        i = self.arc_id(e)
        row = self._rows.get(i)
        if row is None:
            row = _mask_from_bools(self._crossing_flags(i, self._arc_a, self._arc_b))
            self._rows[i] = row
        return row

    def _crossing_flags(self, i: int, A: np.ndarray, Bv: np.ndarray) -> np.ndarray:
        a, b = self.arcs[i]
        xs, ys = self._xs, self._ys
        ax, ay, bx, by = xs[a], ys[a], xs[b], ys[b]
        Ax, Ay, Bx, By = xs[A], ys[A], xs[Bv], ys[Bv]
        o1 = _sign((bx - ax) * (Ay - ay) - (by - ay) * (Ax - ax))
        o2 = _sign((bx - ax) * (By - ay) - (by - ay) * (Bx - ax))
        o3 = _sign((Bx - Ax) * (ay - Ay) - (By - Ay) * (ax - Ax))
        o4 = _sign((Bx - Ax) * (by - Ay) - (By - Ay) * (bx - Ax))
        return (o1 * o2 < 0) & (o3 * o4 < 0)

    def count_crossings(self, e, arc_ids: Sequence[int] | np.ndarray) -> int:
        """Number of arcs among ``arc_ids`` crossing arc e (vectorized)."""
        ids = np.asarray(arc_ids, dtype=np.int64)
        if ids.size == 0:
            return 0
        flags = self._crossing_flags(self.arc_id(e), self._arc_a[ids], self._arc_b[ids])
        return int(flags.sum())

    def crossing_table(self) -> np.ndarray:
        """Full symmetric boolean crossing matrix; meant for small configs."""
        m = len(self.arcs)
        if m > 6000:
            raise GeometryError(f"crossing table over {m} arcs is too large; use crossing_row")
        table = np.zeros((m, m), dtype=bool)
        for i in range(m):
            table[i] = self._crossing_flags(i, self._arc_a, self._arc_b)
        return table

    # ------------------------------------------------------------------
    # triangulation structure
    def neighbor_mask(self, T: int, v: int) -> int:
        """Vertices joined to v by an arc of T, as a vertex bitset."""
        out = 0
        for i in bits(T & self.incident[v]):
            a, b = self.arcs[i]
            out |= 1 << (b if a == v else a)
        return out

    def neighbor_masks(self, T: int) -> list[int]:
        nbr = [0] * self.n
        arcs = self.arcs
        for i in bits(T):
            a, b = arcs[i]
            nbr[a] |= 1 << b
            nbr[b] |= 1 << a
        return nbr

    def apex_masks(self, e) -> tuple[int, int]:
        """Vertices c forming an empty triangle with arc e, left side and right side.

        A triangle qualifies when its three sides are valid arcs and no
        puncture lies in its interior.
        """
        i = self.arc_id(e)
        hit = self._apex.get(i)
        if hit is not None:
            return hit
        a, b = self.arcs[i]
        pa, pb = self.xy(a), self.xy(b)
        punctures = range(self.n_boundary, self.n)
        left = right = 0
        for c in range(self.n):
            if c == a or c == b or not self.is_valid_arc(a, c) or not self.is_valid_arc(b, c):
                continue
            pc = self.xy(c)
            side = orient(pa, pb, pc)
            if side == 0:
                continue
            tri = (pa, pb, pc) if side > 0 else (pb, pa, pc)
            if any(
                u not in (a, b, c) and _strictly_inside(tri, self.xy(u)) for u in punctures
            ):
                continue
            if side > 0:
                left |= 1 << c
            else:
                right |= 1 << c
        self._apex[i] = (left, right)
        return left, right

    def _diagonal(self, i: int, c: int, d: int) -> int:
        """Arc index of cd if it is valid and crosses arc i, else -1."""
        key = (i, c, d)
        j = self._diag.get(key)
        if j is None:
            j = -1
            cd = _key(c, d)
            if cd in self.index:
                a, b = self.arcs[i]
                pc, pd = self.xy(c), self.xy(d)
                if orient(pc, pd, self.xy(a)) * orient(pc, pd, self.xy(b)) < 0:
                    j = self.index[cd]
            self._diag[key] = j
        return j

    def flip_partner(self, T: int, e, nbr: list[int] | None = None) -> int:
        """Index of the arc replacing e when e is flipped in T, or -1."""
        i = self.arc_id(e)
        a, b = self.arcs[i]
        if nbr is None:
            common = self.neighbor_mask(T, a) & self.neighbor_mask(T, b)
        else:
            common = nbr[a] & nbr[b]
        left, right = self.apex_masks(i)
        L, R = common & left, common & right
        if not L or not R:
            return -1
        return self._diagonal(i, L.bit_length() - 1, R.bit_length() - 1)

    def flip(self, T: int, e) -> int | None:
        """T with arc e replaced by the other diagonal of its quadrilateral.

        Returns None when that diagonal is not a valid arc crossing e (a
        flat vertex or puncture in the way).
        """
        i = self.arc_id(e)
        if not T >> i & 1:
            raise ArcError(f"{self.arcs[i]} is not in the triangulation")
        if self.boundary_mask >> i & 1:
            raise ArcError(f"{self.arcs[i]} is a boundary edge")
        j = self.flip_partner(T, i)
        if j < 0:
            return None
        return T ^ (1 << i) ^ (1 << j)

    def flips(self, T: int, frozen: int = 0) -> Iterator[tuple[int, int, int]]:
        """All flips of T as (removed arc, inserted arc, new T).

        Arcs in the bitset ``frozen`` are never removed.
        """
        nbr = self.neighbor_masks(T)
        for i in bits(T & self.interior_mask & ~frozen):
            j = self.flip_partner(T, i, nbr)
            if j >= 0:
                yield i, j, T ^ (1 << i) ^ (1 << j)

    def triangles(self, T: int) -> list[tuple[int, int, int]]:
        """Triangles of T, counterclockwise, rotated to start at the smallest index."""
        nbr = self.neighbor_masks(T)
        found = set()
        for i in bits(T):
            a, b = self.arcs[i]
            common = nbr[a] & nbr[b]
            left, right = self.apex_masks(i)
            L, R = common & left, common & right
            if L:
                found.add(_rotate_min((a, b, L.bit_length() - 1)))
            if R:
                found.add(_rotate_min((b, a, R.bit_length() - 1)))
        return sorted(found)

    # ------------------------------------------------------------------
    # conversions
    def to_mask(self, arcs: Iterable, with_boundary: bool = True) -> int:
        T = self.boundary_mask if with_boundary else 0
        for arc in arcs:
            T |= 1 << self.arc_id(arc)
        return T

    def arcs_of(self, T: int, interior_only: bool = False) -> list[Arc]:
        if interior_only:
            T &= self.interior_mask
        return [self.arcs[i] for i in bits(T)]

    def __repr__(self) -> str:
        return (
            f"PointConfig(n={self.n}, boundary={self.n_boundary}, "
            f"punctures={self.n_punctures}, arcs={len(self.arcs)})"
        )


def _key(a: int, b: int) -> Arc:
    return (a, b) if a < b else (b, a)


def _rotate_min(tri: tuple[int, int, int]) -> tuple[int, int, int]:
    k = tri.index(min(tri))
    return tri[k:] + tri[:k]


def _strictly_inside(tri, p) -> bool:
    a, b, c = tri
    return orient(a, b, p) > 0 and orient(b, c, p) > 0 and orient(c, a, p) > 0


def _validate_points(pts: tuple[Point, ...]) -> None:
    for p in pts:
        if p.kind not in KINDS:
            raise ConfigError(f"unknown point kind {p.kind!r}")
    B = 0
    while B < len(pts) and pts[B].kind != PUNCTURE:
        B += 1
    if any(p.kind != PUNCTURE for p in pts[B:]):
        raise ConfigError("boundary points must be listed before punctures")
    if B < 3:
        raise ConfigError("need at least 3 boundary points")
    if len({(p.x, p.y) for p in pts}) != len(pts):
        raise ConfigError("duplicate points")
    bnd = [(p.x, p.y) for p in pts[:B]]
    for k in range(B):
        prev, cur, nxt = bnd[k - 1], bnd[k], bnd[(k + 1) % B]
        turn = orient(prev, cur, nxt)
        if pts[k].kind == CORNER and turn <= 0:
            raise ConfigError(f"corner {k} is not a strict convex vertex")
        if pts[k].kind == FLAT and not on_open_segment(cur, prev, nxt):
            raise ConfigError(f"flat point {k} is not inside the segment of its neighbours")
    if not any(p.kind == CORNER for p in pts[:B]):
        raise ConfigError("boundary has no corner")
    big = max(max(abs(p.x), abs(p.y)) for p in pts) >= _INT64_SAFE
    dtype = object if big else np.int64
    X = np.array([p.x for p in pts], dtype=dtype)
    Y = np.array([p.y for p in pts], dtype=dtype)
    # convex position: every point weakly left of every boundary edge
    for k in range(B):
        a, b = bnd[k], bnd[(k + 1) % B]
        side = (b[0] - a[0]) * (Y - a[1]) - (b[1] - a[1]) * (X - a[0])
        if (side[:B] < 0).any():
            raise ConfigError("boundary is not in convex position")
        if B < len(pts) and (side[B:] <= 0).any():
            raise ConfigError("puncture outside the hull or on its boundary")


# ----------------------------------------------------------------------
# triangulation predicates


def is_triangulation(config: PointConfig, arcs) -> bool:
    """Non-crossing, contains the boundary, and maximal.

    ``arcs`` is a bitset or an iterable of arcs.  Maximality is checked by
    the Euler count, which is equivalent for non-crossing sets of segments.
    """
    if isinstance(arcs, (int, np.integer)):
        T = int(arcs)
    else:
        try:
            T = config.to_mask(arcs, with_boundary=False)
        except ArcError:
            return False
    if T & config.boundary_mask != config.boundary_mask:
        return False
    ids = bits(T)
    if len(ids) != config.triangulation_size:
        return False
    idx = np.array(ids, dtype=np.int64)
    A, B = config._arc_a[idx], config._arc_b[idx]
    for k, i in enumerate(ids):
        if config._crossing_flags(i, A[k + 1 :], B[k + 1 :]).any():
            return False
    return True


def triangles_of(config: PointConfig, T: int) -> list[tuple[int, int, int]]:
    return config.triangles(T)


def arcs_cross(config: PointConfig, e, f) -> bool:
    return config.arcs_cross(e, f)


def flip(config: PointConfig, T: int, e) -> int | None:
    return config.flip(T, e)


# ----------------------------------------------------------------------
# combs, zigzags, contraction


def _check_region(config: PointConfig, region: Sequence[int]) -> list[int]:
    region = [int(v) for v in region]
    if len(set(region)) != len(region):
        raise GeometryError("region repeats a vertex")
    k = len(region)
    for t in range(k):
        u, v, w = region[t - 1], region[t], region[(t + 1) % k]
        if k >= 3 and orient(config.xy(u), config.xy(v), config.xy(w)) < 0:
            raise GeometryError("region is not convex and counterclockwise")
        if not config.is_valid_arc(v, w):
            raise FlatObstruction(f"region side {_key(v, w)} is not a valid arc")
    return region


def _arc_set(config: PointConfig, pairs: Iterable[Arc]) -> frozenset[Arc]:
    out = set()
    for a, b in pairs:
        if not config.is_valid_arc(a, b):
            raise FlatObstruction(f"segment {_key(a, b)} contains a configuration point")
        out.add(_key(a, b))
    return frozenset(out)


def comb(config: PointConfig, region: Sequence[int], apex: int) -> frozenset[Arc]:
    """Diagonals joining ``apex`` to every non-adjacent vertex of the region."""
    region = _check_region(config, region)
    if apex not in region:
        raise GeometryError("apex is not a region vertex")
    k = len(region)
    t = region.index(apex)
    others = [region[(t + s) % k] for s in range(2, k - 1)]
    return _arc_set(config, ((apex, v) for v in others))


def _zigzag_paths(region: Sequence[int]) -> Iterator[list[int]]:
    k = len(region)
    for ear in range(k):
        for step in (1, -1):
            path = []
            fwd = back = 1
            for t in range(k - 2):
                if t % 2 == 0:
                    path.append(region[(ear + step * fwd) % k])
                    fwd += 1
                else:
                    path.append(region[(ear - step * back) % k])
                    back += 1
            yield path
            yield path[::-1]


def zigzag(config: PointConfig, region: Sequence[int], start: int, avoid: int) -> frozenset[Arc]:
    """The zigzag triangulation whose diagonal path starts at ``start`` and misses ``avoid``."""
    region = _check_region(config, region)
    if start not in region or avoid not in region:
        raise GeometryError("start and avoid must be region vertices")
    if len(region) < 4:
        return frozenset()
    found = {
        frozenset(_key(u, v) for u, v in zip(path, path[1:]))
        for path in _zigzag_paths(region)
        if path[0] == start and avoid not in path
    }
    if not found:
        raise GeometryError(f"no zigzag path starts at {start} and avoids {avoid}")
    if len(found) > 1:
        raise GeometryError("zigzag selection is ambiguous")
    return _arc_set(config, next(iter(found)))


def contracted_index(v: int, x: int, y: int) -> int:
    """Index of old point v after contracting y onto x (y removed)."""
    if v == y:
        v = x
    return v - 1 if v > y else v


def contract_edge(config: PointConfig, T: int, eps, x: int) -> tuple[PointConfig, int]:
    """Contract the boundary edge eps onto its endpoint x.

    The other endpoint y disappears and every arc at y is re-attached to x.
    Raises FlatObstruction when a re-attached arc would contain a point.
    """
    i = config.arc_id(eps)
    if not config.boundary_mask >> i & 1:
        raise ArcError(f"{config.arcs[i]} is not a boundary edge")
    a, b = config.arcs[i]
    if x not in (a, b):
        raise GeometryError("x must be an endpoint of the contracted edge")
    y = b if x == a else a
    pts = [p for v, p in enumerate(config.points) if v != y]
    B = config.n_boundary - 1
    if B < 3:
        raise GeometryError("contraction would leave fewer than 3 boundary points")
    # the two boundary points whose neighbours changed may switch kind
    for v in {contracted_index(x, x, y), contracted_index(config.boundary_neighbors(y)[0], x, y),
              contracted_index(config.boundary_neighbors(y)[1], x, y)}:
        prev, nxt = pts[(v - 1) % B], pts[(v + 1) % B]
        p = pts[v]
        kind = FLAT if on_open_segment((p.x, p.y), (prev.x, prev.y), (nxt.x, nxt.y)) else CORNER
        pts[v] = Point(p.x, p.y, kind)
    new = PointConfig(pts)
    arcs = set()
    for u, v in config.arcs_of(T):
        u2, v2 = contracted_index(u, x, y), contracted_index(v, x, y)
        if u2 != v2:
            arcs.add(_key(u2, v2))
    for u, v in arcs:
        if not new.is_valid_arc(u, v):
            raise FlatObstruction(f"contracted arc {(u, v)} contains a configuration point")
    T2 = new.to_mask(arcs)
    if not is_triangulation(new, T2):
        raise GeometryError("contraction did not produce a triangulation")
    return new, T2


# ----------------------------------------------------------------------
# generators and text formats


def convex_points(n: int, radius: int | None = None) -> list[tuple[int, int]]:
    """n integer points in strictly convex position, counterclockwise."""
    if n < 3:
        raise ConfigError("need at least 3 points")
    r = radius or max(1000, 64 * n * n)
    while True:
        pts = []
        for k in range(n):
            t = 2 * math.pi * k / n - math.pi / 2 - math.pi / n
            pts.append((round(r * math.cos(t)), round(r * math.sin(t))))
        if len(set(pts)) == n and all(
            orient(pts[k - 1], pts[k], pts[(k + 1) % n]) > 0 for k in range(n)
        ):
            return pts
        r *= 2


def convex_polygon(n: int, radius: int | None = None) -> PointConfig:
    return PointConfig([(x, y, CORNER) for x, y in convex_points(n, radius)])


def polygon_with_flats(n_corners: int, flat_edges: Iterable[int]) -> PointConfig:
    """Convex polygon with one flat point at the midpoint of each listed edge.

    Edge k joins corner k to corner k+1.  Coordinates are doubled so the
    midpoints are integral.
    """
    corners = [(2 * x, 2 * y) for x, y in convex_points(n_corners)]
    flats = set(flat_edges)
    pts = []
    for k, (x, y) in enumerate(corners):
        pts.append((x, y, CORNER))
        if k in flats:
            nx, ny = corners[(k + 1) % n_corners]
            pts.append(((x + nx) // 2, (y + ny) // 2, FLAT))
    return PointConfig(pts)


def full_comb(config: PointConfig, apex: int) -> int:
    """Comb triangulation of the whole boundary polygon at ``apex``."""
    region = list(range(config.n_boundary))
    return config.to_mask(comb(config, region, apex))


def parse_config(text: str) -> PointConfig:
    pts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ConfigError(f"line {lineno}: expected 'kind x y'")
        kind, x, y = parts
        try:
            pts.append((int(x), int(y), kind))
        except ValueError:
            raise ConfigError(f"line {lineno}: coordinates must be integers") from None
    return PointConfig(pts)


def format_config(config: PointConfig) -> str:
    return "".join(f"{p.kind} {p.x} {p.y}\n" for p in config.points)


def load_config(path) -> PointConfig:
    with open(path) as fh:
        return parse_config(fh.read())


def format_triangulation(config: PointConfig, T: int) -> str:
    return ",".join(f"{a}-{b}" for a, b in config.arcs_of(T))


def parse_triangulation(config: PointConfig, text: str) -> int:
    """Parse ``a-b`` pairs; boundary edges may be omitted."""
    arcs = []
    for tok in text.replace(";", ",").split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            a, b = (int(s) for s in tok.split("-"))
        except ValueError:
            raise ArcError(f"bad arc token {tok!r}") from None
        arcs.append((a, b))
    T = config.to_mask(arcs)
    if not is_triangulation(config, T):
        raise GeometryError("arcs do not form a triangulation")
    return T
