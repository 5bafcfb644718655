"""Search over the implicit flip graph: enumeration, distances, geodesics, diameter."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .geometry import (
    FLAT,
    ArcError,
    FlatObstruction,
    GeometryError,
    PointConfig,
    bits,
    contract_edge,
    contracted_index,
)

DEFAULT_NODE_CAP = 5_000_000
DEFAULT_PATH_CAP = 1_000_000


class ResourceLimitError(RuntimeError):
    """A search would exceed its node or path budget."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeded the cap of {limit}")
        self.what = what
        self.limit = limit


class InvalidPathError(GeometryError):
    pass


@dataclass(frozen=True)
class FlipPath:
    """A start triangulation and a list of (removed, inserted) arc indices."""

    config: PointConfig
    start: int
    steps: tuple[tuple[int, int], ...] = ()

    @property
    def length(self) -> int:
        return len(self.steps)

    def snapshots(self) -> list[int]:
        out = [self.start]
        T = self.start
        for rem, ins in self.steps:
            T = T ^ (1 << rem) ^ (1 << ins)
            out.append(T)
        return out

    @property
    def end(self) -> int:
        T = self.start
        for rem, ins in self.steps:
            T = T ^ (1 << rem) ^ (1 << ins)
        return T

    def arc_steps(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        arcs = self.config.arcs
        return [(arcs[r], arcs[i]) for r, i in self.steps]

    def validate(self) -> None:
        """Raise InvalidPathError unless every step is a legal flip."""
        cfg = self.config
        T = self.start
        for k, (rem, ins) in enumerate(self.steps):
            if not T >> rem & 1 or T >> ins & 1:
                raise InvalidPathError(f"step {k}: arcs do not match the triangulation")
            try:
                nxt = cfg.flip(T, rem)
            except ArcError as err:
                raise InvalidPathError(f"step {k}: {err}") from None
            if nxt is None or nxt != T ^ (1 << rem) ^ (1 << ins):
                raise InvalidPathError(f"step {k}: not a flip")
            T = nxt

    def reversed(self) -> "FlipPath":
        return FlipPath(self.config, self.end, tuple((i, r) for r, i in reversed(self.steps)))

    def then(self, other: "FlipPath") -> "FlipPath":
        if other.start != self.end:
            raise InvalidPathError("paths do not connect")
        return FlipPath(self.config, self.start, self.steps + other.steps)

    @classmethod
    def from_snapshots(cls, config: PointConfig, snaps: Sequence[int]) -> "FlipPath":
        """Build a path from consecutive triangulations, dropping repeats."""
        if not snaps:
            raise InvalidPathError("empty snapshot list")
        steps = []
        prev = snaps[0]
        for T in snaps[1:]:
            if T == prev:
                continue
            gone, new = prev & ~T, T & ~prev
            if gone.bit_count() != 1 or new.bit_count() != 1:
                raise InvalidPathError("consecutive triangulations differ by more than one arc")
            steps.append((gone.bit_length() - 1, new.bit_length() - 1))
            prev = T
        path = cls(config, snaps[0], tuple(steps))
        path.validate()
        return path


def _frozen_mask(config: PointConfig, constraint) -> int:
    if constraint is None:
        return 0
    if isinstance(constraint, int):
        return constraint
    return config.to_mask(constraint, with_boundary=False)


# ----------------------------------------------------------------------
# enumeration


@dataclass
class Reach:
    count: int
    nodes: list[int] | None = None


def reachable_set(
    config: PointConfig,
    T0: int,
    store: bool = False,
    constraint=None,
    cap: int = DEFAULT_NODE_CAP,
) -> Reach:
    """Every triangulation reachable from T0 by flips (keeping ``constraint``)."""
    frozen = _frozen_mask(config, constraint)
    seen = {T0}
    frontier = [T0]
    while frontier:
        nxt = []
        for T in frontier:
            for _, _, U in config.flips(T, frozen):
                if U not in seen:
                    seen.add(U)
                    nxt.append(U)
        if len(seen) > cap:
            raise ResourceLimitError("reachable set", cap)
        frontier = nxt
    return Reach(len(seen), sorted(seen) if store else None)


def all_triangulations(config: PointConfig, T0: int, cap: int = DEFAULT_NODE_CAP) -> list[int]:
    return reachable_set(config, T0, store=True, cap=cap).nodes


def bfs_distances(
    config: PointConfig, source: int, constraint=None, max_depth: int | None = None,
    cap: int = DEFAULT_NODE_CAP,
) -> dict[int, int]:
    frozen = _frozen_mask(config, constraint)
    dist = {source: 0}
    frontier = [source]
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        depth += 1
        nxt = []
        for T in frontier:
            for _, _, U in config.flips(T, frozen):
                if U not in dist:
                    dist[U] = depth
                    nxt.append(U)
        if len(dist) > cap:
            raise ResourceLimitError("breadth-first search", cap)
        frontier = nxt
    return dist


# ----------------------------------------------------------------------
# distance


def distance(
    config: PointConfig, T1: int, T2: int, constraint=None, cap: int = DEFAULT_NODE_CAP
) -> int:
    """Exact flip distance by bidirectional breadth-first search.

    With ``constraint`` (arcs or a bitset) no flip may remove those arcs,
    which gives the distance inside the subgraph of triangulations
    containing them.
    """
    frozen = _frozen_mask(config, constraint)
    if frozen & ~(T1 & T2):
        raise GeometryError("constraint arcs must belong to both triangulations")
    if T1 == T2:
        return 0
    sides = [{T1: 0}, {T2: 0}]
    fronts = [[T1], [T2]]
    depth = [0, 0]
    while fronts[0] and fronts[1]:
        s = 0 if len(fronts[0]) <= len(fronts[1]) else 1
        mine, other = sides[s], sides[1 - s]
        best = None
        nxt = []
        d = depth[s] + 1
        for T in fronts[s]:
            for _, _, U in config.flips(T, frozen):
                if U in mine:
                    continue
                mine[U] = d
                nxt.append(U)
                hit = other.get(U)
                if hit is not None and (best is None or d + hit < best):
                    best = d + hit
        if best is not None:
            return best
        if len(mine) + len(other) > cap:
            raise ResourceLimitError("bidirectional search", cap)
        fronts[s] = nxt
        depth[s] = d
    raise GeometryError("triangulations lie in different components")


def shortest_path(
    config: PointConfig, T1: int, T2: int, constraint=None, cap: int = DEFAULT_NODE_CAP
) -> FlipPath:
    """One geodesic, the lexicographically first by arc index at each layer."""
    dag = geodesic_dag(config, T1, T2, constraint, cap)
    return next(iter(enumerate_geodesics(dag, cap=1)))


# ----------------------------------------------------------------------
# geodesics


@dataclass
class GeodesicDag:
    config: PointConfig
    source: int
    target: int
    k: int
    layers: list[list[int]]
    succ: dict[int, list[tuple[int, int, int]]]

    def nodes(self) -> set[int]:
        return {T for layer in self.layers for T in layer}

    def count(self) -> int:
        """Number of geodesics, by dynamic programming over the layers."""
        ways = {self.target: 1}
        for layer in reversed(self.layers[:-1]):
            for T in layer:
                ways[T] = sum(ways[U] for _, _, U in self.succ[T])
        return ways[self.source]


def geodesic_dag(
    config: PointConfig, T1: int, T2: int, constraint=None, cap: int = DEFAULT_NODE_CAP
) -> GeodesicDag:
    """All triangulations lying on some geodesic from T1 to T2, layered by depth."""
    frozen = _frozen_mask(config, constraint)
    if frozen & ~(T1 & T2):
        raise GeometryError("constraint arcs must belong to both triangulations")
    k = distance(config, T1, T2, frozen, cap)
    d1 = bfs_distances(config, T1, frozen, max_depth=k, cap=cap)
    d2 = bfs_distances(config, T2, frozen, max_depth=k, cap=cap)
    on = {T for T, a in d1.items() if d2.get(T, k + 1) == k - a}
    layers: list[list[int]] = [[] for _ in range(k + 1)]
    for T in on:
        layers[d1[T]].append(T)
    for layer in layers:
        layer.sort()
    succ = {}
    for T in on:
        depth = d1[T]
        succ[T] = sorted(
            (rem, ins, U)
            for rem, ins, U in config.flips(T, frozen)
            if U in on and d1[U] == depth + 1
        )
    return GeodesicDag(config, T1, T2, k, layers, succ)


class GeodesicIterator:
    """Iterates geodesics of a DAG in a fixed order; ``truncated`` flags the cap."""

    def __init__(self, dag: GeodesicDag, cap: int = DEFAULT_PATH_CAP):
        self.dag = dag
        self.cap = cap
        self.truncated = False
        self.emitted = 0

    def __iter__(self) -> Iterator[FlipPath]:
        dag = self.dag
        stack: list[tuple[int, list]] = [(dag.source, list(dag.succ.get(dag.source, ())))]
        steps: list[tuple[int, int]] = []
        if dag.k == 0:
            self.emitted = 1
            yield FlipPath(dag.config, dag.source, ())
            return
        while stack:
            T, options = stack[-1]
            if not options:
                stack.pop()
                if steps:
                    steps.pop()
                continue
            rem, ins, U = options.pop(0)
            steps.append((rem, ins))
            if U == dag.target:
                if self.emitted >= self.cap:
                    self.truncated = True
                    return
                self.emitted += 1
                yield FlipPath(dag.config, dag.source, tuple(steps))
                steps.pop()
                continue
            stack.append((U, list(dag.succ[U])))


def enumerate_geodesics(dag: GeodesicDag, cap: int = DEFAULT_PATH_CAP) -> GeodesicIterator:
    return GeodesicIterator(dag, cap)


# ----------------------------------------------------------------------
# diameter


def flip_graph_csr(config: PointConfig, T0: int, cap: int = DEFAULT_NODE_CAP):
    """Enumerate the component of T0 and return (nodes, indptr, indices)."""
    nodes = all_triangulations(config, T0, cap)
    pos = {T: k for k, T in enumerate(nodes)}
    indptr = [0]
    indices: list[int] = []
    for T in nodes:
        indices.extend(pos[U] for _, _, U in config.flips(T))
        indptr.append(len(indices))
    return nodes, np.array(indptr, dtype=np.int64), np.array(indices, dtype=np.int64)


def eccentricities(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Eccentricity of every node, 64 breadth-first searches at a time.

    Each node carries a 64-bit word; bit s is set once source s of the
    current batch has reached it.
    """
    n = len(indptr) - 1
    ecc = np.zeros(n, dtype=np.int64)
    starts = indptr[:-1]
    if (np.diff(indptr) == 0).any():
        raise GeometryError("isolated node in flip graph")
    for base in range(0, n, 64):
        width = min(64, n - base)
        seen = np.zeros(n, dtype=np.uint64)
        for s in range(width):
            seen[base + s] = np.uint64(1) << np.uint64(s)
        frontier = seen.copy()
        level = 0
        reached_at = np.zeros(64, dtype=np.int64)
        while True:
            spread = np.bitwise_or.reduceat(frontier[indices], starts)
            new = spread & ~seen
            if not new.any():
                break
            level += 1
            seen |= new
            frontier = new
            word = np.bitwise_or.reduce(new)
            for s in range(width):
                if int(word) >> s & 1:
                    reached_at[s] = level
        ecc[base : base + width] = reached_at[:width]
    return ecc


def diameter(config: PointConfig, T0: int | None = None, cap: int = DEFAULT_NODE_CAP) -> int:
    """Exact diameter of the flip graph component containing T0."""
    if T0 is None:
        T0 = any_triangulation(config)
    _, indptr, indices = flip_graph_csr(config, T0, cap)
    if len(indptr) == 2:
        return 0
    return int(eccentricities(indptr, indices).max())


def any_triangulation(config: PointConfig) -> int:
    """A triangulation built greedily by adding arcs in index order."""
    T = config.boundary_mask
    for i in range(config.n_arcs):
        if T >> i & 1:
            continue
        if not config.crossing_row(i) & T:
            T |= 1 << i
    return T


# ----------------------------------------------------------------------
# comb path


def path_to_comb(config: PointConfig, T: int, x: int, frozen: int = 0) -> FlipPath:
    """Flip arcs facing x until no flip can add another arc at x.

    Each step removes the smallest-index arc opposite x in a triangle at x,
    so the degree of x grows by exactly one per flip.  Arcs in ``frozen``
    are never flipped, which confines the fan to the region they bound.
    """
    if config.n_punctures:
        raise GeometryError("comb paths need a polygon without punctures")
    for nb in config.boundary_neighbors(x):
        if config.kind(nb) == FLAT:
            raise FlatObstruction(f"vertex {x} is adjacent to the flat vertex {nb}")
    steps = []
    while True:
        nbr = config.neighbor_masks(T)
        choice = None
        for i in bits(T & config.interior_mask & ~config.incident[x] & ~frozen):
            a, b = config.arcs[i]
            if nbr[x] >> a & 1 and nbr[x] >> b & 1:
                j = config.flip_partner(T, i, nbr)
                if j >= 0 and x in config.arcs[j]:
                    choice = (i, j)
                    break
        if choice is None:
            break
        i, j = choice
        T = T ^ (1 << i) ^ (1 << j)
        steps.append(choice)
    return FlipPath(config, T if not steps else _rewind(T, steps), tuple(steps))


def _rewind(T: int, steps: list[tuple[int, int]]) -> int:
    for rem, ins in reversed(steps):
        T = T ^ (1 << rem) ^ (1 << ins)
    return T


def comb_upper_bound_path(config: PointConfig, T1: int, T2: int, x: int) -> FlipPath:
    """T1 -> comb at x -> T2.

    Length is 2(N-1) minus the degrees of x in T1 and T2 (boundary edges
    counted), the classical upper bound on the flip distance.
    """
    first = path_to_comb(config, T1, x)
    second = path_to_comb(config, T2, x)
    if first.end != second.end:
        raise GeometryError(f"comb at {x} could not be completed")
    return first.then(second.reversed())


def comb_bound(config: PointConfig, T1: int, T2: int, x: int) -> int:
    deg = lambda T: (T & config.incident[x]).bit_count()  # noqa: E731
    return 2 * (config.n - 1) - deg(T1) - deg(T2)


# ----------------------------------------------------------------------
# contraction of paths


def contract_path(path: FlipPath, eps, x: int) -> tuple[PointConfig, FlipPath]:
    """Contract eps to x in every snapshot and drop consecutive repeats."""
    cfg = path.config
    snaps = []
    new_cfg = None
    for T in path.snapshots():
        new_cfg, T2 = contract_edge(cfg, T, eps, x)
        snaps.append(T2)
    # every snapshot yields an equal config; rebuild masks on the last one
    if new_cfg is None:
        raise InvalidPathError("empty path")
    return new_cfg, FlipPath.from_snapshots(new_cfg, snaps)


def degenerate_flip_count(path: FlipPath, eps) -> int:
    """Flips whose quadrilateral has eps as a side."""
    cfg = path.config
    e = set(cfg.arcs[cfg.arc_id(eps)])
    count = 0
    for rem, ins in path.steps:
        quad = set(cfg.arcs[rem]) | set(cfg.arcs[ins])
        a, b = cfg.arcs[rem]
        c, d = cfg.arcs[ins]
        sides = [{a, c}, {c, b}, {b, d}, {d, a}]
        if e <= quad and e in sides:
            count += 1
    return count


__all__ = [
    "FlipPath",
    "GeodesicDag",
    "InvalidPathError",
    "ResourceLimitError",
    "all_triangulations",
    "any_triangulation",
    "bfs_distances",
    "comb_bound",
    "comb_upper_bound_path",
    "contract_path",
    "contracted_index",
    "degenerate_flip_count",
    "diameter",
    "distance",
    "eccentricities",
    "enumerate_geodesics",
    "flip_graph_csr",
    "geodesic_dag",
    "path_to_comb",
    "reachable_set",
    "shortest_path",
]
