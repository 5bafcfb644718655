"""Labelled polygon families with a pair of mirror-image triangulations.

Both families place their vertices counterclockwise on a convex polygon in
the order given by ``crossing_gap_labels`` / ``two_flat_labels``.  The reflection
k -> -k (mod N) fixes the apex ``o`` and maps the first triangulation onto
the second.  Crossing counts only depend on the cyclic order, so any
convex placement gives the same combinatorics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .engine import FlipPath, path_to_comb
from .geometry import (
    CORNER,
    FLAT,
    PUNCTURE,
    GeometryError,
    PointConfig,
    bits,
    comb,
    convex_polygon,
    is_triangulation,
    polygon_with_flats,
    zigzag,
)


class ConstructionError(GeometryError):
    pass


def _seq(prefix: str, lo: int, hi: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(lo, hi + 1)]


@dataclass
class LabeledInstance:
    config: PointConfig
    labels: list[str]
    T_minus: int
    T_plus: int

    def __post_init__(self):
        self.pos = {name: i for i, name in enumerate(self.labels)}

    @property
    def N(self) -> int:
        return len(self.labels)

    def v(self, name: str) -> int:
        return self.pos[name]

    def arc(self, x: str, y: str) -> int:
        return self.config.arc_id((self.pos[x], self.pos[y]))

    def name(self, i: int) -> tuple[str, str]:
        a, b = self.config.arcs[i]
        return self.labels[a], self.labels[b]

    def mirror_vertex(self, k: int) -> int:
        return (-k) % self.N

    def mirror(self, T: int) -> int:
        cfg = self.config
        out = 0
        for i in bits(T):
            a, b = cfg.arcs[i]
            out |= 1 << cfg.arc_id((self.mirror_vertex(a), self.mirror_vertex(b)))
        return out

    def mirror_path(self, path: FlipPath) -> FlipPath:
        cfg = self.config
        m = lambda i: cfg.arc_id(tuple(self.mirror_vertex(v) for v in cfg.arcs[i]))  # noqa: E731
        return FlipPath(cfg, self.mirror(path.start), tuple((m(r), m(i)) for r, i in path.steps))

    def crossings(self, x: str, y: str, T: int) -> int:
        return (self.config.crossing_row(self.arc(x, y)) & T).bit_count()


def _mask(inst: LabeledInstance, pairs: Iterable[tuple[str, str]]) -> int:
    T = inst.config.boundary_mask
    for x, y in pairs:
        T |= 1 << inst.arc(x, y)
    return T


def _region(inst: LabeledInstance, names: Sequence[str]) -> list[int]:
    return [inst.v(x) for x in names]


def _inner_choice(inst: LabeledInstance, region: list[int], choice, default) -> frozenset:
    """Diagonals triangulating ``region``: the default or a caller-supplied set."""
    if choice is None:
        return default
    cfg = inst.config
    arcs = set()
    for x, y in choice:
        a = inst.v(x) if isinstance(x, str) else int(x)
        b = inst.v(y) if isinstance(y, str) else int(y)
        arcs.add((min(a, b), max(a, b)))
    verts = set(region)
    k = len(region)
    ring = {tuple(sorted((region[i], region[(i + 1) % k]))) for i in range(k)}
    arcs -= ring
    if any(a not in verts or b not in verts for a, b in arcs) or len(arcs) != k - 3:
        raise ConstructionError("inner choice does not triangulate its region")
    ids = [cfg.arc_id(a) for a in arcs]
    mask = sum(1 << i for i in ids)
    if any(cfg.crossing_row(i) & mask for i in ids):
        raise ConstructionError("inner choice has crossing arcs")
    return frozenset(arcs)


# ----------------------------------------------------------------------
# family with no flat vertices


def crossing_gap_labels(n: int, m: int) -> list[str]:
    return (
        ["o", "d"] + _seq("d", 1, n) + ["e"] + _seq("e", 1, m) + ["f"] + _seq("f", 1, m + 1)
        + ["g"] + _seq("g", 1, m) + ["h"] + _seq("h", 1, n) + ["p"]
    )


@dataclass
class CrossingGapInstance(LabeledInstance):
    n: int = 0
    m: int = 0

    def region_e(self) -> list[int]:
        return _region(self, ["e"] + _seq("e", 1, self.m) + ["f", "p"])

    def region_h(self) -> list[int]:
        return _region(self, ["f", "h"] + _seq("h", 1, self.n) + ["p"])


def build_crossing_gap_family(n: int, m: int, inner_e=None, inner_h=None) -> CrossingGapInstance:
    """Polygon with 2n+3m+8 corners and the triangulation pair (T-, T+).

    T- combs the d-block at o, the e-block at p and the h-block at f, has
    the triangle (o, e, p), and triangulates the block from f to h by the
    zigzag that starts at f_{m+1} and misses g.  ``inner_e`` / ``inner_h``
    replace the combs of the e- and h-blocks by any other triangulation.
    """
    if n < 1 or m < 1:
        raise ConstructionError("n and m must be at least 1")
    labels = crossing_gap_labels(n, m)
    cfg = convex_polygon(len(labels))
    inst = CrossingGapInstance(cfg, labels, 0, 0, n, m)
    reg_d = _region(inst, ["o", "d"] + _seq("d", 1, n) + ["e"])
    reg_f = _region(inst, ["f"] + _seq("f", 1, m + 1) + ["g"] + _seq("g", 1, m) + ["h"])
    reg_e, reg_h = inst.region_e(), inst.region_h()
    arcs = set(comb(cfg, reg_d, inst.v("o")))
    arcs |= _inner_choice(inst, reg_e, inner_e, comb(cfg, reg_e, inst.v("p")))
    arcs |= _inner_choice(inst, reg_h, inner_h, comb(cfg, reg_h, inst.v("f")))
    arcs |= zigzag(cfg, reg_f, inst.v(f"f{m + 1}"), inst.v("g"))
    T = cfg.boundary_mask | cfg.to_mask(arcs, with_boundary=False)
    T |= _mask(inst, [("o", "e"), ("e", "p"), ("f", "p"), ("f", "h")])
    if not is_triangulation(cfg, T):
        raise ConstructionError("crossing-gap T- is not a triangulation")
    inst.T_minus = T
    inst.T_plus = inst.mirror(T)
    return inst


def a_sets(inst: CrossingGapInstance, T: int) -> tuple[frozenset, frozenset]:
    """Arcs of T joining f to some h_i, and arcs joining p to some e_i."""
    A_f = frozenset(
        inst.arc("f", x) for x in _seq("h", 1, inst.n) if T >> inst.arc("f", x) & 1
    )
    A_p = frozenset(
        inst.arc("p", x) for x in _seq("e", 1, inst.m) if T >> inst.arc("p", x) & 1
    )
    return A_f, A_p


def crossing_report(inst: CrossingGapInstance) -> dict[str, tuple[int, int]]:
    """(measured, expected) crossing counts against T+ for the tracked arcs of T-."""
    n, m, Tp = inst.n, inst.m, inst.T_plus
    out = {}
    for i in range(1, n + 1):
        out[f"o-d{i}"] = (inst.crossings("o", f"d{i}", Tp), m + i + 1)
    out["e-o"] = (inst.crossings("e", "o", Tp), n + m + 2)
    out["f-p"] = (inst.crossings("f", "p", Tp), 2 * n + 3 * m + 5)
    out["f-h"] = (inst.crossings("f", "h", Tp), n + 3 * m + 3)
    out["e-p"] = (inst.crossings("e", "p", Tp), 2 * n + m + 3)
    return out


# ----------------------------------------------------------------------
# family with two flat vertices


def two_flat_labels(n: int, m: int) -> list[str]:
    return (
        ["o", "a", "b", "c", "d"] + _seq("d", 1, n) + ["e"] + _seq("e", 1, m) + ["f"]
        + _seq("f", 1, m + 1) + ["g"] + _seq("g", 1, m) + ["h"] + _seq("h", 1, n)
        + ["p", "q", "r", "s"]
    )


@dataclass
class TwoFlatInstance(LabeledInstance):
    n: int = 0
    m: int = 0
    eta: int = -1
    half_path: FlipPath | None = None

    @property
    def middle(self) -> int:
        return self.half_path.end

    def upper_bound_path(self) -> FlipPath:
        """T- to the symmetric middle, then the mirror image back out to T+."""
        return self.half_path.then(self.mirror_path(self.half_path).reversed())


def build_two_flat_family(n: int, m: int) -> TwoFlatInstance:
    """Polygon with flat vertices b (between a and c) and r (between q and s).

    Vertex order is ``two_flat_labels``: 2n+3m+14 points.  The arc eta = (a, s)
    cuts off the ear at o and lies in both triangulations.  T- combs the
    d-block at a, the e-block at q and the h-block at f, zigzags the block
    from f to h, and fills the rest with (b, d), (e, s), (e, r), (e, q) and
    (f, p).  The generator also builds the half path to the mirror-symmetric
    middle triangulation and checks every flip of it.
    """
    if n < 1 or m < 1:
        raise ConstructionError("n and m must be at least 1")
    labels = two_flat_labels(n, m)
    corners = [x for x in labels if x not in ("b", "r")]
    cfg = polygon_with_flats(len(corners), [corners.index("a"), corners.index("q")])
    if [cfg.kind(i) == FLAT for i in range(cfg.n)] != [x in ("b", "r") for x in labels]:
        raise ConstructionError("flat vertices ended up in the wrong place")
    inst = TwoFlatInstance(cfg, labels, 0, 0, n, m)
    v = inst.v
    reg_d = _region(inst, ["a", "d"] + _seq("d", 1, n) + ["e"])
    reg_e = _region(inst, ["e"] + _seq("e", 1, m) + ["f", "p", "q"])
    reg_h = _region(inst, ["f", "h"] + _seq("h", 1, n) + ["p"])
    reg_f = _region(inst, ["f"] + _seq("f", 1, m + 1) + ["g"] + _seq("g", 1, m) + ["h"])
    arcs = set(comb(cfg, reg_d, v("a"))) | comb(cfg, reg_e, v("q")) | comb(cfg, reg_h, v("f"))
    arcs |= zigzag(cfg, reg_f, v(f"f{m + 1}"), v("g"))
    T = cfg.boundary_mask | cfg.to_mask(arcs, with_boundary=False)
    T |= _mask(inst, [
        ("a", "s"), ("a", "d"), ("a", "e"), ("b", "d"), ("e", "s"), ("e", "r"),
        ("e", "q"), ("f", "p"), ("f", "h"),
    ])
    if not is_triangulation(cfg, T):
        raise ConstructionError("two-flat T- is not a triangulation")
    inst.T_minus = T
    inst.T_plus = inst.mirror(T)
    inst.eta = inst.arc("a", "s")
    inst.half_path = _two_flat_half_path(inst)
    return inst


def _two_flat_half_path(inst: TwoFlatInstance) -> FlipPath:
    """Flip sequence from T- to a mirror-symmetric triangulation.

    1. fan out from o: eta, (e,s), (e,r), (e,q), (q,e_i), (q,f) -> m+5 arcs at o
    2. (o,q) -> (p,r)
    3. (o,r) -> (p,s), then (o,p) -> (f,s)
    4. (f,p), (f,h_n), ..., (f,h_1) -> arcs from s to h_n, ..., h_1, h
    5. (f,s) -> (o,h), then fan out from o across the zigzag block
    Total n+3m+12 flips.
    """
    n, m = inst.n, inst.m
    scripted = (
        [(("a", "s"), ("o", "e")), (("e", "s"), ("o", "r")), (("e", "r"), ("o", "q")),
         (("e", "q"), ("o", "e1"))]
        + [(("q", f"e{i}"), ("o", f"e{i + 1}")) for i in range(1, m)]
        + [((("q", f"e{m}")), ("o", "f")), (("q", "f"), ("o", "p"))]
        + [(("o", "q"), ("p", "r")), (("o", "r"), ("p", "s")), (("o", "p"), ("f", "s")),
           (("f", "p"), ("s", f"h{n}"))]
        + [(("f", f"h{i}"), ("s", f"h{i - 1}")) for i in range(n, 1, -1)]
        + [(("f", "h1"), ("s", "h")), (("f", "s"), ("o", "h"))]
    )
    cfg = inst.config
    T = inst.T_minus
    steps = []
    for removed, expected in scripted:
        i = inst.arc(*removed)
        U = cfg.flip(T, i)
        j = inst.arc(*expected)
        if U is None or U != T ^ (1 << i) ^ (1 << j):
            raise ConstructionError(f"scripted flip {removed} -> {expected} failed")
        steps.append((i, j))
        T = U
    frozen = (1 << inst.arc("a", "e")) | (1 << inst.arc("s", "h"))
    fan = path_to_comb(cfg, T, inst.v("o"), frozen=frozen)
    path = FlipPath(cfg, inst.T_minus, tuple(steps) + fan.steps)
    path.validate()
    if inst.mirror(path.end) != path.end:
        raise ConstructionError("half path does not end at a symmetric triangulation")
    return path


# ----------------------------------------------------------------------
# flats to punctures


@dataclass
class PerturbedInstance:
    config: PointConfig
    index_map: dict[int, int]  # old vertex index -> new vertex index
    T_minus: int
    T_plus: int
    eta: int
    arc_map: dict[int, int] = field(default_factory=dict)  # old arc id -> new arc id
    added: frozenset = frozenset()  # new boundary arcs (neighbours of a moved flat)


def perturb_flats_to_punctures(inst: TwoFlatInstance, keep: int, max_scale_bits: int = 40):
    """Push 2 - keep of the flat vertices slightly into the interior.

    ``keep`` is the number of flats that stay on the boundary (b goes
    first).  The arc between the two neighbours of a moved flat becomes a
    boundary edge; every other arc keeps its crossing pattern.  Scales the
    coordinates up until a one-unit inward push has that property.
    """
    if keep not in (0, 1, 2):
        raise ValueError("keep must be 0, 1 or 2")
    old = inst.config
    if keep == 2:
        ident = {i: i for i in range(old.n)}
        return PerturbedInstance(old, ident, inst.T_minus, inst.T_plus, inst.eta,
                                 {i: i for i in range(old.n_arcs)})
    moved = [inst.v("b"), inst.v("r")][: 2 - keep]
    for bits_ in range(1, max_scale_bits + 1):
        K = 1 << bits_
        result = _try_perturb(inst, moved, K)
        if result is not None:
            return result
    raise ConstructionError("no small enough perturbation found within the scale budget")


def _try_perturb(inst: TwoFlatInstance, moved: list[int], K: int) -> PerturbedInstance | None:
    old = inst.config
    pts = [(p.x * K, p.y * K, p.kind) for p in old.points]
    boundary = [i for i in range(old.n) if i not in moved]
    order = boundary + moved
    new_pts = []
    for i in order:
        x, y, kind = pts[i]
        if i in moved:
            a, c = old.boundary_neighbors(i)
            ax, ay = old.xy(a)
            cx, cy = old.xy(c)
            # inward normal of the counterclockwise edge a -> c
            nx, ny = -(cy - ay), cx - ax
            g = max(abs(nx), abs(ny))
            x += round(nx / g) if nx else 0
            y += round(ny / g) if ny else 0
            kind = PUNCTURE
        new_pts.append((x, y, kind))
    try:
        cfg = PointConfig(new_pts)
    except GeometryError:
        return None
    index_map = {old_i: new_i for new_i, old_i in enumerate(order)}
    arc_map = {}
    for i, (a, b) in enumerate(old.arcs):
        key = tuple(sorted((index_map[a], index_map[b])))
        if key not in cfg.index:
            return None
        arc_map[i] = cfg.index[key]
    added = set()
    for v in moved:
        a, c = old.boundary_neighbors(v)
        added.add(cfg.arc_id((index_map[a], index_map[c])))
    if set(arc_map.values()) | added != set(range(cfg.n_arcs)):
        return None
    for i in range(old.n_arcs):
        row_old = old.crossing_row(i)
        row_new = cfg.crossing_row(arc_map[i])
        mapped = 0
        for j in bits(row_old):
            mapped |= 1 << arc_map[j]
        if mapped != row_new:
            return None
    extra = sum(1 << i for i in added)

    def carry(T: int) -> int:
        out = extra
        for i in bits(T):
            out |= 1 << arc_map[i]
        return out

    Tm, Tp = carry(inst.T_minus), carry(inst.T_plus)
    if not (is_triangulation(cfg, Tm) and is_triangulation(cfg, Tp)):
        return None
    return PerturbedInstance(cfg, index_map, Tm, Tp, arc_map[inst.eta], arc_map, frozenset(added))


__all__ = [
    "ConstructionError",
    "TwoFlatInstance",
    "CrossingGapInstance",
    "PerturbedInstance",
    "a_sets",
    "build_two_flat_family",
    "build_crossing_gap_family",
    "two_flat_labels",
    "crossing_report",
    "crossing_gap_labels",
    "perturb_flats_to_punctures",
]
