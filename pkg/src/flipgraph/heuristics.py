"""Greedy crossing-count estimate of the flip distance."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .engine import FlipPath
from .geometry import GeometryError, PointConfig, bits


class HeuristicError(RuntimeError):
    """The greedy method found no improving flip or ran past its step budget."""


class TieRule(str, enum.Enum):
    LEX_REMOVED = "lexicographic-removed-arc"
    LEX_INSERTED = "lexicographic-inserted-arc"
    # Native flip enumeration order.  With arcs indexed lexicographically
    # this visits removed arcs in ascending order, so it picks the same
    # flip as LEX_REMOVED; kept as its own name so callers can ask for
    # "whatever the engine sees first" without depending on that detail.
    FIRST_FOUND = "first-found"

    @classmethod
    def parse(cls, text: str) -> "TieRule":
        for rule in cls:
            if text in (rule.value, rule.name, rule.name.lower().replace("_", "-")):
                return rule
        raise ValueError(f"unknown tie rule {text!r}")


def _target_ids(config: PointConfig, target: int) -> np.ndarray:
    return np.array(bits(target & config.interior_mask), dtype=np.int64)


def crossing_number(config: PointConfig, T1: int, T2: int) -> int:
    """Pairs (e, f) with e in T1, f in T2 and e crossing f."""
    ids = _target_ids(config, T2)
    return sum(config.count_crossings(e, ids) for e in bits(T1 & config.interior_mask))


@dataclass(frozen=True)
class Candidate:
    removed: int
    inserted: int
    decrease: int


class GreedyState:
    """Crossing counts against a fixed target, cached per arc.

    A flip changes the crossing number by cross(removed) - cross(inserted),
    so each arc's count against the target is computed once.
    """

    def __init__(self, config: PointConfig, target: int):
        self.config = config
        self.target = target
        self._ids = _target_ids(config, target)
        self._cross: dict[int, int] = {}

    def cross(self, i: int) -> int:
        c = self._cross.get(i)
        if c is None:
            c = self.config.count_crossings(i, self._ids)
            self._cross[i] = c
        return c

    def total(self, T: int) -> int:
        return sum(self.cross(i) for i in bits(T & self.config.interior_mask))

    def candidates(self, T: int) -> list[Candidate]:
        return [
            Candidate(i, j, self.cross(i) - self.cross(j))
            for i, j, _ in self.config.flips(T)
        ]

    def choose(self, T: int, rule: TieRule = TieRule.LEX_REMOVED) -> Candidate:
        cands = self.candidates(T)
        if not cands:
            raise HeuristicError("triangulation has no flips")
        best = max(c.decrease for c in cands)
        if best <= 0:
            raise HeuristicError(f"no flip decreases the crossing number (best change {best})")
        top = [c for c in cands if c.decrease == best]
        if rule is TieRule.LEX_INSERTED:
            return min(top, key=lambda c: (c.inserted, c.removed))
        if rule is TieRule.LEX_REMOVED:
            return min(top, key=lambda c: c.removed)
        return top[0]


def greedy_step(
    config: PointConfig, T: int, target: int, rule: TieRule = TieRule.LEX_REMOVED,
    state: GreedyState | None = None,
) -> tuple[tuple[int, int], int]:
    """Flip the arc whose replacement lowers the crossing number most."""
    if T == target:
        raise GeometryError("already at the target")
    state = state or GreedyState(config, target)
    c = state.choose(T, rule)
    return config.arcs[c.removed], T ^ (1 << c.removed) ^ (1 << c.inserted)


def greedy_path(
    config: PointConfig, T1: int, T2: int, rule: TieRule = TieRule.LEX_REMOVED
) -> FlipPath:
    """Repeat greedy steps until T2 is reached; the length is the estimate."""
    state = GreedyState(config, T2)
    budget = config.n * 3 * config.n
    steps = []
    T = T1
    while T != T2:
        if len(steps) >= budget:
            raise HeuristicError(f"step budget {budget} exhausted")
        c = state.choose(T, rule)
        steps.append((c.removed, c.inserted))
        T = T ^ (1 << c.removed) ^ (1 << c.inserted)
    return FlipPath(config, T1, tuple(steps))


__all__ = [
    "Candidate",
    "GreedyState",
    "HeuristicError",
    "TieRule",
    "crossing_number",
    "greedy_path",
    "greedy_step",
]
