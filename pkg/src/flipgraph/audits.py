"""Audit loops shared by the command line and the test-suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .blowup import build, flag_check, geodesic_triangle_check
from .engine import (
    DEFAULT_NODE_CAP,
    all_triangulations,
    any_triangulation,
    bfs_distances,
    enumerate_geodesics,
    geodesic_dag,
)
from .geometry import PointConfig, bits


@dataclass
class ConvexityRow:
    eps: tuple[int, int]
    triangulations: int
    pairs: int
    violations: int
    worst_gap: int
    example: tuple[int, int] | None = None


def convexity_audit(
    config: PointConfig, eps_list=None, cap: int = DEFAULT_NODE_CAP
) -> list[ConvexityRow]:
    """Compare distances inside F_eps with distances in the whole flip graph.

    For every eps (default: all interior arcs) and every pair of
    triangulations containing eps, counts pairs whose constrained distance
    exceeds the unconstrained one.
    """
    nodes = all_triangulations(config, any_triangulation(config), cap)
    full: dict[int, dict[int, int]] = {}
    if eps_list is None:
        eps_list = bits(config.interior_mask)
    rows = []
    for e in eps_list:
        e = config.arc_id(e)
        members = [T for T in nodes if T >> e & 1]
        pairs = violations = worst = 0
        example = None
        for k, T in enumerate(members):
            inside = bfs_distances(config, T, 1 << e, cap=cap)
            if T not in full:
                full[T] = bfs_distances(config, T, cap=cap)
            around = full[T]
            for U in members[k + 1:]:
                pairs += 1
                gap = inside[U] - around[U]
                if gap > 0:
                    violations += 1
                    if gap > worst:
                        worst, example = gap, (T, U)
        rows.append(ConvexityRow(config.arcs[e], len(members), pairs, violations, worst, example))
    return rows


@dataclass
class FlagAuditResult:
    pairs: int = 0
    geodesics: int = 0
    flag_failures: int = 0
    triangle_failures: int = 0
    truncated_pairs: int = 0
    examples: list = field(default_factory=list)


def audit_pair(config: PointConfig, T1: int, T2: int, max_paths: int, result: FlagAuditResult):
    dag = geodesic_dag(config, T1, T2)
    it = enumerate_geodesics(dag, cap=max_paths)
    for path in it:
        result.geodesics += 1
        K = build(config, path)
        bad = flag_check(K)
        if bad is not None:
            result.flag_failures += 1
            result.examples.append(("flag", path))
        if geodesic_triangle_check(config, path, require_geodesic=False) is not None:
            result.triangle_failures += 1
            result.examples.append(("triangle", path))
    result.pairs += 1
    result.truncated_pairs += it.truncated


def flag_audit(
    config: PointConfig,
    sample: int | None = None,
    seed: int = 0,
    max_paths: int = 10**6,
    cap: int = DEFAULT_NODE_CAP,
) -> FlagAuditResult:
    """flag_check and geodesic_triangle_check over every geodesic of every (or sampled) pair."""
    nodes = all_triangulations(config, any_triangulation(config), cap)
    result = FlagAuditResult()
    if sample is None:
        pairs = itertools.combinations(nodes, 2)
    else:
        rng = random.Random(seed)
        pairs = (tuple(rng.sample(nodes, 2)) for _ in range(sample))
    for T1, T2 in pairs:
        audit_pair(config, T1, T2, max_paths, result)
    return result


def sampled_geodesics(config: PointConfig, count: int, seed: int = 0, per_pair: int = 20):
    """Yield ``count`` geodesics from random pairs, at most ``per_pair`` each."""
    nodes = all_triangulations(config, any_triangulation(config))
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        T1, T2 = rng.sample(nodes, 2)
        for path in enumerate_geodesics(geodesic_dag(config, T1, T2), cap=per_pair):
            yield path
            produced += 1
            if produced == count:
                return
