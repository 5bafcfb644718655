import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import convex_configs, random_triangulation
from oracles import bfs, count_shortest_paths, interior_diagonals, polygon_flip_graph
from flipgraph.engine import (
    FlipPath,
    InvalidPathError,
    ResourceLimitError,
    all_triangulations,
    bfs_distances,
    comb_bound,
    comb_upper_bound_path,
    contract_path,
    degenerate_flip_count,
    diameter,
    distance,
    enumerate_geodesics,
    geodesic_dag,
    path_to_comb,
    reachable_set,
    shortest_path,
)
from flipgraph.geometry import (
    FlatObstruction,
    GeometryError,
    convex_polygon,
    full_comb,
    polygon_with_flats,
)


def _oracle_graph(n):
    P = convex_polygon(n)
    nodes = all_triangulations(P, full_comb(P, 0))
    key = {T: interior_diagonals(T, P.arcs, n) for T in nodes}
    return P, nodes, key, polygon_flip_graph(n)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_distances_match_explicit_graph(n):
    P, nodes, key, adj = _oracle_graph(n)
    rng = random.Random(n)
    for T1 in rng.sample(nodes, min(len(nodes), 12)):
        ref = bfs(adj, key[T1])
        for T2 in nodes:
            assert distance(P, T1, T2) == ref[key[T2]]


@pytest.mark.parametrize("n", [5, 6])
def test_geodesic_counts_match_path_dfs(n):
    P, nodes, key, adj = _oracle_graph(n)
    for T1, T2 in itertools.combinations(nodes, 2):
        dag = geodesic_dag(P, T1, T2)
        expected = count_shortest_paths(adj, key[T1], key[T2])
        assert dag.count() == expected
        paths = list(enumerate_geodesics(dag))
        assert len(paths) == expected
        assert len({p.steps for p in paths}) == expected
        for p in paths:
            p.validate()
            assert p.end == T2 and p.length == dag.k


def test_hexagon_opposite_combs():
    # comb(0) and comb(3) share the diagonal (0, 3); values frozen from the
    # explicit-graph oracle
    P = convex_polygon(6)
    T1, T2 = full_comb(P, 0), full_comb(P, 3)
    _, _, key, adj = _oracle_graph(6)
    assert bfs(adj, key[T1])[key[T2]] == 2
    assert count_shortest_paths(adj, key[T1], key[T2]) == 2
    assert distance(P, T1, T2) == 2
    assert geodesic_dag(P, T1, T2).count() == 2
    assert comb_bound(P, T1, T2, 0) == 2


def test_hexagon_disjoint_combs():
    P = convex_polygon(6)
    T1, T2 = full_comb(P, 0), full_comb(P, 1)
    _, _, key, adj = _oracle_graph(6)
    assert distance(P, T1, T2) == bfs(adj, key[T1])[key[T2]] == 3


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9])
def test_diameter_matches_all_pairs_bfs(n):
    _, _, _, adj = _oracle_graph(n)
    expected = max(max(bfs(adj, t).values()) for t in adj)
    assert diameter(convex_polygon(n)) == expected


def test_reachable_set_with_constraint():
    P = convex_polygon(7)
    e = P.arc_id((0, 3))
    T = full_comb(P, 0)
    # triangulations containing (0,3): a quadrilateral times a pentagon
    assert reachable_set(P, T, constraint=[(0, 3)]).count == 2 * 5
    assert reachable_set(P, T, constraint=1 << e).count == 10


def test_constrained_distance_requires_shared_arc():
    P = convex_polygon(6)
    with pytest.raises(GeometryError):
        distance(P, full_comb(P, 0), full_comb(P, 1), [(0, 2)])


def test_caps_raise():
    P = convex_polygon(9)
    with pytest.raises(ResourceLimitError):
        reachable_set(P, full_comb(P, 0), cap=100)
    with pytest.raises(ResourceLimitError):
        distance(P, full_comb(P, 0), full_comb(P, 4), cap=10)


def test_geodesic_iterator_cap_sets_truncated():
    P = convex_polygon(8)
    dag = geodesic_dag(P, full_comb(P, 0), full_comb(P, 4))
    assert dag.count() > 3
    it = enumerate_geodesics(dag, cap=3)
    assert len(list(it)) == 3 and it.truncated
    it = enumerate_geodesics(dag)
    assert len(list(it)) == dag.count() and not it.truncated


def test_flip_path_operations():
    P = convex_polygon(7)
    path = shortest_path(P, full_comb(P, 0), full_comb(P, 3))
    back = path.reversed()
    assert back.start == path.end and back.end == path.start
    back.validate()
    loop = path.then(back)
    assert loop.length == 2 * path.length and loop.end == path.start
    snaps = path.snapshots()
    assert FlipPath.from_snapshots(P, snaps + [snaps[-1]]).steps == path.steps
    with pytest.raises(InvalidPathError):
        FlipPath.from_snapshots(P, [snaps[0], snaps[-1]] if path.length > 1 else [snaps[0], 0])
    bad = FlipPath(P, path.start, ((path.steps[0][1], path.steps[0][0]),))
    with pytest.raises(InvalidPathError):
        bad.validate()


def test_path_to_comb_rejects_flat_neighbour():
    P = polygon_with_flats(5, [0])
    T = all_triangulations(P, full_comb(P, 4))[0]
    with pytest.raises(FlatObstruction):
        path_to_comb(P, T, 0)


# ----------------------------------------------------------------------
# properties


@given(convex_configs(max_corners=7, max_flats=1, max_punctures=1), st.data())
def test_distance_is_a_metric(P, data):
    A, B, C = (data.draw(random_triangulation(P, max_walk=12)) for _ in range(3))
    dab, dbc, dac = distance(P, A, B), distance(P, B, C), distance(P, A, C)
    assert dab == distance(P, B, A)
    assert (dab == 0) == (A == B)
    assert dac <= dab + dbc
    assert dab >= (A & ~B).bit_count()


@given(st.integers(4, 9), st.data())
def test_comb_path_bounds_the_distance(n, data):
    P = convex_polygon(n)
    T1 = data.draw(random_triangulation(P))
    T2 = data.draw(random_triangulation(P))
    x = data.draw(st.integers(0, n - 1))
    path = comb_upper_bound_path(P, T1, T2, x)
    path.validate()
    assert path.start == T1 and path.end == T2
    assert path.length == comb_bound(P, T1, T2, x)
    assert distance(P, T1, T2) <= path.length


@given(st.integers(4, 9), st.data())
def test_bfs_layers_agree_with_pairwise_distance(n, data):
    P = convex_polygon(n)
    T = data.draw(random_triangulation(P))
    dist = bfs_distances(P, T, max_depth=3)
    for U, d in list(dist.items())[:30]:
        assert distance(P, T, U) == d <= 3


@given(st.integers(5, 8), st.data())
def test_contraction_drops_exactly_the_degenerate_flips(n, data):
    P = convex_polygon(n)
    T = data.draw(random_triangulation(P))
    walk = [T]
    for c in data.draw(st.lists(st.integers(0, 10**6), min_size=1, max_size=10)):
        moves = list(P.flips(walk[-1]))
        walk.append(moves[c % len(moves)][2])
    path = FlipPath.from_snapshots(P, walk)
    k = data.draw(st.integers(0, n - 1))
    eps = (k, (k + 1) % n)
    x = data.draw(st.sampled_from(eps))
    Q, short = contract_path(path, eps, x)
    short.validate()
    assert Q.n == n - 1
    assert short.length == path.length - degenerate_flip_count(path, eps)
