import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from doubledimer.enum_oracle import zd_enumerate
from doubledimer.graph_core import delete_nodes
from doubledimer.instances import InstanceSpec, grid_graph, random_instance
from doubledimer.kasteleyn import (OddVertexCount, build_weighting, face_is_flat, is_kasteleyn,
                                   kasteleyn_matrix, submatrix_check, zd_det)
from doubledimer.linalg import det, pfaffian, solve
from doubledimer.pairings import UnbalancedSet, is_balanced

from corpus import random_grid_instances


def leibniz(m):
    n = len(m)
    total = Fraction(0)
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Fraction((-1) ** inv)
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


matrices = st.integers(0, 5).flatmap(lambda n: st.lists(
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=n, max_size=n),
    min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_det_matches_leibniz(m):
    assert det(m) == leibniz(m)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3).flatmap(lambda k: st.lists(
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    min_size=(2 * k) * (2 * k - 1) // 2, max_size=(2 * k) * (2 * k - 1) // 2).map(lambda xs: (2 * k, xs))))
def test_pfaffian_squared_is_det(arg):
    n, xs = arg
    a = [[Fraction(0)] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i + 1, n):
            a[i][j] = next(it)
            a[j][i] = -a[i][j]
    assert pfaffian(a) ** 2 == det(a)


def test_solve():
    a = [[2, 1], [1, 3]]
    x = solve(a, [[1, 0], [0, 1]])
    assert x == [[Fraction(3, 5), Fraction(-1, 5)], [Fraction(-1, 5), Fraction(2, 5)]]


def test_weighting_small(single_edge, square):
    assert list(build_weighting(single_edge).values()) == [1]
    negs = sum(s < 0 for s in build_weighting(square).values())
    assert negs in (1, 3)
    with pytest.raises(OddVertexCount):
        build_weighting(grid_graph(3, 3, check=False))


def test_3x3_piece_is_flat():
    g = grid_graph(4, 3, cells=[(x, y) for x in range(3) for y in range(3)] + [(3, 0)], check=False)
    signs = build_weighting(g)
    assert is_kasteleyn(g, signs)


def test_zd_det_values(single_edge, square):
    assert zd_det(single_edge) == Fraction(3, 2)
    assert zd_det(square) == 2
    assert zd_det(grid_graph(4, 4)) == 36
    assert zd_det(delete_nodes(single_edge, {1, 2})) == 1


def test_outer_face_flat_for_even_components():
    for g in random_grid_instances()[:20]:
        signs = build_weighting(g)
        for comp in g.components:
            if len(comp.vertices) % 2 == 0 and comp.bounded:
                assert face_is_flat(comp.outer, signs)


def test_gauge_flip_preserves_flatness_and_det():
    g = random_grid_instances()[3]
    signs = build_weighting(g)
    rng = random.Random(0)
    for v in rng.sample(sorted(g.vmap), 4):
        for u in g.adj[v]:
            signs[frozenset((u, v))] *= -1
    assert is_kasteleyn(g, signs)
    _, _, m = kasteleyn_matrix(g, signs)
    assert abs(det(m)) == zd_enumerate(g)


def test_submatrix_examples(single_edge):
    g = random_grid_instances()[0]
    rep = submatrix_check(g, [])
    assert rep.ok and rep.det_value == zd_det(g)
    rep = submatrix_check(single_edge, [1, 2])
    assert rep.ok and rep.det_value == 1
    with pytest.raises(UnbalancedSet):
        submatrix_check(g, [1])


@pytest.mark.parametrize("g", random_grid_instances()[:25])
def test_submatrix_property_every_balanced_set(g):
    c = g.node_coloring
    n = len(c)
    for k in range(0, n + 1, 2):
        for s in combinations(range(1, n + 1), k):
            if is_balanced(s, c):
                assert submatrix_check(g, s).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(3, 3), (4, 4), (5, 3), (4, 3)]))
def test_det_equals_enumeration(seed, dims):
    rng = random.Random(seed)
    g = random_instance(InstanceSpec(width=dims[0], height=dims[1], num_nodes=2,
                                     delete_prob=0.25), rng)
    assert zd_det(g) == zd_enumerate(g)
    assert is_kasteleyn(g, build_weighting(g))


def test_disconnected_and_bridged_graphs():
    from doubledimer.graph_core import make_graph
    sq = lambda k, dx: [(k + 1, "B", dx, 0), (k + 2, "W", dx + 1, 0), (k + 3, "B", dx + 1, 1), (k + 4, "W", dx, 1)]
    ring = lambda k: [(k + 1, k + 2), (k + 2, k + 3), (k + 3, k + 4), (k + 4, k + 1)]
    two = make_graph(sq(0, 0) + sq(10, 3), ring(0) + ring(10), [])
    assert zd_det(two) == zd_enumerate(two) == 4
    # two squares joined by a path, so the outer walk runs along it twice
    verts = sq(0, 0) + [(5, "W", 2, 1), (6, "B", 3, 1), (7, "W", 4, 1), (8, "B", 5, 1),
                        (9, "W", 5, 2), (10, "B", 4, 2)]
    edges = ring(0) + [(3, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10), (10, 7)]
    g = make_graph(verts, edges, [])
    assert is_kasteleyn(g, build_weighting(g))
    assert zd_det(g) == zd_enumerate(g) > 0
