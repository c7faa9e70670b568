import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from doubledimer.enum_oracle import (CapExceeded, ZeroDimerPartition, all_pairing_sums, decompose,
                                     pr_tilde_oracle, zd_enumerate, zdd_enumerate)
from doubledimer.graph_core import delete_nodes, make_graph
from doubledimer.instances import InstanceSpec, grid_graph, random_instance
from doubledimer.pairings import PairingError, connects, is_balanced, t_set

from corpus import random_grid_instances


def test_zd_small_cases(single_edge, square):
    assert zd_enumerate(single_edge) == Fraction(3, 2)
    assert zd_enumerate(square) == 2
    assert zd_enumerate(grid_graph(3, 2)) == 3
    assert zd_enumerate(delete_nodes(single_edge, {1, 2})) == 1


def test_zdd_single_edge(single_edge):
    assert zdd_enumerate(single_edge, [(1, 2)]) == Fraction(3, 2)
    assert all_pairing_sums(single_edge) == {((1, 2),): Fraction(3, 2)}
    with pytest.raises(PairingError):
        zdd_enumerate(single_edge, [(1, 1)])
    assert pr_tilde_oracle(single_edge, [(1, 2)]) == Fraction(2, 3)


def naive_pairing_sums(g):
    """Every multiplicity map in {0,1,2}^E, no pruning."""
    out = {}
    nodes = set(g.nodes)
    for mult in product(range(3), repeat=len(g.edges)):
        deg = {v.id: 0 for v in g.vertices}
        for e, m in zip(g.edges, mult):
            deg[e.u] += m
            deg[e.v] += m
        if any(deg[v] != (1 if v in nodes else 2) for v in deg):
            continue
        cfg = decompose(g, dict(enumerate(mult)))
        w = Fraction(2) ** cfg.loops
        for e, m in zip(g.edges, mult):
            w *= e.weight ** m
        out[cfg.pairing] = out.get(cfg.pairing, 0) + w
    return out


def test_square_with_two_adjacent_nodes():
    g = make_graph([(1, "B", 0, 0), (2, "W", 1, 0), (3, "B", 1, 1), (4, "W", 0, 1)],
                   [(1, 2, 2), (2, 3, 3), (3, 4, 5), (4, 1, 7)], [1, 2])
    sums = all_pairing_sums(g)
    assert sums == naive_pairing_sums(g)
    # direct edge 1-2 plus doubled 3-4, or the long way round 1-4-3-2
    assert sums[((1, 2),)] == 2 * 25 + 7 * 5 * 3


def test_no_nodes_counts_loops():
    g = grid_graph(2, 2)
    # two doubled-edge configs of weight 1, one loop config of weight 2
    assert all_pairing_sums(g) == {(): 4}
    assert sum(all_pairing_sums(grid_graph(3, 2)).values()) == 9


def test_decomposition_invariants():
    g = random_instance(InstanceSpec(num_nodes=4, seed=3), random.Random(3))
    sums = all_pairing_sums(g)
    assert sums == naive_pairing_sums(g) if len(g.edges) <= 12 else True
    assert all(v > 0 for v in sums.values())


def test_cap():
    with pytest.raises(CapExceeded):
        all_pairing_sums(grid_graph(4, 4), cap=100)
    with pytest.raises(CapExceeded):
        zd_enumerate(grid_graph(4, 4), cap=10)


def test_zero_partition():
    g = make_graph([(1, "B", 0, 0), (2, "W", 1, 0), (3, "B", 2, 0), (4, "W", 3, 0)],
                   [(1, 2), (3, 4)], [2, 3])
    assert zd_enumerate(delete_nodes(g, {1, 2})) == 0
    g2 = make_graph([(1, "B", 0, 0), (2, "W", 1, 0), (3, "W", 0, 1), (4, "B", 1, 1)],
                    [(1, 2), (1, 3)], [2, 4])
    with pytest.raises(ZeroDimerPartition):
        pr_tilde_oracle(g2, [(1, 2)])


@pytest.mark.parametrize("g", random_grid_instances()[:15])
def test_t_twisted_superposition(g):
    """Z(G minus V) Z(G minus V^c) = sum of Z^DD over pairings keeping V△T together."""
    c = g.node_coloring
    n = len(c)
    t = t_set(c)
    sums = all_pairing_sums(g)
    for k in range(n + 1):
        for v in combinations(range(1, n + 1), k):
            if not is_balanced(v, c):
                continue
            vc = set(range(1, n + 1)) - set(v)
            lhs = zd_enumerate(delete_nodes(g, v)) * zd_enumerate(delete_nodes(g, vc))
            rhs = sum(val for p, val in sums.items() if not connects(p, set(v) ^ t))
            assert lhs == rhs


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pairing_sums_partition_all_configs(seed):
    rng = random.Random(seed)
    g = random_instance(InstanceSpec(width=3, height=3, num_nodes=rng.choice([2, 4])), rng)
    sums = all_pairing_sums(g)
    # with every node's path removed, superposition of G and G minus all nodes
    total = sum(v for p, v in sums.items() if not connects(p, t_set(g.node_coloring)))
    assert total == zd_enumerate(g) * zd_enumerate(delete_nodes(g, range(1, g.num_nodes + 1)))
    assert all(v >= 0 for v in sums.values())
