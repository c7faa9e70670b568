import random

import pytest
from hypothesis import given, settings, strategies as st

from doubledimer.graph_core import (
    GraphError, GraphSyntaxError, NoTripartitePairing, delete_nodes, delete_vertices, demote_nodes,
    graph_from_json, graph_to_json, make_graph, parse_graph, relabel_consecutive, rgb_classes,
    rgb_pairing, serialize_graph, triangle_ok)
from doubledimer.instances import InstanceSpec, grid_graph, random_instance
from doubledimer.pairings import crossings, make_pairing, planar_pairings

SINGLE = """# one edge
vertex 1 B 0 0
vertex 2 W 1 0
edge 1 2 3/2
nodes 1 2
"""


def test_parse_single_edge():
    g = parse_graph(SINGLE)
    assert g.nodes == (1, 2)
    assert g.edges[0].weight == pytest.approx(1.5)
    assert g.node_coloring == "BW"


def test_example_grid(example8x8):
    g = example8x8
    assert len(g.black) == 32 and len(g.white) == 32
    assert g.num_nodes == 8
    assert g.node_coloring == "BWBWBWBW"
    assert rgb_pairing(g.rgb) == make_pairing([(1, 8), (3, 4), (5, 2), (7, 6)])


def test_non_bipartite_edge_rejected():
    text = SINGLE.replace("vertex 2 W", "vertex 2 B")
    with pytest.raises(GraphError, match="bipartite"):
        parse_graph(text)


@pytest.mark.parametrize("bad, msg", [
    ("vertex 1 B 0\n", "line 1"),
    ("vertex 1 B 0 0\nvertex 2 W 1 0\nedge 1 2 x\n", "line 3"),
    ("frobnicate\n", "line 1"),
])
def test_syntax_errors_carry_line_numbers(bad, msg):
    with pytest.raises(GraphSyntaxError, match=msg):
        parse_graph(bad)


def test_crossing_edges_rejected():
    text = """vertex 1 B 0 0
vertex 2 W 2 2
vertex 3 B 2 0
vertex 4 W 0 2
edge 1 2 1
edge 3 4 1
nodes
"""
    with pytest.raises(GraphError, match="cross"):
        parse_graph(text)


def test_node_inside_rejected():
    with pytest.raises(GraphError, match="outer face"):
        grid_graph(4, 4, nodes_xy=[(1, 0), (1, 1)])


def test_clockwise_node_order_rejected():
    with pytest.raises(GraphError, match="counterclockwise"):
        grid_graph(4, 4, nodes_xy=[(0, 0), (3, 0), (2, 0), (1, 0)])


def test_unbalanced_nodes_rejected():
    with pytest.raises(GraphError, match="balanced"):
        grid_graph(4, 4, nodes_xy=[(0, 0), (2, 0)])


def test_node_inside_other_component_rejected():
    ring = [(x, y) for x in range(4) for y in range(4) if x in (0, 3) or y in (0, 3)]
    verts = [(1 + x + 10 * y, "B" if (x + y) % 2 == 0 else "W", 2 * x, 2 * y) for x, y in ring]
    ids = {(x, y): 1 + x + 10 * y for x, y in ring}
    edges = [(ids[a], ids[b]) for a in ring for b in ring
             if a < b and abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1]
    verts += [(100, "B", 3, 3), (101, "W", 4, 3)]
    edges += [(100, 101)]
    make_graph(verts, edges, [1, 2])
    with pytest.raises(GraphError, match="outer face"):
        make_graph(verts, edges, [100, 101])


def test_all_vertices_as_nodes_allowed(square):
    assert square.num_nodes == 4


def test_delete_nodes(example8x8, single_edge):
    h = delete_nodes(example8x8, {2, 5})
    assert [example8x8.node_label[v] for v in h.nodes] == [1, 3, 4, 6, 7, 8]
    empty = delete_nodes(single_edge, {1, 2})
    assert not empty.vertices and not empty.edges
    assert delete_nodes(single_edge, set()) == EmbeddedGraph_like(single_edge)
    with pytest.raises(GraphError):
        delete_nodes(single_edge, {3})


def EmbeddedGraph_like(g):
    return type(g)(g.vertices, g.edges, g.nodes, None)


def test_deletions_commute(example8x8):
    a = delete_nodes(delete_nodes(example8x8, {1, 2}), set())
    b = delete_vertices(delete_vertices(example8x8, [example8x8.node(5)]), [example8x8.node(6)])
    ab = delete_vertices(a, [example8x8.node(5), example8x8.node(6)])
    ba = delete_vertices(b, [example8x8.node(1), example8x8.node(2)])
    assert set(ab.vertices) == set(ba.vertices) and set(ab.edges) == set(ba.edges)
    assert ab.nodes == ba.nodes


def test_demote_keeps_vertices(example8x8):
    h = demote_nodes(example8x8, {8, 1})
    assert h.vertices == example8x8.vertices
    assert h.num_nodes == 6 and h.rgb == (2, 3, 1)


def test_rgb_pairing_examples():
    assert rgb_pairing((3, 3, 2)) == make_pairing([(1, 8), (3, 4), (5, 2), (7, 6)])
    assert rgb_pairing((1, 1, 0)) == ((1, 2),)
    with pytest.raises(NoTripartitePairing):
        rgb_pairing((4, 1, 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_rgb_pairing_unique(n):
    for r in range(2 * n + 1):
        for g in range(2 * n + 1 - r):
            split = (r, g, 2 * n - r - g)
            cls = rgb_classes(split)
            good = [p for p in planar_pairings(n) if all(cls[a] != cls[b] for a, b in p)]
            if triangle_ok(split):
                assert good == [rgb_pairing(split)]
                assert crossings(rgb_pairing(split)) == 0
            else:
                assert good == []


def test_relabel_consecutive():
    p, m = relabel_consecutive([1, 3, 4, 6, 7, 8], [(1, 8), (3, 4), (7, 6)])
    assert p == make_pairing([(1, 6), (2, 3), (5, 4)])
    p, m = relabel_consecutive([1, 2, 3, 4], [(1, 2), (3, 4)])
    assert p == ((1, 2), (3, 4)) and all(k == v for k, v in m.items())
    _, m = relabel_consecutive([x for x in range(1, 13) if x not in (5, 6, 7, 8)], [])
    assert [m[x] for x in (9, 10, 11, 12)] == [5, 6, 7, 8]
    with pytest.raises(Exception):
        relabel_consecutive([1, 2], [(1, 3)])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_roundtrip_text_and_json(seed):
    rng = random.Random(seed)
    g = random_instance(InstanceSpec(num_nodes=rng.choice([2, 4])), rng)
    g2 = parse_graph(serialize_graph(g))
    assert g2 == g
    assert parse_graph(serialize_graph(g2)) == g2
    assert graph_from_json(graph_to_json(g)) == g


def test_rational_printing():
    g = make_graph([(1, "B", "1/2", 0), (2, "W", 3, 0)], [(1, 2, "6/4")], [1, 2])
    text = serialize_graph(g)
    assert "vertex 1 B 1/2 0" in text and "edge 1 2 3/2" in text
