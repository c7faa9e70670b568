"""Embedded planar bipartite graphs with boundary nodes: model, validation, file format."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from . import embedding as emb
from .pairings import Pairing, PairingError, make_pairing


class GraphError(ValueError):
    pass


class GraphSyntaxError(GraphError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class NoTripartitePairing(GraphError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    color: str  # "B" or "W"
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: Fraction


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    outer: list[tuple[int, int]]
    bounded: list[list[tuple[int, int]]]


@dataclass(frozen=True)
class EmbeddedGraph:
    """A straight-line embedded bipartite graph; `nodes` are vertex ids, node label i is nodes[i-1]."""
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    nodes: tuple[int, ...]
    rgb: tuple[int, int, int] | None = field(default=None)

    # -- lookups --------------------------------------------------------------
    @cached_property
    def vmap(self) -> dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def pos(self) -> dict[int, emb.Point]:
        return {v.id: (v.x, v.y) for v in self.vertices}

    @cached_property
    def adj(self) -> dict[int, list[int]]:
        a: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            a[e.u].append(e.v)
            a[e.v].append(e.u)
        return a

    @cached_property
    def weight(self) -> dict[frozenset, Fraction]:
        return {frozenset((e.u, e.v)): e.weight for e in self.edges}

    @property
    def black(self) -> list[int]:
        return sorted(v.id for v in self.vertices if v.color == "B")

    @property
    def white(self) -> list[int]:
        return sorted(v.id for v in self.vertices if v.color == "W")

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @cached_property
    def node_label(self) -> dict[int, int]:
        return {vid: i for i, vid in enumerate(self.nodes, 1)}

    @cached_property
    def node_coloring(self) -> str:
        return "".join(self.vmap[v].color for v in self.nodes)

    def node(self, label: int) -> int:
        if not 1 <= label <= len(self.nodes):
            raise GraphError(f"unknown node label {label}")
        return self.nodes[label - 1]

    # -- embedding ------------------------------------------------------------
    @cached_property
    def rotation(self) -> dict[int, list[int]]:
        return emb.rotation_system(self.pos, self.adj)

    @cached_property
    def components(self) -> list[Component]:
        walks = emb.face_walks(self.rotation)
        comp_of: dict[int, int] = {}
        comps: list[set[int]] = []
        for v in sorted(self.adj):
            if v in comp_of:
                continue
            stack, cur = [v], set()
            comp_of[v] = len(comps)
            while stack:
                x = stack.pop()
                cur.add(x)
                for y in self.adj[x]:
                    if y not in comp_of:
                        comp_of[y] = len(comps)
                        stack.append(y)
            comps.append(cur)
        grouped: list[list] = [[] for _ in comps]
        for w in walks:
            grouped[comp_of[w[0][0]]].append(w)
        out = []
        for verts, ws in zip(comps, grouped):
            if not ws:
                out.append(Component(frozenset(verts), [], []))
                continue
            areas = [emb.signed_area2(w, self.pos) for w in ws]
            k = min(range(len(ws)), key=lambda i: areas[i])
            assert areas[k] <= 0 and all(a > 0 for i, a in enumerate(areas) if i != k)
            out.append(Component(frozenset(verts), ws[k], [w for i, w in enumerate(ws) if i != k]))
        return out

    def faces(self) -> list[list[tuple[int, int]]]:
        """Every face walk: bounded faces of all components, then each component's outer walk."""
        out = [w for c in self.components for w in c.bounded]
        out += [c.outer for c in self.components if c.outer]
        return out

    def on_outer_face(self, v: int) -> bool:
        for c in self.components:
            if v in c.vertices:
                if c.outer and all(a != v for a, _ in c.outer):
                    return False
            else:
                p = self.pos[v]
                if any(emb.winding_number(p, w, self.pos) for w in c.bounded):
                    return False
        return True

    def ccw_outer_sequence(self, comp: Component) -> list[int]:
        if not comp.outer:
            return sorted(comp.vertices)
        return [a for a, _ in reversed(comp.outer)]


# -- validation ------------------------------------------------------------------

def _cyclic_subsequence(seq: list[int], wanted: list[int]) -> bool:
    """Can `wanted` be read off `seq` (cyclically) in order, each item once?"""
    if not wanted:
        return True
    m = len(seq)
    doubled = seq + seq
    for start in range(m):
        if seq[start] != wanted[0]:
            continue
        k = 1
        for j in range(start + 1, start + m):
            if k == len(wanted):
                break
            if doubled[j] == wanted[k]:
                k += 1
        if k == len(wanted):
            return True
    return False


def validate(g: EmbeddedGraph) -> None:
    vm = {}
    for v in g.vertices:
        if v.id in vm:
            raise GraphError(f"duplicate vertex {v.id}")
        if v.color not in ("B", "W"):
            raise GraphError(f"vertex {v.id} has color {v.color!r}")
        vm[v.id] = v
    if len({(v.x, v.y) for v in g.vertices}) != len(g.vertices):
        raise GraphError("two vertices share coordinates")
    seen = set()
    for e in g.edges:
        if e.u not in vm or e.v not in vm:
            raise GraphError(f"edge {e.u}-{e.v} uses an unknown vertex")
        if vm[e.u].color == vm[e.v].color:
            raise GraphError(f"edge {e.u}-{e.v} joins two {vm[e.u].color} vertices (not bipartite)")
        if e.weight <= 0:
            raise GraphError(f"edge {e.u}-{e.v} has non-positive weight")
        key = frozenset((e.u, e.v))
        if key in seen:
            raise GraphError(f"duplicate edge {e.u}-{e.v}")
        seen.add(key)
    if len(g.black) != len(g.white):
        raise GraphError("unequal numbers of black and white vertices")
    pos = g.pos
    es = g.edges
    for i in range(len(es)):
        a1, a2 = pos[es[i].u], pos[es[i].v]
        for j in range(i + 1, len(es)):
            if emb.segments_cross(a1, a2, pos[es[j].u], pos[es[j].v]):
                raise GraphError(f"edges {es[i].u}-{es[i].v} and {es[j].u}-{es[j].v} cross")
        for v in g.vertices:
            if emb.point_on_segment((v.x, v.y), a1, a2):
                raise GraphError(f"vertex {v.id} lies on edge {es[i].u}-{es[i].v}")
    _validate_nodes(g)


def _validate_nodes(g: EmbeddedGraph) -> None:
    if len(set(g.nodes)) != len(g.nodes):
        raise GraphError("repeated node")
    for v in g.nodes:
        if v not in g.vmap:
            raise GraphError(f"node {v} is not a vertex")
    c = g.node_coloring
    if c.count("B") != c.count("W"):
        raise GraphError("nodes are not balanced between black and white")
    for v in g.nodes:
        if not g.on_outer_face(v):
            raise GraphError(f"node {v} is not on the outer face")
    # order: per component contiguous and counterclockwise along its outer walk
    comp_idx = {}
    for k, comp in enumerate(g.components):
        for v in comp.vertices:
            comp_idx[v] = k
    labels = [comp_idx[v] for v in g.nodes]
    changes = sum(labels[i] != labels[i - 1] for i in range(len(labels)))
    if len(set(labels)) > 1 and changes != len(set(labels)):
        raise GraphError("nodes of different components interleave")
    for k, comp in enumerate(g.components):
        mine = [v for v in g.nodes if comp_idx[v] == k]
        if mine and not _cyclic_subsequence(g.ccw_outer_sequence(comp), mine):
            raise GraphError("nodes are not listed counterclockwise along the outer face")
    if g.rgb is not None:
        if min(g.rgb) < 0 or sum(g.rgb) != len(g.nodes):
            raise GraphError(f"rgb split {g.rgb} does not sum to {len(g.nodes)}")


# -- construction helpers -----------------------------------------------------------

def make_graph(vertices: Iterable, edges: Iterable, nodes: Iterable[int],
               rgb: tuple[int, int, int] | None = None, check: bool = True) -> EmbeddedGraph:
    vs = tuple(v if isinstance(v, Vertex) else Vertex(int(v[0]), v[1], Fraction(v[2]), Fraction(v[3]))
               for v in vertices)
    es = tuple(e if isinstance(e, Edge) else Edge(int(e[0]), int(e[1]), Fraction(e[2]) if len(e) > 2 else Fraction(1))
               for e in edges)
    g = EmbeddedGraph(vs, es, tuple(nodes), tuple(rgb) if rgb is not None else None)
    if check:
        validate(g)
    return g


def _frac(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise GraphSyntaxError(lineno, f"bad rational {tok!r}") from None


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphSyntaxError(lineno, f"bad vertex id {tok!r}") from None


def parse_graph(text: str) -> EmbeddedGraph:
    vertices, edges, nodes, rgb = [], [], None, None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, *args = line.split()
        if kw == "vertex":
            if len(args) != 4 or args[1] not in ("B", "W"):
                raise GraphSyntaxError(lineno, "expected: vertex <id> <B|W> <x> <y>")
            vertices.append(Vertex(_int(args[0], lineno), args[1],
                                   _frac(args[2], lineno), _frac(args[3], lineno)))
        elif kw == "edge":
            if len(args) != 3:
                raise GraphSyntaxError(lineno, "expected: edge <id1> <id2> <weight>")
            edges.append(Edge(_int(args[0], lineno), _int(args[1], lineno), _frac(args[2], lineno)))
        elif kw == "nodes":
            if nodes is not None:
                raise GraphSyntaxError(lineno, "duplicate nodes line")
            nodes = [_int(a, lineno) for a in args]
        elif kw == "rgb":
            if len(args) != 3:
                raise GraphSyntaxError(lineno, "expected: rgb <r> <g> <b>")
            rgb = tuple(_int(a, lineno) for a in args)
        else:
            raise GraphSyntaxError(lineno, f"unknown keyword {kw!r}")
    return make_graph(vertices, edges, nodes or [], rgb)


def fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def serialize_graph(g: EmbeddedGraph) -> str:
    lines = [f"vertex {v.id} {v.color} {fmt_rational(v.x)} {fmt_rational(v.y)}" for v in g.vertices]
    lines += [f"edge {e.u} {e.v} {fmt_rational(e.weight)}" for e in g.edges]
    lines.append("nodes " + " ".join(map(str, g.nodes)))
    if g.rgb is not None:
        lines.append("rgb " + " ".join(map(str, g.rgb)))
    return "\n".join(lines) + "\n"


def graph_to_json(g: EmbeddedGraph) -> str:
    return json.dumps({
        "vertices": [{"id": v.id, "color": v.color, "x": fmt_rational(v.x), "y": fmt_rational(v.y)}
                     for v in g.vertices],
        "edges": [{"u": e.u, "v": e.v, "weight": fmt_rational(e.weight)} for e in g.edges],
        "nodes": list(g.nodes),
        "rgb": list(g.rgb) if g.rgb is not None else None,
    }, indent=2)


def graph_from_json(text: str) -> EmbeddedGraph:
    d = json.loads(text)
    return make_graph([(v["id"], v["color"], v["x"], v["y"]) for v in d["vertices"]],
                      [(e["u"], e["v"], e["weight"]) for e in d["edges"]],
                      d["nodes"], d.get("rgb"))


# -- deletions -------------------------------------------------------------------

def delete_vertices(g: EmbeddedGraph, ids: Iterable[int]) -> EmbeddedGraph:
    """G minus a vertex set; nodes among them are dropped from the node list."""
    ids = set(ids)
    unknown = ids - set(g.vmap)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    return EmbeddedGraph(tuple(v for v in g.vertices if v.id not in ids),
                         tuple(e for e in g.edges if e.u not in ids and e.v not in ids),
                         tuple(v for v in g.nodes if v not in ids), None)


def delete_nodes(g: EmbeddedGraph, labels: Iterable[int]) -> EmbeddedGraph:
    """G minus the node vertices with the given labels; survivors keep their order."""
    return delete_vertices(g, [g.node(i) for i in labels])


def demote_nodes(g: EmbeddedGraph, labels: Iterable[int]) -> EmbeddedGraph:
    """Same graph, with the given nodes turned into internal vertices.

    Surviving nodes are renumbered consecutively by position; an RGB split is
    carried over by shrinking the classes of the demoted nodes.
    """
    labels = set(labels)
    for i in labels:
        g.node(i)
    rgb = None
    if g.rgb is not None:
        cls = rgb_classes(g.rgb)
        counts = [0, 0, 0]
        for i in range(1, len(g.nodes) + 1):
            if i not in labels:
                counts[cls[i]] += 1
        rgb = tuple(counts)
    keep = tuple(v for i, v in enumerate(g.nodes, 1) if i not in labels)
    return EmbeddedGraph(g.vertices, g.edges, keep, rgb)


# -- RGB splits and relabelling -------------------------------------------------------

def rgb_classes(split: tuple[int, int, int]) -> dict[int, int]:
    """Node label -> 0 (R), 1 (G) or 2 (B) for a contiguous split starting at node 1."""
    r, gg, b = split
    out = {}
    for i in range(1, r + gg + b + 1):
        out[i] = 0 if i <= r else (1 if i <= r + gg else 2)
    return out


def triangle_ok(split: tuple[int, int, int]) -> bool:
    r, g, b = split
    return min(split) >= 0 and (r + g + b) % 2 == 0 and r <= g + b and g <= r + b and b <= r + g


def rgb_pairing(split: tuple[int, int, int]) -> Pairing:
    """The planar pairing with no pair inside one RGB class."""
    if not triangle_ok(split):
        raise NoTripartitePairing(f"split {split} violates the triangle inequality")
    r, g, b = split
    m = r + g + b
    # pairs nest outward from each of the three class boundaries
    rg, gb, rb = (r + g - b) // 2, (g + b - r) // 2, (r + b - g) // 2
    pairs = [(r - k, r + 1 + k) for k in range(rg)]
    pairs += [(r + g - k, r + g + 1 + k) for k in range(gb)]
    pairs += [(m - k, 1 + k) for k in range(rb)]
    return make_pairing(pairs)


def relabel_consecutive(nodes: Iterable[int], pairing: Iterable[Iterable[int]]) -> tuple[Pairing, dict[int, int]]:
    """Map surviving labels order-preservingly onto 1..2m and push the pairing through."""
    nodes = sorted(nodes)
    m = {old: new for new, old in enumerate(nodes, 1)}
    pairs = []
    for a, b in pairing:
        if a not in m or b not in m:
            raise PairingError(f"pair ({a},{b}) uses a deleted node")
        pairs.append((m[a], m[b]))
    return make_pairing(pairs), m
