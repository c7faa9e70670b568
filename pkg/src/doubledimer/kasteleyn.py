"""Kasteleyn sign weightings and exact dimer partition functions via determinants."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .graph_core import EmbeddedGraph, GraphError, delete_nodes
from .linalg import det
from .pairings import UnbalancedSet

Signs = dict[frozenset, int]


class OddVertexCount(GraphError):
    pass


def face_edges(walk: list[tuple[int, int]]) -> list[frozenset]:
    return [frozenset(d) for d in walk]


def face_is_flat(walk: list[tuple[int, int]], signs: Signs) -> bool:
    prod = 1
    for e in face_edges(walk):
        prod *= signs[e]
    want = -1 if (len(walk) // 2) % 2 == 0 else 1
    return len(walk) % 2 == 0 and prod == want


def build_weighting(g: EmbeddedGraph) -> Signs:
    """±1 per edge making every bounded face flat; spanning tree edges get +1."""
    if len(g.vertices) % 2:
        raise OddVertexCount(f"graph has {len(g.vertices)} vertices")
    signs: Signs = {}
    order = {frozenset((e.u, e.v)): k for k, e in enumerate(g.edges)}
    for comp in g.components:
        root = min(comp.vertices)
        seen = {root}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(g.adj[x], key=lambda y: order[frozenset((x, y))]):
                if y not in seen:
                    seen.add(y)
                    signs[frozenset((x, y))] = 1
                    queue.append(y)
        faces = comp.bounded
        fedges = [face_edges(w) for w in faces]
        where: dict[frozenset, list[int]] = {}
        for k, es in enumerate(fedges):
            for e in set(es):
                if e not in signs:
                    where.setdefault(e, []).append(k)
        open_count = [len({e for e in es if e not in signs}) for es in fedges]
        ready = deque(sorted(k for k, c in enumerate(open_count) if c == 1))
        while ready:
            k = ready.popleft()
            if open_count[k] != 1:
                continue
            e = next(e for e in fedges[k] if e not in signs)
            prod = 1
            for f in fedges[k]:
                if f != e:
                    prod *= signs[f]
            want = -1 if (len(faces[k]) // 2) % 2 == 0 else 1
            signs[e] = want * prod
            for j in where[e]:
                open_count[j] -= 1
                if open_count[j] == 1:
                    ready.append(j)
        missing = [e for es in fedges for e in es if e not in signs]
        assert not missing, missing
    return signs


def is_kasteleyn(g: EmbeddedGraph, signs: Signs) -> bool:
    return all(face_is_flat(w, signs) for c in g.components for w in c.bounded)


def kasteleyn_matrix(g: EmbeddedGraph, signs: Signs | None = None) -> tuple[list[int], list[int], list[list[Fraction]]]:
    """Rows are black vertex ids ascending, columns white vertex ids ascending."""
    if signs is None:
        signs = build_weighting(g)
    rows, cols = g.black, g.white
    ci = {w: j for j, w in enumerate(cols)}
    m = [[Fraction(0)] * len(cols) for _ in rows]
    for i, b in enumerate(rows):
        for w in g.adj[b]:
            key = frozenset((b, w))
            m[i][ci[w]] = signs[key] * g.weight[key]
    return rows, cols, m


def minor_without(rows, cols, m, drop: Iterable[int]) -> list[list[Fraction]]:
    drop = set(drop)
    ri = [i for i, r in enumerate(rows) if r not in drop]
    cj = [j for j, c in enumerate(cols) if c not in drop]
    return [[m[i][j] for j in cj] for i in ri]


def zd_det(g: EmbeddedGraph) -> Fraction:
    """Weighted perfect-matching sum as |det K|; 1 for the empty graph."""
    # the value does not depend on which vertices are nodes
    return _zd_cached(EmbeddedGraph(g.vertices, g.edges, ()))


@lru_cache(maxsize=8192)
def _zd_cached(g: EmbeddedGraph) -> Fraction:
    if len(g.black) != len(g.white):
        return Fraction(0)
    if not g.vertices:
        return Fraction(1)
    _, _, m = kasteleyn_matrix(g)
    return abs(det(m))


@dataclass(frozen=True)
class SubmatrixReport:
    removed: tuple[int, ...]
    det_value: Fraction
    enum_value: Fraction
    flat: bool

    @property
    def ok(self) -> bool:
        return self.det_value == self.enum_value and self.flat


def submatrix_check(g: EmbeddedGraph, s: Iterable[int]) -> SubmatrixReport:
    """Delete node rows/columns of G's Kasteleyn matrix and compare against enumeration of G minus S."""
    from .enum_oracle import zd_enumerate
    s = tuple(sorted(set(s)))
    ids = [g.node(i) for i in s]
    if sum(g.vmap[v].color == "B" for v in ids) * 2 != len(ids):
        raise UnbalancedSet(list(s))
    signs = build_weighting(g)
    rows, cols, m = kasteleyn_matrix(g, signs)
    sub = minor_without(rows, cols, m, ids)
    h = delete_nodes(g, s)
    return SubmatrixReport(s, abs(det(sub)), zd_enumerate(h), is_kasteleyn(h, signs))
