"""Grid graphs, the 8x8 running example, and seeded random instances."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph_core import EmbeddedGraph, Vertex, Edge, make_graph


def grid_id(x: int, y: int, width: int) -> int:
    return y * width + x + 1


def grid_graph(width: int, height: int, cells: Iterable[tuple[int, int]] | None = None,
               weights: dict | None = None, nodes_xy: list[tuple[int, int]] = (),
               rgb=None, check: bool = True) -> EmbeddedGraph:
    """Induced subgraph of the width x height grid; (x+y) even is black."""
    cells = set(cells) if cells is not None else {(x, y) for x in range(width) for y in range(height)}
    verts = [Vertex(grid_id(x, y, width), "B" if (x + y) % 2 == 0 else "W", Fraction(x), Fraction(y))
             for y in range(height) for x in range(width) if (x, y) in cells]
    edges = []
    for y in range(height):
        for x in range(width):
            if (x, y) not in cells:
                continue
            for nx, ny in ((x + 1, y), (x, y + 1)):
                if (nx, ny) in cells:
                    key = ((x, y), (nx, ny))
                    w = weights.get(key, Fraction(1)) if weights else Fraction(1)
                    edges.append(Edge(grid_id(x, y, width), grid_id(nx, ny, width), Fraction(w)))
    nodes = [grid_id(x, y, width) for x, y in nodes_xy]
    return make_graph(verts, edges, nodes, rgb, check=check)


# node positions of the 8-node example on the full 8x8 grid, counterclockwise
EXAMPLE_NODES = [(0, 0), (3, 0), (6, 0), (7, 2), (7, 7), (4, 7), (1, 7), (0, 5)]


def example_grid_graph() -> EmbeddedGraph:
    return grid_graph(8, 8, nodes_xy=EXAMPLE_NODES, rgb=(3, 3, 2))


@dataclass(frozen=True)
class InstanceSpec:
    width: int = 4
    height: int = 4
    delete_prob: float = 0.2
    max_num: int = 5
    max_den: int = 3
    num_nodes: int = 4
    seed: int = 0


def _components(cells: set) -> list[set]:
    out, seen = [], set()
    for c in sorted(cells):
        if c in seen:
            continue
        comp, stack = set(), [c]
        seen.add(c)
        while stack:
            x, y = stack.pop()
            comp.add((x, y))
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb in cells and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        out.append(comp)
    return out


def random_instance(spec: InstanceSpec, rng: random.Random | None = None,
                    max_tries: int = 1000) -> EmbeddedGraph:
    """A connected induced grid subgraph with balanced boundary nodes and a perfect matching."""
    from .kasteleyn import zd_det
    rng = rng or random.Random(spec.seed)
    for _ in range(max_tries):
        cells = {(x, y) for x in range(spec.width) for y in range(spec.height)
                 if rng.random() >= spec.delete_prob}
        if not cells:
            continue
        comp = max(_components(cells), key=lambda c: (len(c), sorted(c)))
        blacks = sum((x + y) % 2 == 0 for x, y in comp)
        if 2 * blacks != len(comp) or len(comp) < spec.num_nodes:
            continue
        weights = {}
        for x, y in sorted(comp):
            for nb in ((x + 1, y), (x, y + 1)):
                if nb in comp:
                    weights[((x, y), nb)] = Fraction(rng.randint(1, spec.max_num),
                                                     rng.randint(1, spec.max_den))
        g = grid_graph(spec.width, spec.height, comp, weights, check=False)
        if zd_det(g) == 0:
            continue
        nodes = _pick_nodes(g, spec.num_nodes, rng)
        if nodes is None:
            continue
        return make_graph(g.vertices, g.edges, nodes)
    raise RuntimeError(f"no valid instance found for {spec}")


def _pick_nodes(g: EmbeddedGraph, k: int, rng: random.Random) -> list[int] | None:
    seq = g.ccw_outer_sequence(g.components[0])
    once = [v for v in dict.fromkeys(seq) if seq.count(v) == 1]
    blacks = [v for v in once if g.vmap[v].color == "B"]
    whites = [v for v in once if g.vmap[v].color == "W"]
    if len(blacks) < k // 2 or len(whites) < k // 2:
        return None
    chosen = set(rng.sample(blacks, k // 2)) | set(rng.sample(whites, k // 2))
    ordered = [v for v in seq if v in chosen]
    start = rng.randrange(len(ordered))
    return ordered[start:] + ordered[:start]
