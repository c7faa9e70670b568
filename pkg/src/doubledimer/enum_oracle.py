"""Brute-force dimer and double-dimer sums, used as ground truth."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph_core import EmbeddedGraph, GraphError
from .pairings import Pairing, make_pairing

DEFAULT_CAP = 10 ** 7


class CapExceeded(RuntimeError):
    pass


class ZeroDimerPartition(ZeroDivisionError):
    pass


def zd_enumerate(g: EmbeddedGraph, cap: int = DEFAULT_CAP) -> Fraction:
    """Sum over perfect matchings of the product of edge weights."""
    if len(g.black) != len(g.white):
        return Fraction(0)
    adj = {v: sorted(nb) for v, nb in g.adj.items()}
    wt = g.weight
    states = 0

    def rec(free: frozenset) -> Fraction:
        nonlocal states
        states += 1
        if states > cap:
            raise CapExceeded(f"more than {cap} partial states")
        if not free:
            return Fraction(1)
        v = min(free)
        total = Fraction(0)
        for u in adj[v]:
            if u in free:
                total += wt[frozenset((u, v))] * rec(free - {u, v})
        return total

    return rec(frozenset(g.vmap))


@dataclass(frozen=True)
class DoubleDimerConfig:
    multiplicity: tuple[tuple[int, int, int], ...]  # (u, v, m) for m in {1, 2}
    paths: tuple[tuple[int, ...], ...]                # vertex sequences between nodes
    loops: int
    doubled: int
    pairing: Pairing


def decompose(g: EmbeddedGraph, mult: dict[int, int]) -> DoubleDimerConfig:
    """Split a multiplicity map (edge index -> 0/1/2) into node paths, loops and doubled edges."""
    single: dict[int, list[int]] = {}
    used = []
    doubled = 0
    for k, m in mult.items():
        if not m:
            continue
        e = g.edges[k]
        used.append((e.u, e.v, m))
        if m == 2:
            doubled += 1
        else:
            single.setdefault(e.u, []).append(e.v)
            single.setdefault(e.v, []).append(e.u)
    visited: set[frozenset] = set()
    paths, pairs = [], []
    label = g.node_label
    for nid in g.nodes:
        if any(frozenset((nid, x)) in visited for x in single.get(nid, [])):
            continue
        path = [nid]
        cur = nid
        while True:
            nxt = [x for x in single.get(cur, []) if frozenset((cur, x)) not in visited]
            if not nxt:
                break
            visited.add(frozenset((cur, nxt[0])))
            cur = nxt[0]
            path.append(cur)
            if cur in label:
                break
        paths.append(tuple(path))
        pairs.append((label[path[0]], label[path[-1]]))
    rest = sum(1 for u, nb in single.items() for x in nb if frozenset((u, x)) not in visited) // 2
    # leftover single edges form disjoint cycles; count them
    loops = 0
    if rest:
        seen_v: set[int] = set()
        for u in single:
            if u in seen_v or all(frozenset((u, x)) in visited for x in single[u]):
                continue
            loops += 1
            stack = [u]
            while stack:
                a = stack.pop()
                if a in seen_v:
                    continue
                seen_v.add(a)
                stack.extend(x for x in single[a] if frozenset((a, x)) not in visited)
    return DoubleDimerConfig(tuple(used), tuple(paths), loops, doubled, make_pairing(pairs))


def _configs(g: EmbeddedGraph, cap: int):
    """Yield (multiplicity map, weight) for every double-dimer configuration."""
    nodes = set(g.nodes)
    need = {v.id: (1 if v.id in nodes else 2) for v in g.vertices}
    edges = g.edges
    last = {}
    for k, e in enumerate(edges):
        last[e.u] = k
        last[e.v] = k
    isolated = [v for v in need if v not in last]
    if any(need[v] for v in isolated):
        return
    closes: list[list[int]] = [[] for _ in edges]
    for v, k in last.items():
        closes[k].append(v)
    mult = [0] * len(edges)
    states = 0

    def rec(k: int):
        nonlocal states
        states += 1
        if states > cap:
            raise CapExceeded(f"more than {cap} partial states")
        if k == len(edges):
            yield dict(enumerate(mult))
            return
        e = edges[k]
        top = min(need[e.u], need[e.v])
        for m in range(top + 1):
            need[e.u] -= m
            need[e.v] -= m
            if all(need[v] == 0 for v in closes[k]):
                mult[k] = m
                yield from rec(k + 1)
            need[e.u] += m
            need[e.v] += m
        mult[k] = 0

    yield from rec(0)


def config_weight(g: EmbeddedGraph, cfg: DoubleDimerConfig) -> Fraction:
    w = Fraction(2) ** cfg.loops
    for u, v, m in cfg.multiplicity:
        w *= g.weight[frozenset((u, v))] ** m
    return w


def all_pairing_sums(g: EmbeddedGraph, cap: int = DEFAULT_CAP) -> dict[Pairing, Fraction]:
    """One enumeration pass, classifying every configuration by its node pairing."""
    out: dict[Pairing, Fraction] = {}
    for mult in _configs(g, cap):
        cfg = decompose(g, mult)
        out[cfg.pairing] = out.get(cfg.pairing, Fraction(0)) + config_weight(g, cfg)
    return out


def zdd_enumerate(g: EmbeddedGraph, sigma, cap: int = DEFAULT_CAP) -> Fraction:
    sigma = make_pairing(sigma, range(1, g.num_nodes + 1))
    return all_pairing_sums(g, cap).get(sigma, Fraction(0))


def pr_tilde_oracle(g: EmbeddedGraph, sigma, cap: int = DEFAULT_CAP) -> Fraction:
    z = zd_enumerate(g, cap)
    if z == 0:
        raise ZeroDimerPartition("graph has no perfect matching")
    return zdd_enumerate(g, sigma, cap) / z ** 2
