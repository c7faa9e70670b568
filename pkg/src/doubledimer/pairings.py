"""Pairings of boundary nodes and the sign calculus built on them.

Nodes are labelled 1..2n counterclockwise. A pairing is stored canonically as a
tuple of (low, high) tuples sorted by their low endpoint. A node coloring is a
string over {"B", "W"}; position i-1 holds the color of node i.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

Pair = tuple[int, int]
Pairing = tuple[Pair, ...]


class PairingError(ValueError):
    pass


class NotOddEven(PairingError):
    pass


class NotBlackWhite(PairingError):
    pass


class UnbalancedSet(PairingError):
    pass


# -- construction and formatting ------------------------------------------------

def make_pairing(pairs: Iterable[Iterable[int]], labels: Iterable[int] | None = None) -> Pairing:
    """Canonicalize `pairs`; checks they cover `labels` (default 1..2n) exactly once."""
    out = []
    seen: set[int] = set()
    for pr in pairs:
        a, b = pr
        if a == b:
            raise PairingError(f"node {a} paired with itself")
        for x in (a, b):
            if x in seen:
                raise PairingError(f"node {x} appears twice")
            seen.add(x)
        out.append((min(a, b), max(a, b)))
    want = set(labels) if labels is not None else set(range(1, 2 * len(out) + 1))
    if seen != want:
        raise PairingError(f"pairing covers {sorted(seen)}, expected {sorted(want)}")
    return tuple(sorted(out))


def parse_pairing(text: str) -> Pairing:
    """Parse `(a b)(c d)...`; commas inside or between groups are tolerated."""
    body = text.strip()
    if body.startswith("((") and body.endswith("))"):
        body = body[1:-1]
    if not re.fullmatch(r"(\s*\(\s*\d+\s*[,\s]\s*\d+\s*\)\s*,?)+", body):
        raise PairingError(f"cannot parse pairing {text!r}")
    groups = re.findall(r"\(\s*(\d+)\s*[,\s]\s*(\d+)\s*\)", body)
    return make_pairing((int(a), int(b)) for a, b in groups)


def format_pairing(p: Pairing) -> str:
    return "".join(f"({a} {b})" for a, b in p)


def partner(p: Pairing) -> dict[int, int]:
    m = {}
    for a, b in p:
        m[a] = b
        m[b] = a
    return m


def all_pairings(labels: Iterable[int]) -> Iterator[Pairing]:
    """Every perfect pairing of `labels`, in lexicographic canonical order."""
    labels = sorted(labels)

    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for k in range(1, len(rest)):
            for tail in rec(rest[1:k] + rest[k + 1:]):
                yield ((a, rest[k]),) + tail

    for p in rec(labels):
        yield tuple(sorted(p))


def planar_pairings(n: int) -> list[Pairing]:
    """Noncrossing pairings of 1..2n, lexicographically sorted."""
    def rec(lo, hi):
        if lo > hi:
            yield ()
            return
        for k in range(lo + 1, hi + 1, 2):
            for inner in rec(lo + 1, k - 1):
                for outer in rec(k + 1, hi):
                    yield ((lo, k),) + inner + outer

    return sorted(tuple(sorted(p)) for p in rec(1, 2 * n))


# -- colorings --------------------------------------------------------------------

def check_coloring(c: str) -> str:
    c = c.strip().upper()
    if not c or set(c) - {"B", "W"}:
        raise PairingError(f"coloring must be a nonempty B/W string, got {c!r}")
    if c.count("B") != c.count("W"):
        raise PairingError(f"coloring {c} is not balanced")
    return c


def color(c: str, i: int) -> str:
    return c[i - 1]


def balanced_colorings(n: int) -> Iterator[str]:
    for bits in product("BW", repeat=2 * n):
        if bits.count("B") == n:
            yield "".join(bits)


def is_balanced(s: Iterable[int], c: str) -> bool:
    s = list(s)
    return sum(c[i - 1] == "B" for i in s) * 2 == len(s)


# -- predicates and counts ----------------------------------------------------------

def crossings(p: Pairing) -> int:
    return sum(1 for (a, c) in p for (b, d) in p if a < b < c < d)


def nestings(p: Pairing) -> int:
    return sum(1 for (a, b) in p for (c, d) in p if a < c < d < b)


def is_planar(p: Pairing) -> bool:
    return crossings(p) == 0


def is_odd_even(p: Pairing) -> bool:
    return all((a + b) % 2 == 1 for a, b in p)


def is_black_white(p: Pairing, c: str) -> bool:
    return all(c[a - 1] != c[b - 1] for a, b in p)


def components(p: Pairing, q: Pairing) -> int:
    """Number of cycles in the union of two pairings on the same labels."""
    pp, qp = partner(p), partner(q)
    seen: set[int] = set()
    count = 0
    for start in pp:
        if start in seen:
            continue
        count += 1
        x = start
        while x not in seen:
            seen.add(x)
            y = pp[x]
            seen.add(y)
            x = qp[y]
    return count


def connects(p: Pairing, s: Iterable[int]) -> bool:
    """True when some pair of `p` has exactly one endpoint in `s`."""
    s = set(s)
    return any((a in s) != (b in s) for a, b in p)


def perm_sign(seq: list[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


# -- sign functions ---------------------------------------------------------------

def sign_oe(p: Pairing) -> int:
    """Parity of i -> (partner of 2i-1)/2 for an odd-even pairing."""
    if not is_odd_even(p):
        raise NotOddEven(format_pairing(p))
    m = partner(p)
    return perm_sign([m[2 * i - 1] // 2 for i in range(1, len(p) + 1)])


def sign_bw(p: Pairing, c: str) -> int:
    if not is_black_white(p, c):
        raise NotBlackWhite(f"{format_pairing(p)} under {c}")
    m = partner(p)
    blacks = sorted(x for x in m if c[x - 1] == "B")
    whites = sorted(x for x in m if c[x - 1] == "W")
    rank = {w: r for r, w in enumerate(whites, 1)}
    return perm_sign([rank[m[b]] for b in blacks])


@dataclass(frozen=True)
class Couples:
    """First nodes of circularly adjacent same-color couples, ascending.

    The wrap couple (2n, 1) is recorded as 2n.
    """
    firsts: tuple[int, ...]
    black: tuple[int, ...]
    white: tuple[int, ...]


def couples(c: str) -> Couples:
    m = len(c)
    firsts = tuple(i for i in range(1, m + 1) if c[i - 1] == c[i % m])
    return Couples(firsts,
                   tuple(i for i in firsts if c[i - 1] == "B"),
                   tuple(i for i in firsts if c[i - 1] == "W"))


def a_between(c: str, b: int, w: int) -> int:
    """Couples (i, i+1) lying inside the linear interval between b and w."""
    if c[b - 1] == c[w - 1]:
        raise PairingError(f"nodes {b} and {w} have the same color")
    lo, hi = min(b, w), max(b, w)
    return sum(1 for i in range(lo, hi) if c[i - 1] == c[i])


def sign_pair(c: str, b: int, w: int) -> int:
    e = abs(b - w) + a_between(c, b, w) - 1
    assert e % 2 == 0, (c, b, w)
    return -1 if (e // 2) % 2 else 1


def sign_cons(c: str) -> int:
    cp = couples(c)
    if not cp.firsts:
        return 1
    phi = {}
    black_first = c[0] == "B"
    for i, u in enumerate(cp.white, 1):
        phi[u] = 2 * i - 1 if black_first else 2 * i
    for i, s in enumerate(cp.black, 1):
        phi[s] = 2 * i if black_first else 2 * i - 1
    return perm_sign([phi[x] for x in cp.firsts])


def t_set(c: str) -> frozenset[int]:
    return frozenset(i for i in range(1, len(c) + 1)
                     if (i % 2 == 1 and c[i - 1] == "W") or (i % 2 == 0 and c[i - 1] == "B"))


# -- planar black-white pairings ---------------------------------------------------

def planar_bw_pairing(c: str) -> Pairing:
    """A planar black-white pairing satisfying the master sign identity with no crossings.

    Peels off the first run of alternating nodes that sits between couples of
    different colors, then recurses on the relabelled remainder.
    """
    c = check_coloring(c)
    m = len(c)
    firsts = couples(c).firsts
    if len(firsts) <= 2:
        if not firsts or firsts[0] % 2 == 0:
            return tuple((i, i + 1) for i in range(1, m, 2))
        return make_pairing([(m, 1)] + [(i, i + 1) for i in range(2, m - 1, 2)])
    h = next(h for h in range(1, len(firsts)) if c[firsts[h - 1] - 1] != c[firsts[h] - 1])
    lo, hi = firsts[h - 1], firsts[h]
    inner = [(i, i + 1) for i in range(lo + 1, hi, 2)]
    keep = [i for i in range(1, m + 1) if not lo < i <= hi]
    rest = planar_bw_pairing("".join(c[i - 1] for i in keep))
    back = [(keep[a - 1], keep[b - 1]) for a, b in rest]
    return make_pairing(inner + back)


def restrict_coloring(c: str, s: Iterable[int]) -> tuple[str, list[int]]:
    labels = sorted(s)
    return "".join(c[i - 1] for i in labels), labels


def _planar_within(c: str, s: Iterable[int], parity: bool = False) -> list[Pair]:
    sub, labels = restrict_coloring(c, s)
    if parity:
        sub = "".join("B" if x % 2 else "W" for x in labels)
    if not labels:
        return []
    return [(labels[a - 1], labels[b - 1]) for a, b in planar_bw_pairing(sub)]


# -- balanced sets ------------------------------------------------------------------

def admissible_splits(pi: Pairing, rho: Pairing, c: str) -> list[frozenset[int]]:
    """All S with rho not crossing S/S^c and pi not crossing (S△T)/(S△T)^c."""
    if not is_odd_even(pi):
        raise NotOddEven(format_pairing(pi))
    if not is_black_white(rho, c):
        raise NotBlackWhite(format_pairing(rho))
    t = t_set(c)
    pp, rp = partner(pi), partner(rho)
    comps: list[list[tuple[int, bool]]] = []
    seen: set[int] = set()
    for seed in sorted(pp):
        if seed in seen:
            continue
        # placement relative to the seed: (node, same side as seed?)
        rel = [(seed, True)]
        seen.add(seed)
        x, side = seed, True
        while True:
            y = pp[x]
            yside = side ^ (x in t) ^ (y in t)
            if y in seen:
                break
            seen.add(y)
            rel.append((y, yside))
            z = rp[y]
            if z in seen:
                break
            seen.add(z)
            rel.append((z, yside))
            x, side = z, yside
        comps.append(rel)
    out = []
    for choice in product((True, False), repeat=len(comps)):
        s = frozenset(node for comp, ch in zip(comps, choice)
                      for node, same in comp if same == ch)
        assert not connects(rho, s) and not connects(pi, s ^ t), (pi, rho, s)
        assert is_balanced(s, c)
        out.append(s)
    return out


def split_planar_pairing(s: Iterable[int], c: str) -> Pairing:
    """Black-white pairing, planar on S and on S^c separately, with no S-S^c pair."""
    s = set(s)
    if not is_balanced(s, c):
        raise UnbalancedSet(sorted(s))
    comp = set(range(1, len(c) + 1)) - s
    return make_pairing(_planar_within(c, s) + _planar_within(c, comp))


def sign_set(s: Iterable[int], c: str) -> int:
    """(−1)^crossings of a black-white pairing planar inside S and inside S^c."""
    return -1 if crossings(split_planar_pairing(s, c)) % 2 else 1


def sign_set_formula(s: Iterable[int], c: str, pi: Pairing | None = None,
                     rho: Pairing | None = None) -> int:
    """Closed form (−1)^n (−1)^comp sign_oe(pi) sign_bw(rho) for an admissible (pi, rho)."""
    s = set(s)
    if not is_balanced(s, c):
        raise UnbalancedSet(sorted(s))
    n = len(c) // 2
    if rho is None:
        rho = split_planar_pairing(s, c)
    if pi is None:
        st = s ^ t_set(c)
        rest = set(range(1, 2 * n + 1)) - st
        pi = make_pairing(_planar_within(c, st, parity=True) + _planar_within(c, rest, parity=True))
    if connects(rho, s) or connects(pi, s ^ t_set(c)):
        raise PairingError("(pi, rho) is not admissible for S")
    e = n + components(pi, rho)
    return (-1) ** e * sign_oe(pi) * sign_bw(rho, c)
