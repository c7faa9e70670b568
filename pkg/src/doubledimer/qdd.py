"""Crossing resolution, meander and B2 matrices, and the pairing-probability polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .linalg import matmul, solve
from .pairings import (NotBlackWhite, Pairing, all_pairings, check_coloring, components,
                       crossings, format_pairing, is_black_white, is_planar, make_pairing,
                       planar_pairings, sign_bw, sign_oe)

PairingCombo = dict[Pairing, int]


def first_crossing(p: Pairing) -> tuple[int, int, int, int] | None:
    """Lexicographically smallest (a, b, c, d) with pairs (a, c), (b, d) and a<b<c<d."""
    best = None
    for a, c in p:
        for b, d in p:
            if a < b < c < d and (best is None or (a, b, c, d) < best):
                best = (a, b, c, d)
    return best


def all_crossings(p: Pairing) -> list[tuple[int, int, int, int]]:
    return sorted((a, b, c, d) for a, c in p for b, d in p if a < b < c < d)


def _uncross(p: Pairing, cr: tuple[int, int, int, int]) -> tuple[Pairing, Pairing]:
    a, b, c, d = cr
    rest = [q for q in p if q not in ((a, c), (b, d))]
    return make_pairing(rest + [(a, b), (c, d)]), make_pairing(rest + [(a, d), (b, c)])


@lru_cache(maxsize=None)
def _resolve(p: Pairing) -> tuple[tuple[Pairing, int], ...]:
    cr = first_crossing(p)
    if cr is None:
        return ((p, 1),)
    out: dict[Pairing, int] = {}
    for q in _uncross(p, cr):
        for s, k in _resolve(q):
            out[s] = out.get(s, 0) - k
    return tuple(sorted((s, k) for s, k in out.items() if k))


def resolve_crossings(rho, choose: Callable | None = None) -> PairingCombo:
    """Rewrite ac|bd as -ab|cd - ad|bc until every term is planar.

    `choose` picks which crossing to resolve (default: lexicographically first);
    the result does not depend on it.
    """
    rho = make_pairing(rho)
    if choose is None:
        return dict(_resolve(rho))
    cr = all_crossings(rho)
    if not cr:
        return {rho: 1}
    out: PairingCombo = {}
    for q in _uncross(rho, choose(cr)):
        for s, k in resolve_crossings(q, choose).items():
            out[s] = out.get(s, 0) - k
    return {s: k for s, k in out.items() if k}


def q_coeffs(rho, c: str) -> PairingCombo:
    rho = make_pairing(rho)
    if not is_black_white(rho, c):
        raise NotBlackWhite(f"{format_pairing(rho)} under {c}")
    sb = sign_bw(rho, c)
    return {s: k * sign_oe(s) * sb for s, k in resolve_crossings(rho).items()}


def meander_matrix(n: int) -> list[list[int]]:
    pp = planar_pairings(n)
    return [[2 ** components(s, t) for t in pp] for s in pp]


def bw_pairings(c: str) -> list[Pairing]:
    c = check_coloring(c)
    return [p for p in all_pairings(range(1, len(c) + 1)) if is_black_white(p, c)]


def pair_sign(pi: Pairing, rho: Pairing, c: str) -> int:
    n = len(pi)
    return (-1) ** (n + components(pi, rho)) * sign_oe(pi) * sign_bw(rho, c)


def b2_matrix(c: str) -> list[list[int]]:
    c = check_coloring(c)
    n = len(c) // 2
    return [[pair_sign(p, r, c) * 2 ** components(p, r) for r in bw_pairings(c)]
            for p in planar_pairings(n)]


@dataclass
class QMatrix:
    rows: list[Pairing]      # planar pairings
    cols: list[Pairing]      # black-white pairings
    entries: list[list[int]]

    def row(self, sigma) -> dict[Pairing, int]:
        i = self.rows.index(make_pairing(sigma))
        return {r: q for r, q in zip(self.cols, self.entries[i]) if q}


def q_matrix(c: str, route: str = "A") -> QMatrix:
    c = check_coloring(c)
    n = len(c) // 2
    rows, cols = planar_pairings(n), bw_pairings(c)
    if route == "A":
        ent = [[0] * len(cols) for _ in rows]
        idx = {s: i for i, s in enumerate(rows)}
        for j, r in enumerate(cols):
            for s, k in q_coeffs(r, c).items():
                ent[idx[s]][j] = k
        return QMatrix(rows, cols, ent)
    if route == "B":
        x = solve(meander_matrix(n), b2_matrix(c))
        for row in x:
            for v in row:
                if v.denominator != 1:
                    raise ArithmeticError(f"non-integral entry {v}")
        return QMatrix(rows, cols, [[int(v) for v in row] for row in x])
    raise ValueError(f"unknown route {route!r}")


def check_q_consistency(c: str) -> bool:
    a, b = q_matrix(c, "A"), q_matrix(c, "B")
    n = len(c) // 2
    return a.entries == b.entries and matmul(meander_matrix(n), a.entries) == b2_matrix(c)


# -- polynomials ---------------------------------------------------------------------

Term = tuple[int, tuple[tuple[int, int], ...]]


def pr_polynomial(sigma, c: str) -> list[Term]:
    """Signed Y-monomials of the normalized probability of a planar pairing.

    Each term is (coefficient, ((b1, w1), ..., (bn, wn))) with black nodes ascending.
    """
    c = check_coloring(c)
    sigma = make_pairing(sigma)
    if not is_planar(sigma):
        raise ValueError("sigma must be planar")
    q = q_matrix(c)
    terms = []
    for rho, coef in sorted(q.row(sigma).items()):
        mono = tuple(sorted((a, b) if c[a - 1] == "B" else (b, a) for a, b in rho))
        terms.append((coef * (-1) ** crossings(rho), mono))
    return terms


def format_polynomial(terms: list[Term]) -> str:
    if not terms:
        return "0"
    out = []
    for coef, mono in terms:
        sgn = "-" if coef < 0 else "+"
        mag = "" if abs(coef) == 1 else str(abs(coef))
        out.append(sgn + mag + "".join(f"Y[{b},{w}]" for b, w in mono))
    return "".join(out)


def evaluate_polynomial(terms: list[Term], y: Callable[[int, int], Fraction]) -> Fraction:
    total = Fraction(0)
    for coef, mono in terms:
        t = Fraction(coef)
        for b, w in mono:
            t *= y(b, w)
        total += t
    return total
