"""Command-line front end: exact computations on graph files and seeded verification campaigns."""
from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import combinations
from typing import Callable

from .enum_oracle import DEFAULT_CAP, CapExceeded, ZeroDimerPartition, all_pairing_sums, zd_enumerate
from .graph_core import GraphError, fmt_rational, parse_graph, rgb_pairing, triangle_ok
from .instances import InstanceSpec, example_grid_graph, random_instance
from .kasteleyn import build_weighting, is_kasteleyn, submatrix_check, zd_det
from .pairings import (PairingError, admissible_splits, all_pairings, balanced_colorings,
                       check_coloring, components, crossings, format_pairing, is_balanced,
                       is_black_white, is_odd_even, parse_pairing, sign_bw, sign_cons,
                       sign_oe, sign_pair, sign_set, sign_set_formula)
from .qdd import check_q_consistency, evaluate_polynomial, format_polynomial, pr_polynomial, q_matrix
from .tripartite import (checkerboard_t, dd_condensation_check, kuo_check, kuo_quadruples,
                         pr_from_pfaffian, tripartite_pr, y_value)

ENUM_LIMIT = 20  # vertices; larger graphs skip the enumeration route


class InputError(Exception):
    pass


def _read_graph(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from None


def _parse_split(text: str | None):
    if text is None:
        return None
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad split {text!r}") from None
    if len(parts) != 3:
        raise InputError("split must be r,g,b")
    return parts


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else text)


# -- subcommands ---------------------------------------------------------------------

def cmd_zd(args) -> int:
    g = _read_graph(args.file)
    d = zd_det(g)
    payload = {"det": fmt_rational(d), "vertices": len(g.vertices)}
    ok = True
    if len(g.vertices) <= ENUM_LIMIT:
        e = zd_enumerate(g, args.cap)
        payload["enumeration"] = fmt_rational(e)
        ok = d == e
    payload["agree"] = ok
    _emit(args, payload, fmt_rational(d) if ok else
          f"MISMATCH det={fmt_rational(d)} enumeration={payload['enumeration']}")
    return 0 if ok else 1


def cmd_pr(args) -> int:
    g = _read_graph(args.file)
    if args.pairing:
        sigma = parse_pairing(args.pairing)
        poly = pr_polynomial(sigma, g.node_coloring)
        val = evaluate_polynomial(poly, lambda b, w: y_value(g, b, w))
        payload = {"pairing": format_pairing(sigma), "pr": fmt_rational(val),
                   "polynomial": format_polynomial(poly)}
        _emit(args, payload, f"{fmt_rational(val)}\npairing {format_pairing(sigma)}")
        return 0
    split = _parse_split(args.split) or g.rgb
    if split is None:
        raise InputError("no split given (--split r,g,b) and none in the file")
    sigma = rgb_pairing(split)
    pr = tripartite_pr(g, split)
    payload = {"pairing": format_pairing(sigma), "sign_oe": sign_oe(sigma), "pr": fmt_rational(pr),
               "split": list(split)}
    _emit(args, payload, f"{fmt_rational(pr)}\npairing {format_pairing(sigma)}\nsign_oe {sign_oe(sigma)}")
    return 0


def cmd_qmatrix(args) -> int:
    c = check_coloring(args.coloring)
    q = q_matrix(c)
    agree = check_q_consistency(c)
    if args.pairing:
        sigma = parse_pairing(args.pairing)
        poly = format_polynomial(pr_polynomial(sigma, c))
        _emit(args, {"pairing": format_pairing(sigma), "polynomial": poly, "routes_agree": agree}, poly)
        return 0 if agree else 1
    payload = {"coloring": c, "rows": [format_pairing(r) for r in q.rows],
               "cols": [format_pairing(r) for r in q.cols], "entries": q.entries,
               "routes_agree": agree}
    if args.json:
        _emit(args, payload, "")
    else:
        width = max(len(format_pairing(r)) for r in q.rows)
        print(" " * width + " | " + "  ".join(format_pairing(r) for r in q.cols))
        for r, row in zip(q.rows, q.entries):
            print(format_pairing(r).ljust(width) + " | " + str(row))
        print(f"routes agree: {'yes' if agree else 'NO'}")
    return 0 if agree else 1


# -- verification suites ------------------------------------------------------------------

def _instance(seed: int, i: int, sizes=(4, 6, 8)):
    rng = random.Random(f"{seed}:{i}")
    spec = InstanceSpec(num_nodes=rng.choice(sizes), seed=seed)
    return random_instance(spec, rng), rng


def _splits(n: int):
    return [(r, g, n - r - g) for r in range(n + 1) for g in range(n + 1 - r) if triangle_ok((r, g, n - r - g))]


def suite_kuo(seed, count, cap):
    for i in range(count):
        g, rng = _instance(seed, i)
        q = rng.choice(kuo_quadruples(g))
        rep = kuo_check(g, *q)
        ok = rep.ok
        rec = {"instance": i, "quad": list(q), "lhs": fmt_rational(rep.lhs), "rhs": fmt_rational(rep.rhs)}
        if len(g.vertices) <= 14:
            ok &= kuo_check(g, *q, zd=lambda h: zd_enumerate(h, cap)).ok
            rec["enumerated"] = True
        rec["ok"] = ok
        yield rec


def suite_condense(seed, count, cap):
    rep = dd_condensation_check(example_grid_graph(), (3, 3, 2), 8, 1, 2, 5)
    yield {"instance": "example-8x8", **json.loads(rep.to_json())}
    for i in range(count):
        g, rng = _instance(seed, i, sizes=(4, 6))
        c = g.node_coloring
        split = rng.choice(_splits(g.num_nodes))
        blacks = [k for k in range(1, len(c) + 1) if c[k - 1] == "B"]
        whites = [k for k in range(1, len(c) + 1) if c[k - 1] == "W"]
        x, w = rng.sample(blacks, 2)
        y, v = rng.sample(whites, 2)
        rep = dd_condensation_check(g, split, x, y, w, v, oracle=True)
        yield {"instance": i, **json.loads(rep.to_json())}


def suite_tripartite(seed, count, cap):
    for i in range(count):
        g, _ = _instance(seed, i)
        sums = all_pairing_sums(g, cap)
        z = zd_enumerate(g, cap)
        for split in _splits(g.num_nodes):
            sigma = rgb_pairing(split)
            pr = tripartite_pr(g, split)
            oracle = sums.get(sigma, 0) / z ** 2
            pf = pr_from_pfaffian(g, split)
            yield {"instance": i, "split": list(split), "pairing": format_pairing(sigma),
                   "det": fmt_rational(pr), "oracle": fmt_rational(oracle), "pfaffian": fmt_rational(pf),
                   "ok": pr == oracle == pf}


def suite_kasteleyn(seed, count, cap):
    for i in range(count):
        g, _ = _instance(seed, i)
        d, e = zd_det(g), zd_enumerate(g, cap)
        ok = d == e and is_kasteleyn(g, build_weighting(g))
        c = g.node_coloring
        checked = 0
        for k in range(0, len(c) + 1, 2):
            for s in combinations(range(1, len(c) + 1), k):
                if is_balanced(s, c):
                    ok &= submatrix_check(g, s).ok
                    checked += 1
        yield {"instance": i, "det": fmt_rational(d), "enumeration": fmt_rational(e),
               "balanced_sets": checked, "ok": ok}


def suite_signs(seed, count, cap):
    for n in range(1, 5):
        stats = {"colorings": 0, "pairings": 0, "sets": 0, "splits": 0}
        ok = True
        for c in balanced_colorings(n):
            stats["colorings"] += 1
            sc = sign_cons(c)
            ok &= checkerboard_t(c).ok
            for rho in all_pairings(range(1, 2 * n + 1)):
                if not is_black_white(rho, c):
                    continue
                stats["pairings"] += 1
                prod = 1
                for a, b in rho:
                    prod *= sign_pair(c, a, b)
                ok &= sc * sign_bw(rho, c) * prod == (-1) ** crossings(rho)
                for pi in all_pairings(range(1, 2 * n + 1)):
                    if not is_odd_even(pi):
                        continue
                    splits = admissible_splits(pi, rho, c)
                    stats["splits"] += 1
                    ok &= len(set(splits)) == 2 ** components(pi, rho)
                    for s in splits:
                        ok &= sign_set(s, c) == sign_set_formula(s, c, pi, rho)
            for k in range(2 * n + 1):
                for s in combinations(range(1, 2 * n + 1), k):
                    if is_balanced(s, c):
                        stats["sets"] += 1
                        ok &= sign_set(s, c) == sign_set_formula(s, c)
        yield {"nodes": 2 * n, **stats, "ok": ok}


SUITES: dict[str, Callable] = {"kuo": suite_kuo, "condense": suite_condense, "tripartite": suite_tripartite,
                               "kasteleyn": suite_kasteleyn, "signs": suite_signs}


def cmd_verify(args) -> int:
    failures = 0
    total = 0
    for rec in SUITES[args.suite](args.seed, args.count, args.cap):
        total += 1
        if not rec["ok"]:
            failures += 1
        if args.json:
            print(json.dumps(rec, sort_keys=True))
        else:
            tag = "PASS" if rec["ok"] else "FAIL"
            label = rec.get("instance", rec.get("nodes"))
            print(f"{tag} {args.suite} {label}")
            if not rec["ok"]:
                print(json.dumps(rec, indent=2, sort_keys=True))
    summary = {"suite": args.suite, "seed": args.seed, "checks": total, "failures": failures}
    print(json.dumps(summary, sort_keys=True) if args.json else
          f"{args.suite}: {total - failures}/{total} passed (seed {args.seed})")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="doubledimer", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration state cap")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("zd", parents=[common], help="dimer partition function of a graph file")
    s.add_argument("file")
    s.set_defaults(func=cmd_zd)

    s = sub.add_parser("pr", parents=[common], help="normalized pairing probability")
    s.add_argument("file")
    s.add_argument("--split", help="RGB split r,g,b (defaults to the file's rgb line)")
    s.add_argument("--pairing", help='any planar pairing "(a b)(c d)..." (uses the Q polynomial)')
    s.set_defaults(func=cmd_pr)

    s = sub.add_parser("qmatrix", parents=[common], help="integer coefficient matrix for a node coloring")
    s.add_argument("--coloring", required=True)
    s.add_argument("--pairing", help="print only this row as a Y polynomial")
    s.set_defaults(func=cmd_qmatrix)

    s = sub.add_parser("verify", parents=[common], help="seeded verification campaign")
    s.add_argument("--suite", choices=sorted(SUITES), required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=20)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) < 0 or getattr(args, "seed", 0) >= 2 ** 64:
        print("error: seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (InputError, GraphError, PairingError, CapExceeded, ZeroDimerPartition, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
