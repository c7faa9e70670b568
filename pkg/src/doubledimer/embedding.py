"""Straight-line planar embeddings: rotation systems, face walks, point location."""
from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping

Point = tuple[Fraction, Fraction]


def _half(dx, dy) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _angle_cmp(a: Point, b: Point) -> int:
    ha, hb = _half(*a), _half(*b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def rotation_system(pos: Mapping[int, Point], adj: Mapping[int, Iterable[int]]) -> dict[int, list[int]]:
    """Neighbors of every vertex sorted counterclockwise by exact angle."""
    rot = {}
    for v, nbrs in adj.items():
        px, py = pos[v]
        key = cmp_to_key(lambda a, b: _angle_cmp((pos[a][0] - px, pos[a][1] - py),
                                                 (pos[b][0] - px, pos[b][1] - py)))
        rot[v] = sorted(nbrs, key=key)
    return rot


def face_walks(rot: Mapping[int, list[int]]) -> list[list[tuple[int, int]]]:
    """Trace all faces as closed dart sequences, each face kept on the left."""
    index = {v: {u: k for k, u in enumerate(nb)} for v, nb in rot.items()}
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in sorted(rot):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            walk = []
            d = (u, v)
            while d not in seen:
                seen.add(d)
                walk.append(d)
                a, b = d
                nb = rot[b]
                d = (b, nb[(index[b][a] - 1) % len(nb)])
            faces.append(walk)
    return faces


def signed_area2(walk: list[tuple[int, int]], pos: Mapping[int, Point]) -> Fraction:
    return sum((pos[a][0] * pos[b][1] - pos[b][0] * pos[a][1] for a, b in walk), Fraction(0))


def winding_number(p: Point, walk: list[tuple[int, int]], pos: Mapping[int, Point]) -> int:
    """Winding number of a closed polyline around a point not on it."""
    wn = 0
    x, y = p
    for a, b in walk:
        (x1, y1), (x2, y2) = pos[a], pos[b]
        side = (x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)
        if y1 <= y < y2 and side > 0:
            wn += 1
        elif y2 <= y < y1 and side < 0:
            wn -= 1
    return wn


def segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """True when two closed segments meet anywhere other than a shared endpoint."""
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    shared = {p1, p2} & {q1, q2}
    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if shared:
        if len(shared) == 2:
            return True
        # collinear overlap beyond the shared point
        if o1 == 0 and o2 == 0:
            s = shared.pop()
            op = p2 if p1 == s else p1
            oq = q2 if q1 == s else q1
            return ((op[0] - s[0]) * (oq[0] - s[0]) + (op[1] - s[1]) * (oq[1] - s[1])) > 0
        return False
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    if o1 == 0 and on_seg(p1, p2, q1):
        return True
    if o2 == 0 and on_seg(p1, p2, q2):
        return True
    if o3 == 0 and on_seg(q1, q2, p1):
        return True
    if o4 == 0 and on_seg(q1, q2, p2):
        return True
    return False


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    if p in (a, b):
        return False
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    return cross == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
