"""Exact geodesic arrangements on the square torus.

A line here is a closed geodesic ``q*x - p*y = c (mod 1)`` on the torus
``R^2 / Z^2`` with a primitive direction ``(p, q)`` and a rational offset
``c``.  Two non-parallel lines with directions ``(p1, q1)`` and
``(p2, q2)`` meet in exactly ``|p1*q2 - q1*p2|`` points, which is the
minimal geometric intersection number, so diagrams built from these
arrangements are automatically in taut position.  All coordinates are
exact rationals.

Layers record the vertical stacking: at a crossing, the line with the
larger layer runs over.  Superposition places every line of the upper
diagram above every line of the lower one.

Arrangements must be generic: no coincident parallel lines, no triple
points, and no intersection point on the fundamental square's walls
``x = 0`` or ``y = 0`` (edge homology labels are read off as wall
crossings).  Superposition perturbs the upper offsets deterministically
until the combined arrangement is generic; offsets only move lines by an
isotopy, so nothing the state sums compute depends on the choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Dict, List, Optional, Tuple

from .errors import NonPrimitiveClass, UnsupportedSuperposition
from .surface import TORUS, SurfaceSpec, canonical_class

TORUS_SURFACE = SurfaceSpec(TORUS)


class _Degenerate(Exception):
    """Internal: the arrangement is not generic."""


@dataclass(frozen=True)
class GeoLine:
    p: int
    q: int
    offset: Fraction
    layer: int


@dataclass(frozen=True)
class TorusArrangement:
    """Geodesic position data attached to a torus diagram.

    ``unmarked_pairs`` lists (as sorted index pairs) the line pairs whose
    mutual crossings stay unmarked; ``trivial_loops`` counts carried
    null-homologous circles disjoint from all lines.
    """

    lines: Tuple[GeoLine, ...] = ()
    unmarked_pairs: frozenset = frozenset()
    trivial_loops: int = 0


def _mod1(x: Fraction) -> Fraction:
    return x - floor(x)


def _ext_bezout(p: int, q: int) -> Tuple[int, int]:
    """Integers (a, b) with a*p + b*q = 1 for a primitive pair."""
    g = gcd(p, q)
    if g != 1:
        raise NonPrimitiveClass(f"direction {(p, q)} is not primitive")
    # extended euclid
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    if old_r == -1:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def multicurve_arrangement(n: int, p: int, q: int, offsets=None) -> TorusArrangement:
    """``n`` parallel geodesics of direction ``(p, q)`` with distinct offsets."""
    if n == 0:
        return TorusArrangement()
    p, q = canonical_class(TORUS_SURFACE, (p, q))
    _ext_bezout(p, q)  # primitivity check
    if offsets is None:
        offs = [Fraction(2 * k + 1, 2 * n) for k in range(n)]
    else:
        offs = [_mod1(Fraction(c)) for c in offsets]
        if len(offs) != n or len(set(offs)) != n:
            raise UnsupportedSuperposition("need n distinct offsets modulo 1")
    lines = tuple(GeoLine(p, q, offs[k], k) for k in range(n))
    return TorusArrangement(lines)


def arrangement_of(d) -> TorusArrangement:
    """Geodesic data of a torus diagram, deriving it for crossingless ones."""
    if isinstance(d.geometry, TorusArrangement):
        return d.geometry
    if d.crossings or d.edges:
        raise UnsupportedSuperposition(
            "diagram with crossings carries no geodesic position data"
        )
    lines: List[GeoLine] = []
    trivial = 0
    essential = []
    for h in d.free_loops:
        if h == (0, 0):
            trivial += 1
        else:
            essential.append(h)
    m = len(essential)
    for k, (p, q) in enumerate(essential):
        if gcd(p, q) != 1:
            raise NonPrimitiveClass(f"loop class {(p, q)} is not primitive")
        lines.append(GeoLine(p, q, Fraction(2 * k + 1, 2 * m), k))
    return TorusArrangement(tuple(lines), frozenset(), trivial)


def _line_points(
    lines: Tuple[GeoLine, ...]
) -> Dict[Tuple[Fraction, Fraction], Tuple[int, int]]:
    """All pairwise intersection points, mapped to their line-index pair.

    Raises _Degenerate on coincident parallels, triple points, or points
    on the fundamental square's walls.
    """
    points: Dict[Tuple[Fraction, Fraction], Tuple[int, int]] = {}
    n = len(lines)
    for i in range(n):
        for j in range(i + 1, n):
            li, lj = lines[i], lines[j]
            det = li.p * lj.q - li.q * lj.p
            if det == 0:
                if _mod1(li.offset - lj.offset) == 0:
                    raise _Degenerate(f"parallel lines {i}, {j} coincide")
                continue
            ad = abs(det)
            seen = set()
            for m in range(ad):
                for nn in range(ad):
                    r1 = li.offset + m
                    r2 = lj.offset + nn
                    # solve q_i x - p_i y = r1, q_j x - p_j y = r2
                    x = _mod1(Fraction(-lj.p * r1 + li.p * r2, det))
                    y = _mod1(Fraction(-lj.q * r1 + li.q * r2, det))
                    seen.add((x, y))
            if len(seen) != ad:
                raise _Degenerate("intersection multiplicity mismatch")
            for pt in seen:
                if pt[0] == 0 or pt[1] == 0:
                    raise _Degenerate(f"intersection point {pt} on a wall")
                if pt in points:
                    raise _Degenerate(f"triple point at {pt}")
                points[pt] = (i, j)
    return points


def build_arrangement(arr: TorusArrangement):
    """Realize an arrangement as a marked diagram (raises through
    :func:`superpose_torus` if the arrangement is degenerate)."""
    from .diagram import build_diagram, make_edge

    points = _line_points(arr.lines)
    ordered = sorted(points)
    cid_of = {pt: k for k, pt in enumerate(ordered)}
    pair_of = {cid_of[pt]: points[pt] for pt in ordered}

    # group intersection points on each line, with exact curve parameters
    on_line: Dict[int, List[Tuple[Fraction, Tuple[Fraction, Fraction]]]] = {
        i: [] for i in range(len(arr.lines))
    }
    params: Dict[Tuple[int, Tuple[Fraction, Fraction]], Fraction] = {}
    bez = [_ext_bezout(l.p, l.q) for l in arr.lines]
    base = []
    for l in arr.lines:
        u, v = _ext_bezout(l.q, -l.p)  # u*q - v*p = 1
        base.append((u * l.offset, v * l.offset))
    for pt, (i, j) in points.items():
        for idx in (i, j):
            a, b = bez[idx]
            bx, by = base[idx]
            s = _mod1(a * (pt[0] - bx) + b * (pt[1] - by))
            on_line[idx].append((s, pt))
            params[(idx, pt)] = s

    ports: Dict[Tuple[int, Tuple[Fraction, Fraction]], Tuple[int, int]] = {}
    for pt, (i, j) in points.items():
        li, lj = arr.lines[i], arr.lines[j]
        if li.layer == lj.layer:
            raise _Degenerate(f"lines {i}, {j} cross at equal layer")
        over, under = (i, j) if li.layer > lj.layer else (j, i)
        lo, lu = arr.lines[over], arr.lines[under]
        cross = lo.p * lu.q - lo.q * lu.p
        # counterclockwise ports: 0 = over outgoing, 2 = over incoming
        if cross > 0:
            ports[(over, pt)] = (0, 2)  # (outgoing, incoming)
            ports[(under, pt)] = (1, 3)
        else:
            ports[(over, pt)] = (0, 2)
            ports[(under, pt)] = (3, 1)

    edges = []
    free_loops = [(0, 0)] * arr.trivial_loops
    eid = 0
    for idx, l in enumerate(arr.lines):
        pts = sorted(on_line[idx])
        if not pts:
            free_loops.append((l.p, l.q))
            continue
        a, b = bez[idx]
        bx, by = base[idx]

        def lift(s: Fraction) -> Tuple[int, int]:
            return (floor(bx + s * l.p), floor(by + s * l.q))

        r = len(pts)
        for k in range(r):
            s1, p1 = pts[k]
            s2, p2 = pts[(k + 1) % r]
            s2l = s2 if s2 > s1 else s2 + 1
            f1 = lift(s1)
            f2 = lift(s2l)
            label = (f2[0] - f1[0], f2[1] - f1[1])
            tail = ("c", cid_of[p1], ports[(idx, p1)][0])
            head = ("c", cid_of[p2], ports[(idx, p2)][1])
            edges.append(make_edge(eid, tail, head, label, TORUS_SURFACE))
            eid += 1

    marked = [
        cid
        for cid, pair in pair_of.items()
        if pair not in arr.unmarked_pairs
    ]
    return build_diagram(
        TORUS_SURFACE,
        range(len(ordered)),
        edges,
        free_loops,
        marked=marked,
        geometry=arr,
    )


def torus_rep(cls):
    """A fresh taut geodesic diagram representing a torus curve class."""
    from .diagram import empty_diagram, torus_multicurve

    if not cls.data:
        return empty_diagram(TORUS_SURFACE)
    a, b = cls.data
    g = gcd(a, b)
    return torus_multicurve(g, a // g, b // g)


def superpose_torus(d1, d2, mode: str):
    """Place every line of ``d1`` over every line of ``d2``."""
    low = arrangement_of(d2)
    up = arrangement_of(d1)
    shift = (max(l.layer for l in low.lines) + 1) if low.lines else 0
    nl = len(low.lines)
    pairs = set(low.unmarked_pairs)
    pairs |= {(i + nl, j + nl) for i, j in up.unmarked_pairs}
    if mode == "weak":
        pairs |= {(i, j + nl) for i in range(nl) for j in range(len(up.lines))}
    trivial = low.trivial_loops + up.trivial_loops
    for attempt in range(64):
        delta = Fraction(0) if attempt == 0 else Fraction(1, 9973 + 2 * attempt)
        up_lines = tuple(
            GeoLine(l.p, l.q, _mod1(l.offset + (k + 1) * delta), l.layer + shift)
            for k, l in enumerate(up.lines)
        )
        arr = TorusArrangement(low.lines + up_lines, frozenset(pairs), trivial)
        try:
            return build_arrangement(arr)
        except _Degenerate:
            continue
    raise UnsupportedSuperposition("no generic offset perturbation found")
