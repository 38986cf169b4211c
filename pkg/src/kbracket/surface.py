"""Surfaces, curve-system basis elements, and skein vectors.

Three surfaces are supported: the disk with ``m`` marked boundary points
(``m`` even; arcs pair the points), the annulus, and the torus.  A curve
class is a basis element of the corresponding skein module:

* disk: a non-crossing perfect matching of the boundary points,
  numbered 1..m clockwise from a fixed base point;
* annulus: ``n >= 0`` parallel copies of the core circle;
* torus: the empty system, or a nonzero integer homology pair in
  canonical form (first entry positive, or zero with second positive).

Homology classes of individual components are plain data: ``None`` on the
disk (every closed component is trivial there), an integer winding number
on the annulus, and an ``(a, b)`` pair on the torus.  Signs are meaningful
only up to a global flip since components are unoriented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import MalformedDiagram, NonParallelComponents

DISK = "disk"
ANNULUS = "annulus"
TORUS = "torus"


@dataclass(frozen=True)
class SurfaceSpec:
    kind: str
    boundary_points: int = 0  # disk only

    def __post_init__(self):
        if self.kind not in (DISK, ANNULUS, TORUS):
            raise MalformedDiagram(f"unknown surface kind {self.kind!r}")
        if self.kind == DISK:
            if self.boundary_points < 0 or self.boundary_points % 2:
                raise MalformedDiagram("disk boundary point count must be even and >= 0")
        elif self.boundary_points:
            raise MalformedDiagram("boundary points only make sense on the disk")

    def __str__(self):
        if self.kind == DISK:
            return f"disk({self.boundary_points})"
        return self.kind


def disk_surface(m: int) -> SurfaceSpec:
    return SurfaceSpec(DISK, m)


ANNULUS_SURFACE = SurfaceSpec(ANNULUS)
TORUS_SURFACE = SurfaceSpec(TORUS)


def zero_class(surface: SurfaceSpec):
    """The trivial homology class on the given surface."""
    if surface.kind == DISK:
        return None
    if surface.kind == ANNULUS:
        return 0
    return (0, 0)


def class_is_trivial(surface: SurfaceSpec, h) -> bool:
    return h == zero_class(surface)


def canonical_class(surface: SurfaceSpec, h):
    """Canonical sign representative of an unoriented component's class."""
    if surface.kind == DISK:
        return None
    if surface.kind == ANNULUS:
        return abs(int(h))
    a, b = h
    if a < 0 or (a == 0 and b < 0):
        return (-a, -b)
    return (a, b)


@dataclass(frozen=True, order=True)
class CurveClass:
    """A curve-system basis element of the skein module.

    ``data`` is surface-specific: a sorted tuple of matched boundary-point
    pairs on the disk, ``(n,)`` on the annulus, and ``()`` (empty system)
    or a canonical ``(a, b)`` pair on the torus.
    """

    kind: str
    data: Tuple

    def is_empty(self) -> bool:
        if self.kind == ANNULUS:
            return self.data == (0,)
        return not self.data

    def render(self) -> str:
        if self.kind == ANNULUS:
            n = self.data[0]
            return "∅" if n == 0 else f"core^{n}"
        if not self.data:
            return "∅"
        if self.kind == TORUS:
            a, b = self.data
            return f"({a},{b})"
        pairs = ",".join(f"({i},{j})" for i, j in self.data)
        return f"match[{pairs}]"

    def __str__(self):
        return self.render()


def empty_class(surface: SurfaceSpec) -> CurveClass:
    if surface.kind == ANNULUS:
        return CurveClass(ANNULUS, (0,))
    return CurveClass(surface.kind, ())


def annulus_class(n: int) -> CurveClass:
    if n < 0:
        raise ValueError("core multiplicity must be >= 0")
    return CurveClass(ANNULUS, (n,))


def normalize_torus_class(a: int, b: int) -> CurveClass:
    """Canonicalize an integer pair: (0,0) is the empty system, otherwise
    flip the global sign so that a > 0, or a = 0 and b > 0."""
    if a == 0 and b == 0:
        return CurveClass(TORUS, ())
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return CurveClass(TORUS, (a, b))


def disk_matching(pairs: Iterable[Tuple[int, int]], m: int) -> CurveClass:
    """Build (and check) a non-crossing perfect matching of points 1..m."""
    norm = tuple(sorted((min(i, j), max(i, j)) for i, j in pairs))
    seen = [p for ij in norm for p in ij]
    if sorted(seen) != list(range(1, m + 1)):
        raise MalformedDiagram(f"not a perfect matching of 1..{m}: {norm}")
    for i, j in norm:
        for k, l in norm:
            if i < k < j < l:
                raise MalformedDiagram(f"crossing chords ({i},{j}) and ({k},{l})")
    return CurveClass(DISK, norm)


def enumerate_disk_matchings(m: int) -> List[CurveClass]:
    """All non-crossing perfect matchings of 1..m (the Catalan family)."""
    if m % 2:
        raise ValueError("m must be even")

    def rec(points: Tuple[int, ...]) -> List[Tuple[Tuple[int, int], ...]]:
        if not points:
            return [()]
        first = points[0]
        out = []
        for idx in range(1, len(points), 2):
            partner = points[idx]
            inside = points[1:idx]
            outside = points[idx + 1 :]
            for mi in rec(inside):
                for mo in rec(outside):
                    out.append(((first, partner),) + mi + mo)
        return out

    return [CurveClass(DISK, tuple(sorted(p))) for p in rec(tuple(range(1, m + 1)))]


def classify_components(surface: SurfaceSpec, classes: Iterable) -> Tuple[int, CurveClass]:
    """Split the closed components of a resolved diagram into trivial and
    essential parts.

    Returns ``(mu, essential)`` where ``mu`` counts the null-homologous
    components and ``essential`` is the combined curve class of the rest.
    Raises :class:`NonParallelComponents` if the nonzero classes cannot be
    realized by disjoint embedded circles (on the annulus each must have
    winding +-1; on the torus all must be equal up to sign to a common
    primitive class).
    """
    mu = 0
    essential = []
    for h in classes:
        if class_is_trivial(surface, h):
            mu += 1
        else:
            essential.append(canonical_class(surface, h))
    if surface.kind == DISK:
        if essential:
            raise NonParallelComponents("disk closed components must be trivial")
        return mu, empty_class(surface)
    if surface.kind == ANNULUS:
        for w in essential:
            if w != 1:
                raise NonParallelComponents(
                    f"annulus component with |winding| = {w} cannot be embedded"
                )
        return mu, annulus_class(len(essential))
    if not essential:
        return mu, empty_class(surface)
    p, q = essential[0]
    if gcd(p, q) != 1:
        raise NonParallelComponents(f"component class {(p, q)} is not primitive")
    for c in essential[1:]:
        if c != (p, q):
            raise NonParallelComponents(f"components {(p, q)} and {c} are not parallel")
    n = len(essential)
    return mu, normalize_torus_class(n * p, n * q)


class SkeinVector:
    """A finite linear combination of curve classes.

    Coefficients may be rationals, Laurent polynomials, or truncated
    series; zero coefficients are never stored.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Optional[Dict[CurveClass, object]] = None):
        t: Dict[CurveClass, object] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    t[k] = v
        self._t = t

    @classmethod
    def zero(cls) -> "SkeinVector":
        return cls()

    @classmethod
    def basis(cls, c: CurveClass, coef=1) -> "SkeinVector":
        if isinstance(coef, int):
            coef = Fraction(coef)
        return cls({c: coef})

    def items(self):
        return self._t.items()

    def classes(self):
        return self._t.keys()

    def get(self, c: CurveClass, default=0):
        return self._t.get(c, default)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, SkeinVector):
            return self._t == other._t
        return NotImplemented

    def __add__(self, other: "SkeinVector") -> "SkeinVector":
        out = dict(self._t)
        for k, v in other._t.items():
            if k in out:
                s = out[k] + v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        r = SkeinVector.__new__(SkeinVector)
        r._t = out
        return r

    def __neg__(self) -> "SkeinVector":
        r = SkeinVector.__new__(SkeinVector)
        r._t = {k: -v for k, v in self._t.items()}
        return r

    def __sub__(self, other: "SkeinVector") -> "SkeinVector":
        return self + (-other)

    def scale(self, c) -> "SkeinVector":
        if isinstance(c, int):
            c = Fraction(c)
        out = {}
        for k, v in self._t.items():
            s = v * c
            if s:
                out[k] = s
        r = SkeinVector.__new__(SkeinVector)
        r._t = out
        return r

    def __rmul__(self, c):
        return self.scale(c)

    def map_coefficients(self, f) -> "SkeinVector":
        out = {}
        for k, v in self._t.items():
            s = f(v)
            if s:
                out[k] = s
        r = SkeinVector.__new__(SkeinVector)
        r._t = out
        return r

    def map_classes(self, f) -> "SkeinVector":
        out: Dict[CurveClass, object] = {}
        for k, v in self._t.items():
            k2 = f(k)
            if k2 in out:
                s = out[k2] + v
                if s:
                    out[k2] = s
                else:
                    del out[k2]
            else:
                out[k2] = v
        r = SkeinVector.__new__(SkeinVector)
        r._t = out
        return r

    def render(self, coef_str=str) -> str:
        if not self._t:
            return "0"
        lines = []
        for c in sorted(self._t):
            lines.append(f"({coef_str(self._t[c])}) * {c.render()}")
        return "  +  ".join(lines)

    def __str__(self):
        return self.render()

    __repr__ = __str__
