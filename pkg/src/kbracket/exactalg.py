"""Exact coefficient arithmetic.

Everything here is computed over arbitrary-precision rationals
(``fractions.Fraction``); there is no floating point anywhere in the
package, since every identity we test holds with zero tolerance.

The three coefficient rings in play:

* Laurent polynomials in ``t`` (:class:`LaurentPoly`),
* truncated power series in ``h`` (:class:`TruncSeries`), obtained from
  Laurent polynomials by the substitution ``t = e^h``,
* bivariate polynomials in ``z, w`` over the rationals (:class:`PolyZW`),
  the domain of the diagram-resolution operators.

The loop-weight coefficients ``phi_coeff(j, i)`` (order-2j coefficient of
the i-th power of the unknot value ``-t^2 - t^-2`` under ``t = e^h``) live
here too, with an independent series-expansion oracle.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Dict, Iterable, Mapping, Tuple

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def frac_str(q: Fraction) -> str:
    """Render a rational as ``num/den`` in lowest terms (``num`` if integral)."""
    q = _as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class LaurentPoly:
    """A Laurent polynomial in ``t`` with rational coefficients.

    Stored as a map from integer exponent to nonzero coefficient.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c: Dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _as_fraction(v)
                if v:
                    c[int(e)] = v
        self._c = c

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def const(cls, v) -> "LaurentPoly":
        return cls({0: v})

    @classmethod
    def t_power(cls, n: int, coef=1) -> "LaurentPoly":
        return cls({n: coef})

    def items(self):
        return self._c.items()

    def coefficient(self, n: int) -> Fraction:
        return self._c.get(n, _ZERO)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == LaurentPoly.const(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        out = dict(self._c)
        for e, v in other._c.items():
            s = out.get(e, _ZERO) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = out
        return r

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = {e: -v for e, v in self._c.items()}
        return r

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            r = LaurentPoly.__new__(LaurentPoly)
            r._c = {e: v * other for e, v in self._c.items()} if other else {}
            return r
        out: Dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = out.get(e, _ZERO) + v1 * v2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial are not defined")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mirror(self) -> "LaurentPoly":
        """The involution ``t -> t^-1``."""
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = {-e: v for e, v in self._c.items()}
        return r

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            if e == 0:
                mono = frac_str(abs(v))
            else:
                te = "t" if e == 1 else f"t^{e}"
                mono = te if abs(v) == 1 else f"{frac_str(abs(v))}*{te}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    __repr__ = __str__


#: The bracket value of a trivial circle, -t^2 - t^-2.
def loop_value() -> LaurentPoly:
    return LaurentPoly({2: -1, -2: -1})


class TruncSeries:
    """A power series in ``h`` truncated (inclusively) at a fixed order.

    Binary operations on series of different orders truncate to the
    minimum of the two orders.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = [_as_fraction(c) for c in coeffs]
        if len(cs) != order + 1:
            raise ValueError("coefficient list length must be order + 1")
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, v, order: int) -> "TruncSeries":
        return cls([v] + [0] * order, order)

    def coefficient(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"order-{k} coefficient beyond truncation order {self.order}")
        return self.coeffs[k]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == TruncSeries.const(other, self.order)
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.const(other, self.order)
        k = min(self.order, other.order)
        return TruncSeries([self.coeffs[i] + other.coeffs[i] for i in range(k + 1)], k)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.const(other, self.order)
        return self + (-other)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            return TruncSeries([c * other for c in self.coeffs], self.order)
        k = min(self.order, other.order)
        out = [_ZERO] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if not a:
                continue
            for j in range(k + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncSeries(out, k)

    __rmul__ = __mul__

    def alternate(self) -> "TruncSeries":
        """The involution ``h -> -h``."""
        return TruncSeries(
            [c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.order
        )

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(frac_str(c))
            elif i == 1:
                parts.append(f"{frac_str(c)}*h")
            else:
                parts.append(f"{frac_str(c)}*h^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(h^{self.order + 1})"

    __repr__ = __str__


def laurent_to_series(poly: LaurentPoly, order: int) -> TruncSeries:
    """Expand a Laurent polynomial under ``t = e^h``, truncated at ``h^order``.

    The coefficient of ``h^j`` is the exact rational sum of ``c_n * n^j / j!``
    over the support of the polynomial.
    """
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    out = [_ZERO] * (order + 1)
    for n, c in poly.items():
        p = 1  # n^j
        for j in range(order + 1):
            out[j] += c * Fraction(p, factorial(j))
            p *= n
    return TruncSeries(out, order)


class PolyZW:
    """A polynomial over the rationals in two variables ``z`` and ``w``.

    Stored as a map from ``(z-degree, w-degree)`` to nonzero coefficient.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Tuple[int, int], object] | None = None):
        c: Dict[Tuple[int, int], Fraction] = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                v = _as_fraction(v)
                if v:
                    if i < 0 or j < 0:
                        raise ValueError("polynomial exponents must be >= 0")
                    c[(int(i), int(j))] = v
        self._c = c

    @classmethod
    def zero(cls) -> "PolyZW":
        return cls()

    @classmethod
    def const(cls, v) -> "PolyZW":
        return cls({(0, 0): v})

    @classmethod
    def z(cls) -> "PolyZW":
        return cls({(1, 0): 1})

    @classmethod
    def w(cls) -> "PolyZW":
        return cls({(0, 1): 1})

    def items(self):
        return self._c.items()

    def coefficient(self, zdeg: int, wdeg: int) -> Fraction:
        return self._c.get((zdeg, wdeg), _ZERO)

    def constant_term(self) -> Fraction:
        return self.coefficient(0, 0)

    def total_degree(self) -> int:
        """Maximum of i + j over the support; -1 for the zero polynomial."""
        if not self._c:
            return -1
        return max(i + j for i, j in self._c)

    def homogeneous_part(self, d: int) -> "PolyZW":
        return PolyZW({k: v for k, v in self._c.items() if k[0] + k[1] == d})

    def is_homogeneous(self) -> bool:
        degs = {i + j for i, j in self._c}
        return len(degs) <= 1

    def swap_zw(self) -> "PolyZW":
        return PolyZW({(j, i): v for (i, j), v in self._c.items()})

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyZW):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == PolyZW.const(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other) -> "PolyZW":
        if isinstance(other, (int, Fraction)):
            other = PolyZW.const(other)
        out = dict(self._c)
        for k, v in other._c.items():
            s = out.get(k, _ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        r = PolyZW.__new__(PolyZW)
        r._c = out
        return r

    __radd__ = __add__

    def __neg__(self) -> "PolyZW":
        r = PolyZW.__new__(PolyZW)
        r._c = {k: -v for k, v in self._c.items()}
        return r

    def __sub__(self, other) -> "PolyZW":
        if isinstance(other, (int, Fraction)):
            other = PolyZW.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "PolyZW":
        return (-self) + other

    def __mul__(self, other) -> "PolyZW":
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            r = PolyZW.__new__(PolyZW)
            r._c = {k: v * other for k, v in self._c.items()} if other else {}
            return r
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), v1 in self._c.items():
            for (i2, j2), v2 in other._c.items():
                k = (i1 + i2, j1 + j2)
                s = out.get(k, _ZERO) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        r = PolyZW.__new__(PolyZW)
        r._c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyZW":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = PolyZW.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def div_z(self) -> "PolyZW":
        """Exact division by z; raises if some monomial has no z factor."""
        if any(i == 0 for i, _ in self._c):
            raise ValueError("polynomial is not divisible by z")
        return PolyZW({(i - 1, j): v for (i, j), v in self._c.items()})

    def div_w(self) -> "PolyZW":
        """Exact division by w; raises if some monomial has no w factor."""
        if any(j == 0 for _, j in self._c):
            raise ValueError("polynomial is not divisible by w")
        return PolyZW({(i, j - 1): v for (i, j), v in self._c.items()})

    def __str__(self) -> str:
        if not self._c:
            return "0"
        keys = sorted(self._c, key=lambda k: (-(k[0] + k[1]), k[0]))
        parts = []
        for i, j in keys:
            v = self._c[(i, j)]
            factors = []
            if i:
                factors.append("z" if i == 1 else f"z^{i}")
            if j:
                factors.append("w" if j == 1 else f"w^{j}")
            mono = "*".join(factors)
            if not mono:
                body = frac_str(abs(v))
            elif abs(v) == 1:
                body = mono
            else:
                body = f"{frac_str(abs(v))}*{mono}"
            parts.append(("-" if v < 0 else "+", body))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


def c_map(poly: PolyZW) -> PolyZW:
    """The algebra homomorphism sending ``z`` to ``z*w`` and fixing ``w``."""
    out: Dict[Tuple[int, int], Fraction] = {}
    for (i, j), v in poly.items():
        k = (i, i + j)
        s = out.get(k, _ZERO) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return PolyZW(out)


def pi_k(poly: PolyZW, k: int) -> Tuple[Fraction, ...]:
    """The coefficient of ``w^k``, as a weight table indexed by z-degree.

    The table domain is padded with zeros to ``{0, ..., k}``; a z-degree
    above ``k`` in the ``w^k`` part cannot be tabulated and raises.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    table = [_ZERO] * (k + 1)
    for (i, j), v in poly.items():
        if j == k:
            if i > k:
                raise ValueError(f"z-degree {i} exceeds table domain 0..{k}")
            table[i] = v
    return tuple(table)


@lru_cache(maxsize=None)
def phi_coeff(j: int, i: int) -> Fraction:
    """Closed form for the loop weight: the coefficient of ``h^{2j}`` in
    the expansion of ``(-t^2 - t^-2)^i`` with ``t = e^h``.
    """
    if j < 0 or i < 0:
        raise ValueError("indices must be >= 0")
    s = sum(comb(i, k) * (2 * k - i) ** (2 * j) for k in range(i + 1))
    return Fraction((-1) ** i * 2 ** (2 * j) * s, factorial(2 * j))


@lru_cache(maxsize=None)
def _loop_power_series(i: int, order: int) -> TruncSeries:
    return laurent_to_series(loop_value() ** i, order)


def phi_series_oracle(j: int, i: int) -> Fraction:
    """Series-expansion oracle for :func:`phi_coeff`.

    Expands ``(-t^2 - t^-2)^i`` directly under ``t = e^h`` and reads off
    the coefficient of ``h^{2j}``.
    """
    if j < 0 or i < 0:
        raise ValueError("indices must be >= 0")
    return _loop_power_series(i, 2 * j).coefficient(2 * j)


def loop_power_h_coeff(i: int, m: int) -> Fraction:
    """Coefficient of ``h^m`` in ``(-t^2 - t^-2)^i`` under ``t = e^h``.

    Odd m always gives zero (the series is even in h).
    """
    return _loop_power_series(i, m).coefficient(m)


def primitive_of(a: int, b: int) -> Tuple[int, int, int]:
    """Split an integer pair into ``(n, p, q)`` with ``(a, b) = n*(p, q)``,
    ``n = gcd >= 0`` and ``(p, q)`` primitive. ``(0, 0)`` gives ``(0, 0, 0)``.
    """
    g = gcd(a, b)
    if g == 0:
        return 0, 0, 0
    return g, a // g, b // g
