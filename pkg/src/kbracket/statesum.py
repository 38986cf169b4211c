"""State sums, resolution operators, and the deformation expansion.

For a real diagram ``D`` with ``c`` crossings the bracket is the sum over
all ``2^c`` full states ``s`` of

    (-t)^(zeta(s) - iota(s)) * (-t^2 - t^-2)^mu(s) * [essential class],

where ``zeta`` and ``iota`` count 0- and infinity-markers, ``mu`` counts
the trivial circles of the resolution, and the essential components give a
curve-system basis element of the surface's skein module.

Substituting ``t = e^h`` expands the bracket as a series in ``h``.  The
central identity computed here: the order-``k`` coefficient of that series
equals the operator sum over ``j <= k/2`` of ``(phi_j)_* chi(P_{k-2j})``,
where ``chi`` is the resolution operator of a polynomial in ``z, w``
(``z`` tracking infinity-markers, ``w`` 0-markers), ``phi_j`` the loop
projection of order ``2j``, and ``P_m`` the deformation polynomials
derived exactly in :func:`derive_P`.

Two independent routes evaluate the operator side: a literal composition
(:func:`expansion_literal`) and a collapsed per-state form
(:func:`expansion`) that visits each full state once with binomial
weights, which makes corpus-wide verification affordable.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Dict, List, Optional, Tuple

from .diagram import SM0, SMINF, MarkedDiagram, resolve, smooth, tau
from .errors import NotRealDiagram, SingularSystem, TheoremViolation
from .exactalg import (
    LaurentPoly,
    PolyZW,
    c_map,
    laurent_to_series,
    loop_power_h_coeff,
    loop_value,
    phi_coeff,
    pi_k,
)
from .surface import CurveClass, SkeinVector

_ZERO = Fraction(0)


@lru_cache(maxsize=8192)
def full_state_data(d: MarkedDiagram) -> Tuple[Tuple[int, int, int, CurveClass], ...]:
    """Resolution data ``(zeta, iota, mu, essential)`` for every full state
    of a real diagram, in a fixed bitmask order."""
    if not d.is_real():
        raise NotRealDiagram("state sums need every crossing marked")
    cids = sorted(d.crossings)
    n = len(cids)
    out = []
    for bits in range(1 << n):
        state = {cid: (bits >> k) & 1 for k, cid in enumerate(cids)}
        out.append(resolve(d, state))
    return tuple(out)


@lru_cache(maxsize=None)
def _neg_t_power(n: int) -> LaurentPoly:
    return LaurentPoly({n: 1 if n % 2 == 0 else -1})


@lru_cache(maxsize=None)
def _loop_power(mu: int) -> LaurentPoly:
    return loop_value() ** mu


def bracket(d: MarkedDiagram) -> SkeinVector:
    """The full state-sum bracket, with Laurent-polynomial coefficients."""
    acc: Dict[CurveClass, LaurentPoly] = {}
    for zeta, iota, mu, ess in full_state_data(d):
        term = _neg_t_power(zeta - iota) * _loop_power(mu)
        if ess in acc:
            acc[ess] = acc[ess] + term
        else:
            acc[ess] = term
    return SkeinVector(acc)


def bracket_series(d: MarkedDiagram, order: int) -> List[SkeinVector]:
    """Coefficients of ``h^0 .. h^order`` of the bracket under ``t = e^h``,
    as skein vectors with rational coefficients."""
    series = {cls: laurent_to_series(p, order) for cls, p in bracket(d).items()}
    return [
        SkeinVector({cls: s.coefficient(k) for cls, s in series.items()})
        for k in range(order + 1)
    ]


def bracket_order(d: MarkedDiagram, k: int) -> SkeinVector:
    """The order-``k`` deformation coefficient of the bracket — the oracle
    side of the expansion identity."""
    return bracket_series(d, k)[k]


def t0_bracket(d: MarkedDiagram) -> SkeinVector:
    """The ``t = 1`` evaluation by the recursive relations ``D = -D_0 -
    D_inf`` at a crossing and ``-2`` per trivial circle; an oracle for
    ``bracket_order(d, 0)`` computed without the state sum."""
    if not d.is_real():
        raise NotRealDiagram("the t=1 recursion needs a real diagram")
    if d.crossings:
        cid = min(d.crossings)
        out = -t0_bracket(smooth(d, {cid: SM0}))
        return out - t0_bracket(smooth(d, {cid: SMINF}))
    _, _, mu, ess = resolve(d, {})
    return SkeinVector.basis(ess, Fraction((-2) ** mu))


def bfk_first_order(d: MarkedDiagram) -> SkeinVector:
    """First-order coefficient by the crossing-sum formula: the sum over
    crossings of the ``t = 1`` values of the infinity-smoothing minus the
    0-smoothing; an oracle for ``bracket_order(d, 1)``."""
    if not d.is_real():
        raise NotRealDiagram("the crossing-sum formula needs a real diagram")
    acc = SkeinVector.zero()
    for cid in sorted(d.crossings):
        acc = acc + t0_bracket(smooth(d, {cid: SMINF}))
        acc = acc - t0_bracket(smooth(d, {cid: SM0}))
    return acc


class FormalDiagramSum:
    """A finite rational linear combination of marked diagrams.

    Diagrams are compared structurally, which is exactly right for sums of
    partial smoothings of a common parent diagram (smoothing is
    deterministic and compositional), and deliberately blind to isotopy;
    cross-parent comparisons must go through a bracket or loop projection.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Optional[Dict[MarkedDiagram, Fraction]] = None):
        t: Dict[MarkedDiagram, Fraction] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    t[k] = Fraction(v)
        self._t = t

    @classmethod
    def single(cls, d: MarkedDiagram, coef=1) -> "FormalDiagramSum":
        return cls({d: Fraction(coef)})

    def items(self):
        return self._t.items()

    def diagrams(self):
        return self._t.keys()

    def get(self, d: MarkedDiagram) -> Fraction:
        return self._t.get(d, _ZERO)

    def add_term(self, d: MarkedDiagram, coef) -> None:
        s = self._t.get(d, _ZERO) + coef
        if s:
            self._t[d] = s
        else:
            self._t.pop(d, None)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, FormalDiagramSum):
            return self._t == other._t
        return NotImplemented

    def __add__(self, other: "FormalDiagramSum") -> "FormalDiagramSum":
        out = FormalDiagramSum(dict(self._t))
        for d, v in other._t.items():
            out.add_term(d, v)
        return out

    def __neg__(self) -> "FormalDiagramSum":
        return FormalDiagramSum({d: -v for d, v in self._t.items()})

    def __sub__(self, other: "FormalDiagramSum") -> "FormalDiagramSum":
        return self + (-other)

    def scale(self, c) -> "FormalDiagramSum":
        c = Fraction(c)
        return FormalDiagramSum({d: v * c for d, v in self._t.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __len__(self):
        return len(self._t)


def _as_sum(x) -> FormalDiagramSum:
    if isinstance(x, FormalDiagramSum):
        return x
    return FormalDiagramSum.single(x)


def chi_apply(p: PolyZW, x) -> FormalDiagramSum:
    """The resolution operator of a polynomial in ``z`` and ``w``.

    After the substitution ``z -> z*w``, the ``w^k`` coefficient is a
    weight table read against the infinity-marker count: each partial
    state on a ``k``-element subset of the marked crossings contributes
    ``(-1)^k`` times the table value at its infinity count, times the
    smoothed diagram.  Extends linearly over formal sums; vanishes
    gracefully when the degree exceeds the marked-set size.
    """
    cp = c_map(p)
    kmax = cp.total_degree()
    out = FormalDiagramSum()
    for d, coef in _as_sum(x).items():
        cids = sorted(d.marked)
        for k in range(min(kmax, len(cids)) + 1):
            table = pi_k(cp, k)
            if not any(table):
                continue
            sgn = -1 if k % 2 else 1
            for subset in combinations(cids, k):
                for markers in product((SM0, SMINF), repeat=k):
                    a = table[sum(markers)]
                    if a:
                        out.add_term(
                            smooth(d, dict(zip(subset, markers))), coef * sgn * a
                        )
    return out


def chi_product(p: PolyZW, q: PolyZW) -> PolyZW:
    """The polynomial whose resolution operator is the composite of two.

    Composing the operators of ``p`` and ``q`` counts ordered ways of
    splitting a crossing subset, so monomials multiply with binomial
    weights in each variable:

        z^a w^b . z^c w^d  ->  C(a+c, a) C(b+d, b) z^(a+c) w^(b+d),

    the product transported from the divided-power basis z^a/a! w^b/b!.
    The plain polynomial product would undercount the splittings: already
    the square of the degree-one operator of ``z`` doubles the operator of
    ``z^2`` (the two infinity markers arrive in either order).
    """
    out: Dict[Tuple[int, int], Fraction] = {}
    for (a, b), u in p.items():
        for (c, dd), v in q.items():
            key = (a + c, b + dd)
            w = u * v * comb(a + c, a) * comb(b + dd, b)
            out[key] = out.get(key, 0) + w
    return PolyZW({k: v for k, v in out.items() if v})


def phi_fn(j: int):
    """The loop-weight table of order ``2j`` as a callable on circle counts."""
    return lambda mu: phi_coeff(j, mu)


def phi_star(phi, x) -> SkeinVector:
    """The loop projection of a formal sum of real diagrams.

    For each diagram: the full-state sum of ``phi`` of the trivial-circle
    count times the essential class, with the parity sign of the crossing
    number.  ``phi`` is any callable table on circle counts.
    """
    acc: Dict[CurveClass, Fraction] = {}
    for d, coef in _as_sum(x).items():
        sgn = -1 if len(d.crossings) % 2 else 1
        for zeta, iota, mu, ess in full_state_data(d):
            v = acc.get(ess, _ZERO) + coef * sgn * phi(mu)
            if v:
                acc[ess] = v
            else:
                acc.pop(ess, None)
    return SkeinVector(acc)


# ---------------------------------------------------------------------------
# Deformation polynomials


def solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    """Solve a (possibly overdetermined) exact linear system with a unique
    solution; raises :class:`SingularSystem` on rank deficiency or
    inconsistency."""
    m = len(rows)
    if m == 0:
        raise SingularSystem("empty system")
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rank = 0
    pivots = []
    for col in range(n):
        piv = None
        for r in range(rank, m):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pv = aug[rank][col]
        aug[rank] = [x / pv for x in aug[rank]]
        for r in range(m):
            if r != rank and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    if rank < n:
        raise SingularSystem(f"rank {rank} < {n} unknowns")
    for r in range(rank, m):
        if aug[r][n]:
            raise SingularSystem("inconsistent system")
    sol = [_ZERO] * n
    for r, col in enumerate(pivots):
        sol[col] = aug[r][n]
    return sol


def state_weight_terms(p: PolyZW) -> Tuple[Tuple[int, int, Fraction], ...]:
    """Collapsed per-state weight data of a resolution operator: triples
    ``(i, d, a)`` over the support of the substituted polynomial, where
    ``a`` weights partial states with ``i`` infinity-markers on ``d``
    crossings."""
    return tuple((i, dd, a) for (i, dd), a in sorted(c_map(p).items()))


def state_weight(terms, zeta: int, iota: int) -> Fraction:
    """Count of the partial states a full state refines, weighted by the
    operator coefficients: ``sum a * C(iota, i) * C(zeta, d - i)``."""
    return sum(
        (a * comb(iota, i) * comb(zeta, dd - i) for i, dd, a in terms), _ZERO
    )


def derive_P(k: int) -> PolyZW:
    """Derive the order-``k`` deformation polynomial by exact linear fit.

    The defining identity, specialized to states with no trivial circles,
    forces the polynomial's per-state weight at marker counts
    ``(zeta, iota)`` to be ``(zeta - iota)^k / k!``.  Each monomial
    ``z^i w^j`` contributes the weight ``C(iota, i) * C(zeta, j)``, so
    fitting on the grid ``0 <= zeta, iota <= k`` is an exact overdetermined
    linear system with a unique solution of degree at most ``k``.  Fits are
    validated on held-out points with circles present by
    :func:`validate_poly_identity`.
    """
    if k < 0:
        raise ValueError("order must be >= 0")
    monos = [(i, j) for i in range(k + 1) for j in range(k + 1 - i)]
    rows = []
    rhs = []
    for zeta in range(k + 1):
        for iota in range(k + 1):
            rows.append([Fraction(comb(iota, i) * comb(zeta, j)) for i, j in monos])
            rhs.append(Fraction((zeta - iota) ** k, factorial(k)))
    sol = solve_exact(rows, rhs)
    return PolyZW({monos[idx]: v for idx, v in enumerate(sol) if v})


def validate_poly_identity(table: "PolyTable", k: int) -> None:
    """Held-out validation of the fitted polynomials at order ``k``.

    Checks, at sample points with trivial-circle counts ``1 <= mu <= k``
    and ``zeta + iota >= k``, that the order-``k`` series coefficient of
    ``e^(h(zeta-iota)) * (-e^(2h) - e^(-2h))^mu`` equals the loop-weighted
    combination of the per-state weights of ``P_k, P_{k-2}, ...``.  These
    points never enter the fit in :func:`derive_P`.
    """
    parts = [
        (j, state_weight_terms(table.poly(k - 2 * j))) for j in range(k // 2 + 1)
    ]
    for mu in range(1, k + 1):
        for zeta in range(k + 2):
            for iota in range(k + 2):
                if zeta + iota < k:
                    continue
                lhs = sum(
                    (
                        Fraction((zeta - iota) ** m, factorial(m))
                        * loop_power_h_coeff(mu, k - m)
                        for m in range(k + 1)
                    ),
                    _ZERO,
                )
                rhs = sum(
                    (
                        phi_coeff(j, mu) * state_weight(terms, zeta, iota)
                        for j, terms in parts
                    ),
                    _ZERO,
                )
                if lhs != rhs:
                    raise SingularSystem(
                        f"held-out point (zeta={zeta}, iota={iota}, mu={mu}) "
                        f"fails at order {k}: {lhs} != {rhs}"
                    )


class PolyTable:
    """A cache of deformation polynomials, derivable on demand and
    persistable as JSON (order -> list of [z-degree, w-degree, num, den])."""

    def __init__(self, polys: Optional[Dict[int, PolyZW]] = None):
        self._p: Dict[int, PolyZW] = dict(polys or {})

    def known_orders(self) -> List[int]:
        return sorted(self._p)

    def poly(self, k: int) -> PolyZW:
        if k not in self._p:
            self._p[k] = derive_P(k)
        return self._p[k]

    def ensure(self, k: int, validate: bool = True) -> None:
        fresh = [m for m in range(k + 1) if m not in self._p]
        for m in range(k + 1):
            self.poly(m)
        if validate:
            for m in fresh:
                validate_poly_identity(self, m)

    def to_json(self) -> dict:
        return {
            str(k): [
                [i, j, v.numerator, v.denominator]
                for (i, j), v in sorted(p.items())
            ]
            for k, p in sorted(self._p.items())
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyTable":
        polys = {}
        for key, entries in data.items():
            polys[int(key)] = PolyZW(
                {
                    (int(i), int(j)): Fraction(int(nu), int(de))
                    for i, j, nu, de in entries
                }
            )
        return cls(polys)

    def save(self, path) -> None:
        tmp_fd, tmp = tempfile.mkstemp(
            dir=os.path.dirname(os.path.abspath(path)) or ".", suffix=".tmp"
        )
        try:
            with os.fdopen(tmp_fd, "w") as fh:
                json.dump(self.to_json(), fh, indent=1)
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path) -> "PolyTable":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


_shared_table: Optional[PolyTable] = None


def default_poly_table() -> PolyTable:
    global _shared_table
    if _shared_table is None:
        _shared_table = PolyTable()
    return _shared_table


# ---------------------------------------------------------------------------
# The expansion identity


def expansion(d: MarkedDiagram, k: int, table: Optional[PolyTable] = None) -> SkeinVector:
    """The operator side of the deformation identity at order ``k``.

    Evaluates ``sum over j of (phi_j)_* chi(P_{k-2j})`` in collapsed
    per-state form: composing the loop projection with the resolution
    operator turns every partial state into a binomial count over the full
    states refining it, so a single pass over full states suffices.  Must
    equal ``bracket_order(d, k)`` exactly.
    """
    if table is None:
        table = default_poly_table()
    sgn = -1 if len(d.crossings) % 2 else 1
    parts = [
        (j, state_weight_terms(table.poly(k - 2 * j))) for j in range(k // 2 + 1)
    ]
    acc: Dict[CurveClass, Fraction] = {}
    for zeta, iota, mu, ess in full_state_data(d):
        v = _ZERO
        for j, terms in parts:
            pj = phi_coeff(j, mu)
            if pj:
                v += pj * state_weight(terms, zeta, iota)
        if v:
            acc[ess] = acc.get(ess, _ZERO) + sgn * v
    return SkeinVector({c: v for c, v in acc.items() if v})


def expansion_literal(
    d: MarkedDiagram, k: int, table: Optional[PolyTable] = None
) -> SkeinVector:
    """The operator side at order ``k`` by literal operator composition;
    slower, used to cross-check :func:`expansion`."""
    if table is None:
        table = default_poly_table()
    acc = SkeinVector.zero()
    for j in range(k // 2 + 1):
        acc = acc + phi_star(phi_fn(j), chi_apply(table.poly(k - 2 * j), d))
    return acc


def check_expansion_identity(
    d: MarkedDiagram, order: int, table: Optional[PolyTable] = None
) -> None:
    """Assert the deformation identity at all orders up to ``order``;
    raises :class:`TheoremViolation` with the first mismatch."""
    lhs = bracket_series(d, order)
    for k in range(order + 1):
        rhs = expansion(d, k, table)
        if lhs[k] != rhs:
            raise TheoremViolation(
                f"order {k}: bracket side {lhs[k]} != operator side {rhs}"
            )


def resolve_marked(x) -> FormalDiagramSum:
    """Expand every remaining marked crossing by the unweighted sum of its
    two smoothings, landing in grading zero.

    This is the completion under which the crossing relation below cancels
    for every degree: terms whose marked set is nonempty (the operator
    degree fell short of the crossing count) are compared through their
    full deterministic resolutions.
    """
    out = FormalDiagramSum()
    for d, coef in _as_sum(x).items():
        cids = sorted(d.marked)
        if not cids:
            out.add_term(d, coef)
            continue
        for markers in product((SM0, SMINF), repeat=len(cids)):
            out.add_term(smooth(d, dict(zip(cids, markers))), coef)
    return out


def skein_relation_residual(p: PolyZW, d: MarkedDiagram, cid: int) -> FormalDiagramSum:
    """The crossing-relation residual of a homogeneous operator polynomial.

    With ``d0`` and ``dinf`` the two smoothings of the chosen crossing and
    ``k`` the degree of ``p``, returns the grading-zero completion of

        chi_p(d - d0 - dinf)
          + chi_{(p - p_zk z^k)/w}(d0) + chi_{(p - p_wk w^k)/z}(dinf),

    which vanishes identically (all terms descend from ``d`` by
    deterministic smoothing, so structural cancellation is meaningful).
    When ``k`` equals the number of marked crossings the completion is a
    no-op and the relation already cancels term by term; below that the
    leftover marked crossings must be resolved before terms can match.
    """
    if not p.is_homogeneous():
        raise ValueError("residual is defined for homogeneous polynomials")
    k = p.total_degree()
    d0 = smooth(d, {cid: SM0})
    dinf = smooth(d, {cid: SMINF})
    az = p.coefficient(k, 0)  # z^k
    aw = p.coefficient(0, k)  # w^k
    q0 = (p - PolyZW({(k, 0): az})).div_w()
    qinf = (p - PolyZW({(0, k): aw})).div_z()
    out = chi_apply(p, d)
    out = out - chi_apply(p, d0) - chi_apply(p, dinf)
    out = out + chi_apply(q0, d0) + chi_apply(qinf, dinf)
    return resolve_marked(out)


def mirror_symmetry_check(d: MarkedDiagram, k: int) -> List[Tuple[str, bool, str]]:
    """Crossing-flip symmetries: the bracket of the flipped diagram is the
    ``t -> 1/t`` mirror, and order-``j`` coefficients flip sign with the
    parity of ``j``."""
    td = tau(d)
    report = []
    lhs = bracket(td)
    rhs = bracket(d).map_coefficients(lambda p: p.mirror())
    report.append(("bracket-mirror", lhs == rhs, f"{lhs} vs {rhs}"))
    a = bracket_series(td, k)
    b = bracket_series(d, k)
    for j in range(k + 1):
        want = b[j] if j % 2 == 0 else -b[j]
        report.append(
            (f"order-{j}-sign", a[j] == want, f"{a[j]} vs {want}")
        )
    return report
