"""Brackets, resolution operators, deformation polynomials, and the
order-by-order expansion identity."""

from fractions import Fraction
from random import Random

import pytest

from kbracket.corpus import random_homogeneous_poly, random_poly, small_corpus
from kbracket.diagram import from_braid, kink_chain, superpose, torus_multicurve
from kbracket.errors import NotRealDiagram, SingularSystem, TheoremViolation
from kbracket.exactalg import LaurentPoly, PolyZW
from kbracket.statesum import (
    FormalDiagramSum,
    PolyTable,
    bfk_first_order,
    bracket,
    bracket_order,
    bracket_series,
    check_expansion_identity,
    chi_apply,
    chi_product,
    derive_P,
    expansion,
    expansion_literal,
    mirror_symmetry_check,
    phi_fn,
    phi_star,
    skein_relation_residual,
    solve_exact,
    t0_bracket,
    validate_poly_identity,
)
from kbracket.surface import annulus_class, normalize_torus_class


def test_bracket_small_values():
    # closure of the empty 1-braid: the annulus core
    v = bracket(from_braid(1, []))
    assert v.get(annulus_class(1)) == LaurentPoly.const(1)
    # a single kink multiplies by t^-3 (t^3 in the mirror convention; the
    # (-t) state weight absorbs the usual minus sign); the kink-chain main
    # circle is trivial, so everything lands on the empty class
    k1 = bracket(kink_chain(1))
    base = bracket(kink_chain(0))
    factor = LaurentPoly({-3: 1})
    assert k1 == base.map_coefficients(lambda p: p * factor)


def test_bracket_trefoil_closure():
    v = bracket(from_braid(2, [1, 1, 1]))
    empty = [c for c in v.classes() if c.is_empty()][0]
    core2 = annulus_class(2)
    assert v.get(empty) == LaurentPoly({-3: 1, 9: 1})
    assert v.get(core2) == LaurentPoly({-3: -1})


def test_order_oracles_agree():
    for d in (from_braid(2, [1, 1, 1]), from_braid(3, [1, -2]), kink_chain(2)):
        assert bracket_order(d, 0) == t0_bracket(d)
        assert bracket_order(d, 1) == bfk_first_order(d)
        series = bracket_series(d, 3)
        for k in range(4):
            assert series[k] == bracket_order(d, k)


def test_derived_polynomials():
    assert derive_P(0) == PolyZW.const(1)
    assert derive_P(1) == PolyZW({(0, 1): 1, (1, 0): -1})
    assert derive_P(2) == PolyZW(
        {(0, 2): 1, (1, 1): -1, (2, 0): 1,
         (0, 1): Fraction(1, 2), (1, 0): Fraction(1, 2)}
    )
    # the cubic: alternating top part, w^2 - z^2, and +(w - z)/6 — the
    # degree-1 sign is forced by the fit (see the poly verify suite)
    assert derive_P(3) == PolyZW(
        {(0, 3): 1, (1, 2): -1, (2, 1): 1, (3, 0): -1,
         (0, 2): 1, (2, 0): -1,
         (0, 1): Fraction(1, 6), (1, 0): Fraction(-1, 6)}
    )


def test_poly_table_round_trip(tmp_path):
    table = PolyTable()
    table.ensure(4)
    path = tmp_path / "polys.json"
    table.save(path)
    back = PolyTable.load(path)
    assert back.known_orders() == table.known_orders()
    for k in table.known_orders():
        assert back.poly(k) == table.poly(k)
    for k in range(5):
        validate_poly_identity(table, k)


def test_expansion_equals_bracket_orders():
    table = PolyTable()
    table.ensure(4)
    for d in (
        from_braid(2, [1, 1, 1]),
        kink_chain(2),
        superpose(torus_multicurve(1, 1, 0), torus_multicurve(1, 0, 1), "strong"),
    ):
        for k in range(5):
            assert expansion(d, k, table) == bracket_order(d, k)
            assert expansion_literal(d, k, table) == bracket_order(d, k)
        check_expansion_identity(d, 3, table)


def test_expansion_requires_real_diagram():
    w = superpose(torus_multicurve(1, 1, 0), torus_multicurve(1, 0, 1), "weak")
    with pytest.raises(NotRealDiagram):
        expansion(w, 1)


def test_chi_grading_and_vanishing():
    d = from_braid(2, [1, 1])
    p = PolyZW({(1, 1): 1})  # degree 2
    for term, _ in chi_apply(p, d).items():
        assert len(term.marked) == 0
    assert chi_apply(PolyZW({(3, 0): 1}), d).is_zero()
    # constants multiply
    assert chi_apply(PolyZW.const(5), d) == FormalDiagramSum.single(d, 5)


def test_chi_composition_is_binomial_product():
    rng = Random(99)
    d = from_braid(2, [1, 1, 1])
    # the square of the z operator doubles the z^2 operator
    assert chi_product(PolyZW.z(), PolyZW.z()) == PolyZW({(2, 0): 2})
    for _ in range(5):
        p = random_poly(rng, 2)
        q = random_poly(rng, 2)
        assert chi_apply(p, chi_apply(q, d)) == chi_apply(chi_product(p, q), d)


def test_skein_relation_residual_cancels():
    rng = Random(4)
    pool = [d for d in small_corpus() if d.crossings][:25]
    for trial in range(12):
        p = random_homogeneous_poly(rng, rng.randint(1, 3))
        d = rng.choice(pool)
        cid = rng.choice(sorted(d.crossings))
        assert skein_relation_residual(p, d, cid).is_zero(), f"trial {trial}"


def test_mirror_symmetry():
    for d in (from_braid(2, [1, 1, 1]), kink_chain(2)):
        for name, ok, detail in mirror_symmetry_check(d, 3):
            assert ok, f"{name}: {detail}"


def test_phi_star_weights_trivial_circles():
    # all-infinity state of kink_chain(1) has two trivial circles
    v = phi_star(phi_fn(0), FormalDiagramSum.single(kink_chain(1)))
    empty = [c for c in v.classes() if c.is_empty()][0]
    assert v.get(empty) == Fraction(-((-2) ** 2) - (-2))  # -( (-2)^2 + (-2) )


def test_solve_exact():
    rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    assert solve_exact(rows, [Fraction(3), Fraction(1)]) == [
        Fraction(2), Fraction(1),
    ]
    with pytest.raises(SingularSystem):
        solve_exact([[Fraction(1), Fraction(1)]], [Fraction(1)])
    with pytest.raises(SingularSystem):
        solve_exact(
            [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]],
            [Fraction(1), Fraction(3)],
        )
