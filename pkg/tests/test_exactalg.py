"""Exact arithmetic: Laurent polynomials, truncated series, z/w polynomials,
and the loop-weight coefficients."""

from fractions import Fraction
from random import Random

from kbracket.exactalg import (
    LaurentPoly,
    PolyZW,
    TruncSeries,
    c_map,
    frac_str,
    laurent_to_series,
    loop_power_h_coeff,
    loop_value,
    phi_coeff,
    phi_series_oracle,
    pi_k,
    primitive_of,
)


def test_laurent_arithmetic():
    a = LaurentPoly({2: 1, -1: 3})
    b = LaurentPoly({0: -1, 2: 2})
    assert a + b == LaurentPoly({2: 3, -1: 3, 0: -1})
    assert a - a == LaurentPoly.zero()
    assert a * LaurentPoly.t_power(3) == LaurentPoly({5: 1, 2: 3})
    assert (a * b).coefficient(4) == 2
    assert LaurentPoly.t_power(2) ** 3 == LaurentPoly.t_power(6)


def test_laurent_mirror_is_involution():
    rng = Random(5)
    for _ in range(20):
        p = LaurentPoly({rng.randint(-6, 6): rng.randint(-4, 4) for _ in range(5)})
        assert p.mirror().mirror() == p
    assert loop_value().mirror() == loop_value()


def test_trunc_series_exponential_product():
    # e^h * e^-h = 1, order by order
    order = 8
    e = TruncSeries([Fraction(1, fact(k)) for k in range(order + 1)], order)
    einv = TruncSeries(
        [Fraction((-1) ** k, fact(k)) for k in range(order + 1)], order
    )
    assert e * einv == TruncSeries.const(1, order)
    assert e.alternate() == einv


def fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def test_laurent_to_series_substitutes_exponential():
    # t^2 at t = e^h is e^{2h}
    s = laurent_to_series(LaurentPoly.t_power(2), 6)
    for k in range(7):
        assert s.coefficient(k) == Fraction(2 ** k, fact(k))


def test_polyzw_ring_and_parity_helpers():
    p = PolyZW({(1, 0): 1, (0, 1): -1})  # z - w
    q = p * p
    assert q == PolyZW({(2, 0): 1, (1, 1): -2, (0, 2): 1})
    assert q.swap_zw() == q
    assert p.swap_zw() == -p
    assert q.is_homogeneous() and q.total_degree() == 2
    assert (q + PolyZW.const(3)).constant_term() == 3
    assert PolyZW({(1, 1): 5}).div_z() == PolyZW({(0, 1): 5})
    assert PolyZW({(1, 1): 5}).div_w() == PolyZW({(1, 0): 5})
    assert q.homogeneous_part(2) == q and not q.homogeneous_part(1)


def test_c_map_and_slices():
    # z -> z*w, w -> w; a homogeneous degree-k part becomes p(z) * w^k
    p = PolyZW({(2, 0): 1, (1, 1): 2, (0, 2): 3})
    cp = c_map(p)
    assert cp == PolyZW({(2, 2): 1, (1, 2): 2, (0, 2): 3})
    assert pi_k(cp, 2) == (Fraction(3), Fraction(2), Fraction(1))
    assert pi_k(cp, 1) == (Fraction(0), Fraction(0))


def test_phi_closed_form_matches_series():
    for i in range(12):
        for j in range(5):
            assert phi_coeff(j, i) == phi_series_oracle(j, i)


def test_phi_specializations():
    for i in range(10):
        assert phi_coeff(0, i) == Fraction((-2) ** i)
        assert phi_coeff(1, i) == Fraction(-((-2) ** (i + 1)) * i)


def test_loop_powers_are_even_in_h():
    for i in range(6):
        for m in range(1, 10, 2):
            assert loop_power_h_coeff(i, m) == 0


def test_primitive_of():
    assert primitive_of(4, 6) == (2, 2, 3)
    assert primitive_of(0, -5) == (5, 0, -1)


def test_frac_str():
    assert frac_str(Fraction(3)) == "3"
    assert frac_str(Fraction(-1, 6)) == "-1/6"
