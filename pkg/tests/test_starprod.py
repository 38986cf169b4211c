"""Star product coefficients, symmetry checks, operator words, and the
differentiability witness."""

from fractions import Fraction

from kbracket.exactalg import PolyZW
from kbracket.starprod import (
    OperatorWord,
    WordStep,
    apply_operator_word,
    associativity_check,
    class_rep,
    differentiability_witness,
    goldman_check,
    hermitian_check,
    lambda_k,
    sl2z_class,
    star,
    witness_stack,
)
from kbracket.statesum import phi_fn, phi_star
from kbracket.surface import SkeinVector, annulus_class, normalize_torus_class


def T(a, b):
    return normalize_torus_class(a, b)


def test_star_meridian_longitude():
    s = star(T(1, 0), T(0, 1), 2)
    assert s.coefficient(0) == SkeinVector(
        {T(1, 1): Fraction(-1), T(1, -1): Fraction(-1)}
    )
    assert s.coefficient(1) == SkeinVector(
        {T(1, 1): Fraction(1), T(1, -1): Fraction(-1)}
    )
    assert s.coefficient(2) == SkeinVector(
        {T(1, 1): Fraction(-1, 2), T(1, -1): Fraction(-1, 2)}
    )


def test_lambda_matches_bracket_series():
    for k in range(4):
        lambda_k(T(1, 0), T(1, 2), k)  # raises TheoremViolation on mismatch
        lambda_k(T(2, 1), T(0, 1), k)


def test_goldman_and_hermitian():
    for name, ok, detail in goldman_check(T(1, 0), T(0, 1)):
        assert ok, f"{name}: {detail}"
    for name, ok, detail in hermitian_check(T(1, 0), T(1, 2), 4):
        assert ok, f"{name}: {detail}"


def test_annulus_star_is_commutative_product():
    s = star(annulus_class(1), annulus_class(2), 2)
    assert s.coefficient(0) == SkeinVector({annulus_class(3): Fraction(1)})
    assert s.coefficient(1).is_zero()
    assert s.coefficient(2).is_zero()


def test_associativity_order_three():
    for name, ok, detail in associativity_check(T(1, 0), T(0, 1), T(1, 1), 3):
        assert ok, f"{name}: {detail}"


def test_sl2z_class_action():
    m = ((1, 1), (0, 1))
    assert sl2z_class(m, T(0, 1)) == T(1, 1)
    assert sl2z_class(m, T(1, 0)) == T(1, 0)


def test_operator_word_weight_and_evaluation():
    step = WordStep(r=1, q=PolyZW({(0, 1): 1, (1, 0): -1}), alpha=T(1, 0))
    word = OperatorWord((step,))
    assert word.weight() == 3
    out = apply_operator_word(word, T(0, 1))
    # one crossing, so the degree-1 operator acts and the projection is
    # phi_1 of single-crossing smoothings: all essential, hence zero
    assert out.is_zero()
    word0 = OperatorWord((WordStep(r=0, q=PolyZW.const(1), alpha=T(1, 0)),))
    assert not apply_operator_word(word0, T(0, 1)).is_zero()


def test_witness_stack_shape():
    d = witness_stack()
    assert d.num_crossings() == 4 and d.is_real()
    v = phi_star(phi_fn(1), d)
    assert not v.is_zero()


def test_differentiability_witness_report():
    for name, ok, detail in differentiability_witness():
        assert ok, f"{name}: {detail}"
