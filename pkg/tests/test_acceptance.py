"""Acceptance gate: the ten headline properties, one pass/fail line each.

Each criterion reuses the corresponding verification suite at full size;
the main-theorem corpus run (criterion 1) dominates the runtime at a few
minutes.  Run with ``pytest -s tests/test_acceptance.py`` to see the
lines as they complete.
"""

import sys

import pytest

from kbracket import verify


def _cache(store, name, fn):
    if name not in store:
        store[name] = fn(quick=False)
    return store[name]


@pytest.fixture(scope="module")
def reports():
    return {}


def _settle(criterion, label, checks):
    bad = [f"{name}: {detail}" for name, ok, detail in checks if not ok]
    status = "FAIL" if bad else "PASS"
    line = f"{status}  criterion {criterion}: {label}"
    print(line)
    sys.stdout.flush()
    assert not bad, "; ".join([line] + bad)


def _named(report, *names):
    picked = [row for row in report if row[0] in names]
    assert len(picked) == len(names), f"missing checks among {names}"
    return picked


def test_criterion_01_main_theorem(reports):
    report = _cache(reports, "main", verify.suite_main_theorem)
    _settle(
        1,
        "expansion equals bracket coefficients for k <= 5 on the full corpus",
        _named(
            report,
            "expansion-braids",
            "expansion-torus-products",
            "expansion-kink-chains",
        ),
    )


def test_criterion_02_polynomial_table(reports):
    report = _cache(reports, "poly", verify.suite_poly)
    _settle(
        2,
        "P_0..P_3 reference values; parity and top part for k <= 8",
        report,
    )


def test_criterion_03_phi_coefficients(reports):
    report = _cache(reports, "phi", verify.suite_phi)
    _settle(
        3,
        "loop-weight closed form vs series for i <= 20, j <= 8",
        report,
    )


def test_criterion_04_order_oracles(reports):
    report = _cache(reports, "main", verify.suite_main_theorem)
    _settle(
        4,
        "order-0 recursion and order-1 crossing-sum oracles on the corpus",
        _named(report, "order0-recursion", "order1-crossing-sum"),
    )


def test_criterion_05_skein_relation(reports):
    report = _cache(reports, "skein", verify.suite_skein_relation)
    _settle(
        5,
        "50 random homogeneous crossing-relation residuals vanish",
        report,
    )


def test_criterion_06_chi_algebra(reports):
    report = _cache(reports, "axioms", verify.suite_axioms)
    _settle(
        6,
        "resolution-operator algebra: composition, divergence, weak "
        "product, vacuum, grading, injectivity witness",
        report,
    )


def test_criterion_07_invariance(reports):
    report = _cache(reports, "invariance", verify.suite_invariance)
    _settle(
        7,
        "30 braid-move trials and 3 offset choices per torus product",
        report,
    )


def test_criterion_08_symmetries(reports):
    report = _cache(reports, "symmetries", verify.suite_symmetries)
    _settle(
        8,
        "mirror and hermitian symmetry to order 4; mapping-class "
        "equivariance for 5 matrices",
        report,
    )


def test_criterion_09_star_algebra(reports):
    report = _cache(reports, "star", verify.suite_star)
    _settle(
        9,
        "associativity to order 3 on 5 triples; order-1 term is the "
        "crossing-sum bracket",
        report,
    )


def test_criterion_10_differentiability(reports):
    report = _cache(reports, "diff", verify.suite_differentiability)
    _settle(
        10,
        "order-0 projection multiplicative; order-1 witness nonzero only "
        "on the three-curve stack",
        report,
    )
