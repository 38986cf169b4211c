"""Curve classes, component classification, and skein vectors."""

from fractions import Fraction

import pytest

from kbracket.errors import NonParallelComponents
from kbracket.surface import (
    ANNULUS_SURFACE,
    TORUS_SURFACE,
    SkeinVector,
    annulus_class,
    classify_components,
    disk_matching,
    disk_surface,
    enumerate_disk_matchings,
    normalize_torus_class,
)


def test_torus_class_sign_normalization():
    assert normalize_torus_class(-2, -4) == normalize_torus_class(2, 4)
    assert normalize_torus_class(0, -3) == normalize_torus_class(0, 3)
    assert normalize_torus_class(-1, 2) != normalize_torus_class(1, 2)
    assert normalize_torus_class(0, 0).is_empty()


def test_classify_torus_components():
    mu, ess = classify_components(TORUS_SURFACE, [(1, 2), (0, 0), (-1, -2)])
    assert mu == 1
    assert ess == normalize_torus_class(2, 4)
    mu, ess = classify_components(TORUS_SURFACE, [(0, 0), (0, 0)])
    assert mu == 2 and ess.is_empty()
    with pytest.raises(NonParallelComponents):
        classify_components(TORUS_SURFACE, [(1, 0), (0, 1)])


def test_classify_annulus_components():
    mu, ess = classify_components(ANNULUS_SURFACE, [1, 0, -1, 1])
    assert mu == 1
    assert ess == annulus_class(3)
    with pytest.raises(NonParallelComponents):
        classify_components(ANNULUS_SURFACE, [2])


def test_disk_matchings_catalan():
    # noncrossing perfect matchings of 2n boundary points: 1, 2, 5, 14
    assert [len(enumerate_disk_matchings(2 * n)) for n in range(1, 5)] == [
        1, 2, 5, 14,
    ]
    m = disk_matching([(1, 2), (3, 4)], 4)
    assert m in enumerate_disk_matchings(4)
    assert disk_surface(4).kind == "disk"


def test_skein_vector_algebra():
    a = normalize_torus_class(1, 0)
    b = normalize_torus_class(0, 1)
    v = SkeinVector.basis(a, Fraction(2)) + SkeinVector.basis(b, Fraction(-1))
    assert v.get(a) == 2 and v.get(b) == -1
    assert (v - v).is_zero()
    w = Fraction(3) * v
    assert w.get(a) == 6
    assert v.map_classes(lambda c: b).get(b) == 1  # 2 + (-1)
    assert v.map_coefficients(lambda c: c * c).get(b) == 1
