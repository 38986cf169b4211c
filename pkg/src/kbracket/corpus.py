"""Deterministic diagram corpora and seeded random generators for the
verification suites.

The standard corpus: all braid closures on at most 3 strands with word
length at most 6, strong torus products of multicurves ``n*(p,q)`` over
``m*(r,s)`` with multiplicities at most 2 and pairwise determinant at most
3 (direction entries bounded by 2 to keep the family finite), and kink
chains with up to 5 crossings.
"""

from __future__ import annotations

from itertools import product
from random import Random
from typing import Iterator, List, Optional, Tuple

from .diagram import MarkedDiagram, from_braid, kink_chain, superpose, torus_multicurve
from .exactalg import PolyZW

MAX_STRANDS = 3
MAX_WORD_LEN = 6
MAX_MULTIPLICITY = 2
MAX_DET = 3
MAX_DIRECTION_ENTRY = 2
MAX_KINKS = 5

#: Primitive torus directions with entries bounded by MAX_DIRECTION_ENTRY,
#: in canonical sign form.
TORUS_DIRECTIONS: Tuple[Tuple[int, int], ...] = (
    (0, 1),
    (1, -2),
    (1, -1),
    (1, 0),
    (1, 1),
    (1, 2),
    (2, -1),
    (2, 1),
)


def braid_words(max_strands: int = MAX_STRANDS, max_len: int = MAX_WORD_LEN
                ) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """All (strand count, word) pairs of the braid corpus."""
    for strands in range(1, max_strands + 1):
        gens = [g for i in range(1, strands) for g in (i, -i)]
        for length in range(max_len + 1):
            if length and not gens:
                break
            for word in product(gens, repeat=length):
                yield strands, word


def braid_corpus(max_strands: int = MAX_STRANDS, max_len: int = MAX_WORD_LEN
                 ) -> Iterator[MarkedDiagram]:
    for strands, word in braid_words(max_strands, max_len):
        yield from_braid(strands, word)


def torus_product_pairs() -> List[Tuple[int, Tuple[int, int], int, Tuple[int, int]]]:
    """Multicurve pairs (n, (p,q), m, (r,s)) with bounded multiplicity and
    determinant."""
    out = []
    for (p, q), (r, s) in product(TORUS_DIRECTIONS, repeat=2):
        if abs(p * s - q * r) > MAX_DET:
            continue
        for n in range(1, MAX_MULTIPLICITY + 1):
            for m in range(1, MAX_MULTIPLICITY + 1):
                out.append((n, (p, q), m, (r, s)))
    return out


def torus_product_corpus(mode: str = "strong") -> Iterator[MarkedDiagram]:
    for n, (p, q), m, (r, s) in torus_product_pairs():
        yield superpose(
            torus_multicurve(n, p, q), torus_multicurve(m, r, s), mode
        )


def kink_corpus(max_kinks: int = MAX_KINKS) -> Iterator[MarkedDiagram]:
    for i in range(max_kinks + 1):
        yield kink_chain(i)


def full_corpus() -> Iterator[MarkedDiagram]:
    yield from braid_corpus()
    yield from torus_product_corpus()
    yield from kink_corpus()


def small_corpus() -> List[MarkedDiagram]:
    """A quick cross-section: short braids, one torus product per
    determinant value, small kink chains."""
    out: List[MarkedDiagram] = []
    for strands, word in braid_words(max_strands=3, max_len=3):
        out.append(from_braid(strands, word))
    seen_dets = set()
    for n, (p, q), m, (r, s) in torus_product_pairs():
        det = abs(p * s - q * r)
        if (n, m, det) in seen_dets:
            continue
        seen_dets.add((n, m, det))
        out.append(superpose(torus_multicurve(n, p, q), torus_multicurve(m, r, s), "strong"))
    out.extend(kink_corpus(3))
    return out


def random_braid(rng: Random, max_strands: int = 3, max_len: int = 6
                 ) -> Tuple[int, List[int]]:
    strands = rng.randint(2, max_strands)
    length = rng.randint(1, max_len)
    gens = [g for i in range(1, strands) for g in (i, -i)]
    return strands, [rng.choice(gens) for _ in range(length)]


def random_homogeneous_poly(rng: Random, degree: int) -> PolyZW:
    """A nonzero homogeneous polynomial in z, w with small integer
    coefficients."""
    while True:
        coeffs = {
            (i, degree - i): rng.randint(-3, 3) for i in range(degree + 1)
        }
        p = PolyZW({k: v for k, v in coeffs.items() if v})
        if p:
            return p


def random_poly(rng: Random, max_degree: int) -> PolyZW:
    while True:
        coeffs = {}
        for i in range(max_degree + 1):
            for j in range(max_degree + 1 - i):
                coeffs[(i, j)] = rng.randint(-2, 2)
        p = PolyZW({k: v for k, v in coeffs.items() if v})
        if p:
            return p


def random_sl2z(rng: Random, steps: int = 6) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """A random unimodular integer matrix, as a product of elementary
    shears."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(steps):
        k = rng.randint(-2, 2)
        if rng.random() < 0.5:
            # right-multiply by [[1, k], [0, 1]]
            a, b, c, d = a, a * k + b, c, c * k + d
        else:
            # right-multiply by [[1, 0], [k, 1]]
            a, b, c, d = a + b * k, b, c + d * k, d
    return ((a, b), (c, d))
