"""Determinant engines cross-checked against a permutation-sum oracle."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from qgspectra.exactdet import (
    det_int,
    det_int_bareiss,
    det_poly_matrix,
    det_rational,
)
from qgspectra.intpoly import add, mul_many, scale, trim


def perm_det_poly(rows):
    """Leibniz expansion; independent oracle for small matrices."""
    n = len(rows)
    total = ()
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = mul_many([rows[i][perm[i]] for i in range(n)])
        total = add(total, scale(term, sign))
    return trim(total)


def perm_det_int(rows):
    return (perm_det_poly([[(x,) if x else () for x in row] for row in rows]) or (0,))[0]


def test_det_int_hand():
    assert det_int([[2]]) == 2
    assert det_int([[1, 2], [3, 4]]) == -2
    assert det_int([[0, 1], [1, 0]]) == -1
    assert det_int([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


def test_det_engines_agree_random():
    rng = random.Random(123)
    for _ in range(120):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        expected = perm_det_int(rows) if n <= 4 else det_int_bareiss(rows)
        assert det_int(rows) == expected
        assert det_int_bareiss(rows) == expected


def test_det_int_large_entries():
    # entries big enough to need several CRT primes
    rng = random.Random(5)
    rows = [[rng.randint(-(10**12), 10**12) for _ in range(6)] for _ in range(6)]
    assert det_int(rows) == det_int_bareiss(rows)


def test_det_rational():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]]
    assert det_rational(rows) == Fraction(1, 10) - Fraction(1, 12)
    rows = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert det_rational(rows) == -1


def test_det_poly_matrix_oracle():
    rng = random.Random(77)
    for _ in range(60):
        n = rng.randint(1, 4)
        rows = [
            [
                trim(tuple(rng.randint(-3, 3) for _ in range(rng.randint(0, 3))))
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        assert det_poly_matrix(rows) == perm_det_poly(rows)


def test_det_poly_matrix_singular_and_zero_rows():
    assert det_poly_matrix([[(), ()], [(1,), (1,)]]) == ()
    rows = [[(1, 1), (1, 1)], [(1, 1), (1, 1)]]
    assert det_poly_matrix(rows) == ()
