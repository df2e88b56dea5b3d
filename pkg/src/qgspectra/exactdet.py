"""Exact determinants of integer and integer-polynomial matrices.

The workhorse is ``det_int``: Chinese remaindering over 31-bit primes with
numpy row reduction per prime, certified by a Hadamard bound computed in
exact integer arithmetic, so the result is provably exact.  A fraction-free
Bareiss elimination (``det_int_bareiss`` / ``det_rational``) is kept as an
independent, slower route; the test suite cross-checks the two.

``det_poly_matrix`` lifts the integer engine to matrices over Z[z] by
evaluating at integer points and interpolating exactly over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .intpoly import Poly, deg, fractions_to_int_poly, newton_interpolate, trim

_MAX_PRIME = (1 << 31) - 1
_prime_cache: list[int] = []


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3_215_031_751
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime(index: int) -> int:
    while len(_prime_cache) <= index:
        n = (_prime_cache[-1] if _prime_cache else _MAX_PRIME + 2) - 2
        while not _is_prime(n):
            n -= 2
        _prime_cache.append(n)
    return _prime_cache[index]


def _det_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant mod p by Gaussian elimination on int64 arrays."""
    n = len(rows)
    m = np.array([[c % p for c in row] for row in rows], dtype=np.int64)
    det = 1
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if m[r, col]:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != col:
            m[[col, piv], col:] = m[[piv, col], col:]
            det = -det
        a = int(m[col, col])
        det = det * a % p
        if col + 1 < n:
            inv = pow(a, p - 2, p)
            factors = m[col + 1 :, col] * inv % p
            m[col + 1 :, col:] = (m[col + 1 :, col:] - factors[:, None] * m[col, col:]) % p
    return det % p


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    bound_sq = 1
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
        s = sum(c * c for c in row)
        if s == 0:
            return 0
        bound_sq *= s
    primes: list[int] = []
    modulus = 1
    i = 0
    while modulus * modulus <= 4 * bound_sq:
        primes.append(_prime(i))
        modulus *= primes[-1]
        i += 1
    # incremental CRT
    x, prod = 0, 1
    for p in primes:
        r = _det_mod(rows, p)
        t = (r - x) * pow(prod % p, p - 2, p) % p
        x += prod * t
        prod *= p
    if x > prod // 2:
        x -= prod
    return x


def det_int_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) elimination; exact but single-threaded big ints."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(row) for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_rational(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant over Q: clear denominators, then fraction-free."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scaled: list[list[int]] = []
    denom = 1
    for row in rows:
        d = 1
        for c in row:
            d = lcm(d, c.denominator)
        scaled.append([int(c * d) for c in row])
        denom *= d
    return Fraction(det_int_bareiss(scaled), denom)


def det_poly_matrix(rows: Sequence[Sequence[Poly]], degree_bound: int | None = None) -> Poly:
    """Exact determinant of a matrix over Z[z] by evaluation-interpolation.

    ``degree_bound`` may be passed when the caller knows the determinant's
    degree; by default the sum of row maxima is used.
    """
    n = len(rows)
    if n == 0:
        return (1,)
    row_bound = 0
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
        d = max((deg(e) for e in row), default=-1)
        if d < 0:
            return ()
        row_bound += d
    if degree_bound is None or degree_bound > row_bound:
        degree_bound = row_bound
    points = _eval_points(degree_bound + 1)
    values = []
    for t in points:
        values.append(det_int([[_eval_int(e, t) for e in row] for row in rows]))
    coeffs = newton_interpolate(points, values)
    return fractions_to_int_poly(coeffs)


def _eval_points(count: int) -> list[int]:
    """0, 1, -1, 2, -2, ... (count of them)."""
    pts = [0]
    k = 1
    while len(pts) < count:
        pts.append(k)
        if len(pts) < count:
            pts.append(-k)
        k += 1
    return pts


def _eval_int(p: Sequence[int], t: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * t + c
    return acc


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Solve x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    if gcd(m1, m2) != 1:
        raise ValueError("moduli must be coprime")
    t = (r2 - r1) * pow(m1 % m2, -1, m2) % m2
    return r1 + m1 * t
