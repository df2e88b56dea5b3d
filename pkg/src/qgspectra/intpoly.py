"""Exact dense polynomial arithmetic over the integers and rationals.

Polynomials are coefficient tuples in ascending order: ``(c0, c1, ..., cd)``
represents ``c0 + c1*z + ... + cd*z**d``.  The zero polynomial is the empty
tuple.  All routines are exact; nothing here touches floating point except
the explicit complex evaluation helper used by numeric diagnostics.

The toolkit stays deliberately small: ring operations, exact division,
primitive-PRS gcd, Yun's squarefree decomposition, cyclotomic polynomials,
inflation/deflation, and Newton interpolation over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd
from typing import Iterable, Sequence

Poly = tuple[int, ...]


def trim(coeffs: Iterable[int]) -> Poly:
    """Drop trailing zeros so the representation is unique."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def deg(p: Sequence[int]) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(p) - 1


def is_zero(p: Sequence[int]) -> bool:
    return len(p) == 0


def constant(c: int) -> Poly:
    return (c,) if c else ()


def add(p: Sequence[int], q: Sequence[int]) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: Sequence[int]) -> Poly:
    return tuple(-c for c in p)


def sub(p: Sequence[int], q: Sequence[int]) -> Poly:
    return add(p, neg(q))


def scale(p: Sequence[int], c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(c * a for a in p)


def mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def mul_many(polys: Iterable[Sequence[int]]) -> Poly:
    out: Poly = (1,)
    for p in polys:
        out = mul(out, p)
    return out


def pow_poly(p: Sequence[int], n: int) -> Poly:
    out: Poly = (1,)
    for _ in range(n):
        out = mul(out, p)
    return out


def divmod_exact(p: Sequence[int], q: Sequence[int]) -> tuple[Poly, Poly]:
    """Quotient and remainder of ``p`` by ``q`` over the rationals.

    Raises ``ValueError`` unless the quotient and remainder have integer
    coefficients, which is the only case callers legitimately need.
    """
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    qd, qlc = deg(q), q[-1]
    quot = [Fraction(0)] * max(len(p) - qd, 0)
    for i in range(len(rem) - 1, qd - 1, -1):
        c = rem[i]
        if c:
            f = c / qlc
            quot[i - qd] = f
            for j in range(qd + 1):
                rem[i - qd + j] -= f * q[j]
    for f in quot + rem:
        if f.denominator != 1:
            raise ValueError("division is not exact over the integers")
    return trim(int(f) for f in quot), trim(int(f) for f in rem)


def div_exact(p: Sequence[int], q: Sequence[int]) -> Poly:
    quot, rem = divmod_exact(p, q)
    if rem:
        raise ValueError("polynomial division left a remainder")
    return quot


def divides(q: Sequence[int], p: Sequence[int]) -> bool:
    """True when ``q`` divides ``p`` over the integers."""
    if not p:
        return True
    if not q or deg(q) > deg(p):
        return False
    try:
        _, rem = divmod_exact(p, q)
    except ValueError:
        return False
    return not rem


def content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = int_gcd(g, c)
        if g == 1:
            break
    return g


def primitive(p: Sequence[int]) -> Poly:
    """Divide out the content; the sign of the leading coefficient is kept."""
    if not p:
        return ()
    g = content(p)
    return tuple(c // g for c in p)


def monic_positive(p: Sequence[int]) -> Poly:
    """Primitive part with a positive leading coefficient."""
    q = primitive(p)
    if q and q[-1] < 0:
        q = neg(q)
    return q


def _pseudo_rem(p: Poly, q: Poly) -> Poly:
    """Pseudo-remainder: lc(q)^(deg p - deg q + 1) * p mod q, all integer."""
    rem = list(p)
    qd, qlc = deg(q), q[-1]
    while len(rem) - 1 >= qd and trim(rem):
        rem = list(trim(rem))
        if len(rem) - 1 < qd:
            break
        lead = rem[-1]
        shift = len(rem) - 1 - qd
        rem = [c * qlc for c in rem]
        for j in range(qd + 1):
            rem[shift + j] -= lead * q[j]
        rem = list(trim(rem))
        if not rem:
            break
    return trim(rem)


def positive_leading(p: Sequence[int]) -> Poly:
    """Sign-normalized copy: leading coefficient made positive."""
    q = trim(p)
    if q and q[-1] < 0:
        q = neg(q)
    return q


def gcd(p: Sequence[int], q: Sequence[int]) -> Poly:
    """Greatest common divisor over the integers, positive leading.

    Uses a primitive pseudo-remainder sequence so coefficients stay small.
    The content contributions of the inputs are folded back in at the end;
    gcd(0, p) keeps the content of p.
    """
    a, b = trim(p), trim(q)
    if not a:
        return positive_leading(b)
    if not b:
        return positive_leading(a)
    cont = int_gcd(content(a), content(b))
    a, b = primitive(a), primitive(b)
    if deg(a) < deg(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, primitive(r) if r else ()
    out = scale(monic_positive(a), cont)
    return out


def gcd_many(polys: Iterable[Sequence[int]]) -> Poly:
    out: Poly = ()
    for p in polys:
        out = gcd(out, p)
        if out == (1,):
            break
    return out


def derivative(p: Sequence[int]) -> Poly:
    return trim(i * c for i, c in enumerate(p) if i > 0)


def squarefree_decomposition(p: Sequence[int]) -> list[tuple[Poly, int]]:
    """Yun's algorithm: return ``[(f_i, i)]`` with ``p = content * prod f_i^i``.

    Factors are primitive with positive leading coefficient and pairwise
    coprime; trivial (constant) factors are omitted.
    """
    p = monic_positive(trim(p))
    if deg(p) < 1:
        return []
    dp = derivative(p)
    a = gcd(p, dp)
    b = div_exact(p, a)
    c = sub(div_exact(dp, a), derivative(b))
    out: list[tuple[Poly, int]] = []
    i = 1
    while deg(b) > 0:
        f = gcd(b, c)
        if deg(f) > 0:
            out.append((monic_positive(f), i))
        b2 = div_exact(b, f)
        c = sub(div_exact(c, f), derivative(b2))
        b = b2
        i += 1
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial as an integer coefficient tuple."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = tuple([-1] + [0] * (n - 1) + [1])  # z^n - 1
    for d in range(1, n):
        if n % d == 0:
            p = div_exact(p, cyclotomic(d))
    return p


def totient_sieve(limit: int) -> list[int]:
    """Euler phi for 0..limit, phi[0] = 0."""
    phi = list(range(limit + 1))
    for i in range(2, limit + 1):
        if phi[i] == i:  # prime
            for j in range(i, limit + 1, i):
                phi[j] -= phi[j] // i
    if limit >= 0:
        phi[0] = 0
    return phi


def cyclotomic_candidates(degree: int) -> list[int]:
    """All n with phi(n) <= degree, ascending.

    phi(n) >= sqrt(n/2) gives the search bound n <= 2*degree^2 + 1.
    """
    if degree < 1:
        return []
    limit = 2 * degree * degree + 1
    phi = totient_sieve(limit)
    return [n for n in range(1, limit + 1) if phi[n] <= degree]


def inflate(p: Sequence[int], m: int) -> Poly:
    """Substitute z -> z^m."""
    if m < 1:
        raise ValueError("inflation factor must be >= 1")
    if m == 1 or not p:
        return trim(p)
    out = [0] * ((len(p) - 1) * m + 1)
    for i, c in enumerate(p):
        out[i * m] = c
    return trim(out)


def deflate(p: Sequence[int]) -> tuple[int, Poly]:
    """Largest m with ``p(z) = q(z^m)``; returns ``(m, q)``."""
    p = trim(p)
    if deg(p) < 1:
        return 1, p
    m = 0
    for i, c in enumerate(p):
        if c and i:
            m = int_gcd(m, i)
            if m == 1:
                return 1, p
    if m == 0:
        return 1, p
    return m, trim(tuple(p[i] for i in range(0, len(p), m)))


def eval_at(p: Sequence[int], x: Fraction | int) -> Fraction:
    """Exact Horner evaluation."""
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_complex(p: Sequence[int], x: complex) -> complex:
    acc = 0j
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_shape(p: Sequence[int]) -> Poly:
    """Canonical form up to scalar and monomial factors.

    Strips the power-of-z valuation, divides out the integer content, and
    makes the leading coefficient positive.  Two polynomials agree up to a
    rational scalar times a power of z exactly when their shapes are equal.
    """
    q = trim(p)
    if not q:
        return ()
    _, q = deflate_valuation(q)
    q = primitive(q)
    if q[-1] < 0:
        q = neg(q)
    return q


def deflate_valuation(p: Sequence[int]) -> tuple[int, Poly]:
    """Split p = z^m * q with q(0) != 0; returns (m, q)."""
    q = trim(p)
    if not q:
        return (0, ())
    m = 0
    while q[0] == 0:
        m += 1
        q = q[1:]
    return (m, tuple(q))


def proportional(p: Sequence[int], q: Sequence[int]) -> bool:
    """True when p and q agree up to a nonzero rational factor and a power
    of z (the two normalization freedoms left open by product formulas)."""
    _, a = deflate_valuation(p)
    _, b = deflate_valuation(q)
    if not a or not b:
        return a == b
    return tuple(x * b[0] for x in a) == tuple(y * a[0] for y in b)


def palindromic_sign(p: Sequence[int]) -> int | None:
    """Return s in {1, -1} with ``c_j == s * c_(d-j)`` for all j, else None."""
    p = trim(p)
    if not p:
        return None
    d = deg(p)
    if p[0] == 0:
        return None
    s = 1 if p[d] == p[0] else -1 if p[d] == -p[0] else 0
    if s == 0:
        return None
    for j in range(d + 1):
        if p[j] != s * p[d - j]:
            return None
    return s


def newton_interpolate(xs: Sequence[int], ys: Sequence[Fraction | int]) -> list[Fraction]:
    """Coefficients (ascending) of the interpolant through ``(xs[i], ys[i])``.

    Nodes must be pairwise distinct.  Runs in O(n^2) exact operations.
    """
    n = len(xs)
    if n != len(ys):
        raise ValueError("mismatched node and value counts")
    divided = [Fraction(y) for y in ys]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dx = xs[i] - xs[i - level]
            if dx == 0:
                raise ValueError("interpolation nodes must be distinct")
            divided[i] = (divided[i] - divided[i - 1]) / dx
    # expand Newton form sum divided[i] * prod_{j<i} (x - xs[j])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)] + [Fraction(0)] * (n - 1)
    blen = 1
    for i in range(n):
        d = divided[i]
        if d:
            for j in range(blen):
                coeffs[j] += d * basis[j]
        if i + 1 < n:
            x0 = xs[i]
            for j in range(blen, 0, -1):
                basis[j] = basis[j - 1] - x0 * basis[j]
            basis[0] = -x0 * basis[0]
            blen += 1
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def fractions_to_int_poly(coeffs: Sequence[Fraction]) -> Poly:
    for c in coeffs:
        if c.denominator != 1:
            raise ValueError("expected integer coefficients")
    return trim(int(c) for c in coeffs)


# -- tiny bivariate layer -----------------------------------------------------
#
# A bivariate polynomial in (z, w) with w-degree <= 2 is a tuple of three
# univariate z-polynomials (q0, q1, q2) meaning q0 + q1*w + q2*w^2.

Biv = tuple[Poly, Poly, Poly]


def biv_trim(q: Sequence[Sequence[int]]) -> Biv:
    qs = [trim(c) for c in q]
    while len(qs) < 3:
        qs.append(())
    if len(qs) > 3:
        raise ValueError("w-degree above 2 is not supported")
    return (qs[0], qs[1], qs[2])


def biv_is_zero(q: Biv) -> bool:
    return not (q[0] or q[1] or q[2])


def biv_content(q: Biv) -> int:
    return int_gcd(int_gcd(content(q[0]), content(q[1])), content(q[2]))


def biv_lex_leading(q: Biv) -> int:
    """Leading coefficient in (w-degree, z-degree) lexicographic order."""
    for j in (2, 1, 0):
        if q[j]:
            return q[j][-1]
    raise ValueError("zero polynomial has no leading coefficient")


def biv_normalize(q: Sequence[Sequence[int]]) -> Biv:
    """Integer-primitive form with positive lex-leading coefficient."""
    qt = biv_trim(q)
    if biv_is_zero(qt):
        return qt
    g = biv_content(qt)
    if biv_lex_leading(qt) < 0:
        g = -g
    return biv_trim([tuple(c // g for c in comp) for comp in qt])


def biv_eval_w(q: Biv, w_poly: Sequence[int]) -> Poly:
    """Substitute w -> w_poly(z), returning a univariate polynomial."""
    out = q[0]
    out = add(out, mul(q[1], w_poly))
    out = add(out, mul(q[2], mul(w_poly, w_poly)))
    return out
