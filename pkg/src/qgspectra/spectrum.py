"""Eigenvalue listings derived from exact secular polynomials.

The roots of a secular polynomial all lie on the unit circle, so each root is
an angle; the eigenvalue ladder of the graph is every ``k >= 0`` with
``k * unit`` congruent to a root angle mod 2 pi.  Root angles split into two
kinds and the split is computed exactly:

- roots of unity, recognized by peeling cyclotomic factors off each
  squarefree level (an exhaustive, certified search: candidate orders are
  bounded through the totient), yielding eigenvalues that are exact rational
  multiples of pi;
- remaining algebraic roots, labeled by their primitive minimal polynomial
  and located by bisection of the real-valued rotation of the factor on the
  circle, certified by hitting the full root count.

The zero eigenvalue is a special case: for a connected graph its multiplicity
is 1 regardless of the order of the root z = 1, which instead governs the
multiplicities of the positive eigenvalues congruent to it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError, UnsupportedInputError, VerificationError
from .intpoly import (
    Poly,
    cyclotomic,
    cyclotomic_candidates,
    deg,
    divides,
    div_exact,
    palindromic_sign,
    squarefree_decomposition,
    trim,
)
from .multigraph import MetricGraph
from .secular import SecularPolynomial, secular_polynomial


@dataclass(frozen=True)
class SpectrumFactors:
    """Squarefree-refined factorization of a secular polynomial.

    ``cyclotomic`` holds (order n, multiplicity) pairs; ``algebraic`` holds
    (primitive irreducible factor, multiplicity) pairs whose roots are not
    roots of unity.
    """

    cyclotomic: tuple[tuple[int, int], ...]
    algebraic: tuple[tuple[Poly, int], ...]


@dataclass(frozen=True)
class SpectralPoint:
    """One distinct eigenvalue: exact when it is a rational multiple of pi."""

    k: float
    multiplicity: int
    pi_multiple: Fraction | None
    min_poly: Poly | None
    root_index: int | None

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "multiplicity": self.multiplicity,
            "pi_multiple": None
            if self.pi_multiple is None
            else [self.pi_multiple.numerator, self.pi_multiple.denominator],
            "min_poly": None if self.min_poly is None else list(self.min_poly),
            "root_index": self.root_index,
        }


def _sympy_irreducibles(p: Poly) -> list[Poly]:
    import sympy

    z = sympy.Symbol("z")
    _, factors = sympy.Poly(list(reversed(p)), z).factor_list()
    out = []
    for fac, exp in factors:
        if exp != 1:
            raise InternalError("squarefree input factored with a repeated part")
        coeffs = trim(tuple(int(c) for c in reversed(fac.all_coeffs())))
        if deg(coeffs) > 0:
            out.append(coeffs)
    return out


def spectral_factors(p: SecularPolynomial) -> SpectrumFactors:
    """Split the secular polynomial into cyclotomic and algebraic parts."""
    cyc: dict[int, int] = {}
    alg: list[tuple[Poly, int]] = []
    for f, mult in squarefree_decomposition(p.coeffs):
        rest = f
        for n in cyclotomic_candidates(deg(rest)):
            if deg(rest) < 1:
                break
            c = cyclotomic(n)
            if deg(c) <= deg(rest) and divides(c, rest):
                rest = div_exact(rest, c)
                cyc[n] = cyc.get(n, 0) + mult
        if deg(rest) > 0:
            for piece in sorted(_sympy_irreducibles(rest)):
                alg.append((piece, mult))
    return SpectrumFactors(
        cyclotomic=tuple(sorted(cyc.items())),
        algebraic=tuple(alg),
    )


def unit_circle_angles(f: Poly, tol: float = 1e-12) -> list[float]:
    """Angles in (0, 2 pi) of the roots of f, all assumed on the unit circle.

    f must be squarefree with real coefficients, palindromic up to sign, and
    must not vanish at z = 1 or z = -1 (those belong to cyclotomic factors).
    Rotating f onto the real axis turns root finding into sign-change
    bisection; sampling doubles until exactly deg(f) roots are bracketed.
    """
    d = deg(f)
    if d < 1:
        return []
    s = palindromic_sign(f)
    if s is None:
        raise UnsupportedInputError("factor is not palindromic up to sign")

    def rotated(theta: float) -> float:
        val = 0j
        zpow = cmath.exp(1j * theta)
        for c in reversed(f):
            val = val * zpow + c
        val *= cmath.exp(-0.5j * d * theta)
        return val.real if s == 1 else val.imag

    samples = 8 * d
    while samples <= (1 << 22):
        grid = [2.0 * math.pi * i / samples for i in range(samples + 1)]
        vals = [rotated(t) for t in grid]
        brackets = [
            (grid[i], grid[i + 1])
            for i in range(samples)
            if vals[i] == 0.0 or (vals[i] > 0) != (vals[i + 1] > 0)
        ]
        if len(brackets) == d:
            out = []
            for lo, hi in brackets:
                flo = rotated(lo)
                for _ in range(64):
                    mid = 0.5 * (lo + hi)
                    fmid = rotated(mid)
                    if fmid == 0.0:
                        lo = hi = mid
                        break
                    if (fmid > 0) == (flo > 0):
                        lo, flo = mid, fmid
                    else:
                        hi = mid
                out.append(0.5 * (lo + hi))
            return out
        samples *= 2
    raise VerificationError("could not isolate all roots of a secular factor on the circle")


def _positive_ladder(theta_over_2pi: float, unit: float, kmax: float) -> list[float]:
    out = []
    k = 2.0 * math.pi * theta_over_2pi / unit
    step = 2.0 * math.pi / unit
    while k <= kmax + 1e-12:
        if k > 1e-12:
            out.append(k)
        k += step
    return out


def eigenvalues(
    p: SecularPolynomial,
    kmax: float | None = None,
    count: int | None = None,
    zero_multiplicity: int = 1,
) -> list[SpectralPoint]:
    """Distinct eigenvalues in increasing order with multiplicities.

    Exactly one of ``kmax`` and ``count`` must be given; ``count`` is a
    cumulative multiplicity target (the zero eigenvalue included).
    """
    if (kmax is None) == (count is None):
        raise UnsupportedInputError("give exactly one of kmax and count")
    if kmax is not None and kmax < 0:
        raise UnsupportedInputError("kmax must be nonnegative")
    if count is not None and count < 1:
        raise UnsupportedInputError("count must be positive")

    factors = spectral_factors(p)
    angle_sources: list[tuple[Fraction | None, float, int, Poly | None, int | None]] = []
    for n, mult in factors.cyclotomic:
        for a in range(n):
            if math.gcd(a, n) == 1 or n == 1:
                angle_sources.append((Fraction(a, n), a / n, mult, None, None))
    for f, mult in factors.algebraic:
        for idx, theta in enumerate(unit_circle_angles(f)):
            angle_sources.append((None, theta / (2.0 * math.pi), mult, f, idx))

    unit = float(p.unit)
    phys_length = float(p.unit) * (p.degree // 2)

    def collect(limit: float) -> list[SpectralPoint]:
        points = [
            SpectralPoint(0.0, zero_multiplicity, Fraction(0), None, None)
        ]
        for frac, angle, mult, f, idx in angle_sources:
            if frac is not None:
                k = Fraction(2) * frac / p.unit
                step = Fraction(2) / p.unit
                while float(k) * math.pi <= limit + 1e-12:
                    if k > 0:
                        points.append(
                            SpectralPoint(float(k) * math.pi, mult, k, None, None)
                        )
                    k += step
            else:
                for k in _positive_ladder(angle, unit, limit):
                    points.append(SpectralPoint(k, mult, None, f, idx))
        points.sort(key=lambda sp: sp.k)
        return points

    if kmax is not None:
        return collect(float(kmax))

    limit = math.pi * (count + 4) / phys_length + 1.0 if phys_length > 0 else 1.0
    while True:
        points = collect(limit)
        total = 0
        for i, sp in enumerate(points):
            total += sp.multiplicity
            if total >= count:
                return points[: i + 1]
        if phys_length == 0:
            return points
        limit *= 2


def graph_spectrum(
    graph: MetricGraph,
    kmax: float | None = None,
    count: int | None = None,
) -> list[SpectralPoint]:
    """Eigenvalues of a connected metric graph with natural conditions."""
    if not graph.is_connected():
        raise UnsupportedInputError("spectrum listing is defined here for connected graphs")
    p = secular_polynomial(graph)
    return eigenvalues(p, kmax=kmax, count=count, zero_multiplicity=1)


def multiplicity_at(p: SecularPolynomial, a: int, n: int) -> int:
    """Multiplicity of the secular root exp(2 pi i a / n).

    The label must be a reduced fraction with 0 <= a < n, so every point on
    the unit circle has one name; (0, 1) is z = 1.  Rational angles are the
    roots of cyclotomic polynomials, so the answer is the exact exponent of
    the n-th one in p.  Returns 0 when the point is not a root at all.
    """
    if n < 1 or not 0 <= a < n or math.gcd(a, n) != 1:
        raise UnsupportedInputError(
            "root label must be a reduced fraction a/n with 0 <= a < n"
        )
    phi = cyclotomic(n)
    rest = p.coeffs
    mult = 0
    while deg(rest) >= deg(phi) and divides(phi, rest):
        rest = div_exact(rest, phi)
        mult += 1
    return mult
