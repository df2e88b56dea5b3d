"""Exact secular polynomials for metric graphs with natural vertex conditions.

Standing waves on a metric graph whose edge lengths are integer multiples of a
common unit ``u`` are governed by ``det(I - S D(z))`` with ``z = exp(i k u)``:
``S`` is the valence-derived bond scattering matrix (continuity of the wave
plus vanishing sum of outgoing derivatives at every vertex) and ``D(z)`` the
diagonal of ``z**length`` per directed bond.  The determinant is a polynomial
in ``z`` with rational coefficients and a known denominator, so everything
here is computed exactly over the integers.

Conventions fixed by this module and relied on everywhere else:

- edge ``i`` of a ``MetricGraph`` owns directed bonds ``2*i`` (stored
  orientation) and ``2*i + 1`` (reversed); bond ``b`` reverses to ``b ^ 1``;
- ``scattering[b2][b1]`` is the amplitude from bond ``b1`` into bond ``b2``,
  nonzero only when ``b1`` ends at the vertex where ``b2`` starts;
- the polynomial is stored as integer ``coeffs`` over a positive integer
  ``denom`` with ``gcd(content, denom) == 1``, so equal polynomials have
  equal stored forms.

The row-scaled integer determinant is interpolated from exact evaluations
(CRT-certified), while ``secular_at`` recomputes single values by direct
fraction-free elimination over the rationals: two independent routes that the
tests hold against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

import numpy as np

from .errors import UnsupportedInputError, VerificationError
from .exactdet import det_poly_matrix, det_rational
from .intpoly import (
    Poly,
    add,
    content,
    deflate,
    eval_at,
    eval_complex,
    inflate,
    mul_many,
    palindromic_sign,
    scale,
    squarefree_decomposition,
    sub,
    trim,
)
from .multigraph import MetricGraph, common_rescale


def _bond_data(edges) -> tuple[list[int], list[int], list[int]]:
    origins: list[int] = []
    termini: list[int] = []
    lengths: list[int] = []
    for u, v, ell in edges:
        origins += [u, v]
        termini += [v, u]
        lengths += [ell, ell]
    return origins, termini, lengths


def bond_scattering(graph: MetricGraph) -> list[list[Fraction]]:
    """Bond scattering matrix: amplitude 2/valence - 1 on back-reflection.

    Entry ``[b2][b1]`` is nonzero exactly when bond ``b1`` ends at the vertex
    where ``b2`` starts; there it equals ``2/d`` minus 1 if ``b2`` is the
    reversal of ``b1``.  Real orthogonal for every multigraph.
    """
    origins, termini, _ = _bond_data(graph.edges)
    d = graph.valences()
    nb = len(origins)
    rows = []
    for b2 in range(nb):
        v = origins[b2]
        row = []
        for b1 in range(nb):
            if termini[b1] != v:
                row.append(Fraction(0))
            else:
                val = Fraction(2, d[v])
                if b1 == (b2 ^ 1):
                    val -= 1
                row.append(val)
        rows.append(row)
    return rows


def _scaled_secular_rows(
    graph: MetricGraph,
    marked: frozenset[int] = frozenset(),
    wval: int = 0,
) -> list[list[Poly]]:
    """Rows of valence * (I - S D(z)), entries in Z[z].

    Scaling row ``b2`` by the valence of its origin clears every denominator:
    the diagonal holds ``d`` (minus ``2 z**len`` on a self-loop bond), and an
    incoming bond contributes ``-2 z**len``, or ``(d - 2) z**len`` for the
    direct reversal.  Edges listed in ``marked`` contribute the constant
    ``wval`` in place of ``z**len``.
    """
    origins, termini, lengths = _bond_data(graph.edges)
    d = graph.valences()
    nb = len(origins)
    rows: list[list[Poly]] = []
    for b2 in range(nb):
        v = origins[b2]
        dv = d[v]
        row: list[Poly] = []
        for b1 in range(nb):
            base = dv if b1 == b2 else 0
            if termini[b1] == v:
                coef = -2 + (dv if b1 == (b2 ^ 1) else 0)
            else:
                coef = 0
            if coef == 0:
                row.append((base,) if base else ())
            elif (b1 >> 1) in marked:
                const = base + coef * wval
                row.append((const,) if const else ())
            else:
                ell = lengths[b1]
                entry = [0] * (ell + 1)
                entry[0] = base
                entry[ell] = coef
                row.append(trim(tuple(entry)))
        rows.append(row)
    return rows


def _denominator(graph: MetricGraph) -> int:
    q = 1
    for dv in graph.valences():
        q *= dv**dv
    return q


@dataclass(frozen=True)
class SecularPolynomial:
    """Stored form of det(I - S D(z)): integer coeffs over a positive denom.

    ``coeffs`` is ascending with nonzero ends, ``coeffs[0] == denom``, and the
    content shares no factor with ``denom``; ``unit`` records the length unit
    behind ``z = exp(i k unit)``.
    """

    coeffs: tuple[int, ...]
    denom: int
    unit: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit", Fraction(self.unit))
        if self.unit <= 0:
            raise UnsupportedInputError("unit must be positive")
        c = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if self.denom < 1:
            raise VerificationError("denominator must be positive")
        if not c or trim(c) != c:
            raise VerificationError("coefficients must be trimmed and nonempty")
        if c[0] != self.denom:
            raise VerificationError("value at z = 0 must be 1")
        if abs(c[-1]) != self.denom:
            raise VerificationError("leading coefficient must be the denominator up to sign")
        if len(c) % 2 == 0:
            raise VerificationError("degree must be even (twice the total length)")
        if int_gcd(content(c), self.denom) != 1:
            raise VerificationError("stored form must be reduced")
        if palindromic_sign(c) is None:
            raise VerificationError("coefficients must be palindromic up to sign")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def palindrome_sign(self) -> int:
        s = palindromic_sign(self.coeffs)
        assert s is not None
        return s

    def evaluate(self, z: complex) -> complex:
        return eval_complex(self.coeffs, z) / self.denom

    def eval_exact(self, t: Fraction | int) -> Fraction:
        return Fraction(eval_at(self.coeffs, Fraction(t)), self.denom)

    def with_unit(self, new_unit: Fraction) -> SecularPolynomial:
        """Re-express over a finer unit dividing the current one."""
        ratio = self.unit / Fraction(new_unit)
        if ratio.denominator != 1 or ratio < 1:
            raise UnsupportedInputError("new unit must divide the current unit")
        m = ratio.numerator
        if m == 1:
            return self
        return SecularPolynomial(inflate(self.coeffs, m), self.denom, Fraction(new_unit))

    def deflated(self) -> tuple[int, Poly]:
        """Largest m with coeffs in z**m, and the compressed coefficients."""
        return deflate(self.coeffs)

    def fingerprint(self) -> tuple[Fraction, Poly, int]:
        """Rescale-invariant key: equal fingerprints mean equal spectra.

        Deflation undoes unit refinement, so graphs over different units
        compare directly: (unit * m, compressed coeffs, denom).
        """
        m, q = self.deflated()
        return (self.unit * m, q, self.denom)

    def root_circle_deviation(self) -> float:
        """Largest | |root| - 1 | over the squarefree part, numerically.

        The squarefree part matters: companion-matrix roots of high
        multiplicity factors are far too blurred to certify anything.
        """
        parts = [p for p, _ in squarefree_decomposition(self.coeffs)]
        f = mul_many(parts) if parts else ()
        if len(f) < 2:
            return 0.0
        scale = max(abs(x) for x in f)
        desc = [x / scale for x in reversed(f)]
        roots = np.roots(desc)
        if roots.size == 0:
            return 0.0
        return float(np.max(np.abs(np.abs(roots) - 1.0)))

    def validate(self, tol: float = 1e-9) -> None:
        dev = self.root_circle_deviation()
        if dev > tol:
            raise VerificationError(
                f"secular roots strayed {dev:.3e} from the unit circle (tol {tol:.1e})"
            )

    def to_json_dict(self) -> dict:
        return {
            "unit": [self.unit.numerator, self.unit.denominator],
            "denom": self.denom,
            "coeffs": list(self.coeffs),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> SecularPolynomial:
        num, den = data["unit"]
        return cls(tuple(data["coeffs"]), data["denom"], Fraction(num, den))


def secular_polynomial(graph: MetricGraph, validate: bool = True) -> SecularPolynomial:
    """Exact secular polynomial of a metric graph.

    The row-scaled integer determinant is interpolated from CRT-certified
    evaluations and then reduced against the known valence-product
    denominator.  With ``validate`` the structural invariants plus the
    numerical roots-on-unit-circle check run before returning.
    """
    if graph.num_edges == 0:
        return SecularPolynomial((1,), 1, graph.unit)
    total = graph.total_length_units()
    rows = _scaled_secular_rows(graph)
    r = det_poly_matrix(rows, degree_bound=2 * total)
    q_full = _denominator(graph)
    if not r or r[0] <= 0:
        raise VerificationError("secular determinant lost its value at z = 0")
    g0 = int_gcd(content(r), q_full)
    coeffs = tuple(x // g0 for x in r)
    result = SecularPolynomial(coeffs, q_full // g0, graph.unit)
    if validate:
        if result.degree != 2 * total:
            raise VerificationError("secular degree must be twice the total length")
        result.validate()
    return result


def secular_at(graph: MetricGraph, t: Fraction | int) -> Fraction:
    """Value of det(I - S D(t)) by rational elimination; independent of
    the interpolated route."""
    t = Fraction(t)
    scattering = bond_scattering(graph)
    _, _, lengths = _bond_data(graph.edges)
    nb = len(lengths)
    powers = [t ** lengths[b] for b in range(nb)]
    rows = [
        [
            (1 if b1 == b2 else 0) - scattering[b2][b1] * powers[b1]
            for b1 in range(nb)
        ]
        for b2 in range(nb)
    ]
    return det_rational(rows)


def bivariate_pendant_secular(
    graph: MetricGraph, vertex: int
) -> tuple[Poly, Poly, Poly]:
    """Secular determinant with a marked lead attached at a vertex.

    The lead's two bonds carry a second variable ``w`` instead of a power of
    ``z``; the result is ``(q0, q1, q2)`` with ``Q = q0 + q1 w + q2 w**2``,
    recovered from evaluations at ``w in {0, 1, 2}``.  Substituting
    ``w = z**m`` gives the plain secular determinant of the graph with a
    pendant edge of length ``m`` attached, up to a constant factor.
    """
    if not 0 <= vertex < graph.num_vertices:
        raise UnsupportedInputError("vertex out of range")
    n = graph.num_vertices
    lead = MetricGraph(n + 1, graph.edges + ((vertex, n, 1),), graph.unit)
    marked = frozenset({graph.num_edges})
    bound = 2 * graph.total_length_units()
    vals = []
    for wval in (0, 1, 2):
        rows = _scaled_secular_rows(lead, marked=marked, wval=wval)
        vals.append(det_poly_matrix(rows, degree_bound=bound))
    q0 = vals[0]
    twice_q2 = add(sub(vals[2], scale(vals[1], 2)), q0)
    if any(x % 2 for x in twice_q2):
        raise VerificationError("lead determinant is not quadratic in the lead variable")
    q2 = tuple(x // 2 for x in twice_q2)
    q1 = sub(sub(vals[1], q0), q2)
    return (trim(q0), trim(q1), trim(q2))


def is_isospectral(g1: MetricGraph, g2: MetricGraph) -> bool:
    """Exact spectral equality: over a common unit, identical stored secular
    polynomials.

    Graphs of different total length are incomparable (callers rescale
    first); that case raises instead of answering.
    """
    a, b = common_rescale(g1, g2)
    p1 = secular_polynomial(a, validate=False)
    p2 = secular_polynomial(b, validate=False)
    return p1.coeffs == p2.coeffs and p1.denom == p2.denom
