"""Boundary M-functions of metric graphs, two independent ways.

The boundary M-function at a vertex maps the value of a solution there to
its total outward derivative.  Equality of M-functions across vertices is
decided by a pendant-lead signature read off a bivariate secular
determinant; a direct Dirichlet-to-Neumann solve over rational functions in
z serves as the oracle.  The two routes are compared by tests rather than
trusted blindly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalError, UnsupportedInputError, VerificationError
from .exactdet import det_poly_matrix
from .intpoly import (
    Biv,
    Poly,
    add,
    biv_normalize,
    deg,
    div_exact,
    gcd,
    is_zero,
    monic_positive,
    mul,
    mul_many,
    neg,
    sub,
    trim,
)
from .multigraph import MetricGraph
from .secular import bivariate_pendant_secular


@dataclass(frozen=True)
class MSignature:
    """Pendant-lead fingerprint of the M-function at one vertex.

    ``coeffs`` is the w-primitive, sign-normalized part of the bivariate
    lead determinant; two vertices share an M-function exactly when these
    agree over a common unit.  ``discarded`` is the z-only factor divided
    out: it tracks the eigenvalues whose eigenfunctions vanish at the
    vertex and are invisible to the M-function.
    """

    coeffs: Biv
    discarded: Poly
    unit: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit", Fraction(self.unit))
        if self.unit <= 0:
            raise UnsupportedInputError("unit must be positive")
        q0, q1, q2 = self.coeffs
        if q1:
            raise VerificationError("signature must be even in the lead variable")
        if is_zero(q2):
            raise VerificationError("signature must be quadratic in the lead variable")
        if deg(gcd(q0, q2)) > 0:
            raise VerificationError("signature must have no z-only factor left")

    def to_json_dict(self) -> dict:
        sparse = {}
        for j, comp in enumerate(self.coeffs):
            for i, c in enumerate(comp):
                if c:
                    sparse[f"{i},{j}"] = c
        return {
            "unit": [self.unit.numerator, self.unit.denominator],
            "coeffs": sparse,
            "discarded": list(self.discarded),
        }


def m_signature(graph: MetricGraph, vertex: int) -> MSignature:
    """Signature of the M-function at a vertex of a connected graph.

    Attaches a symbolic pendant lead at the vertex and splits the bivariate
    determinant into the lead-sensitive part (the signature) and the z-only
    factor it cannot see (the side channel).
    """
    if not graph.is_connected():
        raise UnsupportedInputError("M-functions are computed for connected graphs")
    q0, q1, q2 = bivariate_pendant_secular(graph, vertex)
    if q1:
        raise InternalError("lead determinant came out odd in the lead variable")
    if is_zero(q0) or is_zero(q2):
        raise InternalError("lead determinant degenerated")
    g = gcd(q0, q2)
    sig = biv_normalize((div_exact(q0, g), (), div_exact(q2, g)))
    return MSignature(sig, monic_positive(g), graph.unit)


def same_m(g1: MetricGraph, v1: int, g2: MetricGraph, v2: int) -> bool:
    """Whether two vertices carry identical M-functions.

    The graphs must already share a length unit; callers rescale first.
    Comparing vertices on graphs of different total length is allowed but
    flagged, since reference cases pair graphs of equal total length.
    """
    if g1.unit != g2.unit:
        raise UnsupportedInputError("graphs must share a length unit; rescale first")
    if g1.total_length() != g2.total_length():
        warnings.warn(
            "comparing M-functions across different total lengths",
            stacklevel=2,
        )
    return m_signature(g1, v1).coeffs == m_signature(g2, v2).coeffs


def hot_classes(
    graphs: Sequence[MetricGraph],
) -> list[tuple[tuple[int, int], ...]]:
    """Group the vertices of several graphs by shared M-function.

    Returns classes of (graph index, vertex) pairs, each sorted, classes
    ordered by their first member; singleton classes are dropped.  All
    graphs must share one length unit.
    """
    units = {g.unit for g in graphs}
    if len(units) > 1:
        raise UnsupportedInputError("graphs must share a length unit; rescale first")
    groups: dict[Biv, list[tuple[int, int]]] = {}
    for gi, g in enumerate(graphs):
        for v in range(g.num_vertices):
            key = m_signature(g, v).coeffs
            groups.setdefault(key, []).append((gi, v))
    classes = [tuple(members) for members in groups.values() if len(members) >= 2]
    classes.sort(key=lambda c: c[0])
    return classes


@dataclass(frozen=True)
class MRational:
    """Reduced rational form of the M-function: M(k) = i k N(z)/D(z)."""

    numer: Poly
    denom: Poly
    vertex: int
    unit: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit", Fraction(self.unit))
        if self.unit <= 0:
            raise UnsupportedInputError("unit must be positive")
        num, den = trim(self.numer), trim(self.denom)
        if is_zero(den):
            raise VerificationError("M-function denominator vanished")
        if is_zero(num):
            num, den = (), (1,)
        else:
            g = gcd(num, den)
            num, den = div_exact(num, g), div_exact(den, g)
        if den[-1] < 0:
            num, den = neg(num), neg(den)
        object.__setattr__(self, "numer", num)
        object.__setattr__(self, "denom", den)

    def equals(self, other: "MRational") -> bool:
        """Same function; the vertex ids may differ."""
        return (
            self.numer == other.numer
            and self.denom == other.denom
            and self.unit == other.unit
        )

    def to_json_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "unit": [self.unit.numerator, self.unit.denominator],
            "numer": list(self.numer),
            "denom": list(self.denom),
        }


_RZERO = ((), (1,))


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    num, den = trim(num), trim(den)
    if is_zero(den):
        raise InternalError("zero denominator in rational arithmetic")
    if is_zero(num):
        return _RZERO
    g = gcd(num, den)
    num, den = div_exact(num, g), div_exact(den, g)
    if den[-1] < 0:
        num, den = neg(num), neg(den)
    return num, den


def _radd(a: tuple[Poly, Poly], b: tuple[Poly, Poly]) -> tuple[Poly, Poly]:
    return _reduce(add(mul(a[0], b[1]), mul(b[0], a[1])), mul(a[1], b[1]))


def _rmul(a: tuple[Poly, Poly], b: tuple[Poly, Poly]) -> tuple[Poly, Poly]:
    return _reduce(mul(a[0], b[0]), mul(a[1], b[1]))


def _rneg(a: tuple[Poly, Poly]) -> tuple[Poly, Poly]:
    return (neg(a[0]), a[1])


def _one_minus(e: int) -> Poly:
    return (1,) + (0,) * (e - 1) + (-1,)


def _one_plus(e: int) -> Poly:
    return (1,) + (0,) * (e - 1) + (1,)


def _edge_terms(ell: int) -> tuple[tuple[Poly, Poly], tuple[Poly, Poly]]:
    # outward derivative at one end of an edge of length ell, per unit ik:
    # own value times (1+z^2l)/(1-z^2l), far value times -2 z^l/(1-z^2l)
    den = _one_minus(2 * ell)
    own = (_one_plus(2 * ell), den)
    far = ((0,) * ell + (-2,), den)
    return own, far


def _loop_term(ell: int) -> tuple[Poly, Poly]:
    # both ends of a self-loop together: 2 (1-z^l)/(1+z^l)
    return ((2,) + (0,) * (ell - 1) + (-2,), _one_plus(ell))


def m_rational(graph: MetricGraph, vertex: int) -> MRational:
    """Direct Dirichlet-to-Neumann solve for the M-function at a vertex.

    Imposes value 1 at the vertex and derivative balance everywhere else,
    eliminates the interior values by Cramer's rule over integer
    polynomials, and returns the total outward derivative at the vertex as
    a reduced rational function.
    """
    if not 0 <= vertex < graph.num_vertices:
        raise UnsupportedInputError("vertex out of range")
    if not graph.is_connected():
        raise UnsupportedInputError("M-functions are computed for connected graphs")
    others = [w for w in range(graph.num_vertices) if w != vertex]
    col = {w: j for j, w in enumerate(others)}
    n = len(others)
    rows: list[list[tuple[Poly, Poly]]] = [[_RZERO] * (n + 1) for _ in range(n)]

    def acc(w: int, x: int, term: tuple[Poly, Poly]) -> None:
        if w == vertex:
            return
        i = col[w]
        if x == vertex:
            rows[i][n] = _radd(rows[i][n], _rneg(term))
        else:
            rows[i][col[x]] = _radd(rows[i][col[x]], term)

    for u, v, ell in graph.edges:
        if u == v:
            acc(u, u, _loop_term(ell))
        else:
            own, far = _edge_terms(ell)
            acc(u, u, own)
            acc(u, v, far)
            acc(v, v, own)
            acc(v, u, far)

    matrix: list[list[Poly]] = []
    rhs: list[Poly] = []
    for entries in rows:
        d = mul_many([e[1] for e in entries])
        cleared = [mul(e[0], div_exact(d, e[1])) for e in entries]
        matrix.append(cleared[:n])
        rhs.append(cleared[n])

    det_full: Poly = (1,)
    if n:
        det_full = det_poly_matrix(matrix)
        if is_zero(det_full):
            raise InternalError("interior matching system is singular")

    solved: dict[int, tuple[Poly, Poly]] = {}

    def value_at(x: int) -> tuple[Poly, Poly]:
        if x not in solved:
            j = col[x]
            replaced = [row[:j] + [rhs[i]] + row[j + 1 :] for i, row in enumerate(matrix)]
            solved[x] = _reduce(det_poly_matrix(replaced), det_full)
        return solved[x]

    total = _RZERO
    for u, v, ell in graph.edges:
        if u == vertex and v == vertex:
            total = _radd(total, _loop_term(ell))
        elif u == vertex or v == vertex:
            x = v if u == vertex else u
            own, far = _edge_terms(ell)
            total = _radd(total, own)
            total = _radd(total, _rmul(far, value_at(x)))
    return MRational(total[0], total[1], vertex, graph.unit)


def signature_of_rational(m: MRational) -> Biv:
    """Signature predicted by the rational route.

    Attaching a pendant of length c turns the eigenvalue condition into
    N (1 + w^2) + D (1 - w^2) = 0 with w = z^c, so the lead-sensitive part
    is (N + D) + (N - D) w^2 up to normalization.
    """
    return biv_normalize((add(m.numer, m.denom), (), sub(m.numer, m.denom)))
