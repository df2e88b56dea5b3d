"""Eigenvalue listings against closed-form ladders."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from qgspectra.errors import UnsupportedInputError
from qgspectra.multigraph import MetricGraph
from qgspectra.secular import secular_polynomial
from qgspectra.spectrum import (
    eigenvalues,
    graph_spectrum,
    multiplicity_at,
    spectral_factors,
    unit_circle_angles,
)

F = Fraction


def interval(ell, unit=1):
    return MetricGraph(2, ((0, 1, ell),), F(unit))


def test_interval_ladder():
    # unit interval, natural ends: k = 0, pi, 2 pi, ...
    pts = graph_spectrum(interval(1), count=5)
    assert [p.pi_multiple for p in pts] == [F(0), F(1), F(2), F(3), F(4)]
    assert all(p.multiplicity == 1 for p in pts)


def test_loop_ladder():
    loop = MetricGraph(1, ((0, 0, 1),))
    pts = graph_spectrum(loop, count=5)
    assert [(p.pi_multiple, p.multiplicity) for p in pts] == [
        (F(0), 1),
        (F(2), 2),
        (F(4), 2),
    ]


def test_loop_ladder_fine_unit():
    # same circle of circumference 1, cut into two half arcs
    loop = MetricGraph(1, ((0, 0, 2),), F(1, 2))
    pts = graph_spectrum(loop, kmax=4 * math.pi + 0.1)
    assert [(p.pi_multiple, p.multiplicity) for p in pts] == [
        (F(0), 1),
        (F(2), 2),
        (F(4), 2),
    ]


def test_star_ladder():
    star = MetricGraph(4, ((0, 1, 1), (0, 2, 1), (0, 3, 1)))
    pts = graph_spectrum(star, kmax=2 * math.pi + 0.1)
    assert [(p.pi_multiple, p.multiplicity) for p in pts] == [
        (F(0), 1),
        (F(1, 2), 2),
        (F(1), 1),
        (F(3, 2), 2),
        (F(2), 1),
    ]


def test_complete4_spectrum():
    k4 = MetricGraph(4, tuple((i, j, 1) for i in range(4) for j in range(i + 1, 4)))
    p = secular_polynomial(k4)
    factors = spectral_factors(p)
    assert factors.cyclotomic == ((1, 4), (2, 2))
    assert factors.algebraic == (((3, 2, 3), 3),)
    pts = eigenvalues(p, kmax=7.0)
    theta = math.acos(-1.0 / 3.0)
    assert [p.multiplicity for p in pts] == [1, 3, 2, 3, 4]
    assert abs(pts[1].k - theta) < 1e-10
    assert pts[1].min_poly == (3, 2, 3)
    assert pts[2].pi_multiple == F(1)
    assert abs(pts[3].k - (2 * math.pi - theta)) < 1e-10
    assert pts[4].pi_multiple == F(2)


def test_unit_circle_angles():
    angles = unit_circle_angles((3, 2, 3))
    assert len(angles) == 2
    assert abs(angles[0] - math.acos(-1.0 / 3.0)) < 1e-12
    assert abs(angles[1] - (2 * math.pi - math.acos(-1.0 / 3.0))) < 1e-12
    # cyclotomic-free quartic from a pumpkin-like graph
    angles = unit_circle_angles((3, 0, 2, 0, 3))
    assert len(angles) == 4


def test_count_window_includes_full_last_multiplicity():
    loop = MetricGraph(1, ((0, 0, 1),))
    pts = graph_spectrum(loop, count=4)
    # the window closes on a double eigenvalue and keeps it whole
    assert [(p.pi_multiple, p.multiplicity) for p in pts] == [
        (F(0), 1),
        (F(2), 2),
        (F(4), 2),
    ]


def test_weyl_density():
    rng = random.Random(63)
    for _ in range(8):
        n = rng.randint(2, 4)
        edges = [(rng.randrange(v), v, rng.randint(1, 3)) for v in range(1, n)]
        edges.append((0, n - 1, rng.randint(1, 3)))
        g = MetricGraph(n, tuple(edges))
        kmax = 25.0
        pts = graph_spectrum(g, kmax=kmax)
        total = sum(p.multiplicity for p in pts)
        expected = float(g.total_length()) * kmax / math.pi
        assert abs(total - expected) <= g.num_edges + 2


def test_eigenvalue_argument_validation():
    loop = MetricGraph(1, ((0, 0, 1),))
    p = secular_polynomial(loop)
    with pytest.raises(UnsupportedInputError):
        eigenvalues(p)
    with pytest.raises(UnsupportedInputError):
        eigenvalues(p, kmax=1.0, count=3)
    with pytest.raises(UnsupportedInputError):
        eigenvalues(p, kmax=-1.0)
    with pytest.raises(UnsupportedInputError):
        graph_spectrum(MetricGraph(3, ((0, 1, 1),)), count=2)


def test_spectrum_json():
    pts = graph_spectrum(interval(1), count=2)
    d = pts[1].to_json_dict()
    assert d["pi_multiple"] == [1, 1]
    assert d["multiplicity"] == 1
    assert d["min_poly"] is None


def test_multiplicity_at_known_points():
    # (1 - z)^2: double root at z = 1, nothing elsewhere
    from qgspectra.secular import SecularPolynomial

    p = SecularPolynomial((1, -2, 1), 1, F(1))
    assert multiplicity_at(p, 0, 1) == 2
    assert multiplicity_at(p, 1, 2) == 0

    # complete graph on 4 vertices: z = -1 appears squared
    edges = tuple((u, v, 1) for u in range(4) for v in range(u + 1, 4))
    k4 = secular_polynomial(MetricGraph(4, edges))
    assert multiplicity_at(k4, 1, 2) == 2
    assert multiplicity_at(k4, 0, 1) == 4

    # unit interval: simple roots at z = 1 and z = -1, none at z = i
    p2 = secular_polynomial(interval(1))
    assert multiplicity_at(p2, 0, 1) == 1
    assert multiplicity_at(p2, 1, 2) == 1
    assert multiplicity_at(p2, 1, 4) == 0


def test_multiplicity_at_rejects_unreduced_labels():
    p = secular_polynomial(interval(1))
    with pytest.raises(UnsupportedInputError):
        multiplicity_at(p, 2, 4)
    with pytest.raises(UnsupportedInputError):
        multiplicity_at(p, 3, 2)
    with pytest.raises(UnsupportedInputError):
        multiplicity_at(p, 0, 2)
