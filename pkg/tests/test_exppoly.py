"""Exponential-polynomial ring: algebra, calculus, serialization."""

import cmath
import random

import pytest

from qnls import exppoly
from qnls.exppoly import Bound


def _random_sum(rng, n, terms=3):
    out = exppoly.zero(n)
    for _ in range(terms):
        mu = tuple(rng.uniform(-2, 2) + 1j * rng.uniform(-0.3, 0.3) for _ in range(n))
        deg = tuple(rng.randint(0, 2) for _ in range(n))
        coeff = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
        out = exppoly.add(out, exppoly.monomial(deg, coeff, mu))
    return out


def _points(rng, n, count=5):
    return [tuple(rng.uniform(-3, 3) for _ in range(n)) for _ in range(count)]


def test_plane_wave_value():
    f = exppoly.plane_wave((0.5, -1.2))
    x = (0.3, 0.7)
    assert abs(f.eval(x) - cmath.exp(1j * (0.5 * 0.3 - 1.2 * 0.7))) < 1e-15


def test_ring_axioms_pointwise():
    rng = random.Random(3)
    f = _random_sum(rng, 2)
    g = _random_sum(rng, 2)
    h = _random_sum(rng, 2)
    fg = exppoly.mul(f, g)
    for x in _points(rng, 2):
        assert abs(fg.eval(x) - f.eval(x) * g.eval(x)) < 1e-12
        lhs = exppoly.mul(f, exppoly.add(g, h)).eval(x)
        rhs = exppoly.add(exppoly.mul(f, g), exppoly.mul(f, h)).eval(x)
        assert abs(lhs - rhs) < 1e-12


def test_derivative_leibniz():
    rng = random.Random(4)
    f = _random_sum(rng, 2)
    g = _random_sum(rng, 2)
    lhs = exppoly.derivative(exppoly.mul(f, g), 1)
    rhs = exppoly.add(
        exppoly.mul(exppoly.derivative(f, 1), g),
        exppoly.mul(f, exppoly.derivative(g, 1)),
    )
    for x in _points(rng, 2):
        assert abs(lhs.eval(x) - rhs.eval(x)) < 1e-11


def test_integrate_constant_bounds_against_closed_form():
    f = exppoly.plane_wave((0.7,))
    g = exppoly.integrate(f, 1, Bound.const(-1.0), Bound.const(2.0))
    want = (cmath.exp(0.7j * 2) - cmath.exp(-0.7j)) / (0.7j)
    assert abs(g.eval((0.0,)) - want) < 1e-14


def test_integrate_coordinate_bound_fundamental_theorem():
    # with f depending on x1 only: d/dx2 int_{-1}^{x2} f(t) dt = f(x2)
    rng = random.Random(5)
    f = exppoly.zero(2)
    for _ in range(3):
        mu = (rng.uniform(-2, 2), 0.0)
        deg = (rng.randint(0, 2), 0)
        f = exppoly.add(f, exppoly.monomial(deg, rng.uniform(-1, 1), mu))
    F = exppoly.integrate(f, 1, Bound.const(-1.0), Bound.coord(2))
    dF = exppoly.derivative(F, 2)
    at_x2 = exppoly.substitute(f, 1, Bound.coord(2))
    for x in _points(rng, 2):
        assert abs(dF.eval(x) - at_x2.eval(x)) < 1e-11


def test_substitute_and_remap_pointwise():
    rng = random.Random(6)
    f = _random_sum(rng, 2)
    at = exppoly.substitute(f, 1, Bound.const(0.4))
    for x in _points(rng, 2):
        assert abs(at.eval(x) - f.eval((0.4, x[1]))) < 1e-12
    swapped = exppoly.remap(f, {1: 2, 2: 1}, 2)
    for x in _points(rng, 2):
        assert abs(swapped.eval(x) - f.eval((x[1], x[0]))) < 1e-12


def test_canonicalize_merges_cancellations():
    f = exppoly.plane_wave((0.5,))
    g = exppoly.scale(-1.0, f)
    total = exppoly.canonicalize(exppoly.add(f, g))
    assert not total.terms


def test_json_round_trip():
    rng = random.Random(7)
    f = _random_sum(rng, 3)
    back = exppoly.from_json(exppoly.to_json(f), 3)
    for x in _points(rng, 3):
        assert abs(back.eval(x) - f.eval(x)) < 1e-13


def test_degree_cap_enforced():
    f = exppoly.monomial((exppoly.DEGREE_CAP,), 1.0, (0.0,))
    with pytest.raises(ValueError):
        exppoly.mul(f, exppoly.monomial((1,), 1.0, (0.0,)))
