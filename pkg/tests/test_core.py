import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from hyplab.core import (MoebiusMap, Polyline, PowerSeriesFunction, RadialSegment, Sampled,
                         disc_automorphism, integrate_adaptive, integrate_radial, line_integral,
                         moebius_apply, random_polynomial, series_area, series_eval_deriv)
from hyplab.errors import DomainError, PoleError, QuadratureError

disc_pt = st.tuples(st.floats(0, 0.95), st.floats(0, 2 * math.pi)).map(lambda p: p[0] * complex(math.cos(p[1]), math.sin(p[1])))


# --- Möbius maps ---------------------------------------------------------

def test_identity_map_fixes_points():
    assert moebius_apply(MoebiusMap.identity(), 0.3 + 0.1j) == pytest.approx(0.3 + 0.1j)


def test_automorphism_at_origin_is_identity():
    m = disc_automorphism(0)
    assert moebius_apply(m, 0.5) == pytest.approx(0.5)


def test_automorphism_sends_centre_to_zero():
    assert abs(moebius_apply(disc_automorphism(0.5), 0.5)) < 1e-15
    assert moebius_apply(disc_automorphism(0.5), 0) == pytest.approx(-0.5)


def test_automorphism_derivative_matches_symbolic():
    # d/dw (w - a)/(1 - a w) = (1 - a^2)/(1 - a w)^2; at w = a this is 1/(1 - a^2)
    assert disc_automorphism(0.5).derivative(0.5) == pytest.approx(4 / 3, rel=1e-14)


def test_automorphism_rejects_outside_centre():
    with pytest.raises(DomainError):
        disc_automorphism(1.0)


def test_pole_raises():
    m = MoebiusMap(1, 0, 1, -0.5)
    with pytest.raises(PoleError):
        moebius_apply(m, 0.5)


@given(disc_pt, disc_pt, disc_pt)
def test_composition_is_associative(a, b, z):
    m1, m2 = disc_automorphism(a), disc_automorphism(b)
    assert abs(moebius_apply(m1.compose(m2), z) - moebius_apply(m1, moebius_apply(m2, z))) < 1e-12


@given(disc_pt, st.floats(0, 2 * math.pi))
def test_automorphism_preserves_circle(a, phi):
    w = moebius_apply(disc_automorphism(a), complex(math.cos(phi), math.sin(phi)))
    assert abs(abs(w) - 1) <= 1e-12


# --- power series --------------------------------------------------------

@pytest.mark.parametrize("coeffs,z,expected", [
    ([0, 1], 0.4, (0.4, 1.0)),
    ([0, 0, 1], 0.5, (0.25, 1.0)),
    ([0, 1, 0.5], 0.2, (0.22, 1.2)),
])
def test_series_values(coeffs, z, expected):
    v, d = series_eval_deriv(PowerSeriesFunction(coeffs), z)
    assert v == pytest.approx(expected[0], abs=1e-15)
    assert d == pytest.approx(expected[1], abs=1e-15)


def test_series_eval_outside_disc():
    with pytest.raises(DomainError):
        series_eval_deriv(PowerSeriesFunction([0, 1]), 1.0)


def test_area_values():
    assert series_area(PowerSeriesFunction([0, 1])) == pytest.approx(math.pi)
    assert series_area(PowerSeriesFunction([3])) == 0.0
    assert series_area(PowerSeriesFunction([0, 1, 0.5])) == pytest.approx(1.5 * math.pi)


def _area_by_quadrature(f):
    # polar tensor rule: trapezoid in angle (exact for the trig polynomial), Gauss in radius
    m = 4 * f.order + 8
    ang = np.exp(2j * math.pi * np.arange(m) / m)
    r, w = np.polynomial.legendre.leggauss(4 * f.order + 8)
    r, w = 0.5 * (r + 1), 0.5 * w
    vals = np.abs(f.eval_deriv(r[:, None] * ang)[1]) ** 2
    return float(np.sum(w * r * vals.mean(axis=1)) * 2 * math.pi)


@given(st.integers(1, 10), st.integers(0, 10_000))
def test_area_matches_brute_force(deg, seed):
    f = random_polynomial(np.random.default_rng(seed), deg)
    a = series_area(f)
    assert abs(a - _area_by_quadrature(f)) <= 1e-6 * max(a, 1e-300)


def test_series_round_trip():
    f = random_polynomial(np.random.default_rng(3), 6)
    g = PowerSeriesFunction.from_list(f.to_list())
    assert np.array_equal(f.coeffs, g.coeffs)


# --- quadrature ----------------------------------------------------------

def test_integrate_constant():
    assert integrate_adaptive(lambda t: np.ones_like(t), 0, 1, tol=1e-12).value == pytest.approx(1.0, abs=1e-14)


def test_integrate_hyperbolic_length():
    res = integrate_adaptive(lambda t: 2 / (1 - t * t), 0, 0.5)
    assert res.value == pytest.approx(math.log(3), abs=1e-12)


def test_integrate_endpoint_singularity():
    res = integrate_adaptive(lambda t: t ** -0.5, 0, 1, tol=1e-10)
    assert abs(res.value - 2) <= 1e-8
    assert res.error_estimate >= 0


def test_budget_exceeded_keeps_partial():
    with pytest.raises(QuadratureError) as info:
        integrate_adaptive(lambda t: np.sin(1 / t) / t, 1e-9, 1, tol=1e-14, max_intervals=20)
    assert math.isfinite(info.value.partial)


@pytest.mark.parametrize("fn", [lambda t: np.exp(-t) * np.cos(5 * t), lambda t: np.sqrt(t), lambda t: 1 / (1.01 - t)])
def test_matches_scipy(fn):
    ours = integrate_adaptive(fn, 0, 1, tol=1e-11).value
    ref = integrate.quad(fn, 0, 1, epsabs=1e-13, limit=200)[0]
    assert ours == pytest.approx(ref, abs=1e-10)


@given(st.sampled_from([1e-4, 1e-6, 1e-8]), st.floats(0.5, 5.0))
def test_tighter_tolerance_never_larger_error(tol, k):
    fn = lambda t: np.abs(t - 0.3) ** 0.5 * np.cos(k * t)  # noqa: E731
    loose = integrate_adaptive(fn, 0, 1, tol=tol)
    tight = integrate_adaptive(fn, 0, 1, tol=tol / 100)
    assert tight.error_estimate <= loose.error_estimate


def test_radial_integral_near_boundary():
    # ∫_0^r 2/(1-t^2) dt = log((1+r)/(1-r)), with r within 1e-9 of 1
    s = 1e-9
    res = integrate_radial(lambda t, s_: 2 / (s_ * (1 + t)), s_end=s)
    assert res.value == pytest.approx(math.log((2 - s) / s), rel=1e-11)


# --- curves --------------------------------------------------------------

def test_curve_invariants():
    with pytest.raises(ValueError):
        RadialSegment(0.0, 1.0)
    with pytest.raises(ValueError):
        Polyline([0j])
    with pytest.raises(ValueError):
        Sampled([0, 0], [0, 1])


def test_line_integral_of_one_is_length():
    p = Polyline([0, 1, 1 + 1j, 2j])
    assert line_integral(p, lambda z: np.ones(np.shape(z))).value == pytest.approx(p.length(), abs=1e-12)
    assert p.length() == pytest.approx(1 + 1 + math.hypot(1, 1))


def test_line_integral_radial():
    res = line_integral(RadialSegment(1.0, 0.5), lambda z: 2 / (1 - np.abs(z) ** 2))
    assert res.value == pytest.approx(math.log(3), abs=1e-12)
