import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from hyplab.core import PowerSeriesFunction, random_polynomial, series_area
from hyplab.domains import Annulus, HalfPlane, Strip, UnitDisc
from hyplab.errors import DivergenceError, DomainError, FitError, RangeError
from hyplab.lengths import (AnnulusCover, GrowthFit, LengthReport, ell, ell_from_gap,
                            euclidean_length_radial, fit_growth_exponent, image_hyperbolic_length,
                            keogh_bound, lp_scale_norm, radial_lp_norm, radius_from_ell)

seeds = st.integers(0, 10_000)


def test_euclidean_length_identity():
    f = PowerSeriesFunction([0, 1])
    for r in (0.0, 0.3, 0.9, 0.999):
        assert euclidean_length_radial(f, r, theta=1.1) == pytest.approx(r, abs=1e-12)


def test_euclidean_length_square():
    f = PowerSeriesFunction([0, 0, 1])
    assert euclidean_length_radial(f, 0.5) == pytest.approx(0.25, rel=1e-12)


def test_euclidean_length_against_scipy():
    f = random_polynomial(np.random.default_rng(1), 7)
    th = 0.7
    u = complex(math.cos(th), math.sin(th))
    ref = integrate.quad(lambda t: abs(f.eval_deriv(t * u)[1]), 0, 0.95, epsabs=1e-13, limit=200)[0]
    assert euclidean_length_radial(f, 0.95, th, tol=1e-12) == pytest.approx(ref, rel=1e-9)


@given(seeds, st.floats(0, 0.98), st.floats(0, 0.98))
def test_euclidean_length_monotone(seed, r1, r2):
    f = random_polynomial(np.random.default_rng(seed), 6)
    lo, hi = sorted((r1, r2))
    assert euclidean_length_radial(f, lo) <= euclidean_length_radial(f, hi) + 1e-12


def test_ell_values():
    assert ell(0.0) == 0.0
    assert ell(0.5) == pytest.approx(math.log(3))
    with pytest.raises(DomainError):
        ell(1.0)


def test_ell_minus_log_gap_tends_to_log2():
    diffs = [ell_from_gap(s) - math.log(1 / s) for s in (1e-2, 1e-4, 1e-8, 1e-12)]
    assert abs(diffs[-1] - math.log(2)) < 1e-11
    assert all(abs(a - math.log(2)) >= abs(b - math.log(2)) for a, b in zip(diffs, diffs[1:]))


@given(st.floats(0, 30))
def test_radius_from_ell_inverts(L):
    r, s = radius_from_ell(L)
    assert ell_from_gap(s) == pytest.approx(L, abs=1e-10)


def test_H_annulus_cover_equals_ell():
    for r in (0.1, 0.5, 0.9, 0.99):
        rep = image_hyperbolic_length(AnnulusCover(), Annulus(), r, tol=1e-12)
        assert rep.exact
        assert rep.hyperbolic_lower == pytest.approx(ell(r), rel=1e-9)
        assert rep.euclidean == pytest.approx(ell(r), rel=1e-9)


def test_H_identity_equals_ell():
    rep = image_hyperbolic_length(PowerSeriesFunction([0, 1]), UnitDisc(), 0.9, theta=2.0, tol=1e-12)
    assert rep.hyperbolic_upper == pytest.approx(ell(0.9), rel=1e-10)


@settings(max_examples=25)
@given(seeds, st.floats(0.1, 0.99), st.floats(0, 2 * math.pi))
def test_schwarz_pick_H_below_ell(seed, r, theta):
    f = random_polynomial(np.random.default_rng(seed), 6)
    scale = 0.95 / float(np.sum(np.abs(f.coeffs)))
    g = PowerSeriesFunction(np.asarray(f.coeffs) * scale)
    rep = image_hyperbolic_length(g, UnitDisc(), r, theta, tol=1e-10)
    assert rep.hyperbolic_upper <= ell(r) * (1 + 1e-9)


def test_H_strip_through_halfplane_map():
    # log((1+z)/(1-z)) maps the disc onto the strip |Im| < pi/2 isometrically
    c = [0.0] + [2.0 / n if n % 2 else 0.0 for n in range(1, 400)]
    f = PowerSeriesFunction(c)
    rep = image_hyperbolic_length(f, Strip(math.pi / 2), 0.5, tol=1e-12)
    assert rep.hyperbolic_lower == pytest.approx(ell(0.5), rel=1e-9)


def test_H_leaving_domain():
    f = PowerSeriesFunction([0, 1j])
    with pytest.raises(RangeError) as exc:
        image_hyperbolic_length(f, HalfPlane(), 0.5, theta=math.pi)
    assert exc.value.t == 0.0


def test_length_report_band_order():
    with pytest.raises(ValueError):
        LengthReport(1.0, 2.0, 1.0, 0.5)


@pytest.mark.parametrize("seed", range(5))
def test_lp_scale_norm_p2_is_root_area(seed):
    rng = np.random.default_rng(seed)
    f = random_polynomial(rng, int(rng.integers(1, 11)))
    assert lp_scale_norm(f, 2.0, tol=1e-12) == pytest.approx(math.sqrt(series_area(f)), rel=1e-8)


def test_lp_scale_norm_examples():
    assert lp_scale_norm(PowerSeriesFunction([3.0]), 2.0) == 0.0
    assert lp_scale_norm(PowerSeriesFunction([0, 1]), 2.0, tol=1e-12) == pytest.approx(math.sqrt(math.pi))


def test_lp_scale_norm_p3_against_polar_quadrature():
    # f = z: (|f'|/lambda)^3 lambda^2 = (1-r^2)/2, integrated over the disc gives pi/4
    v = lp_scale_norm(PowerSeriesFunction([0, 1]), 3.0, tol=1e-12)
    ref = integrate.quad(lambda r: 2 * math.pi * r * (1 - r * r) / 2, 0, 1)[0]
    assert v ** 3 == pytest.approx(ref, rel=1e-9)


def test_lp_scale_norm_p_one_diverges():
    with pytest.raises(DivergenceError):
        lp_scale_norm(PowerSeriesFunction([0, 1]), 1.0)


def test_radial_lp_norm_examples():
    f = PowerSeriesFunction([0, 1])
    assert radial_lp_norm(f, 1.0) == pytest.approx(1.0, rel=1e-9)
    assert radial_lp_norm(f, 2.0) == pytest.approx(math.sqrt(1 / 3), rel=1e-9)


def test_radial_lp_norm_finite_for_decaying_polynomial():
    f = random_polynomial(np.random.default_rng(4), 9)
    for p in (1.0, 1.5, 2.0, 3.0, 6.0):
        assert math.isfinite(radial_lp_norm(f, p))


def test_radial_lp_norm_bad_p():
    with pytest.raises(DomainError):
        radial_lp_norm(PowerSeriesFunction([0, 1]), 0.5)


def test_keogh_example():
    f = PowerSeriesFunction([0, 1])
    b = keogh_bound(f, 0.5, 1)
    assert b == pytest.approx(math.sqrt(math.log(4 / 3)))
    assert b == pytest.approx(0.5364, abs=1e-4)
    assert b >= euclidean_length_radial(f, 0.5)


def test_keogh_small_r_and_N1_form():
    f = random_polynomial(np.random.default_rng(2), 8)
    assert keogh_bound(f, 0.0, 1) == 0.0
    r = 0.7
    assert keogh_bound(f, r, 1) == pytest.approx(math.sqrt(f.area() / math.pi * math.log(1 / (1 - r * r))))
    with pytest.raises(DomainError):
        keogh_bound(f, r, 9)


@settings(max_examples=40)
@given(seeds, st.floats(0.0, 0.999), st.integers(1, 8))
def test_keogh_dominates(seed, r, N):
    f = random_polynomial(np.random.default_rng(seed), 8)
    b = keogh_bound(f, r, N)
    n = np.arange(len(f.coeffs))
    assert b >= float(np.sum(np.abs(f.coeffs[1:]) * r ** n[1:])) - 1e-12
    assert b >= euclidean_length_radial(f, r) - 1e-12


@settings(max_examples=30)
@given(seeds, st.sampled_from([1.5, 2.0, 3.0]), st.floats(0.05, 0.999), st.floats(0, 2 * math.pi))
def test_holder_chain(seed, p, r, theta):
    f = random_polynomial(np.random.default_rng(seed), int(np.random.default_rng(seed).integers(1, 11)))
    q = p / (p - 1)
    E = euclidean_length_radial(f, r, theta, tol=1e-11)
    assert E <= radial_lp_norm(f, p, theta, r=r) * ell(r) ** (1 / q) * (1 + 1e-9)


def test_fit_examples():
    L = np.geomspace(1, 1e4, 20)
    fit = fit_growth_exponent(np.column_stack([L, L]))
    assert fit.exponent == pytest.approx(1.0)
    assert fit.residual < 1e-12
    assert fit.meaningful
    fit = fit_growth_exponent(np.column_stack([L, np.sqrt(L)]))
    assert fit.exponent == pytest.approx(0.5)
    assert isinstance(fit, GrowthFit) and fit.sample_count == 20


def test_fit_chain_beta_two():
    from hyplab.domains import chain_annuli_lengths
    E, L, _ = chain_annuli_lengths(2.0, 10_000, cumulative=True)
    idx = np.unique(np.geomspace(1, 10_000, 40).astype(int)) - 1
    fit = fit_growth_exponent(np.column_stack([L[idx], E[idx]]))
    assert abs(fit.exponent - 2 / 3) < 0.05


def test_fit_errors():
    with pytest.raises(FitError):
        fit_growth_exponent([(1, 1), (1, 2), (1, 3)])
    with pytest.raises(FitError):
        fit_growth_exponent([(1, 1), (2, 2)])
    narrow = fit_growth_exponent([(1, 1), (2, 2), (3, 3)])
    assert not narrow.meaningful
