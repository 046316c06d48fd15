import json
import math

import numpy as np
import pytest
from scipy import integrate

from hyplab.core import PowerSeriesFunction, disc_automorphism, random_polynomial
from hyplab.domains import Annulus, ChainOfAnnuli, Channel, Cusp, SlitRectangle, Strip, UnitDisc
from hyplab.errors import ConfigurationError, DomainError
from hyplab.lengths import AnnulusCover
from hyplab.report import InequalityReport, combine
from hyplab.verify import (FAMILIES, check_bounded_hyperbolic, check_covering_annulus,
                           check_example_exponents, check_invariant_length, check_lipschitz,
                           check_lp_growth, check_mz, check_neighborhood, check_omitted_point,
                           check_ray_in_finite_area, check_stolz_containment, decay_probe,
                           harnack_sweep, little_bloch_probe, mean_value_sweep, run_suite)
from hyplab.verify.checks import mz_constant, omitted_point_constant
from hyplab.verify.regions import segment_chart, tube_area
from hyplab.verify.suite import dirichlet_test_set, polynomial_test_set, thread_cap


def part(rep, name):
    return next(p for p in rep.params["parts"] if p["name"] == name)


# --- pointwise Lipschitz bound ----------------------------------------------

@pytest.mark.parametrize("z0", [0, 0.3, 0.5 + 0.2j, -0.9j])
def test_lipschitz_automorphism_is_sharp(z0):
    rep = check_lipschitz(disc_automorphism(z0), z0)
    assert rep.lhs == pytest.approx(0.5, abs=1e-12)
    assert rep.rhs == pytest.approx(0.5, abs=1e-12)
    assert rep.passed


def test_lipschitz_identity():
    rep = check_lipschitz(PowerSeriesFunction([0, 1]), 0)
    assert (rep.lhs, rep.rhs) == (0.5, pytest.approx(0.5))


def test_lipschitz_outside():
    with pytest.raises(DomainError):
        check_lipschitz(PowerSeriesFunction([0, 1]), 1.0)


# --- E^2 <= (A/pi) ell ------------------------------------------------------

def test_invariant_length_identity():
    rep = check_invariant_length(PowerSeriesFunction([0, 1]), 0.9)
    assert rep.lhs == pytest.approx(0.81)
    assert rep.rhs == pytest.approx(math.log(19))
    assert rep.passed


def test_invariant_length_small_r():
    f = random_polynomial(np.random.default_rng(0), 5)
    ratios = [check_invariant_length(f, r).lhs / check_invariant_length(f, r).rhs for r in (1e-2, 1e-4)]
    assert ratios[1] < ratios[0] < 0.05


# --- rays in finite-area domains --------------------------------------------

def test_ray_in_cusp_two_points():
    rep = check_ray_in_finite_area(Cusp(1.0), [5.0, 50.0])
    assert rep.passed and rep.params["domain"] == "cusp"


def test_ray_in_cusp_sub_reports():
    dom = Cusp(1.0)
    # the eps = 1 cusp has width 2/t^2
    assert dom.width_integral(2.0, 50.0) == pytest.approx(1 - 2 / 50, rel=1e-10)
    rep = check_ray_in_finite_area(dom, np.geomspace(3, 300, 6))
    assert rep.params["cases"] == 6 * 3 + 2
    assert rep.passed


def test_ray_in_strip_is_rejected():
    with pytest.raises(ConfigurationError):
        check_ray_in_finite_area(Strip(0.5), [1.0, 2.0])


def test_ray_in_channel():
    rep = check_ray_in_finite_area(Channel.exponential(x_max=20.0, n=2001), [2.0, 6.0, 10.0, 14.0])
    assert rep.passed


# --- neighbourhood of a segment ---------------------------------------------

def test_neighborhood_d_E():
    rep = check_neighborhood(PowerSeriesFunction([0, 0, 1]), 0, 0.8, 2.0)
    assert rep.params["d_E"] == pytest.approx(math.tanh(1.0))
    assert rep.params["d_E"] == pytest.approx(0.7616, abs=1e-4)


def test_neighborhood_degenerate_segment():
    rep = check_neighborhood(PowerSeriesFunction([0, 0, 1]), 0.3, 0.3, 1.0)
    assert rep.lhs == 0.0 and rep.rhs == 0.0 and rep.passed


def test_neighborhood_square():
    rep = check_neighborhood(PowerSeriesFunction([0, 0, 1]), 0, 0.8, 1.0)
    assert rep.passed and rep.slack > 0
    assert rep.lhs == pytest.approx(0.64, rel=1e-9)


def _mc_area(inside, n=200_000, seed=0):
    rng = np.random.default_rng(seed)
    z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    z = z[np.abs(z) < 1]
    hits = np.concatenate([inside(c) for c in np.array_split(z, 50)])
    p = hits.sum() / n
    return 4 * p, 4 * math.sqrt(p * (1 - p) / n)


def test_tube_area_against_monte_carlo():
    rho, d = 1.0, 0.5
    s = np.linspace(0, rho, 600)
    t = np.tanh(s / 2)

    def inside(z):
        q = np.abs(z[:, None] - t) / np.abs(1 - np.conj(z[:, None]) * t)
        return np.min(2 * np.arctanh(q), axis=1) < d

    mc, se = _mc_area(inside)
    val, err = tube_area(lambda z: np.ones(np.shape(z)), rho, d)
    assert err < 1e-8
    assert abs(val - mc) < 4 * se + 1e-3


def test_stolz_area_against_monte_carlo():
    from hyplab.domains import StolzRegion
    reg = StolzRegion(0.0, 0.5)
    mc, se = _mc_area(reg.contains_fast)
    val, _ = tube_area(lambda z: np.ones(np.shape(z)), math.inf, 0.5)
    assert abs(val - mc) < 4 * se


def test_tube_area_zero_length_is_a_disc():
    val, _ = tube_area(lambda z: np.ones(np.shape(z)), 0.0, 1.0)
    assert val == pytest.approx(math.pi * math.tanh(0.5) ** 2, rel=1e-12)


def test_segment_chart_maps_endpoints():
    z0, z1 = 0.2 - 0.3j, -0.5 + 0.4j
    psi, dpsi, rho = segment_chart(z0, z1)
    assert psi(0.0) == pytest.approx(z0)
    assert psi(math.tanh(rho / 2)) == pytest.approx(z1)
    q = abs(z1 - z0) / abs(1 - z0.conjugate() * z1)
    assert rho == pytest.approx(2 * math.atanh(q))


# --- omitted point ------------------------------------------------------------

def test_omitted_point_example():
    rep = check_omitted_point(PowerSeriesFunction([2, 1]), 0, 0.5)
    dist = part(rep, "omitted_point.distance")
    assert rep.passed
    assert dist["lhs"] == pytest.approx(0.5 * math.log(1.25))
    assert dist["lhs"] == pytest.approx(0.1116, abs=1e-4)
    ref = integrate.quad(lambda t: 2 / (1 - t * t), 0, 0.5)[0]
    assert dist["params"]["rho_quadrature"] == pytest.approx(ref, rel=1e-8)
    assert dist["rhs"] == pytest.approx(math.log(3))


def test_omitted_point_at_origin_is_zero():
    rep = check_omitted_point(PowerSeriesFunction([2, 1]), 0, 0.0)
    assert rep.lhs == 0.0 and rep.rhs == 0.0 and rep.passed


def test_omitted_point_constant():
    assert omitted_point_constant(0.5) == pytest.approx(math.e / math.sqrt(math.tanh(0.25)))


def test_omitted_point_requires_univalence():
    with pytest.raises(ConfigurationError):
        check_omitted_point(PowerSeriesFunction([2, 0, 1]), 0, 0.5)
    with pytest.raises(ConfigurationError):
        check_omitted_point(PowerSeriesFunction([0, 1]), 0.2, 0.5)


# --- Stolz region integral ----------------------------------------------------

def test_mz_constant_values():
    assert mz_constant(1.0) == pytest.approx(5 * math.e / (math.pi * math.sinh(0.5) ** 2))
    assert mz_constant(1.0) == pytest.approx(15.93, abs=0.01)
    assert abs(mz_constant(8.0) / (20 * 8 / math.pi) - 1) < 0.05


def test_mz_identity():
    rep = check_mz(PowerSeriesFunction([0, 1]), 1.0)
    main = part(rep, "mz")
    assert main["lhs"] == pytest.approx(1 / 3, abs=1e-6)
    assert main["rhs"] == pytest.approx(mz_constant(1.0) * main["params"]["area_stolz"])
    assert rep.params["euclidean_integral"] == pytest.approx(0.5, abs=1e-6)
    assert rep.passed


def test_mz_bad_d():
    with pytest.raises(DomainError):
        check_mz(PowerSeriesFunction([0, 1]), 0.0)


def test_stolz_containment():
    assert check_stolz_containment(2.0, 0.5, samples=500).passed
    assert check_stolz_containment(1.0, 1 / 3, samples=500).passed
    with pytest.raises(ConfigurationError):
        check_stolz_containment(1.0, 0.5)


# --- L^p growth ---------------------------------------------------------------

def test_lp_growth_identity_derivative_part():
    rep = check_lp_growth(PowerSeriesFunction([0, 1]), 2.0)
    a = next(p for p in rep.params["parts"] if p["name"] == "lp_growth.derivative")
    assert a["rhs"] == pytest.approx(4.0, rel=1e-8)
    assert a["lhs"] == pytest.approx(1 / 3, rel=1e-8)
    assert a["pass"]


def test_lp_growth_weighted_part_value():
    # E(r) = r for f = z; the weighted integral is int_0^1 r^2/((1-r) log^2(1-r)) dr
    rep = check_lp_growth(PowerSeriesFunction([0, 1]), 2.0)
    c = next(p for p in rep.params["parts"] if p["name"] == "lp_growth.weighted")
    ref = integrate.quad(lambda u: (1 - math.exp(-u)) ** 2 / u ** 2, 0, math.inf, limit=200)[0]
    assert ref == pytest.approx(2 * math.log(2), rel=1e-8)
    assert c["params"]["body"] + c["params"]["tail_bound"] == pytest.approx(ref, rel=0.05)
    assert c["lhs"] >= ref - 1e-6  # tails are bounded above, never dropped
    assert c["rhs"] == pytest.approx(1.0)


def test_lp_growth_constant():
    rep = check_lp_growth(PowerSeriesFunction([1.5]), 2.0)
    for p in rep.params["parts"]:
        assert p["lhs"] == 0.0 and p["rhs"] == 0.0
    assert rep.passed


@pytest.mark.parametrize("p", [1.5, 3.0])
def test_lp_growth_random(p):
    for f in polynomial_test_set(3):
        assert check_lp_growth(f, p).passed


def test_lp_growth_bad_p():
    with pytest.raises(ConfigurationError):
        check_lp_growth(PowerSeriesFunction([0, 1]), 1.0)


# --- annulus covering map ------------------------------------------------------

def test_covering_annulus_values():
    from hyplab.lengths import euclidean_length_radial
    f = AnnulusCover()
    assert euclidean_length_radial(f, 0.5, tol=1e-12) == pytest.approx(math.log(3), rel=1e-10)
    assert euclidean_length_radial(f, 0.999, tol=1e-12) == pytest.approx(7.600, abs=1e-3)
    rep = check_covering_annulus([0.0, 0.5, 0.999])
    assert rep.passed and rep.params["cases"] == 9


# --- bounded image domains -----------------------------------------------------

def test_bounded_annulus_cover_equality():
    rep = check_bounded_hyperbolic(AnnulusCover(), Annulus(), [0.5, 0.9])
    assert rep.passed
    assert rep.params["mu"] == pytest.approx(1.0)
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-8)


def test_bounded_identity():
    rep = check_bounded_hyperbolic(PowerSeriesFunction([0, 1]), UnitDisc(), [0.9])
    assert rep.params["mu"] == pytest.approx(2.0)
    assert rep.lhs == pytest.approx(0.9)
    assert rep.rhs == pytest.approx(math.log(19) / 2)


def test_bounded_square_half():
    assert check_bounded_hyperbolic(PowerSeriesFunction([0, 0, 0.5]), UnitDisc(), [0.5, 0.9, 0.99]).passed


def test_bounded_requires_bounded_domain():
    with pytest.raises(ConfigurationError):
        check_bounded_hyperbolic(PowerSeriesFunction([0, 1]), Strip(1.0), [0.5])


# --- example exponents ---------------------------------------------------------

def test_cusp_exponent():
    fit, rep = check_example_exponents(Cusp(1.0))
    assert rep.passed
    assert fit.exponent >= 1 / 3 - 0.02


def test_chain_exponent():
    fit, rep = check_example_exponents(ChainOfAnnuli(1.0, 10_000))
    assert rep.passed
    assert abs(fit.exponent - 0.5) <= 0.05


def test_slit_cap_at_k10():
    from hyplab.verify.checks import slit_table
    ks, h, cap = slit_table(0.5, 10)
    assert cap[10] == pytest.approx(12 * 12 ** 1.5)
    assert cap[10] == pytest.approx(498.8, abs=0.1)
    assert np.all(h <= cap)


def test_slit_report_with_given_gap():
    _, rep = check_example_exponents(SlitRectangle(0.5), k_max=10, m_gap=1.0)
    assert rep.passed and rep.params["M_gap"] == 1.0


def test_example_exponents_unknown():
    with pytest.raises(ConfigurationError):
        check_example_exponents(UnitDisc())


# --- probes ---------------------------------------------------------------------

def test_harnack_sweep():
    rep = harnack_sweep(n=20_000)
    assert rep.passed and rep.params["violations"] == 0


def test_mean_value_sweep():
    polys = [random_polynomial(np.random.default_rng(1), 4)]
    assert mean_value_sweep(polys, [0, 0.3 + 0.1j], [0.5, 1.0]).passed


def test_decay_and_little_bloch():
    for f in dirichlet_test_set(3):
        assert decay_probe(f).passed
        assert little_bloch_probe(f).passed


# --- reports and suite ----------------------------------------------------------

def test_report_round_trip():
    rep = check_lipschitz(PowerSeriesFunction([0, 1, 0.2]), 0.3 + 0.1j)
    back = InequalityReport.from_json(rep.to_json())
    assert back.to_dict() == json.loads(rep.to_json())
    assert back.passed == rep.passed and back.slack == rep.slack


def test_report_tolerance_recorded():
    rep = InequalityReport.compare("x", 1.0, 1.0 - 1e-10, 1e-9)
    assert rep.passed and rep.params["tolerance"] == 1e-9
    assert not InequalityReport.compare("x", 1.0, 0.9, 1e-9).passed
    assert not InequalityReport.compare("x", math.nan, 1.0).passed


def test_combine_keeps_worst():
    a = InequalityReport.compare("a", 0.0, 1.0)
    b = InequalityReport.compare("b", 2.0, 1.0)
    c = combine("both", [a, b])
    assert not c.passed and c.params["worst_case"] == "b" and c.params["failures"] == 1
    with pytest.raises(ValueError):
        combine("none", [])


def test_families_are_deterministic():
    one = [r.to_dict() for r in FAMILIES["lipschitz"]()]
    two = [r.to_dict() for r in FAMILIES["lipschitz"]()]
    assert one == two


def test_run_suite_selection(monkeypatch):
    out = run_suite(only=["harnack", "decay"], threads=1)
    assert list(out) == ["harnack", "decay"]
    assert all(v[0].passed for v in out.values())
    with pytest.raises(KeyError):
        run_suite(only=["nope"])
    monkeypatch.setenv("HYPLAB_THREADS", "1")
    assert thread_cap() == 1


def test_run_suite_threaded_matches_serial():
    serial = run_suite(only=["harnack", "little_bloch"], threads=1)
    threaded = run_suite(only=["harnack", "little_bloch"], threads=2)
    for k in serial:
        assert serial[k][0].to_dict() == threaded[k][0].to_dict()
