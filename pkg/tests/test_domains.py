import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import optimize

from hyplab.core.curves import line_integral
from hyplab.domains import (CORE_GEODESIC, Annulus, ChainOfAnnuli, Channel, Cusp, HalfPlane,
                            SlitRectangle, StolzRegion, Strip, UnitDisc, chain_annuli_lengths,
                            domain_from_json, gamma_path, lens_membership, ray_distance,
                            ray_distance_closed_form, slit_rectangle_waypoints,
                            stolz_contains_euclidean)
from hyplab.errors import ConstructionError, DomainError, RangeError


def test_unit_disc_distance_at_origin():
    assert UnitDisc().boundary_distance(0) == 1.0


def test_distance_outside_raises():
    with pytest.raises(DomainError):
        UnitDisc().boundary_distance(1.5)
    with pytest.raises(DomainError):
        HalfPlane().boundary_distance(-1j)


def test_simple_distances():
    assert Strip(1.0).boundary_distance(0.3j + 7) == pytest.approx(0.7)
    assert Annulus(2.0).boundary_distance(1.5) == pytest.approx(0.5)
    assert HalfPlane().boundary_distance(3 + 2j) == pytest.approx(2.0)


@pytest.mark.parametrize("t", [2.0, 5.0, 20.0])
def test_cusp_distance_matches_nearest_point_search(t):
    eps = 0.5
    dom = Cusp(eps)
    p = 1 + eps

    def d2(x):
        return (x - t) ** 2 + x ** (-2 * p)

    # the nearest point on the upper curve lies within [1, t + 1]
    res = optimize.minimize_scalar(d2, bounds=(1.0, t + 1.0), method="bounded",
                                   options={"xatol": 1e-13})
    oracle = min(math.sqrt(res.fun), t - 1.0)
    assert dom.boundary_distance(t) == pytest.approx(oracle, rel=1e-7)
    if t >= 20:
        assert dom.boundary_distance(t) == pytest.approx(t ** -p, rel=1e-3)


def test_waypoints_start():
    w = slit_rectangle_waypoints(0.5, 3)
    assert w[0] == 0.5
    dom = SlitRectangle(0.5, 10)
    for k, wk in enumerate(w):
        assert wk.imag == 0.0
        assert dom.s(k) < wk.real < dom.s(k + 1)


def test_waypoint_distance_equals_slit_gap_minimum():
    eps = 0.5
    dom = SlitRectangle(eps, 30)
    w = slit_rectangle_waypoints(eps, 10)
    segs = dom.boundary_segments()
    for k in range(1, 10):
        z = w[k]
        # exhaustive oracle: closest point on every segment
        best = math.inf
        for ax, ay, bx, by in segs:
            a, b = complex(ax, ay), complex(bx, by)
            t = np.clip(((z - a) * np.conj(b - a)).real / abs(b - a) ** 2, 0, 1)
            best = min(best, abs(a + t * (b - a) - z))
        assert dom.boundary_distance(z) == pytest.approx(best, abs=1e-15)
        assert best == pytest.approx(0.5 * dom.a(k + 1))


@pytest.mark.parametrize("k", [0, 1, 2, 7])
def test_gamma_length_and_clearance(k):
    eps = 0.5
    dom = SlitRectangle(eps, k + 40)
    g = gamma_path(eps, k, dom)
    assert g.length() == pytest.approx(2.0 + 0.5 * (dom.a(k + 1) + dom.a(k + 2)))
    pts = g.sample(400)
    d_k = 0.5 * (k + 2) ** -(1 + eps)
    assert np.min(dom.boundary_distance(pts)) >= d_k * (1 - 1e-12)


@pytest.mark.parametrize("k", [0, 3, 10])
def test_gamma_hyperbolic_length_bound(k):
    eps = 0.5
    dom = SlitRectangle(eps, k + 40)
    g = gamma_path(eps, k, dom)
    h = line_integral(g, lambda w: 2.0 / dom.boundary_distance(w), tol=1e-8).value
    assert h <= 12.0 * (k + 2) ** (1 + eps)


def test_gammas_never_cross_slits():
    from hyplab.domains import _clear_of_slits
    eps = 0.5
    dom = SlitRectangle(eps, 110)
    for k in range(101):
        assert _clear_of_slits(gamma_path(eps, k, dom), dom, upto=110)


def test_gamma_negative_k():
    with pytest.raises(DomainError):
        gamma_path(0.5, -1)


def test_wrong_parity_is_caught():
    from hyplab.core.curves import Polyline
    from hyplab.domains import _clear_of_slits
    dom = SlitRectangle(0.5, 5)
    w = slit_rectangle_waypoints(0.5, 2)
    # going under slit S_1 runs into it: it rises from the bottom edge
    bad = Polyline((w[0], w[0] - 1j, w[1] - 1j, w[1]))
    assert not _clear_of_slits(bad, dom, upto=5)
    assert isinstance(ConstructionError("x"), RuntimeError)


def test_slit_area_against_indicator():
    eps = 1.0
    dom = SlitRectangle(eps, 200)
    rng = np.random.default_rng(3)
    n = 200_000
    w = rng.uniform(0, 2.0, n) + 1j * rng.uniform(-1.5, 1.5, n)
    frac = np.mean(dom.in_full_domain(w))
    est = frac * 2.0 * 3.0
    s = sum(m ** -2.0 for m in range(1, 200_000))
    assert est == pytest.approx(3 * s, rel=0.01)
    assert dom.area() == pytest.approx(math.pi ** 2 / 2)


@given(st.floats(0.05, 1.2), st.floats(-1.2, 1.2), st.floats(0, 2 * math.pi), st.floats(1e-3, 0.05))
def test_boundary_distance_is_one_lipschitz(x, y, ang, step):
    dom = SlitRectangle(0.5, 30)
    z0 = complex(x, y)
    z1 = z0 + step * complex(math.cos(ang), math.sin(ang))
    if not (dom.contains(z0) and dom.contains(z1)):
        return
    d0, d1 = dom.boundary_distance(z0), dom.boundary_distance(z1)
    assert abs(d1 - d0) <= abs(z1 - z0) * (1 + 1e-12)


def test_channel_distance_is_one_lipschitz():
    dom = Channel.exponential()
    xs = np.linspace(-0.9, 20.0, 4000)
    d = dom.boundary_distance(xs + 0j)
    assert np.all(np.abs(np.diff(d)) <= np.diff(xs) * (1 + 1e-9))


def test_stolz_examples():
    assert stolz_contains_euclidean(2.0, 0.5)
    assert not stolz_contains_euclidean(1.0, 0.5)
    for c in (0.1, 1.0, 10.0):
        assert stolz_contains_euclidean(c, 1e-9)
    with pytest.raises(DomainError):
        stolz_contains_euclidean(0.0, 0.1)


@given(st.floats(0.01, 10), st.floats(0.001, 2), st.floats(0, 1), st.floats(1, 5))
def test_stolz_monotone(c, d, shrink, grow):
    if stolz_contains_euclidean(c, d):
        assert stolz_contains_euclidean(c, d * shrink + 1e-12 * (shrink == 0))
        assert stolz_contains_euclidean(c * grow, d)


def test_lens_on_ray_and_near_it():
    for t in (0.0, 0.5, 0.99):
        assert lens_membership(0.0, 1e-6, t)
    assert lens_membership(0.0, 0.01, 1e-4j)
    assert lens_membership(1.0, 0.1, 0.9 * complex(math.cos(1.0), math.sin(1.0)))


def test_lens_against_grid_oracle():
    z = 0.3j
    t = np.linspace(0.0, 1 - 1e-6, 200_001)
    q = np.abs(z - t) / np.abs(1 - np.conj(z) * t)
    oracle = float(np.min(2 * np.arctanh(q)))
    assert ray_distance(0.0, z) == pytest.approx(oracle, abs=1e-8)
    assert lens_membership(0.0, 0.5, z) == (oracle < 0.5)


@given(st.floats(0, 0.95), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_ray_distance_closed_form(r, phi, theta):
    z = r * complex(math.cos(phi), math.sin(phi))
    assert ray_distance(theta, z) == pytest.approx(ray_distance_closed_form(theta, z), abs=1e-9)


def test_stolz_region_fast_path_agrees():
    reg = StolzRegion(0.4, 0.5)
    rng = np.random.default_rng(9)
    z = 0.99 * np.sqrt(rng.uniform(0, 1, 200)) * np.exp(2j * math.pi * rng.uniform(0, 1, 200))
    fast = reg.contains_fast(z)
    slow = np.array([reg.contains(w) for w in z])
    assert np.array_equal(fast, slow)


def test_chain_first_term():
    E, coarse, exact = chain_annuli_lengths(1.0, 1)
    assert E == pytest.approx(3 * math.pi)
    assert coarse == pytest.approx(1.5 * 4 * math.pi)
    assert exact == pytest.approx(1.5 * CORE_GEODESIC)


def test_chain_ratio_is_constant():
    _, coarse, exact = chain_annuli_lengths(1.5, 500, cumulative=True)
    ratio = coarse / exact
    assert np.max(np.abs(ratio / ratio[0] - 1)) < 1e-12


def test_chain_exponent_beta_one():
    E, coarse, _ = chain_annuli_lengths(1.0, 10_000)
    assert abs(math.log(E) / math.log(coarse) - 0.5) < 0.05


def test_chain_overflow():
    with pytest.raises(RangeError):
        chain_annuli_lengths(400.0, 10)


def test_core_geodesic_matches_annulus_density():
    # the core circle |w| = 1 of the annulus 1/2 < |w| < 2 has length 2 pi^2 / log 4
    from hyplab.metrics import lam_annulus
    dom_R = 2.0
    assert 2 * math.pi * lam_annulus(dom_R, 1.0) == pytest.approx(CORE_GEODESIC)


@pytest.mark.parametrize("dom", [UnitDisc(), HalfPlane(), Strip(0.7), Annulus(3.0), Cusp(0.5),
                                 SlitRectangle(0.5, 12), ChainOfAnnuli(2.0, 50),
                                 Channel.exponential(x_max=10.0, n=201)])
def test_json_round_trip(dom):
    text = dom.to_json()
    json.loads(text)
    back = domain_from_json(text)
    assert type(back) is type(dom)
    assert back.params().keys() == dom.params().keys()
    assert back.to_json() == text


def test_bad_parameters():
    with pytest.raises(DomainError):
        Cusp(0.0)
    with pytest.raises(DomainError):
        SlitRectangle(-1.0)
    with pytest.raises(DomainError):
        Channel(np.array([0.0, 1.0]), np.array([1.0, -1.0]))
