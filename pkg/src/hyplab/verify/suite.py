"""Default test sets and the family registry behind ``hyplab verify``."""
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..core.moebius import disc_automorphism
from ..core.series import PowerSeriesFunction, random_polynomial
from ..domains import Annulus, ChainOfAnnuli, Channel, Cusp, SlitRectangle, UnitDisc
from ..lengths import AnnulusCover
from ..report import InequalityReport, combine
from . import checks

SEED = 20240517


def dirichlet_test_set(count=10, degree=10, seed=SEED):
    """Seeded random polynomials with coefficients decaying like n^-1.5."""
    rng = np.random.default_rng(seed)
    return [random_polynomial(rng, degree) for _ in range(count)]


def polynomial_test_set(count=20, max_degree=10, seed=SEED + 1):
    """Seeded random polynomials with degrees drawn from 1..max_degree."""
    rng = np.random.default_rng(seed)
    return [random_polynomial(rng, int(rng.integers(1, max_degree + 1))) for _ in range(count)]


def _disc_sample(rng, n, radius=0.999):
    return radius * np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * math.pi * rng.uniform(0, 1, n))


# ---------------------------------------------------------------------------
# Families: each takes a tolerance override (or None) and returns reports
# ---------------------------------------------------------------------------

def family_lipschitz(tol=None):
    reps = [checks.check_lipschitz(disc_automorphism(z0), z0, tol) for z0 in (0, 0.3, 0.5 + 0.2j)]
    rng = np.random.default_rng(SEED + 2)
    for _ in range(5):
        f = random_polynomial(rng, 8)
        reps.append(checks.lipschitz_sweep(f, _disc_sample(rng, 1000), tol))
    return reps


def family_invariant_length(tol=None):
    rng = np.random.default_rng(SEED + 3)
    return [checks.check_invariant_length(random_polynomial(rng, int(rng.integers(1, 11))), r, tol)
            for _ in range(50) for r in (0.5, 0.9, 0.99, 0.999)]


def family_ray_finite_area(tol=None):
    return [checks.check_ray_in_finite_area(Cusp(1.0), np.geomspace(3.0, 1e3, 12), tol),
            checks.check_ray_in_finite_area(Channel.exponential(), np.linspace(1.0, 25.0, 13), tol)]


def family_neighborhood(tol=None):
    reps = [checks.check_neighborhood(PowerSeriesFunction([0, 0, 1]), 0, 0.8, 1.0, tol)]
    rng = np.random.default_rng(SEED + 4)
    for f in dirichlet_test_set(5):
        z0, z1 = _disc_sample(rng, 2, 0.9)
        for d in (0.5, 2.0):
            reps.append(checks.check_neighborhood(f, z0, z1, d, tol))
    return reps


def family_omitted_point(tol=None):
    maps = [(PowerSeriesFunction([2, 1]), 0.0),
            (PowerSeriesFunction([2, 1, 0.05]), 0.0),
            (PowerSeriesFunction([1, 0.5]), -0.6 + 0.1j)]
    return [checks.check_omitted_point(f, w, r, th, tol=tol)
            for f, w in maps for r in (0.5, 0.9, 0.99) for th in (0.0, math.pi / 2, math.pi)]


def family_mz(tol=None):
    reps = [checks.check_mz(f, d, tol=tol) for f in polynomial_test_set() for d in (0.5, 1.0)]
    ratio = checks.mz_constant(8.0) / (20.0 * 8.0 / math.pi)
    reps.append(InequalityReport.compare("mz.large_d_constant", abs(ratio - 1.0), 0.05, 0.0,
                                         {"d": 8.0, "ratio": ratio}))
    return reps


def family_lp_growth(tol=None):
    return [checks.check_lp_growth(f, p, tol=tol)
            for f in polynomial_test_set(10) for p in (1.5, 2.0, 3.0)]


def family_covering_annulus(tol=None):
    return [checks.check_covering_annulus([0.0, 0.1, 0.5, 0.9, 0.99, 0.999], tol)]


def family_bounded_hyperbolic(tol=None):
    rs = [0.5, 0.9, 0.99]
    return [checks.check_bounded_hyperbolic(AnnulusCover(), Annulus(), rs, tol=tol),
            checks.check_bounded_hyperbolic(PowerSeriesFunction([0, 1]), UnitDisc(), rs, tol=tol),
            checks.check_bounded_hyperbolic(PowerSeriesFunction([0, 0, 0.5]), UnitDisc(), rs, tol=tol)]


def family_example_exponents(tol=None):
    from ..geodesics import crosscut_reach
    m_gap = crosscut_reach(20)
    reps = []
    for eps in (0.5, 1.0):
        reps.append(checks.check_example_exponents(Cusp(eps), tol=tol)[1])
        reps.append(checks.check_example_exponents(SlitRectangle(eps), m_gap=m_gap, tol=tol)[1])
    for beta in (1.0, 2.0):
        reps.append(checks.check_example_exponents(ChainOfAnnuli(beta, 10_000), tol=tol)[1])
    return reps


def family_harnack(tol=None):
    return [checks.harnack_sweep(tol=1e-12 if tol is None else tol)]


def family_mean_value(tol=None):
    rng = np.random.default_rng(SEED + 5)
    polys = [random_polynomial(rng, deg) for deg in (2, 5, 8)]
    g = np.linspace(-0.6, 0.6, 5)
    centres = (g[:, None] + 1j * g[None, :]).ravel()
    return [checks.mean_value_sweep(polys, centres, (0.5, 1.0, 2.0), 1e-6 if tol is None else tol)]


def family_decay(tol=None):
    return [checks.decay_probe(f, tol=1e-12 if tol is None else tol) for f in dirichlet_test_set()]


def family_little_bloch(tol=None):
    return [checks.little_bloch_probe(f, tol=0.0 if tol is None else tol) for f in dirichlet_test_set()]


def family_stolz_containment(tol=None):
    return [checks.check_stolz_containment(c, d) for c, d in ((1.0, 0.25), (1.0, 1.0 / 3.0), (2.0, 0.5))]


def family_geodesics(tol=None):
    from .. import geodesics as geo
    reps = [geo.disc_level_check(a, b, 1 / 128) for a, b in ((0.0, math.pi), (0.3, 2.5))]
    Dg, Eg, alpha = geo.square_separation_pair(1 / 64)
    reps.append(geo.separation_check(Dg, Eg, alpha))
    fam = geo.random_square_family(20)
    coarse = geo.crosscut_reach(fam, h=1 / 64)
    fine = geo.crosscut_reach(fam, h=1 / 128)
    change = abs(fine - coarse) / coarse
    reps.append(InequalityReport.compare("crosscut_stability", change, 0.10, 0.0,
                                         {"reach_h64": coarse, "reach_h128": fine}))
    return reps


FAMILIES = {
    "lipschitz": family_lipschitz,
    "invariant_length": family_invariant_length,
    "ray_finite_area": family_ray_finite_area,
    "neighborhood": family_neighborhood,
    "omitted_point": family_omitted_point,
    "mz": family_mz,
    "lp_growth": family_lp_growth,
    "covering_annulus": family_covering_annulus,
    "bounded_hyperbolic": family_bounded_hyperbolic,
    "example_exponents": family_example_exponents,
    "harnack": family_harnack,
    "mean_value": family_mean_value,
    "decay": family_decay,
    "little_bloch": family_little_bloch,
    "stolz_containment": family_stolz_containment,
    "geodesics": family_geodesics,
}


def thread_cap():
    raw = os.environ.get("HYPLAB_THREADS", "").strip()
    n = os.cpu_count() or 1
    if raw:
        try:
            n = max(1, min(n, int(raw)))
        except ValueError:
            pass
    return n


def _run_family(name, tol):
    t0 = time.perf_counter()
    reps = FAMILIES[name](tol)
    return name, combine(name, reps), reps, time.perf_counter() - t0


def run_suite(only=None, tolerances=None, threads=None):
    """Run the named families (all by default).

    Returns {name: (summary, reports, seconds)} in the order requested.
    """
    names = list(FAMILIES) if not only else list(only)
    unknown = [n for n in names if n not in FAMILIES]
    if unknown:
        raise KeyError(f"unknown check family: {', '.join(unknown)}")
    tolerances = tolerances or {}
    workers = min(len(names), threads or thread_cap())
    if workers <= 1:
        results = [_run_family(n, tolerances.get(n)) for n in names]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda n: _run_family(n, tolerances.get(n)), names))
    return {name: (summary, reps, sec) for name, summary, reps, sec in results}
