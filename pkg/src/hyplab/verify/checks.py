"""One function per inequality. Each returns an InequalityReport (or several folded together)."""
import math

import numpy as np
from scipy.spatial import cKDTree

from ..core.curves import line_integral
from ..core.quadrature import cumulative_panel_integral, integrate_adaptive, integrate_radial
from ..core.moebius import as_point
from ..domains import (ChainOfAnnuli, Cusp, SlitRectangle, chain_annuli_lengths, gamma_path,
                       stolz_contains_euclidean, StolzRegion)
from ..errors import ConfigurationError, DomainError, FitError
from ..lengths import (AnnulusCover, ell, euclidean_length_radial, fit_growth_exponent,
                       lp_scale_norm, radial_lp_norm)
from ..report import InequalityReport, combine
from .regions import U_MAX, segment_chart, tube_area

CLOSED_TOL = 1e-9
QUAD_TOL = 1e-6


def _tol(tol, default):
    return default if tol is None else float(tol)


def _area(f):
    a = f.area()
    return float(a)


# ---------------------------------------------------------------------------
# Pointwise Lipschitz bound and its sweep
# ---------------------------------------------------------------------------

def check_lipschitz(f, z, tol=None):
    """|f'(z)|/lambda(z) <= (A(f)/4pi)^{1/2}."""
    z = as_point(z)
    if abs(z) >= 1.0:
        raise DomainError(f"{z} is outside the unit disc")
    d = complex(np.asarray(f.eval_deriv(z)[1]))
    lhs = abs(d) * (1.0 - abs(z) ** 2) / 2.0
    rhs = math.sqrt(_area(f) / (4.0 * math.pi))
    return InequalityReport.compare("lipschitz", lhs, rhs, _tol(tol, 1e-12), {"z": z})


def lipschitz_sweep(f, points, tol=None):
    """check_lipschitz at many points at once; reports the tightest one."""
    z = np.asarray(points, dtype=complex).ravel()
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("sweep points must lie in the unit disc")
    lhs = np.abs(f.eval_deriv(z)[1]) * (1.0 - np.abs(z) ** 2) / 2.0
    rhs = math.sqrt(_area(f) / (4.0 * math.pi))
    k = int(np.argmax(lhs))
    rep = InequalityReport.compare("lipschitz", lhs[k], rhs, _tol(tol, 1e-12),
                                   {"z": complex(z[k]), "points": int(z.size),
                                    "violations": int(np.sum(lhs > rhs + _tol(tol, 1e-12)))})
    return rep


# ---------------------------------------------------------------------------
# E(r)^2 <= (A/pi) ell(r)
# ---------------------------------------------------------------------------

def check_invariant_length(f, r, tol=None):
    if not 0.0 < r < 1.0:
        raise DomainError(f"r = {r} outside (0, 1)")
    E = euclidean_length_radial(f, r, tol=1e-12)
    rhs = _area(f) / math.pi * ell(r)
    return InequalityReport.compare("invariant_length", E * E, rhs, _tol(tol, CLOSED_TOL),
                                    {"r": r, "E": E, "ell": ell(r)})


# ---------------------------------------------------------------------------
# Rays in finite-area domains
# ---------------------------------------------------------------------------

def _ray_start(domain):
    if isinstance(domain, Cusp):
        return 2.0
    return 0.0


def _scaled_integral(fn, a, b):
    """Adaptive integral with a tolerance relative to a crude first estimate."""
    if b <= a:
        return 0.0
    t = np.linspace(a, b, 257)
    crude = float(np.trapezoid(fn(t), t))
    return integrate_adaptive(fn, a, b, tol=1e-10 * max(abs(crude), 1e-300)).value


def check_ray_in_finite_area(domain, r_values, tol=None):
    """E^2 <= (int m) H_lower along the positive real ray, plus its tail form.

    ``r_values`` are end points on the ray; the ray starts at 2 in a cusp
    and at 0 otherwise. m is the vertical width, H_lower = int 1/m.
    """
    area = domain.area()
    if not math.isfinite(area):
        raise ConfigurationError(f"{domain.kind} has infinite area; the width integral diverges")
    s = _ray_start(domain)
    r_values = sorted(float(r) for r in r_values)
    if not r_values or r_values[0] <= s:
        raise DomainError(f"ray end points must exceed the start {s}")
    if not np.all(domain.contains(np.asarray(r_values) + 0j)):
        raise DomainError("the ray leaves the domain")
    m = domain.vertical_width
    inv_m = lambda t: 1.0 / m(t)  # noqa: E731
    hi_density = lambda t: domain.density_band(np.asarray(t) + 0j)[1]  # noqa: E731
    tol = _tol(tol, QUAD_TOL)
    reports = []
    ratio = []
    prev_r, M, H, Hu = s, 0.0, 0.0, 0.0
    for r in r_values:
        M += domain.width_integral(prev_r, r)
        H += _scaled_integral(inv_m, prev_r, r)
        Hu += _scaled_integral(hi_density, prev_r, r)
        prev_r = r
        E = r - s
        c = s + 0.5 * E
        M_tail = domain.width_integral(c, r)
        rel = tol * max(1.0, E * E)
        reports.append(InequalityReport.compare(f"ray_finite_area[r={r:g}]", E * E, M * H, rel,
                                                {"r": r, "E": E, "width_integral": M, "H_lower": H,
                                                 "H_upper": Hu}))
        reports.append(InequalityReport.compare(
            f"ray_finite_area.tail[r={r:g}]", E, (c - s) + math.sqrt(M_tail * H), tol * max(1.0, E),
            {"r": r, "c": c}))
        reports.append(InequalityReport.compare(f"ray_finite_area.band[r={r:g}]", H, Hu, tol * max(1.0, Hu),
                                                {"r": r}))
        ratio.append(E / math.sqrt(H))
    # tails of the width integral must shrink as the cut moves out
    cuts = np.asarray(r_values)
    tails = np.array([domain.width_integral(c, math.inf) if isinstance(domain, Cusp)
                      else domain.width_integral(c, domain.x_max) for c in cuts])
    if tails.size > 1:
        reports.append(InequalityReport.compare("ray_finite_area.tail_decreasing",
                                                float(np.max(np.diff(tails))), 0.0, 0.0,
                                                {"tails": tails.tolist()}))
    half = len(ratio) // 2
    if len(ratio) - half > 1:
        reports.append(InequalityReport.compare("ray_finite_area.E_over_sqrtH_decreasing",
                                                float(np.max(np.diff(ratio[half:]))), 0.0, 0.0,
                                                {"ratios": ratio}))
    return combine("ray_finite_area", reports, {"domain": domain.kind, "start": s})


# ---------------------------------------------------------------------------
# Neighbourhood of a geodesic segment
# ---------------------------------------------------------------------------

def _pulled_back_jac(f, psi, dpsi):
    def jac(zeta):
        return np.abs(f.eval_deriv(psi(zeta))[1]) ** 2 * np.abs(dpsi(zeta)) ** 2
    return jac


def check_neighborhood(f, z0, z1, d, tol=None):
    """E(f([z0, z1])) <= (A_Omega/(pi d_E))^{1/2} rho(z0, z1)^{1/2}, d_E = tanh(d/2)."""
    z0, z1 = as_point(z0), as_point(z1)
    if abs(z0) >= 1 or abs(z1) >= 1:
        raise DomainError("both points must lie in the unit disc")
    if not d > 0:
        raise DomainError("d must be positive")
    dE = math.tanh(0.5 * d)
    psi, dpsi, rho = segment_chart(z0, z1)
    t1 = math.tanh(0.5 * rho)

    def speed(t):
        return np.abs(f.eval_deriv(psi(t))[1]) * np.abs(dpsi(t))

    E = integrate_adaptive(speed, 0.0, t1, tol=1e-12).value if t1 > 0 else 0.0
    A, A_err = tube_area(_pulled_back_jac(f, psi, dpsi), rho, d)
    rhs = math.sqrt(A / (math.pi * dE)) * math.sqrt(rho)
    return InequalityReport.compare("neighborhood", E, rhs, _tol(tol, QUAD_TOL),
                                    {"z0": z0, "z1": z1, "d": d, "d_E": dE, "rho": rho,
                                     "area_omega": A, "area_error": A_err})


# ---------------------------------------------------------------------------
# Univalent maps omitting a point
# ---------------------------------------------------------------------------

def _certify_univalent(f, w, radius=0.999, n_r=40, n_theta=64, n_winding=2048):
    rr = np.linspace(0.0, radius, n_r)[1:]
    ang = np.exp(2j * math.pi * np.arange(n_theta) / n_theta)
    z = np.concatenate([[0j], (rr[:, None] * ang).ravel()])
    val, der = f.eval_deriv(z)
    scale = max(1.0, float(np.max(np.abs(val))))
    if np.min(np.abs(der)) <= 1e-12 * scale:
        raise ConfigurationError("derivative vanishes on the sample grid; not univalent")
    pts = np.column_stack([val.real, val.imag])
    dist, _ = cKDTree(pts).query(pts, k=2)
    if np.min(dist[:, 1]) <= 1e-12 * scale:
        raise ConfigurationError("two sample points share an image; not univalent")
    if np.min(np.abs(val - w)) <= 1e-12 * scale:
        raise ConfigurationError(f"{w} is attained on the sample grid")
    circle = f(radius * np.exp(2j * math.pi * np.arange(n_winding + 1) / n_winding))
    turn = np.sum(np.angle((circle[1:] - w) / (circle[:-1] - w))) / (2 * math.pi)
    if abs(turn) > 0.5:
        raise ConfigurationError(f"f - w winds {turn:.2f} times about 0; {w} is not omitted")
    return {"sample_points": int(z.size), "min_separation": float(np.min(dist[:, 1])),
            "winding": float(turn)}


def omitted_point_constant(d=0.5):
    """e^{2d}/tanh(d/2)^{1/2}."""
    return math.exp(2.0 * d) / math.sqrt(math.tanh(0.5 * d))


def check_omitted_point(f, w, r, theta=0.0, d=0.5, tol=None):
    """Distance lower bound in f(D) - w and the linear-in-sup bound on E(r, theta)."""
    w = as_point(w)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} outside [0, 1)")
    cert = _certify_univalent(f, w)
    u = complex(np.exp(1j * theta))
    z2 = r * u
    w1 = complex(f(0.0)) - w
    w2 = complex(f(z2)) - w
    tol = _tol(tol, QUAD_TOL)
    # f is an isometry onto its image, so rho between the image points is the
    # hyperbolic length of [0, z2]; the quadrature value is recorded alongside
    rho = ell(r) if r > 0 else 0.0
    quad = integrate_radial(lambda t, s: 2.0 / (s * (1.0 + t)), r=r).value if r > 0 else 0.0
    dist_rep = InequalityReport.compare(
        "omitted_point.distance", 0.5 * abs(math.log(abs(w2) / abs(w1))), rho, tol,
        {"w1": w1, "w2": w2, "rho": rho, "rho_quadrature": quad})
    E = euclidean_length_radial(f, r, theta, tol=1e-12) if r > 0 else 0.0
    ts = np.linspace(0.0, r, 2049)
    sup = float(np.max(np.abs(f(ts * u) - w)))
    C = omitted_point_constant(d)
    bound = InequalityReport.compare(
        "omitted_point.length", E, C * sup * math.sqrt(rho), tol,
        {"C": C, "d": d, "sup": sup, "E": E})
    rep = combine("omitted_point", [dist_rep, bound], {"w": w, "r": r, "theta": theta, **cert})
    rep.params["parts"] = [dist_rep.to_dict(), bound.to_dict()]
    return rep


# ---------------------------------------------------------------------------
# Radial integral against the image area of a Stolz region
# ---------------------------------------------------------------------------

def mz_constant(d):
    """5 d e^d / (pi sinh^2(d/2))."""
    return 5.0 * d * math.exp(d) / (math.pi * math.sinh(0.5 * d) ** 2)


def check_mz(f, d, delta=1e-6, tol=None):
    if not d > 0:
        raise DomainError("d must be positive")

    def hyp(t):
        return np.abs(f.eval_deriv(t)[1]) ** 2 * (1.0 - t * t) / 2.0

    def euc(t):
        return np.abs(f.eval_deriv(t)[1]) ** 2 * (1.0 - t)

    top = 1.0 - delta
    lhs = integrate_adaptive(hyp, 0.0, top, tol=1e-12).value
    euclid = integrate_adaptive(euc, 0.0, top, tol=1e-12).value
    A, A_err = tube_area(lambda z: np.abs(f.eval_deriv(z)[1]) ** 2, math.inf, d)
    beta = mz_constant(d)
    tol = _tol(tol, QUAD_TOL)
    main = InequalityReport.compare("mz", lhs, beta * A, tol,
                                    {"d": d, "beta": beta, "area_stolz": A, "area_error": A_err,
                                     "delta": delta, "u_max": U_MAX, "euclidean_integral": euclid})
    # (1-r^2)/2 lies between (1-r)/2 and (1-r)
    lo = InequalityReport.compare("mz.weight_lower", lhs, euclid, tol)
    hi = InequalityReport.compare("mz.weight_upper", euclid, 2.0 * lhs, tol)
    rep = combine("mz", [main, lo, hi], dict(main.params))
    rep.params["parts"] = [r.to_dict() for r in (main, lo, hi)]
    return rep


def check_stolz_containment(c, d, samples=4000, seed=0):
    """If d <= c/(c+2), sampled points of Sigma_d lie in the union of discs D(r, c(1-r))."""
    if not stolz_contains_euclidean(c, d):
        raise ConfigurationError(f"d = {d} exceeds c/(c+2) for c = {c}")
    rng = np.random.default_rng(seed)
    reg = StolzRegion(0.0, d)
    z = rng.uniform(-1, 1, 4 * samples) + 1j * rng.uniform(-1, 1, 4 * samples)
    z = z[np.abs(z) < 1]
    z = z[reg.contains_fast(z)][:samples]
    rr = np.linspace(0.0, 1.0, 4001)[:-1]
    # margin(z) = min over centres r of |z - r| - c(1 - r); negative means covered
    margin = np.min(np.abs(z[:, None] - rr[None, :]) - c * (1.0 - rr[None, :]), axis=1)
    k = int(np.argmax(margin))
    return InequalityReport.compare("stolz_containment", margin[k], 0.0, 0.0,
                                    {"c": c, "d": d, "points": int(z.size), "worst": complex(z[k])})


# ---------------------------------------------------------------------------
# L^p growth
# ---------------------------------------------------------------------------

def _sup_derivative(f):
    c = np.asarray(f.coeffs)
    return float(np.sum(np.arange(c.size) * np.abs(c)))


def _sup_abs(f):
    return float(np.sum(np.abs(np.asarray(f.coeffs))))


def check_lp_growth(f, p, l_max=40.0, panels=160, tol=None):
    """Three integral bounds on E as a function of ell, truncated at ell = l_max.

    (a) int (dE/dl)^p dl <= (2^p/pi) N^p and (b) (int (E/l)^p dl)^{1/p} <= (2q/pi^{1/p}) N,
    with N the L^p scale norm; (c) at p = 2 the weighted integral
    int E^2/((1-r) log^2(1/(1-r))) dr <= A/pi. Truncation tails are bounded
    above and added to the left sides, so passes are not artefacts of the cut.
    """
    if not p > 1.0:
        raise ConfigurationError("p must exceed 1")
    try:
        N = lp_scale_norm(f, p)
    except Exception as exc:
        raise ConfigurationError(f"scale norm diverges: {exc}") from exc
    q = p / (p - 1.0)
    tol = _tol(tol, QUAD_TOL)
    sup_d = _sup_derivative(f)

    def dEdl(L):
        L = np.asarray(L, dtype=float)
        r = np.tanh(0.5 * L)
        return np.abs(f.eval_deriv(r)[1]) / (2.0 * np.cosh(0.5 * L) ** 2)

    edges = np.linspace(0.0, l_max, panels + 1)
    nodes, weights, E, g = cumulative_panel_integral(dEdl, edges)
    tail_E = 2.0 * sup_d * math.exp(-l_max)  # int_{l_max}^inf dE/dl
    E_end = float(np.sum(g * weights))
    E_inf = E_end + tail_E
    lhs_a = float(np.sum(weights * g ** p)) + (2.0 * sup_d) ** p * math.exp(-p * l_max) / p
    rhs_a = 2.0 ** p / math.pi * N ** p
    radial = radial_lp_norm(f, p)
    part_a = InequalityReport.compare("lp_growth.derivative", lhs_a, rhs_a, tol * max(1.0, rhs_a),
                                      {"radial_quadrature": radial ** p if math.isfinite(radial) else radial})
    body_b = float(np.sum(weights * (E / nodes) ** p))
    tail_b = E_inf ** p * l_max ** (1.0 - p) / (p - 1.0)
    lhs_b = (body_b + tail_b) ** (1.0 / p)
    rhs_b = 2.0 * q / math.pi ** (1.0 / p) * N
    part_b = InequalityReport.compare("lp_growth.average", lhs_b, rhs_b, tol * max(1.0, rhs_b),
                                      {"body": body_b, "tail_bound": tail_b})
    parts = [part_a, part_b]
    params = {"p": p, "q": q, "norm": N, "l_max": l_max, "E_at_cut": E_end,
              "truncation": "tails beyond l_max bounded via E nondecreasing and |f'| <= sum n|a_n|"}
    if abs(p - 2.0) < 1e-12:
        parts.append(_weighted_log_integral(f, l_max, panels, tol))
    rep = combine(f"lp_growth[p={p:g}]", parts, params)
    rep.params["parts"] = [r.to_dict() for r in parts]
    return rep


def _weighted_log_integral(f, l_max, panels, tol):
    # u = log 1/(1-r): dr/(1-r) = du, so the integrand becomes E(r(u))^2/u^2
    s_cut = 2.0 / (1.0 + math.exp(l_max))
    U = -math.log(s_cut)

    def dEdu(u):
        u = np.asarray(u, dtype=float)
        r = -np.expm1(-u)
        return np.abs(f.eval_deriv(r)[1]) * np.exp(-u)

    edges = np.linspace(0.0, U, panels + 1)
    nodes, weights, E, _ = cumulative_panel_integral(dEdu, edges)
    body = float(np.sum(weights * (E / nodes) ** 2))
    E_inf = float(E.max()) + _sup_derivative(f) * s_cut
    tail = E_inf ** 2 / U
    rhs = _area(f) / math.pi
    return InequalityReport.compare("lp_growth.weighted", body + tail, rhs, tol * max(1.0, rhs),
                                    {"body": body, "tail_bound": tail, "u_max": U})


# ---------------------------------------------------------------------------
# Annulus covering map
# ---------------------------------------------------------------------------

COVER_M = math.exp(math.pi / 2)
COVER_K = 1.0


def check_covering_annulus(r_values, tol=None, quad_tol=1e-10):
    f = AnnulusCover()
    reports = []
    for r in r_values:
        r = float(r)
        if not 0.0 <= r < 1.0:
            raise DomainError(f"r = {r} outside [0, 1)")
        E = euclidean_length_radial(f, r, tol=quad_tol) if r > 0 else 0.0
        L = ell(r)
        reports.append(InequalityReport.compare(f"covering_annulus.identity[r={r:g}]", abs(E - L),
                                                _tol(tol, 1e-8), 0.0, {"r": r, "E": E, "ell": L}))
        reports.append(InequalityReport.compare(f"covering_annulus.upper[r={r:g}]", E,
                                                COVER_M / 2.0 * L, CLOSED_TOL, {"M": COVER_M}))
        reports.append(InequalityReport.compare(f"covering_annulus.lower[r={r:g}]", COVER_K * L, E,
                                                1e-8, {"K": COVER_K}))
    return combine("covering_annulus", reports, {"M": COVER_M, "K": COVER_K})


# ---------------------------------------------------------------------------
# Bounded image domains: E <= H/mu
# ---------------------------------------------------------------------------

def check_bounded_hyperbolic(f, domain, r_values, samples=4097, tol=None):
    if not getattr(domain, "bounded", False):
        raise ConfigurationError(f"{domain.kind} is unbounded; its density has no positive floor")
    u_grid = np.concatenate([np.linspace(0.0, 0.5, samples // 2),
                             1.0 - np.geomspace(0.5, 1e-12, samples // 2)])
    reports = []
    for r in r_values:
        r = float(r)
        t = u_grid[u_grid <= r]
        t = np.append(t, r)
        img = f.eval_deriv(t)[0]
        if not np.all(domain.contains(img)):
            raise DomainError("the image of the radius leaves the domain")
        lo, hi = domain.density_band(img)
        mu = float(np.min(lo))
        if not mu > 0:
            raise ConfigurationError("density floor is zero; the domain is not bounded")

        def upper(tt, ss):
            v, dv = f.eval_deriv(np.asarray(tt))
            return domain.density_band(v)[1] * np.abs(dv)

        H = integrate_radial(upper, r=r, tol=1e-12).value if r > 0 else 0.0
        E = euclidean_length_radial(f, r, tol=1e-12) if r > 0 else 0.0
        reports.append(InequalityReport.compare(f"bounded_hyperbolic[r={r:g}]", E, H / mu,
                                                _tol(tol, QUAD_TOL) * max(1.0, E),
                                                {"r": r, "mu": mu, "H_upper": H, "E": E}))
    return combine("bounded_hyperbolic", reports, {"domain": domain.kind})


# ---------------------------------------------------------------------------
# Example families and their growth exponents
# ---------------------------------------------------------------------------

def cusp_table(eps, points=30, t_max=1e4):
    """Rows (t, E, ell_upper) along the cusp axis from t = 2."""
    dom = Cusp(eps)
    ts = np.geomspace(2.0, t_max, points)
    hi = lambda t: dom.density_band(np.asarray(t) + 0j)[1]  # noqa: E731
    ell_u = np.zeros_like(ts)
    for k in range(1, ts.size):
        ell_u[k] = ell_u[k - 1] + _scaled_integral(hi, ts[k - 1], ts[k])
    return ts, ts - 2.0, ell_u


def slit_table(eps, k_max=50, n_slits=60):
    """Rows (k, upper hyperbolic length of Gamma_k, cap 12 (k+2)^{1+eps})."""
    dom = SlitRectangle(eps, max(n_slits, k_max + 3))
    hi = lambda z: dom.density_band(z)[1]  # noqa: E731
    ks = np.arange(k_max + 1)
    h = np.array([line_integral(gamma_path(eps, int(k), dom), hi, tol=1e-8).value for k in ks])
    return ks, h, 12.0 * (ks + 2.0) ** (1.0 + eps)


def chain_table(beta, N, points=40):
    """Rows (n, ell_N exact, E_N) at log-spaced n <= N."""
    E, _, exact = chain_annuli_lengths(beta, N, cumulative=True)
    idx = np.unique(np.geomspace(10, N, points).astype(int)) - 1
    idx = idx[idx >= 0]
    return idx + 1, exact[idx], E[idx]


def check_example_exponents(which, points=30, k_max=50, m_gap=None, tol=None):
    """(GrowthFit or None, InequalityReport) for a Cusp, SlitRectangle or ChainOfAnnuli."""
    if isinstance(which, Cusp):
        eps = which.eps
        if not 0 < eps <= 2:
            raise DomainError("eps must lie in (0, 2]")
        t, E, L = cusp_table(eps, points)
        reps = [InequalityReport.compare(f"example_exponents.cusp[t={tk:.4g}]", Lk, (Ek + 3.0) ** (2 + eps),
                                         0.0, {"t": tk})
                for tk, Ek, Lk in zip(t, E, L)]
        keep = E > 0
        fit = fit_growth_exponent(np.column_stack([L[keep], E[keep]]))
        target = 1.0 / (2.0 + eps) - 0.02
        reps.append(InequalityReport.compare("example_exponents.cusp_fit", target, fit.exponent, 0.0,
                                             {"exponent": fit.exponent, "span_decades": fit.span_decades}))
        return fit, combine("example_exponents.cusp", reps, {"eps": eps, "exponent": fit.exponent})
    if isinstance(which, SlitRectangle):
        eps = which.eps
        if not 0 < eps <= 2:
            raise DomainError("eps must lie in (0, 2]")
        ks, h, cap = slit_table(eps, k_max)
        reps = [InequalityReport.compare(f"example_exponents.slits[k={k}]", hk, ck, 0.0, {"k": int(k)})
                for k, hk, ck in zip(ks, h, cap)]
        if m_gap is None:
            from ..geodesics import crosscut_reach
            m_gap = crosscut_reach(20)
        n = int(ks[-1])
        total = float(np.sum(h[:n]))
        reps.append(InequalityReport.compare("example_exponents.slits_total", total,
                                             6.0 * (n + 2) ** (2 + eps) + m_gap, 0.0,
                                             {"n": n, "M_gap": m_gap}))
        return None, combine("example_exponents.slits", reps,
                             {"eps": eps, "total": total, "M_gap": m_gap})
    if isinstance(which, ChainOfAnnuli):
        beta = which.beta
        if not 0 < beta <= 4:
            raise DomainError("beta must lie in (0, 4]")
        n, L, E = chain_table(beta, which.N)
        fit = fit_growth_exponent(np.column_stack([L, E]))
        if not fit.meaningful:
            raise FitError(f"ell spans only {fit.span_decades:.2f} decades")
        target = beta / (beta + 1.0)
        rep = InequalityReport.compare("example_exponents.chain", abs(fit.exponent - target),
                                       _tol(tol, 0.05), 0.0,
                                       {"beta": beta, "N": which.N, "exponent": fit.exponent,
                                        "target": target})
        return fit, rep
    raise ConfigurationError(f"no exponent experiment for {which!r}")


# ---------------------------------------------------------------------------
# Harnack and mean value sweeps
# ---------------------------------------------------------------------------

def _disc_points(rng, n):
    bulk = np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * math.pi * rng.uniform(0, 1, n))
    edge = (1.0 - 10.0 ** -rng.uniform(0, 6, n)) * np.exp(2j * math.pi * rng.uniform(0, 1, n))
    return np.where(rng.uniform(0, 1, n) < 0.5, bulk, edge)


def harnack_sweep(n=100_000, seed=11, tol=1e-12):
    """|log lambda(z)/lambda(w)| <= log 4 + rho(z, w) over seeded random pairs."""
    rng = np.random.default_rng(seed)
    z = _disc_points(rng, n)
    w = _disc_points(rng, n)
    lhs = np.abs(np.log1p(-np.abs(w) ** 2) - np.log1p(-np.abs(z) ** 2))
    rho = 2.0 * np.arctanh(np.abs(z - w) / np.abs(1 - np.conj(z) * w))
    rhs = math.log(4.0) + rho
    slack = rhs - lhs
    k = int(np.argmin(slack))
    return InequalityReport.compare("harnack", lhs[k], rhs[k], tol,
                                    {"pairs": n, "seed": seed, "violations": int(np.sum(slack < -tol)),
                                     "z": complex(z[k]), "w": complex(w[k])},
                                    "log form of the two-sided ratio bound")


def mean_value_sweep(polys, centres, radii, tol=1e-6):
    from ..metrics import hyperbolic_mean_value
    reps = []
    for i, f in enumerate(polys):
        for z0 in centres:
            for d in radii:
                r = hyperbolic_mean_value(f, z0, d, tol=1e-9)
                rel = r.lhs
                reps.append(InequalityReport.compare(f"mean_value[{i},{complex(z0):.2f},{d:g}]", rel, tol,
                                                     0.0, dict(r.params)))
    return combine("mean_value", reps)


# ---------------------------------------------------------------------------
# Decay probes on dyadic radius ladders
# ---------------------------------------------------------------------------

def decay_probe(f, js=range(8, 21), tol=1e-12):
    """E(1-2^-j)/ell(1-2^-j)^{1/2} must not increase along j."""
    js = list(js)
    vals = []
    for j in js:
        s = 2.0 ** -j
        E = euclidean_length_radial(f, None, s_end=s, tol=1e-13)
        vals.append(E / math.sqrt(math.log((2.0 - s) / s)))
    vals = np.asarray(vals)
    rise = float(np.max(np.diff(vals)))
    return InequalityReport.compare("decay", rise, 0.0, tol * max(1.0, float(vals.max())),
                                    {"j": js, "ratios": vals.tolist()})


def little_bloch_probe(f, js=range(8, 21), tol=0.0):
    """|f'(r)|/lambda(r) at r = 1 - 2^-j must decrease along j."""
    js = list(js)
    s = 2.0 ** -np.asarray(js, dtype=float)
    r = 1.0 - s
    vals = np.abs(f.eval_deriv(r)[1]) * s * (2.0 - s) / 2.0
    rise = float(np.max(np.diff(vals)))
    return InequalityReport.compare("little_bloch", rise, 0.0, tol, {"j": js, "values": vals.tolist()})
