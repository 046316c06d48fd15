"""Length functionals along radii: E(r), ell(r), H(r), L^p scale norms, growth fits."""
import math
from dataclasses import dataclass

import numpy as np

from .core.quadrature import DEFAULT_TOL, integrate_radial
from .errors import DivergenceError, DomainError, FitError, RangeError


@dataclass(frozen=True)
class LengthReport:
    euclidean: float
    hyperbolic_lower: float
    hyperbolic_upper: float
    r: float
    theta: float = 0.0

    def __post_init__(self):
        if self.hyperbolic_lower > self.hyperbolic_upper * (1 + 1e-12) + 1e-300:
            raise ValueError("hyperbolic_lower exceeds hyperbolic_upper")

    @property
    def exact(self):
        return self.hyperbolic_lower == self.hyperbolic_upper


@dataclass(frozen=True)
class GrowthFit:
    exponent: float
    intercept: float
    residual: float
    sample_count: int
    span_decades: float = 0.0

    @property
    def meaningful(self):
        """Fits over less than two decades of abscissa are mostly noise."""
        return self.span_decades >= 2.0


def _end(r, s_end):
    if s_end is not None:
        return float(s_end)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} outside [0, 1)")
    return 1.0 - r


def ell(r):
    """Hyperbolic length of [0, r] in the disc, log((1+r)/(1-r))."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} outside [0, 1)")
    return 2.0 * math.atanh(r)


def ell_from_gap(s):
    """ell at r = 1 - s, accurate when s is tiny."""
    return math.log((2.0 - s) / s)


def radius_from_ell(L):
    """(r, 1 - r) with ell(r) = L."""
    s = 2.0 / (1.0 + math.exp(L))
    return 1.0 - s, s


def _abs_derivative(f, theta):
    u = complex(np.exp(1j * theta))

    def g(t, s):
        return np.abs(f.eval_deriv(np.asarray(t) * u)[1])
    return g


def euclidean_length_radial(f, r, theta=0.0, tol=DEFAULT_TOL, s_end=None, max_intervals=4000):
    """E(r, theta): the length of the image of [0, r e^{i theta}] under f."""
    s = _end(r, s_end)
    if s >= 1.0:
        return 0.0
    return integrate_radial(_abs_derivative(f, theta), s_end=s, tol=tol,
                            max_intervals=max_intervals).value


def image_hyperbolic_length(f, domain, r, theta=0.0, tol=DEFAULT_TOL, s_end=None, samples=513):
    """Bounds on H(r), the hyperbolic length of f([0, r e^{i theta}]) inside ``domain``.

    The density comes from ``domain.density_band``: exact domains collapse
    the band. The image is sampled first and a :class:`RangeError` names the
    first parameter where it leaves the domain.
    """
    s = _end(r, s_end)
    u = complex(np.exp(1j * theta))
    t_end = 1.0 - s
    ts = np.concatenate([np.linspace(0.0, min(t_end, 0.5), samples),
                         1.0 - np.geomspace(0.5, s, samples)]) if t_end > 0.5 else \
        np.linspace(0.0, t_end, samples)
    vals = np.asarray(f.eval_deriv(ts * u)[0])
    inside = np.asarray(domain.contains(vals))
    if not np.all(inside):
        k = int(np.argmin(inside))
        raise RangeError(f"image leaves the domain at t = {ts[k]:.6g}", t=float(ts[k]))
    E = euclidean_length_radial(f, r, theta, tol, s_end=s)

    def band(which):
        def g(t, _s):
            z = np.asarray(t) * u
            w, d = f.eval_deriv(z)
            lo, hi = domain.density_band(w)
            return (lo if which == 0 else hi) * np.abs(d)
        return g

    lo = integrate_radial(band(0), s_end=s, tol=tol).value if t_end > 0 else 0.0
    probe = np.asarray(domain.density_band(vals[:3]))
    if np.array_equal(probe[0], probe[1]):
        hi = lo
    else:
        hi = integrate_radial(band(1), s_end=s, tol=tol).value if t_end > 0 else 0.0
    return LengthReport(E, lo, hi, 1.0 - s, float(theta))


def _angular_grid(m):
    return np.exp(2j * math.pi * (np.arange(m) + 0.5) / m)


def lp_scale_norm(f, p, tol=1e-9, angles=None, u_max=50.0):
    """(∬ (|f'|/lambda)^p lambda^2 dx dy)^{1/p} over the disc.

    Angular means use a midpoint rule (exact for trigonometric polynomials
    below the node count; |f'|^p is smooth in the angle). The radial
    integral uses the dyadic substitution and is cut at 1 - r = 2^-u_max
    after checking the integrand has decayed.
    """
    if not p > 1.0:
        raise DivergenceError(f"the scale norm diverges for p = {p} <= 1")
    deg = max(1, getattr(f, "order", 16))
    m = angles or int(max(64, 8 * deg * max(1.0, p)))
    ang = _angular_grid(m)

    def g(t, s):
        t = np.asarray(t, dtype=float)
        s = np.asarray(s, dtype=float)
        d = f.eval_deriv(t[:, None] * ang)[1]
        mean = np.mean(np.abs(d) ** p, axis=1)
        lam = 2.0 / (s * (1.0 + t))
        return 2.0 * math.pi * mean * lam ** (2.0 - p) * t

    # divergence probe: the dyadic integrand must decay toward the boundary
    probe_u = np.array([u_max - 20.0, u_max - 10.0, u_max])
    ps = np.exp2(-probe_u)
    tail = g(1.0 - ps, ps) * ps
    if not np.all(np.isfinite(tail)) or tail[-1] > tail[0] * (1 + 1e-12) and tail[-1] > 0:
        raise DivergenceError("radial integrand does not decay; norm is infinite")
    res = integrate_radial(g, s_end=2.0 ** -u_max, tol=tol)
    if not math.isfinite(res.value):
        raise DivergenceError("scale norm is infinite")
    return max(res.value, 0.0) ** (1.0 / p)


def radial_lp_norm(f, p, theta=0.0, r=None, tol=1e-10, s_end=None):
    """(∫_0^r (|f'|/lambda)^p lambda dt)^{1/p} along the radius at angle theta.

    ``r=None`` means the whole radius (cut at 1 - r = 2^-52). Returns inf
    instead of raising when the integral diverges.
    """
    if p < 1.0:
        raise DomainError("p must be >= 1")
    u = complex(np.exp(1j * theta))
    s = (2.0 ** -52 if r is None else _end(r, None)) if s_end is None else s_end

    def g(t, s_):
        d = np.abs(f.eval_deriv(np.asarray(t) * u)[1])
        lam = 2.0 / (np.asarray(s_) * (1.0 + np.asarray(t)))
        return d ** p * lam ** (1.0 - p)

    try:
        v = integrate_radial(g, s_end=s, tol=tol).value
    except Exception:
        return math.inf
    return v ** (1.0 / p) if math.isfinite(v) else math.inf


def keogh_bound(f, r, N):
    """sum_{n<N} |a_n| + (sum_{n>=N} n |a_n|^2)^{1/2} (log 1/(1-r^2))^{1/2}."""
    c = np.asarray(f.coeffs)
    if not 1 <= N <= c.size - 1:
        raise DomainError(f"split index N={N} outside [1, {c.size - 1}]")
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} outside [0, 1)")
    n = np.arange(c.size)
    head = float(np.sum(np.abs(c[1:N])))
    tail = float(np.sum(n[N:] * np.abs(c[N:]) ** 2))
    return head + math.sqrt(tail) * math.sqrt(-math.log1p(-r * r))


def fit_growth_exponent(samples):
    """Least-squares slope of log E against log ell."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
        raise FitError("need at least three (ell, E) samples")
    L, E = arr[:, 0], arr[:, 1]
    if np.any(L <= 0) or np.any(E <= 0):
        raise FitError("samples must be positive")
    x, y = np.log(L), np.log(E)
    if np.unique(x).size < 2 or np.ptp(x) < 1e-12:
        raise FitError("abscissae are degenerate")
    slope, icpt = np.polyfit(x, y, 1)
    resid = y - (slope * x + icpt)
    return GrowthFit(float(slope), float(icpt), float(np.sqrt(np.mean(resid ** 2))),
                     int(arr.shape[0]), float(np.ptp(x) / math.log(10.0)))


# ---------------------------------------------------------------------------
# The annulus covering map f = h o g o q
# ---------------------------------------------------------------------------

def cover_q(z):
    """Disc onto the upper half-plane, i(1+z)/(1-z)."""
    z = np.asarray(z, dtype=complex)
    return 1j * (1 + z) / (1 - z), 2j / (1 - z) ** 2


def cover_g(z):
    """Upper half-plane onto the strip |Im| < pi/2, log(-iz)."""
    z = np.asarray(z, dtype=complex)
    return np.log(-1j * z), 1.0 / z


def cover_h(z):
    """Strip |Im| < pi/2 onto the annulus e^{-pi/2} < |w| < e^{pi/2}, exp(iz)."""
    z = np.asarray(z, dtype=complex)
    w = np.exp(1j * z)
    return w, 1j * w


class AnnulusCover:
    """Universal covering map of the annulus e^{-pi/2} < |w| < e^{pi/2}.

    f(z) = exp(i log((1+z)/(1-z))), with f'(z) = 2i f(z)/(1 - z^2).
    """

    R = math.exp(math.pi / 2)

    def eval_deriv(self, z):
        z = np.asarray(z, dtype=complex)
        # log1p keeps accuracy for z near 1 on the real axis
        lg = np.log1p(z) - np.log1p(-z)
        w = np.exp(1j * lg)
        return w, 2j * w / ((1 - z) * (1 + z))

    def __call__(self, z):
        return self.eval_deriv(z)[0]

    def area(self):
        return math.inf

    def __repr__(self):
        return "AnnulusCover()"


def compose_maps(*maps):
    """Compose maps right to left into one object with ``eval_deriv``.

    Each map is either a function returning (value, derivative) or an
    object with an ``eval_deriv`` method.
    """

    def step(m, w):
        return m.eval_deriv(w) if hasattr(m, "eval_deriv") else m(w)

    class _Composite:
        def eval_deriv(self, z):
            w = np.asarray(z, dtype=complex)
            d = np.ones_like(w)
            for m in reversed(maps):
                w, dm = step(m, w)
                d = d * dm
            return w, d

        def __call__(self, z):
            return self.eval_deriv(z)[0]

    return _Composite()
