"""Concrete plane domains with boundary distances, densities and widths.

Every domain is an immutable dataclass. Methods accepting points work on
scalars or numpy arrays unless noted. ``boundary_distance`` and ``density``
check membership and raise :class:`DomainError` for outside points.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta

from . import kernels
from .core.curves import Polyline
from .core.moebius import as_point
from .errors import ConfigurationError, ConstructionError, DomainError, RangeError
from .metrics import (DensityEstimate, density_bounds_distance, lam_annulus, lam_disc,
                      lam_halfplane, lam_strip, pseudo_distance)

_REGISTRY = {}


def _register(cls):
    _REGISTRY[cls.kind] = cls
    return cls


class Domain:
    kind = "domain"
    simply_connected = True
    bounded = False

    # subclasses provide _inside(z) and _dist(z) on complex arrays

    def contains(self, w):
        z = np.asarray(w, dtype=complex)
        out = self._inside(z)
        return bool(out) if z.ndim == 0 else out

    def boundary_distance(self, w):
        z = np.asarray(w, dtype=complex)
        inside = np.asarray(self._inside(z))
        if not np.all(inside):
            bad = z.ravel()[~inside.ravel()][0]
            raise DomainError(f"{complex(bad)} is not inside {self!r}")
        d = self._dist(z)
        return float(d) if z.ndim == 0 else d

    def density(self, w):
        """Exact density when known in closed form, otherwise the distance band."""
        return density_bounds_distance(self, w)

    def density_band(self, z):
        """Vectorised (lower, upper) density arrays; no membership checks."""
        d = self._dist(np.asarray(z, dtype=complex))
        return 0.5 / d, 2.0 / d

    def vertical_width(self, t):
        raise ConfigurationError(f"{self.kind} has no vertical width function")

    def area(self):
        return math.inf

    def params(self):
        return {}

    def to_dict(self):
        return {"type": self.kind, **self.params()}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def domain_from_dict(d):
    d = dict(d)
    kind = d.pop("type", None)
    if kind not in _REGISTRY:
        raise ConfigurationError(f"unknown domain type {kind!r}")
    return _REGISTRY[kind].from_params(**d)


def domain_from_json(text):
    return domain_from_dict(json.loads(text))


class _Exact:
    """Mixin for domains whose density has a closed form ``_lam``."""

    def density(self, w):
        w = as_point(w)
        if not self.contains(w):
            raise DomainError(f"{w} is not inside {self!r}")
        return DensityEstimate.of(self._lam(w))

    def density_band(self, z):
        lam = self._lam(np.asarray(z, dtype=complex))
        return lam, lam


@_register
@dataclass(frozen=True)
class UnitDisc(_Exact, Domain):
    kind = "disc"
    bounded = True

    def _inside(self, z):
        return np.abs(z) < 1.0

    def _dist(self, z):
        return 1.0 - np.abs(z)

    def _lam(self, z):
        return lam_disc(z)

    def vertical_width(self, t):
        return 2.0 * np.sqrt(np.maximum(0.0, 1.0 - np.asarray(t, dtype=float) ** 2))

    def area(self):
        return math.pi

    @classmethod
    def from_params(cls):
        return cls()


@_register
@dataclass(frozen=True)
class HalfPlane(_Exact, Domain):
    """The upper half-plane Im w > 0."""

    kind = "halfplane"

    def _inside(self, z):
        return np.imag(z) > 0.0

    def _dist(self, z):
        return np.imag(z)

    def _lam(self, z):
        return lam_halfplane(z)

    @classmethod
    def from_params(cls):
        return cls()


@_register
@dataclass(frozen=True)
class Strip(_Exact, Domain):
    kind = "strip"
    half_width: float = math.pi / 2

    def __post_init__(self):
        if not self.half_width > 0:
            raise DomainError("strip half-width must be positive")

    def _inside(self, z):
        return np.abs(np.imag(z)) < self.half_width

    def _dist(self, z):
        return self.half_width - np.abs(np.imag(z))

    def _lam(self, z):
        return lam_strip(self.half_width, z)

    def vertical_width(self, t):
        return np.full(np.shape(t), 2.0 * self.half_width) if np.ndim(t) else 2.0 * self.half_width

    def params(self):
        return {"half_width": self.half_width}

    @classmethod
    def from_params(cls, half_width):
        return cls(float(half_width))


@_register
@dataclass(frozen=True)
class Annulus(_Exact, Domain):
    """1/R < |w| < R."""

    kind = "annulus"
    simply_connected = False
    bounded = True
    R: float = math.exp(math.pi / 2)

    def __post_init__(self):
        if not self.R > 1.0:
            raise DomainError(f"annulus needs R > 1, got {self.R}")

    def _inside(self, z):
        a = np.abs(z)
        return (a > 1.0 / self.R) & (a < self.R)

    def _dist(self, z):
        a = np.abs(z)
        return np.minimum(a - 1.0 / self.R, self.R - a)

    def _lam(self, z):
        return lam_annulus(self.R, z)

    def area(self):
        return math.pi * (self.R ** 2 - self.R ** -2)

    def params(self):
        return {"R": self.R}

    @classmethod
    def from_params(cls, R):
        return cls(float(R))


# ---------------------------------------------------------------------------
# Cusp {x > 1, |y| < x^-(1+eps)}
# ---------------------------------------------------------------------------

def _curve_distance(x0, y0, p, newton_steps=30):
    """Distance from (x0, y0), y0 >= 0, to the curve y = x^-p, x >= 1.

    A coarse geometric scan around x0 picks the starting point; safeguarded
    Newton on the derivative of the squared distance then polishes it.
    """
    x0 = np.asarray(x0, dtype=float)
    y0 = np.asarray(y0, dtype=float)
    span = np.exp2(np.linspace(-3.0, 3.0, 49))
    cand = np.maximum(1.0, np.maximum(x0, 1.0)[..., None] * span)
    cand = np.concatenate([cand, np.ones(x0.shape + (1,))], axis=-1)
    d2 = (cand - x0[..., None]) ** 2 + (cand ** -p - y0[..., None]) ** 2
    k = np.argmin(d2, axis=-1)
    x = np.take_along_axis(cand, k[..., None], axis=-1)[..., 0]
    lo = np.take_along_axis(cand, np.maximum(k - 1, 0)[..., None], axis=-1)[..., 0]
    hi = np.take_along_axis(cand, np.minimum(k + 1, cand.shape[-1] - 2)[..., None], axis=-1)[..., 0]
    lo = np.minimum(lo, x)
    hi = np.maximum(hi, x)
    for _ in range(newton_steps):
        y = x ** -p
        dy = -p * x ** (-p - 1)
        ddy = p * (p + 1) * x ** (-p - 2)
        g = (x - x0) + (y - y0) * dy
        h = 1.0 + dy * dy + (y - y0) * ddy
        step = np.where(h > 0, g / np.where(h > 0, h, 1.0), 0.0)
        xn = x - step
        bad = (xn < lo) | (xn > hi) | ~np.isfinite(xn)
        xn = np.where(bad, 0.5 * (lo + hi), xn)
        # shrink the bracket using the sign of the derivative
        gn = (xn - x0) + (xn ** -p - y0) * (-p * xn ** (-p - 1))
        lo = np.where(gn < 0, xn, lo)
        hi = np.where(gn >= 0, xn, hi)
        x = np.maximum(xn, 1.0)
    best = np.sqrt((x - x0) ** 2 + (x ** -p - y0) ** 2)
    at_one = np.sqrt((1.0 - x0) ** 2 + (1.0 - y0) ** 2)
    return np.minimum(best, at_one)


@_register
@dataclass(frozen=True)
class Cusp(Domain):
    kind = "cusp"
    eps: float = 1.0

    def __post_init__(self):
        if not self.eps > 0:
            raise DomainError("cusp exponent eps must be positive")

    @property
    def p(self):
        return 1.0 + self.eps

    def _inside(self, z):
        x, y = np.real(z), np.imag(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            return (x > 1.0) & (np.abs(y) < np.where(x > 0, x, 1.0) ** -self.p)

    def _dist(self, z):
        x, y = np.real(z), np.abs(np.imag(z))
        wall = np.hypot(x - 1.0, np.maximum(y - 1.0, 0.0))
        return np.minimum(wall, _curve_distance(x, y, self.p))

    def vertical_width(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t > 1.0, 2.0 * np.maximum(t, 1.0) ** -self.p, 0.0)

    def width_integral(self, a, b):
        """Integral of the vertical width over [a, b], a >= 1."""
        e = self.eps
        return 2.0 / e * (a ** -e - (b ** -e if math.isfinite(b) else 0.0))

    def area(self):
        return 2.0 / self.eps

    def params(self):
        return {"eps": self.eps}

    @classmethod
    def from_params(cls, eps):
        return cls(float(eps))


# ---------------------------------------------------------------------------
# Rectangle with alternating slits
# ---------------------------------------------------------------------------

@_register
@dataclass(frozen=True)
class SlitRectangle(Domain):
    """(0, s) x (-3/2, 3/2) minus slits at x = s_n, a_n = n^-(1+eps).

    Odd slits rise from the bottom edge to y = 1/2, even slits hang from the
    top edge down to y = -1/2. Only the first ``n_slits`` are stored; the
    strip x >= s_{n+1} that holds the rest is unresolved. Distances for
    points left of it treat the whole line x = s_{n+1} as boundary, which can
    only shorten them, so ``boundary_distance`` is a lower bound and the
    upper density 2/dist stays valid for the full domain.
    """

    kind = "slit_rectangle"
    bounded = True
    eps: float = 0.5
    n_slits: int = 60
    _cache: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.eps > 0:
            raise DomainError("eps must be positive")
        if int(self.n_slits) < 1:
            raise DomainError("need at least one slit")
        n = int(self.n_slits) + 1
        a = np.arange(1, n + 1, dtype=float) ** -(1.0 + self.eps)
        s = np.cumsum(a)
        object.__setattr__(self, "n_slits", int(self.n_slits))
        object.__setattr__(self, "_cache", {"a": a, "s": s})

    @property
    def total_width(self):
        return float(zeta(1.0 + self.eps))

    def a(self, n):
        return float(n) ** -(1.0 + self.eps)

    def s(self, n):
        """Partial sum s_n (s_0 = 0)."""
        if n == 0:
            return 0.0
        if n <= self._cache["s"].size:
            return float(self._cache["s"][n - 1])
        return float(np.sum(np.arange(1, n + 1, dtype=float) ** -(1.0 + self.eps)))

    @property
    def resolved_limit(self):
        return self.s(self.n_slits + 1)

    def slit(self, n):
        """Segment (x, y_lo, y_hi) of slit S_n."""
        x = self.s(n)
        return (x, -1.5, 0.5) if n % 2 else (x, -0.5, 1.5)

    def slit_segments(self, upto=None):
        upto = self.n_slits if upto is None else upto
        rows = []
        for n in range(1, upto + 1):
            x, lo, hi = self.slit(n)
            rows.append((x, lo, x, hi))
        return np.array(rows, dtype=float).reshape(-1, 4)

    def boundary_segments(self):
        xr = self.resolved_limit
        box = [(0.0, -1.5, xr, -1.5), (xr, -1.5, xr, 1.5), (xr, 1.5, 0.0, 1.5), (0.0, 1.5, 0.0, -1.5)]
        return np.vstack([np.array(box), self.slit_segments()])

    def _on_slit(self, z):
        x, y = np.real(z), np.imag(z)
        hit = np.zeros(np.shape(z), dtype=bool)
        for n in range(1, self.n_slits + 1):
            sx, lo, hi = self.slit(n)
            hit |= (x == sx) & (y >= lo) & (y <= hi)
        return hit

    def _inside(self, z):
        x, y = np.real(z), np.imag(z)
        return (x > 0) & (x < self.resolved_limit) & (np.abs(y) < 1.5) & ~self._on_slit(z)

    def in_full_domain(self, w):
        """Membership in the whole slit rectangle (unresolved slits have measure zero)."""
        z = np.asarray(w, dtype=complex)
        x, y = np.real(z), np.imag(z)
        return (x > 0) & (x < self.total_width) & (np.abs(y) < 1.5) & ~self._on_slit(z)

    def _dist(self, z):
        z = np.asarray(z, dtype=complex)
        d = kernels.segment_distance(np.real(z), np.imag(z), self.boundary_segments())
        return d.reshape(z.shape) if z.ndim else float(d[0])

    def area(self):
        return 3.0 * self.total_width

    def params(self):
        return {"eps": self.eps, "n_slits": self.n_slits}

    @classmethod
    def from_params(cls, eps, n_slits):
        return cls(float(eps), int(n_slits))


def slit_rectangle_waypoints(eps, n):
    """w_0 = 1/2 and the midpoints w_k = (s_k + s_{k+1})/2 of the gaps L_k, k = 1..n."""
    if n < 1:
        raise DomainError("need n >= 1")
    p = 1.0 + eps
    s = np.concatenate([[0.0], np.cumsum(np.arange(1, n + 2, dtype=float) ** -p)])
    return [complex(0.5 * (s[k] + s[k + 1]), 0.0) for k in range(n + 1)]


def gamma_path(eps, k, domain=None):
    """Three-segment path from w_k to w_{k+1} over (k even) or under (k odd) slit S_{k+1}."""
    if k < 0:
        raise DomainError("k must be non-negative")
    w = slit_rectangle_waypoints(eps, k + 1)
    a, b = w[k], w[k + 1]
    h = 1.0 if k % 2 == 0 else -1.0
    path = Polyline((a, a + 1j * h, b + 1j * h, b))
    dom = domain if domain is not None else SlitRectangle(eps, k + 3)
    if not _clear_of_slits(path, dom, upto=k + 3):
        raise ConstructionError(f"path Gamma_{k} meets a slit")
    return path


def _segments_cross(p1, p2, q1, q2):
    def orient(a, b, c):
        return np.sign((b - a).real * (c - a).imag - (b - a).imag * (c - a).real)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    # collinear overlaps
    def on(a, b, c):
        return (min(a.real, b.real) <= c.real <= max(a.real, b.real)
                and min(a.imag, b.imag) <= c.imag <= max(a.imag, b.imag))
    return ((o1 == 0 and on(p1, p2, q1)) or (o2 == 0 and on(p1, p2, q2))
            or (o3 == 0 and on(q1, q2, p1)) or (o4 == 0 and on(q1, q2, p2)))


def _clear_of_slits(path, dom, upto):
    for x, lo, _, hi in dom.slit_segments(min(upto, dom.n_slits)):
        for p, q in path.segments():
            if _segments_cross(p, q, complex(x, lo), complex(x, hi)):
                return False
    return True


# ---------------------------------------------------------------------------
# Channel domains: unit disc plus {x > 0, |y| < a(x)}
# ---------------------------------------------------------------------------

@_register
@dataclass(frozen=True, eq=False)
class Channel(Domain):
    """The unit disc with a channel {0 < x < x_max, |y| < a(x)} attached.

    ``a`` is sampled on the grid ``x`` and interpolated linearly. The channel
    is closed off at the last grid point.
    """

    kind = "channel"
    bounded = True
    x: tuple = ()
    a: tuple = ()
    label: str = ""

    def __post_init__(self):
        xs = np.asarray(self.x, dtype=float)
        av = np.asarray(self.a, dtype=float)
        if xs.ndim != 1 or xs.shape != av.shape or xs.size < 2:
            raise DomainError("x and a must be 1-d arrays of equal length >= 2")
        if xs[0] != 0.0 or np.any(np.diff(xs) <= 0):
            raise DomainError("x grid must start at 0 and increase")
        if np.any(av <= 0) or np.any(av > 1.0):
            raise DomainError("channel half-width must lie in (0, 1]")
        slope = np.abs(np.diff(av) / np.diff(xs))
        if np.any(slope > 1.0 + 1e-12):
            raise DomainError("channel half-width must be 1-Lipschitz")
        xs.setflags(write=False)
        av.setflags(write=False)
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "a", av)
        object.__setattr__(self, "_walls", self._build_walls())

    @classmethod
    def from_function(cls, fn, x_max, n=2001, label=""):
        xs = np.linspace(0.0, x_max, n)
        return cls(xs, np.asarray(fn(xs), dtype=float), label)

    @classmethod
    def exponential(cls, x_max=30.0, n=3001):
        return cls.from_function(lambda t: np.exp(-t), x_max, n, "exp(-x)")

    @property
    def x_max(self):
        return float(self.x[-1])

    def width(self, t):
        return np.interp(t, self.x, self.a)

    def _junction(self):
        """Last x where the upper wall leaves the closed unit disc."""
        g = self.x ** 2 + self.a ** 2 - 1.0
        if g[-1] <= 0:
            raise DomainError("channel must reach outside the unit disc")
        idx = np.nonzero(g <= 0)[0]
        k = idx[-1]
        return brentq(lambda t: t * t + self.width(t) ** 2 - 1.0, self.x[k], self.x[k + 1], xtol=1e-15)

    def _build_walls(self):
        xj = self._junction()
        keep = self.x > xj
        xs = np.concatenate([[xj], self.x[keep]])
        ys = self.width(xs)
        up = np.column_stack([xs[:-1], ys[:-1], xs[1:], ys[1:]])
        low = up.copy()
        low[:, [1, 3]] *= -1
        cap = np.array([[xs[-1], -ys[-1], xs[-1], ys[-1]]])
        return {"segments": np.vstack([up, low, cap]), "phi": math.atan2(ys[0], xj)}

    def boundary_segments(self):
        return self._walls["segments"]

    def _inside(self, z):
        z = np.asarray(z, dtype=complex)
        x, y = np.real(z), np.imag(z)
        chan = (x > 0) & (x < self.x_max) & (np.abs(y) < self.width(np.clip(x, 0, self.x_max)))
        return (np.abs(z) < 1.0) | chan

    def _dist(self, z):
        z = np.asarray(z, dtype=complex)
        phi = self._walls["phi"]
        # the arc of the unit circle outside the channel: angles in [phi, 2 pi - phi]
        ang = np.mod(np.angle(z), 2 * math.pi)
        ends = np.exp(1j * np.array([phi, -phi]))
        to_arc = np.where((ang >= phi) & (ang <= 2 * math.pi - phi), np.abs(1.0 - np.abs(z)),
                          np.min(np.abs(z[..., None] - ends), axis=-1))
        walls = kernels.segment_distance(np.real(z), np.imag(z), self.boundary_segments())
        walls = walls.reshape(z.shape) if z.ndim else walls[0]
        return np.minimum(to_arc, walls)

    def vertical_width(self, t):
        t = np.asarray(t, dtype=float)
        disc = np.sqrt(np.maximum(0.0, 1.0 - t * t))
        chan = np.where((t > 0) & (t < self.x_max), self.width(np.clip(t, 0, self.x_max)), 0.0)
        return 2.0 * np.maximum(disc, chan)

    def width_integral(self, a, b, n=20001):
        t = np.linspace(a, min(b, self.x_max), n)
        return float(np.trapezoid(self.vertical_width(t), t))

    def area(self):
        return self.width_integral(-1.0, self.x_max, 200001)

    def params(self):
        return {"x": [float(v) for v in self.x], "a": [float(v) for v in self.a], "label": self.label}

    @classmethod
    def from_params(cls, x, a, label=""):
        return cls(tuple(x), tuple(a), label)


# ---------------------------------------------------------------------------
# Chain of annuli A_k(r_k/2, 2 r_k), r_k = 1/k, wound n_k = k^beta times
# ---------------------------------------------------------------------------

CORE_GEODESIC = 2.0 * math.pi ** 2 / math.log(4.0)


@_register
@dataclass(frozen=True)
class ChainOfAnnuli(Domain):
    kind = "chain"
    simply_connected = False
    bounded = True
    beta: float = 1.0
    N: int = 100

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError("beta must be positive")
        if int(self.N) < 1:
            raise DomainError("N must be >= 1")
        object.__setattr__(self, "N", int(self.N))

    def radii(self):
        return 1.0 / np.arange(1, self.N + 1, dtype=float)

    def windings(self):
        with np.errstate(over="raise"):
            try:
                n = np.arange(1, self.N + 1, dtype=float) ** self.beta
            except FloatingPointError as exc:
                raise RangeError(f"k^beta overflows for beta={self.beta}, N={self.N}") from exc
        if not np.all(np.isfinite(n)):
            raise RangeError(f"k^beta overflows for beta={self.beta}, N={self.N}")
        return n

    def _inside(self, z):
        raise ConfigurationError("the glued chain is modelled through its lengths only")

    _dist = _inside

    def area(self):
        return float(15.0 / 4.0 * math.pi * np.sum(self.radii() ** 2))

    def params(self):
        return {"beta": self.beta, "N": self.N}

    @classmethod
    def from_params(cls, beta, N):
        return cls(float(beta), int(N))


def chain_annuli_lengths(beta, N, cumulative=False):
    """(E_N, coarse ell_N, exact ell_N) for the chain of annuli.

    ``cumulative=True`` returns the three running sums as arrays over N.
    """
    dom = ChainOfAnnuli(beta, N)
    r = dom.radii()
    turns = dom.windings() + 0.5
    with np.errstate(over="raise", invalid="raise"):
        try:
            E = np.cumsum(turns * 2.0 * math.pi * r)
            coarse = np.cumsum(turns * 4.0 * math.pi)
            exact = np.cumsum(turns * CORE_GEODESIC)
        except FloatingPointError as exc:
            raise RangeError(f"length sums overflow for beta={beta}, N={N}") from exc
    if not (np.isfinite(E[-1]) and np.isfinite(coarse[-1])):
        raise RangeError(f"length sums overflow for beta={beta}, N={N}")
    if cumulative:
        return E, coarse, exact
    return float(E[-1]), float(coarse[-1]), float(exact[-1])


# ---------------------------------------------------------------------------
# Stolz regions and lenses
# ---------------------------------------------------------------------------

def stolz_contains_euclidean(c, d):
    """True iff the hyperbolic Stolz region of half-width d fits in a Euclidean one of aperture c."""
    if not c > 0:
        raise DomainError("aperture constant c must be positive")
    if not d > 0:
        raise DomainError("d must be positive")
    return bool(d <= c / (c + 2.0))


_GOLD = (math.sqrt(5.0) - 1.0) / 2.0
_S_MAX = 40.0  # hyperbolic length along the ray; tanh(20) rounds to 1


def ray_distance(theta, z, grid=64, iters=80):
    """min over t in [0, 1) of rho(z, t e^{i theta}), by bracketed golden-section search.

    The ray is parametrised by hyperbolic arc length s (t = tanh(s/2)), in
    which the distance is unimodal. A coarse grid brackets the minimum.
    """
    z = as_point(z)
    if abs(z) >= 1.0:
        raise DomainError(f"{z} is outside the unit disc")
    u = complex(np.exp(1j * theta))

    def rho(s):
        t = np.tanh(0.5 * np.asarray(s, dtype=float))
        q = np.minimum(pseudo_distance(z, t * u), 1.0)
        with np.errstate(divide="ignore"):
            return 2.0 * np.arctanh(q)

    s = np.linspace(0.0, _S_MAX, grid + 1)
    vals = rho(s)
    k = int(np.argmin(vals))
    lo, hi = s[max(k - 1, 0)], s[min(k + 1, grid)]
    c = hi - _GOLD * (hi - lo)
    e = lo + _GOLD * (hi - lo)
    fc, fe = rho(c), rho(e)
    for _ in range(iters):
        if fc < fe:
            hi, e, fe = e, c, fc
            c = hi - _GOLD * (hi - lo)
            fc = rho(c)
        else:
            lo, c, fc = c, e, fe
            e = lo + _GOLD * (hi - lo)
            fe = rho(e)
        if hi - lo < 1e-13:
            break
    return float(min(fc, fe, vals[k]))


def ray_distance_closed_form(theta, z):
    """Same quantity from the geometry of the diameter: exact, for testing."""
    z = as_point(z) * complex(np.exp(-1j * theta))
    if abs(z) >= 1.0:
        raise DomainError(f"{z} is outside the unit disc")
    if z.real < 0.0:
        return 2.0 * math.atanh(abs(z))
    return math.asinh(2.0 * abs(z.imag) / (1.0 - abs(z) ** 2))


def lens_membership(theta, d, z):
    """Is rho(z, [0, e^{i theta})) < d ?"""
    if not d > 0:
        raise DomainError("d must be positive")
    return ray_distance(theta, z) < d


@dataclass(frozen=True)
class StolzRegion:
    """{z : rho(z, [0, e^{i theta})) < d}: one end of the lens about a diameter."""

    theta: float
    d: float

    def __post_init__(self):
        if not self.d > 0:
            raise DomainError("d must be positive")

    @property
    def aperture(self):
        """Half-height of the region in strip coordinates 2 artanh(z)."""
        return 2.0 * math.atan(math.tanh(0.5 * self.d))

    def contains(self, z):
        return lens_membership(self.theta, self.d, z)

    def contains_fast(self, z):
        z = np.asarray(z, dtype=complex) * np.exp(-1j * self.theta)
        r2 = np.abs(z) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            side = np.arcsinh(2.0 * np.abs(np.imag(z)) / (1.0 - r2))
            cap = 2.0 * np.arctanh(np.minimum(np.abs(z), 1.0))
        dist = np.where(np.real(z) < 0, cap, side)
        return (np.abs(z) < 1.0) & (dist < self.d)
