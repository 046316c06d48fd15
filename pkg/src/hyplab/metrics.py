"""Hyperbolic densities, disc distance, Harnack ratios and hyperbolic means."""
import math
from dataclasses import dataclass

import numpy as np

from .core.moebius import as_point, disc_automorphism
from .core.quadrature import DEFAULT_TOL, integrate_adaptive
from .errors import BoundaryError, ConfigurationError, DomainError, QuadratureError
from .report import InequalityReport


@dataclass(frozen=True)
class DensityEstimate:
    """A hyperbolic density value known exactly or only between two bounds."""

    lower: float
    upper: float
    exact: bool = False

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper):
            raise ValueError(f"need 0 <= lower <= upper, got [{self.lower}, {self.upper}]")
        if self.exact and self.lower != self.upper:
            raise ValueError("an exact estimate has lower == upper")

    @classmethod
    def of(cls, value):
        v = float(value)
        return cls(v, v, True)

    @property
    def value(self):
        """Exact value, or the geometric mean of the band."""
        return self.lower if self.exact else math.sqrt(self.lower * self.upper)

    @property
    def ratio(self):
        return self.upper / self.lower if self.lower > 0 else math.inf

    def contains(self, x, rtol=1e-12):
        return self.lower * (1 - rtol) <= x <= self.upper * (1 + rtol)


# -- model densities ---------------------------------------------------------
# The lam_* functions are vectorised and skip validation; density_* are the
# checked point evaluators returning a DensityEstimate.

def lam_disc(z):
    return 2.0 / (1.0 - np.abs(z) ** 2)


def lam_halfplane(z):
    return 1.0 / np.imag(z)


def lam_strip(half_width, z):
    c = math.pi / (2.0 * half_width)
    return c / np.cos(c * np.imag(z))


def lam_annulus(R, w):
    L = math.log(R)
    c = math.pi / (2.0 * L)
    rho = np.abs(w)
    return c / (rho * np.cos(c * np.log(rho)))


def density_disc(z):
    z = as_point(z)
    if abs(z) >= 1.0:
        raise DomainError(f"{z} is outside the unit disc")
    return DensityEstimate.of(lam_disc(z))


def density_halfplane(z):
    z = as_point(z)
    if z.imag <= 0.0:
        raise DomainError(f"{z} is outside the upper half-plane")
    return DensityEstimate.of(1.0 / z.imag)


def density_strip(half_width, z):
    z = as_point(z)
    if half_width <= 0:
        raise DomainError("strip half-width must be positive")
    if abs(z.imag) >= half_width:
        raise DomainError(f"{z} is outside the strip |Im z| < {half_width}")
    return DensityEstimate.of(lam_strip(half_width, z))


def density_annulus(R, w):
    """Density of 1/R < |w| < R: (pi / 2 log R) / (|w| cos(pi log|w| / 2 log R))."""
    w = as_point(w)
    if not R > 1.0:
        raise DomainError(f"annulus needs R > 1, got {R}")
    if not 1.0 / R < abs(w) < R:
        raise DomainError(f"{w} is outside the annulus 1/{R} < |w| < {R}")
    return DensityEstimate.of(lam_annulus(R, w))


def density_bounds_distance(domain, w):
    """The band 1/(2 dist) <= lambda <= 2/dist, valid on simply connected domains."""
    w = as_point(w)
    if not domain.simply_connected:
        raise ConfigurationError(f"{type(domain).__name__} is not simply connected")
    if not domain.contains(w):
        raise DomainError(f"{w} is not inside {domain!r}")
    dist = float(domain.boundary_distance(w))
    if not dist > 0.0:
        raise BoundaryError(f"{w} lies on the boundary")
    if math.isinf(dist):
        return DensityEstimate(0.0, 0.0)
    return DensityEstimate(0.5 / dist, 2.0 / dist)


def density_lower_symmetrization(m_of_t, t):
    """Lower bound 1/m(t) from the width m(t) of the vertical cross-section at t."""
    m = float(m_of_t(t)) if callable(m_of_t) else float(m_of_t)
    if not m > 0.0:
        raise DomainError(f"cross-section width must be positive, got {m}")
    return 1.0 / m


# -- distance ----------------------------------------------------------------

def pseudo_distance(z, w):
    """|z - w| / |1 - conj(z) w|, vectorised."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)


def disc_distance(z, w):
    z = as_point(z)
    w = as_point(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise DomainError("both points must lie in the unit disc")
    t = float(pseudo_distance(z, w))
    return 2.0 * math.atanh(min(t, 1.0))


def hyperbolic_disc_area(d):
    if not d > 0:
        raise DomainError(f"radius must be positive, got {d}")
    return 4.0 * math.pi * math.sinh(0.5 * d) ** 2


def harnack_ratio_check(z, w, tolerance=1e-12):
    """lambda(z)/lambda(w) must lie within a factor 4 exp(rho(z, w)) of 1."""
    rho = disc_distance(z, w)
    ratio = density_disc(z).value / density_disc(w).value
    bound = 4.0 * math.exp(rho)
    upper_slack = bound - ratio
    lower_slack = ratio - 1.0 / bound
    return InequalityReport.compare(
        "harnack", max(ratio, 1.0 / ratio), bound, tolerance,
        {"z": as_point(z), "w": as_point(w), "rho": rho, "ratio": ratio,
         "upper_slack": upper_slack, "lower_slack": lower_slack})


def _circle_mean(f, z0, rho, m):
    """Mean of f over the image of |zeta| = rho under zeta -> (zeta + z0)/(1 + conj(z0) zeta)."""
    ang = np.exp(2j * math.pi * np.arange(m) / m)
    zeta = rho * ang
    pts = (zeta + z0) / (1.0 + np.conj(z0) * zeta)
    return np.mean(f(pts))


def hyperbolic_mean_value(f, z0, d, tol=1e-8, max_angles=4096, max_intervals=2000):
    """Compare the hyperbolic average of f over the disc of radius d about z0 with f(z0).

    The disc is pulled back to |zeta| < tanh(d/2) by an automorphism, where
    lambda^2 dA is unchanged, and integrated in polar coordinates: angular
    trapezoid (doubled until stable) inside a radial adaptive rule.
    """
    z0 = as_point(z0)
    if abs(z0) >= 1.0:
        raise DomainError(f"{z0} is outside the unit disc")
    if not d > 0:
        raise DomainError("radius must be positive")
    R = math.tanh(0.5 * d)
    # angular resolution good enough at the outer circle is good for all rho
    m = 16
    prev = _circle_mean(f, z0, R, m)
    while True:
        m *= 2
        cur = _circle_mean(f, z0, R, m)
        if abs(cur - prev) <= 0.1 * tol * max(1.0, abs(cur)):
            break
        if m >= max_angles:
            raise QuadratureError(f"angular rule did not settle with {m} nodes",
                                  partial=float(abs(cur)))
        prev = cur

    def radial(part):
        def g(rho):
            out = np.empty(rho.shape)
            for k, r in enumerate(rho):
                out[k] = part(_circle_mean(f, z0, r, m))
            return out * 2 * math.pi * rho * 4.0 / (1.0 - rho * rho) ** 2
        return g

    area = hyperbolic_disc_area(d)
    re = integrate_adaptive(radial(np.real), 0.0, R, tol * area / 4, max_intervals)
    im = integrate_adaptive(radial(np.imag), 0.0, R, tol * area / 4, max_intervals)
    mean = complex(re.value, im.value) / area
    target = complex(f(z0))
    scale = max(1.0, abs(target))
    err = abs(mean - target)
    return InequalityReport.compare(
        "mean_value", err / scale, tol, 0.0,
        {"z0": z0, "d": float(d), "mean": mean, "value": target, "angles": m,
         "area": area, "quadrature_error": (re.error_estimate + im.error_estimate) / area},
        "error relative to max(1, |f(z0)|)")
