"""Curves in the plane: radial segments, polylines and sampled paths."""
from dataclasses import dataclass

import numpy as np

from .moebius import as_point
from .quadrature import QuadratureResult, integrate_adaptive, DEFAULT_TOL


@dataclass(frozen=True)
class RadialSegment:
    """The segment [0, r e^{i theta}] of the unit disc."""

    theta: float
    r: float

    def __post_init__(self):
        if not 0.0 <= self.r < 1.0:
            raise ValueError(f"radial segment needs 0 <= r < 1, got {self.r}")

    @property
    def direction(self):
        return complex(np.exp(1j * self.theta))

    def point(self, t):
        return np.asarray(t) * self.direction

    def length(self):
        return float(self.r)


@dataclass(frozen=True, eq=False)
class Polyline:
    vertices: tuple

    def __post_init__(self):
        v = tuple(as_point(z) for z in self.vertices)
        if len(v) < 2:
            raise ValueError("a polyline needs at least two vertices")
        object.__setattr__(self, "vertices", v)

    def segments(self):
        return list(zip(self.vertices[:-1], self.vertices[1:]))

    def segment_lengths(self):
        return np.array([abs(b - a) for a, b in self.segments()])

    def length(self):
        return float(np.sum(self.segment_lengths()))

    def sample(self, per_segment=50):
        pts = [np.asarray([self.vertices[0]])]
        for a, b in self.segments():
            s = np.linspace(0.0, 1.0, per_segment + 1)[1:]
            pts.append(a + s * (b - a))
        return np.concatenate(pts)

    def as_array(self):
        return np.array(self.vertices)


@dataclass(frozen=True, eq=False)
class Sampled:
    """A path known only at parameter values ``t`` (strictly increasing)."""

    t: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        p = np.asarray(self.points, dtype=complex)
        if t.ndim != 1 or t.shape != p.shape or t.size < 2:
            raise ValueError("t and points must be 1-d of equal length >= 2")
        if np.any(np.diff(t) <= 0):
            raise ValueError("parameter grid must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "points", p)

    def length(self):
        return float(np.sum(np.abs(np.diff(self.points))))


def line_integral(curve, density, tol=DEFAULT_TOL, max_intervals=4000):
    """Integral of ``density(points)`` against arc length along ``curve``.

    Polylines are integrated segment by segment with adaptive quadrature;
    sampled paths fall back to the trapezoid rule on their own points.
    """
    if isinstance(curve, RadialSegment):
        u = curve.direction
        return integrate_adaptive(lambda s: density(s * u), 0.0, curve.r, tol, max_intervals)
    if isinstance(curve, Sampled):
        vals = np.asarray(density(curve.points), dtype=float)
        ds = np.abs(np.diff(curve.points))
        return QuadratureResult(float(np.sum(0.5 * (vals[1:] + vals[:-1]) * ds)), float("nan"),
                                vals.size)
    total = err = 0.0
    evals = 0
    segs = curve.segments()
    for a, b in segs:
        L = abs(b - a)
        if L == 0.0:
            continue
        u = (b - a) / L
        res = integrate_adaptive(lambda s: density(a + s * u), 0.0, L, tol / len(segs), max_intervals)
        total += res.value
        err += res.error_estimate
        evals += res.evaluations
    return QuadratureResult(total, err, evals)
