"""Adaptive Gauss-Kronrod quadrature and fixed Gauss-Legendre panel rules."""
import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import DomainError, QuadratureError

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15)
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5, 13, 11, 9]] = np.concatenate([_WG[:3], _WG[:3]])
_GWEIGHTS[7] = _WG[3]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int

    def __float__(self):
        return float(self.value)


def _gk15(fn, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    y = np.asarray(fn(mid + half * _NODES), dtype=float)
    if y.shape != _NODES.shape:
        y = np.broadcast_to(y, _NODES.shape)
    k = half * float(np.dot(_KWEIGHTS, y))
    g = half * float(np.dot(_GWEIGHTS, y))
    if not np.all(np.isfinite(y)):
        return k, math.inf
    return k, abs(k - g)


def integrate_adaptive(fn, a, b, tol=DEFAULT_TOL, max_intervals=4000, vectorized=True):
    """Integrate a real function over [a, b] by greedy interval bisection.

    ``fn`` is called with numpy arrays of 15 abscissae unless
    ``vectorized=False``. The interval with the largest error is split until
    the summed estimate drops to ``tol``. Endpoint singularities that are
    integrable get resolved by repeated splitting of the end interval, since
    Kronrod nodes never touch an endpoint.

    The returned estimate is the smallest total error seen along the
    splitting sequence, so a tighter ``tol`` never reports a larger one.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        if a == b:
            return QuadratureResult(0.0, 0.0, 0)
        raise DomainError(f"need a < b, got [{a}, {b}]")
    if not vectorized:
        scalar = fn
        fn = lambda x: np.array([scalar(float(t)) for t in x])  # noqa: E731

    val, err = _gk15(fn, a, b)
    evals = 15
    heap = [(-err, a, b, val, err)]
    total_val, total_err = val, err
    frozen_val = frozen_err = 0.0
    best = (total_err, total_val)
    while total_err > tol:
        if not heap:
            break
        if len(heap) + 1 > max_intervals:
            raise QuadratureError(
                f"interval budget {max_intervals} exhausted (error {best[0]:.3g} > tol {tol:.3g})",
                partial=best[1], error_estimate=best[0])
        _, lo, hi, v, e = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi) or (hi - lo) < 4 * np.finfo(float).eps * max(abs(lo), abs(hi), 1e-300):
            frozen_val += v
            frozen_err += e
            if not heap:
                break
            continue
        v1, e1 = _gk15(fn, lo, mid)
        v2, e2 = _gk15(fn, mid, hi)
        evals += 30
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
        total_val += v1 + v2 - v
        total_err += e1 + e2 - e
        if evals % 3000 < 30 or total_err <= tol:
            # periodic exact re-sum keeps cancellation drift out of the totals
            total_val = frozen_val + math.fsum(item[3] for item in heap)
            total_err = frozen_err + math.fsum(item[4] for item in heap)
        if total_err < best[0]:
            best = (total_err, total_val)
    err, val = best
    if not math.isfinite(val):
        raise QuadratureError("integrand produced non-finite values", partial=val)
    if err > tol:
        raise QuadratureError(
            f"could not reach tol {tol:.3g}; best error {err:.3g}", partial=val, error_estimate=err)
    return QuadratureResult(float(val), float(err), evals)


@lru_cache(maxsize=64)
def gauss_legendre(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_rule(edges, n=10):
    """Composite Gauss-Legendre nodes and weights over consecutive panels."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(n)
    lo = edges[:-1, None]
    half = 0.5 * np.diff(edges)[:, None]
    nodes = lo + half * (x + 1.0)
    weights = half * w
    return nodes.ravel(), weights.ravel()


def cumulative_panel_integral(g, edges, n=10):
    """Nodes, weights and running integral of ``g`` at each node.

    Returns (nodes, weights, cumulative) where cumulative[k] approximates
    the integral of g from edges[0] to nodes[k]. Within each panel the
    partial integral to a node is computed with its own Gauss rule, so the
    cost is n^2 evaluations per panel.
    """
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(n)
    nodes, weights = panel_rule(edges, n)
    nodes2 = nodes.reshape(-1, n)
    lo = edges[:-1, None]
    # sub-rule on [lo, node] for every node of every panel
    sub_half = 0.5 * (nodes2 - lo)
    sub_nodes = lo[:, :, None] + sub_half[:, :, None] * (x + 1.0)
    vals = np.asarray(g(sub_nodes.ravel()), dtype=float).reshape(sub_nodes.shape)
    partial = np.sum(vals * w, axis=2) * sub_half
    panel_vals = np.asarray(g(nodes), dtype=float).reshape(-1, n)
    panel_tot = np.sum(panel_vals * weights.reshape(-1, n), axis=1)
    offsets = np.concatenate([[0.0], np.cumsum(panel_tot)[:-1]])
    cumulative = (offsets[:, None] + partial).ravel()
    return nodes, weights, cumulative, panel_vals.ravel()


LN2 = math.log(2.0)


def integrate_radial(g, r=None, s_end=None, tol=DEFAULT_TOL, max_intervals=4000):
    """Integrate g over t in [0, r] where g(t, s) also receives s = 1 - t.

    Beyond t = 1/2 the substitution t = 1 - 2^-u is used, which turns the
    typical 1/(1-t) growth of hyperbolic integrands into something flat in
    u. Pass ``s_end = 1 - r`` instead of ``r`` when r is within rounding of 1.
    """
    if s_end is None:
        if r is None:
            raise ValueError("need r or s_end")
        if not 0.0 <= r < 1.0:
            raise DomainError(f"r = {r} outside [0, 1)")
        s_end = 1.0 - r
    if not 0.0 < s_end <= 1.0:
        raise DomainError(f"1 - r = {s_end} outside (0, 1]")
    t_end = 1.0 - s_end
    if t_end <= 0.0:
        return QuadratureResult(0.0, 0.0, 0)
    first = min(t_end, 0.5)
    res1 = integrate_adaptive(lambda t: g(t, 1.0 - t), 0.0, first, tol / 2, max_intervals)
    if t_end <= 0.5:
        return res1
    u_end = -math.log2(s_end)

    def h(u):
        s = np.exp2(-u)
        return g(1.0 - s, s) * LN2 * s

    res2 = integrate_adaptive(h, 1.0, u_end, tol / 2, max_intervals)
    return QuadratureResult(res1.value + res2.value, res1.error_estimate + res2.error_estimate,
                            res1.evaluations + res2.evaluations)
