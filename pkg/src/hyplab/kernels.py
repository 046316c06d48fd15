"""Hot inner loops, in a numba flavour and a pure-numpy flavour.

The numba path is used when numba imports and ``HYPLAB_DISABLE_NUMBA`` is
unset (or "0"). Both flavours run the same arithmetic in the same order, so
results agree to rounding; ``benchmarks/bench_kernels.py`` times them.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _numba_requested():
    flag = os.environ.get("HYPLAB_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


HAVE_NUMBA = numba is not None
BACKEND = "numba" if (HAVE_NUMBA and _numba_requested()) else "numpy"


def _maybe_njit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# Red-black SOR on a masked 5-point (Shortley-Weller) stencil
#
# Each interior node P stores normalised neighbour weights wE, wW, wN, wS
# (zero when that arm ends on the boundary) and a constant b collecting the
# boundary contributions, so the Gauss-Seidel value is
#     wE*uE + wW*uW + wN*uN + wS*uS + b.
# Arrays are indexed [j, i] = [y, x]; interior nodes never touch the edge.
# ---------------------------------------------------------------------------

def _sor_sweeps_py(u, wE, wW, wN, wS, b, interior, omega, n_sweeps):
    ny, nx = u.shape
    for _ in range(n_sweeps):
        for color in range(2):
            for j in range(1, ny - 1):
                start = 1 + ((1 + j + color) % 2)
                for i in range(start, nx - 1, 2):
                    if interior[j, i]:
                        gs = (wE[j, i] * u[j, i + 1] + wW[j, i] * u[j, i - 1]
                              + wN[j, i] * u[j + 1, i] + wS[j, i] * u[j - 1, i]
                              + b[j, i])
                        u[j, i] += omega * (gs - u[j, i])


def _sor_residual_py(u, wE, wW, wN, wS, b, interior):
    ny, nx = u.shape
    worst = 0.0
    for j in range(1, ny - 1):
        for i in range(1, nx - 1):
            if interior[j, i]:
                r = (wE[j, i] * u[j, i + 1] + wW[j, i] * u[j, i - 1]
                     + wN[j, i] * u[j + 1, i] + wS[j, i] * u[j - 1, i]
                     + b[j, i] - u[j, i])
                if abs(r) > worst:
                    worst = abs(r)
    return worst


_sor_sweeps_numba = _maybe_njit(_sor_sweeps_py)
_sor_residual_numba = _maybe_njit(_sor_residual_py)


def _gauss_seidel_value(u, wE, wW, wN, wS, b):
    return (wE * u[1:-1, 2:] + wW * u[1:-1, :-2]
            + wN * u[2:, 1:-1] + wS * u[:-2, 1:-1] + b)


def _sor_sweeps_numpy(u, wE, wW, wN, wS, b, interior, omega, n_sweeps):
    ny, nx = u.shape
    jj, ii = np.mgrid[1:ny - 1, 1:nx - 1]
    inner = interior[1:-1, 1:-1]
    colors = [inner & ((ii + jj) % 2 == c) for c in (0, 1)]
    w = [a[1:-1, 1:-1] for a in (wE, wW, wN, wS, b)]
    core = u[1:-1, 1:-1]
    for _ in range(n_sweeps):
        for mask in colors:
            gs = _gauss_seidel_value(u, *w)
            core[mask] += omega * (gs[mask] - core[mask])


def _sor_residual_numpy(u, wE, wW, wN, wS, b, interior):
    w = [a[1:-1, 1:-1] for a in (wE, wW, wN, wS, b)]
    r = _gauss_seidel_value(u, *w) - u[1:-1, 1:-1]
    inner = interior[1:-1, 1:-1]
    if not inner.any():
        return 0.0
    return float(np.max(np.abs(r[inner])))


# ---------------------------------------------------------------------------
# Minimum Euclidean distance from points to a set of segments
# ---------------------------------------------------------------------------

def _segment_distance_py(px, py, ax, ay, bx, by):
    n = px.shape[0]
    m = ax.shape[0]
    out = np.empty(n)
    for k in range(n):
        best = np.inf
        x = px[k]
        y = py[k]
        for s in range(m):
            dx = bx[s] - ax[s]
            dy = by[s] - ay[s]
            ll = dx * dx + dy * dy
            t = 0.0
            if ll > 0.0:
                t = ((x - ax[s]) * dx + (y - ay[s]) * dy) / ll
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            ex = ax[s] + t * dx - x
            ey = ay[s] + t * dy - y
            d2 = ex * ex + ey * ey
            if d2 < best:
                best = d2
        out[k] = np.sqrt(best)
    return out


_segment_distance_numba = _maybe_njit(_segment_distance_py)


def _segment_distance_numpy(px, py, ax, ay, bx, by, chunk=4096):
    dx = bx - ax
    dy = by - ay
    ll = dx * dx + dy * dy
    safe = np.where(ll > 0.0, ll, 1.0)
    out = np.empty(px.shape[0])
    for lo in range(0, px.shape[0], chunk):
        x = px[lo:lo + chunk, None]
        y = py[lo:lo + chunk, None]
        t = np.where(ll > 0.0, ((x - ax) * dx + (y - ay) * dy) / safe, 0.0)
        t = np.clip(t, 0.0, 1.0)
        ex = ax + t * dx - x
        ey = ay + t * dy - y
        out[lo:lo + chunk] = np.sqrt(np.min(ex * ex + ey * ey, axis=1))
    return out


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def sor_sweeps(u, wE, wW, wN, wS, b, interior, omega, n_sweeps, backend=None):
    """Run ``n_sweeps`` red-black SOR sweeps in place on ``u``."""
    if (backend or BACKEND) == "numba":
        _sor_sweeps_numba(u, wE, wW, wN, wS, b, interior, float(omega), int(n_sweeps))
    else:
        _sor_sweeps_numpy(u, wE, wW, wN, wS, b, interior, float(omega), int(n_sweeps))


def sor_residual(u, wE, wW, wN, wS, b, interior, backend=None):
    """Largest |Gauss-Seidel value - current value| over interior nodes."""
    if (backend or BACKEND) == "numba":
        return float(_sor_residual_numba(u, wE, wW, wN, wS, b, interior))
    return _sor_residual_numpy(u, wE, wW, wN, wS, b, interior)


def segment_distance(px, py, segments, backend=None):
    """Distance from each point (px[k], py[k]) to the nearest segment.

    ``segments`` is an (m, 4) array of rows (ax, ay, bx, by).
    """
    px = np.ascontiguousarray(px, dtype=float).ravel()
    py = np.ascontiguousarray(py, dtype=float).ravel()
    seg = np.ascontiguousarray(segments, dtype=float).reshape(-1, 4)
    if seg.shape[0] == 0:
        return np.full(px.shape, np.inf)
    cols = [np.ascontiguousarray(seg[:, k]) for k in range(4)]
    if (backend or BACKEND) == "numba":
        return _segment_distance_numba(px, py, *cols)
    return _segment_distance_numpy(px, py, *cols)
