"""Harmonic measure, geodesics as half-level sets, and separation of geodesics.

Discrete harmonic measure is computed on a uniform grid with the
Shortley-Weller five-point stencil: an arm of the stencil that leaves the
domain is cut at the boundary point (found by bisection on the membership
predicate) and carries the boundary value there. Red-black SOR solves the
resulting system.
"""
import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import distance_transform_edt
from scipy.spatial.distance import directed_hausdorff
from skimage.measure import find_contours

from . import kernels
from .core.moebius import as_point, disc_automorphism
from .core.quadrature import integrate_adaptive
from .errors import ConfigurationError, ConvergenceError, DomainError, NotFoundError
from .report import InequalityReport

DEFAULT_SOLVE_TOL = 1e-8
MAX_SWEEPS = 100_000


# ---------------------------------------------------------------------------
# Harmonic measure in the disc, closed form
# ---------------------------------------------------------------------------

def harmonic_measure_disc(arc_start, arc_end, z):
    """Harmonic measure at z of the arc from e^{i arc_start} counter-clockwise to e^{i arc_end}."""
    z = as_point(z)
    if abs(z) >= 1.0:
        raise DomainError(f"{z} is outside the unit disc")
    span = arc_end - arc_start
    if not 0.0 < span <= 2 * math.pi:
        raise DomainError("arc must have length in (0, 2 pi]")
    if span == 2 * math.pi:
        return 1.0
    m = disc_automorphism(z)
    a = m(complex(np.exp(1j * arc_start)))
    b = m(complex(np.exp(1j * arc_end)))
    return float(np.mod(np.angle(b) - np.angle(a), 2 * math.pi) / (2 * math.pi))


def harmonic_measure_disc_grid(arc_start, arc_end, z):
    """Vectorised version of :func:`harmonic_measure_disc` (no checks)."""
    z = np.asarray(z, dtype=complex)
    ea, eb = np.exp(1j * arc_start), np.exp(1j * arc_end)
    ma = (ea - z) / (1 - np.conj(z) * ea)
    mb = (eb - z) / (1 - np.conj(z) * eb)
    return np.mod(np.angle(mb) - np.angle(ma), 2 * math.pi) / (2 * math.pi)


def disc_geodesic(a, b, n=2001):
    """Points on the hyperbolic geodesic between e^{ia} and e^{ib}."""
    mu, delta = 0.5 * (a + b), 0.5 * (b - a)
    if abs(math.cos(delta)) < 1e-12:
        t = np.linspace(1.0, -1.0, n)
        return t * np.exp(1j * a)
    centre = np.exp(1j * mu) / math.cos(delta)
    radius = abs(math.tan(delta))
    p, q = np.exp(1j * a) - centre, np.exp(1j * b) - centre
    ang0, ang1 = np.angle(p), np.angle(q)
    diff = np.mod(ang1 - ang0 + math.pi, 2 * math.pi) - math.pi
    return centre + radius * np.exp(1j * (ang0 + np.linspace(0.0, diff, n)))


def _cyclic_fraction(pos, length, window, period):
    """Fraction of [pos - window, pos + window] covered by the arc [0, length] mod period.

    With window = 0 this is the plain indicator. Averaging the boundary data
    over a cell of width 2h, rather than sampling it, removes the O(h)
    error the five-point scheme otherwise makes next to a jump.
    """
    pos = np.mod(pos, period)
    if window <= 0:
        return (pos <= length).astype(float)
    cover = np.zeros(np.shape(pos))
    for shift in (-period, 0.0, period):
        lo = np.maximum(pos - window, shift)
        hi = np.minimum(pos + window, shift + length)
        cover += np.clip(hi - lo, 0.0, None)
    return np.minimum(cover / (2 * window), 1.0)


def arc_indicator(arc_start, arc_end, window=0.0):
    """Boundary data on the unit circle: 1 on the arc, 0 elsewhere, cell-averaged over ``window``."""

    def g(z):
        return _cyclic_fraction(np.angle(z) - arc_start, arc_end - arc_start, window, 2 * math.pi)
    return g


def unit_disc_inside(z):
    return np.abs(z) < 1.0


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Grid:
    """Uniform node grid over a rectangle, with a mask of interior nodes.

    Node (j, i) sits at x0 + i h, y0 + j h. ``inside_fn`` is the domain's
    membership predicate and ``boundary_fn`` gives boundary data at points of
    the boundary; both take complex arrays.
    """

    x0: float
    y0: float
    h: float
    inside: np.ndarray
    inside_fn: object = field(repr=False)
    boundary_fn: object = field(repr=False)
    u: np.ndarray = field(default=None, repr=False)
    solved: bool = False
    residual: float = math.inf
    sweeps: int = 0
    stencil: tuple = field(default=None, repr=False)

    @classmethod
    def build(cls, inside_fn, boundary_fn, bounds, h):
        """Grid over ``bounds = (xmin, xmax, ymin, ymax)``, aligned to multiples of h."""
        if not h > 0:
            raise ConfigurationError("grid spacing must be positive")
        xmin, xmax, ymin, ymax = bounds
        i0 = math.floor(xmin / h) - 1
        i1 = math.ceil(xmax / h) + 1
        j0 = math.floor(ymin / h) - 1
        j1 = math.ceil(ymax / h) + 1
        x0, y0 = i0 * h, j0 * h
        nx, ny = i1 - i0 + 1, j1 - j0 + 1
        X = x0 + h * np.arange(nx)
        Y = y0 + h * np.arange(ny)
        Z = X[None, :] + 1j * Y[:, None]
        inside = np.asarray(inside_fn(Z), dtype=bool)
        inside[0, :] = inside[-1, :] = inside[:, 0] = inside[:, -1] = False
        g = cls(x0, y0, h, inside, inside_fn, boundary_fn)
        g._assemble()
        return g

    @property
    def shape(self):
        return self.inside.shape

    @property
    def xs(self):
        return self.x0 + self.h * np.arange(self.shape[1])

    @property
    def ys(self):
        return self.y0 + self.h * np.arange(self.shape[0])

    def nodes(self):
        return self.xs[None, :] + 1j * self.ys[:, None]

    def _arm_fraction(self, P, step, iters=52):
        """Fraction in (0, 1] of the arm P -> P + step at which the boundary is crossed."""
        lo = np.zeros(P.shape)
        hi = np.ones(P.shape)
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            ins = np.asarray(self.inside_fn(P + mid * step), dtype=bool)
            lo = np.where(ins, mid, lo)
            hi = np.where(ins, hi, mid)
        return hi

    def _assemble(self):
        h = self.h
        ins = self.inside
        Z = self.nodes()
        arms = {"E": (0, 1, h), "W": (0, -1, -h), "N": (1, 0, 1j * h), "S": (-1, 0, -1j * h)}
        frac = {}
        bval = {}
        for name, (dj, di, step) in arms.items():
            nb = np.roll(np.roll(ins, -dj, axis=0), -di, axis=1)
            cut = ins & ~nb
            th = np.ones(ins.shape)
            bv = np.zeros(ins.shape)
            if cut.any():
                P = Z[cut]
                t = self._arm_fraction(P, step)
                th[cut] = t
                bv[cut] = np.asarray(self.boundary_fn(P + t * step), dtype=float)
            frac[name] = th
            bval[name] = bv
        hE, hW, hN, hS = (frac[k] for k in "EWNS")
        cE = 2.0 / (hE * (hE + hW))
        cW = 2.0 / (hW * (hE + hW))
        cN = 2.0 / (hN * (hN + hS))
        cS = 2.0 / (hS * (hN + hS))
        diag = cE + cW + cN + cS
        w = {}
        b = np.zeros(ins.shape)
        for name, c in zip("EWNS", (cE, cW, cN, cS)):
            dj, di, _ = arms[name]
            nb = np.roll(np.roll(ins, -dj, axis=0), -di, axis=1)
            wn = np.where(ins & nb, c / diag, 0.0)
            b += np.where(ins & ~nb, c / diag * bval[name], 0.0)
            w[name] = np.ascontiguousarray(wn)
        self.stencil = (w["E"], w["W"], w["N"], w["S"], np.ascontiguousarray(b))
        self.boundary_values = np.concatenate([bval[k][ins & (frac[k] < 1.0 + 1e-15)
                                                       & (w[k] == 0)] for k in "EWNS"])
        # nodes outside carry the boundary data there (for plotting and interpolation)
        u = np.zeros(ins.shape)
        outside = ~ins
        u[outside] = np.asarray(self.boundary_fn(Z[outside]), dtype=float)
        start = float(np.mean(self.boundary_values)) if self.boundary_values.size else 0.0
        u[ins] = start
        self.u = u

    def value_at(self, z):
        """Bilinear interpolation of the solution."""
        z = np.asarray(z, dtype=complex)
        fx = (np.real(z) - self.x0) / self.h
        fy = (np.imag(z) - self.y0) / self.h
        i = np.clip(np.floor(fx).astype(int), 0, self.shape[1] - 2)
        j = np.clip(np.floor(fy).astype(int), 0, self.shape[0] - 2)
        tx, ty = fx - i, fy - j
        u = self.u
        return ((1 - tx) * (1 - ty) * u[j, i] + tx * (1 - ty) * u[j, i + 1]
                + (1 - tx) * ty * u[j + 1, i] + tx * ty * u[j + 1, i + 1])

    def to_csv(self, path, interior_only=True):
        """Write rows x, y, value."""
        X, Y = np.meshgrid(self.xs, self.ys)
        sel = self.inside if interior_only else np.ones(self.shape, dtype=bool)
        _write_rows(path, ["x", "y", "value"], zip(X[sel], Y[sel], self.u[sel]))


def _write_rows(path, header, rows):
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) for v in row])
    os.replace(tmp, path)


def laplace_solve(grid, tol=DEFAULT_SOLVE_TOL, max_sweeps=MAX_SWEEPS, chunk=25, backend=None):
    """Solve the discrete Dirichlet problem on ``grid`` in place; returns the grid."""
    wE, wW, wN, wS, b = grid.stencil
    ny, nx = grid.shape
    L = max(nx, ny) * grid.h
    omega = 2.0 / (1.0 + math.sin(math.pi * grid.h / L))
    u = grid.u
    sweeps = 0
    res = kernels.sor_residual(u, wE, wW, wN, wS, b, grid.inside, backend)
    while res > tol:
        if sweeps >= max_sweeps:
            grid.residual, grid.sweeps = res, sweeps
            raise ConvergenceError(f"SOR stalled at residual {res:.3g} after {sweeps} sweeps",
                                   iterations=sweeps, residual=res)
        kernels.sor_sweeps(u, wE, wW, wN, wS, b, grid.inside, omega, chunk, backend)
        sweeps += chunk
        res = kernels.sor_residual(u, wE, wW, wN, wS, b, grid.inside, backend)
    grid.residual, grid.sweeps, grid.solved = res, sweeps, True
    return grid


def disc_grid(arc_start, arc_end, h):
    return Grid.build(unit_disc_inside, arc_indicator(arc_start, arc_end, h), (-1, 1, -1, 1), h)


# ---------------------------------------------------------------------------
# Level sets
# ---------------------------------------------------------------------------

@dataclass
class LevelPolyline:
    points: np.ndarray
    level: float = 0.5
    pieces: int = 1

    def __len__(self):
        return self.points.size

    def to_csv(self, path):
        _write_rows(path, ["x", "y"], zip(self.points.real, self.points.imag))


def extract_half_level(grid, level=0.5, clip=3.0):
    """Marching-squares polyline of {u = level}, clipped ``clip * h`` away from the boundary.

    The longest connected piece is returned; ``pieces`` counts how many
    survived the clipping.
    """
    if not grid.solved:
        raise ConfigurationError("grid has not been solved")
    vals = grid.u[grid.inside]
    if vals.size == 0 or not (vals.min() < level < vals.max()):
        raise NotFoundError(f"solution never crosses {level}")
    # marching squares only on cells whose four corners are interior nodes
    contours = find_contours(grid.u, level, mask=grid.inside)
    depth = distance_transform_edt(grid.inside)
    pieces = []
    for c in contours:
        z = grid.x0 + grid.h * c[:, 1] + 1j * (grid.y0 + grid.h * c[:, 0])
        # distance from the boundary, interpolated from the node distance map
        d = _bilinear(depth, c[:, 0], c[:, 1])
        keep = d >= clip
        # split at clipped points so each piece is contiguous
        idx = np.flatnonzero(keep)
        if idx.size == 0:
            continue
        breaks = np.flatnonzero(np.diff(idx) > 1)
        for seg in np.split(idx, breaks + 1):
            if seg.size >= 2:
                pieces.append(z[seg])
    if not pieces:
        raise NotFoundError("level set lies entirely within the clipped boundary layer")
    best = max(pieces, key=lambda p: np.sum(np.abs(np.diff(p))))
    return LevelPolyline(best, level, len(pieces))


def _bilinear(a, r, c):
    r0 = np.clip(np.floor(r).astype(int), 0, a.shape[0] - 2)
    c0 = np.clip(np.floor(c).astype(int), 0, a.shape[1] - 2)
    tr, tc = r - r0, c - c0
    return ((1 - tr) * (1 - tc) * a[r0, c0] + (1 - tr) * tc * a[r0, c0 + 1]
            + tr * (1 - tc) * a[r0 + 1, c0] + tr * tc * a[r0 + 1, c0 + 1])


def hausdorff(p, q):
    """Symmetric Hausdorff distance between two complex point sets."""
    P = np.column_stack([np.real(p), np.imag(p)])
    Q = np.column_stack([np.real(q), np.imag(q)])
    return max(directed_hausdorff(P, Q)[0], directed_hausdorff(Q, P)[0])


def densify(points, step):
    """Insert points along a polyline so consecutive gaps are at most ``step``."""
    pts = np.asarray(points, dtype=complex)
    out = [pts[:1]]
    for a, b in zip(pts[:-1], pts[1:]):
        k = max(1, int(math.ceil(abs(b - a) / step)))
        out.append(a + (b - a) * np.arange(1, k + 1) / k)
    return np.concatenate(out)


def disc_level_check(arc_start, arc_end, h, tol=DEFAULT_SOLVE_TOL, bound=3.0):
    """Hausdorff distance between the grid half-level and the exact geodesic, against ``bound * h``.

    The exact curve is compared only where it is at least 4h from the circle,
    since the extracted level set stops 3 nodes short of the boundary.
    """
    g = disc_grid(arc_start, arc_end, h)
    laplace_solve(g, tol)
    level = extract_half_level(g)
    exact = disc_geodesic(arc_start, arc_end, 20001)
    exact = exact[1.0 - np.abs(exact) >= 4.0 * h]
    dist = hausdorff(level.points, exact)
    return InequalityReport.compare("geodesic_level_set", dist, bound * h, 0.0,
                                    {"arc": (arc_start, arc_end), "h": h, "hausdorff_over_h": dist / h,
                                     "pieces": level.pieces, "sweeps": g.sweeps})


# ---------------------------------------------------------------------------
# Polygonal domains and the square family
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PolygonDomain:
    """Interior of a simple polygon with counter-clockwise vertices."""

    vertices: tuple

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex)
        if v.size < 3:
            raise ConfigurationError("a polygon needs three vertices")
        object.__setattr__(self, "vertices", v)
        seg = np.column_stack([v.real, v.imag, np.roll(v, -1).real, np.roll(v, -1).imag])
        lengths = np.abs(np.roll(v, -1) - v)
        object.__setattr__(self, "_segments", seg)
        object.__setattr__(self, "_lengths", lengths)
        object.__setattr__(self, "_cum", np.concatenate([[0.0], np.cumsum(lengths)]))

    @property
    def perimeter(self):
        return float(self._cum[-1])

    def bounds(self):
        v = self.vertices
        return v.real.min(), v.real.max(), v.imag.min(), v.imag.max()

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        x, y = np.real(z), np.imag(z)
        v = self.vertices
        inside = np.zeros(z.shape, dtype=bool)
        for a, b in zip(v, np.roll(v, -1)):
            ya, yb = a.imag, b.imag
            if ya == yb:
                continue
            cond = (ya > y) != (yb > y)
            xc = a.real + (y - ya) * (b.real - a.real) / (yb - ya)
            inside ^= cond & (x < xc)
        # open set: points on an edge are outside
        return inside & (self.boundary_distance(z) > 0)

    def boundary_distance(self, z):
        z = np.asarray(z, dtype=complex)
        d = kernels.segment_distance(np.real(z), np.imag(z), self._segments)
        return d.reshape(z.shape) if z.ndim else float(d[0])

    def arclength(self, z):
        """Arclength position (from vertex 0, counter-clockwise) of the nearest boundary point."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        v = self.vertices
        a, b = v, np.roll(v, -1)
        d = b - a
        ll = np.abs(d) ** 2
        t = np.clip(np.real((z[:, None] - a) * np.conj(d)) / ll, 0.0, 1.0)
        dist = np.abs(a + t * d - z[:, None])
        k = np.argmin(dist, axis=1)
        return self._cum[k] + t[np.arange(z.size), k] * self._lengths[k]

    def arc_indicator(self, s_from, s_to, window=0.0):
        """Boundary data equal to 1 on the counter-clockwise arc [s_from, s_to]."""
        P = self.perimeter
        length = np.mod(s_to - s_from, P)

        def g(z):
            s = self.arclength(np.ravel(z)).reshape(np.shape(z))
            return _cyclic_fraction(s - s_from, length, window, P)
        return g

    def grid(self, boundary_fn, h):
        return Grid.build(self.contains, boundary_fn, self.bounds(), h)


def rectangle(x0, x1, y0, y1):
    return PolygonDomain((complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)))


def square_with_extensions(top=None, bottom=None):
    """(-1, 1)^2 with rectangles (a, b, height) glued to its top and bottom sides."""
    v = [complex(-1, -1)]
    if bottom is not None:
        a, b, c = bottom
        v += [complex(a, -1), complex(a, -1 - c), complex(b, -1 - c), complex(b, -1)]
    v += [complex(1, -1), complex(1, 1)]
    if top is not None:
        a, b, c = top
        v += [complex(b, 1), complex(b, 1 + c), complex(a, 1 + c), complex(a, 1)]
    v += [complex(-1, 1)]
    return PolygonDomain(tuple(v))


@dataclass(frozen=True)
class CrosscutSample:
    domain: PolygonDomain
    p: complex  # endpoint on the top part of the boundary
    q: complex  # endpoint on the bottom part


def random_square_family(count, seed=7):
    """Seeded random extensions of the square with geodesic endpoints top and bottom."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        exts = []
        for _side in range(2):
            a = rng.uniform(-0.9, 0.3)
            b = rng.uniform(a + 0.2, 0.9)
            exts.append((a, b, rng.uniform(0.2, 0.6)))
        dom = square_with_extensions(top=exts[0], bottom=exts[1])
        px = rng.uniform(-0.95, 0.95)
        qx = rng.uniform(-0.95, 0.95)
        a, b, c = exts[0]
        p = complex(px, 1 + c if a < px < b else 1)
        a, b, c = exts[1]
        q = complex(qx, -1 - c if a < qx < b else -1)
        out.append(CrosscutSample(dom, p, q))
    return out


def _axis_crossings(points):
    """Abscissae where a polyline crosses y = 0."""
    y = points.imag
    xs = []
    for k in np.flatnonzero(np.sign(y[:-1]) * np.sign(y[1:]) <= 0):
        y0, y1 = y[k], y[k + 1]
        if y0 == y1:
            xs.append(points[k].real)
            continue
        t = y0 / (y0 - y1)
        xs.append(points[k].real + t * (points[k + 1].real - points[k].real))
    return xs


def geodesic_between(domain, p, q, h, tol=DEFAULT_SOLVE_TOL):
    """Half-level polyline of the harmonic measure of the boundary arc from q to p."""
    sp, sq = domain.arclength(p)[0], domain.arclength(q)[0]
    grid = domain.grid(domain.arc_indicator(sq, sp, h), h)
    laplace_solve(grid, tol)
    return extract_half_level(grid), grid


def hyperbolic_distance_along_axis(domain, x, tol=1e-8):
    """Upper estimate of the hyperbolic distance from 0 to x on the real axis, via 2/dist."""
    if x == 0.0:
        return 0.0
    lo, hi = (0.0, x) if x > 0 else (x, 0.0)
    res = integrate_adaptive(lambda t: 2.0 / domain.boundary_distance(t + 0j), lo, hi, tol)
    return res.value


def square_eta_k(h, tol=1e-10):
    """k where the geodesic eta of E = (0,1) x (-1/2, 1/2) across its right side meets y = 0."""
    E = rectangle(0.0, 1.0, -0.5, 0.5)
    g = E.grid(_alpha_indicator(E, h), h)
    laplace_solve(g, tol)
    eta = extract_half_level(g, clip=1.0)
    xs = _axis_crossings(eta.points)
    if not xs:
        raise NotFoundError("eta does not meet the axis")
    return float(min(xs)), eta, g


def _alpha_indicator(domain, h):
    """Cell-averaged indicator of alpha = {1} x [-1/2, 1/2] on the boundary of ``domain``."""
    a0, a1 = domain.arclength(complex(1.0, -0.5))[0], domain.arclength(complex(1.0, 0.5))[0]
    return domain.arc_indicator(a0, a1, h)


def crosscut_samples(family, h, tol=DEFAULT_SOLVE_TOL):
    """(crossing abscissa or None, hyperbolic distance or None) for each family member."""
    out = []
    for smp in family:
        try:
            level, _ = geodesic_between(smp.domain, smp.p, smp.q, h, tol)
        except NotFoundError:
            out.append((None, None))
            continue
        xs = _axis_crossings(level.points)
        if not xs:
            out.append((None, None))
            continue
        x = max(xs, key=abs)
        out.append((x, hyperbolic_distance_along_axis(smp.domain, x)))
    return out


def crosscut_reach(family, samples=None, h=1 / 64, tol=DEFAULT_SOLVE_TOL):
    """Largest hyperbolic distance from 0 at which a sampled geodesic meets (-1, 1) x {0}.

    ``family`` is a sequence of :class:`CrosscutSample`, or an int giving
    the size of the default seeded family. Samples whose geodesic misses
    the crosscut are skipped.
    """
    if isinstance(family, int):
        family = random_square_family(family)
    if samples is not None:
        family = list(family)[:samples]
    dists = [d for _, d in crosscut_samples(family, h, tol) if d is not None]
    if not dists:
        raise NotFoundError("no sampled geodesic met the crosscut")
    return float(max(dists))


# ---------------------------------------------------------------------------
# Separation of geodesics
# ---------------------------------------------------------------------------

def _aligned_indices(D, E):
    if abs(D.h - E.h) > 1e-15 * D.h:
        raise ConfigurationError("grids have different spacing")
    oi = (E.x0 - D.x0) / D.h
    oj = (E.y0 - D.y0) / D.h
    if abs(oi - round(oi)) > 1e-6 or abs(oj - round(oj)) > 1e-6:
        raise ConfigurationError("grid nodes are not aligned")
    oi, oj = int(round(oi)), int(round(oj))
    jj, ii = np.nonzero(E.inside)
    Dj, Di = jj + oj, ii + oi
    ok = (Dj >= 0) & (Dj < D.shape[0]) & (Di >= 0) & (Di < D.shape[1])
    if not np.all(ok) or not np.all(D.inside[Dj, Di]):
        raise ConfigurationError("E's interior nodes are not interior to D")
    return (jj, ii), (Dj, Di)


def separation_check(D_grid, E_grid, alpha=None, near_tie=None):
    """omega_D > theta_E on E, with disjoint half-levels and eta between delta and alpha.

    ``alpha`` is an optional sequence of points sampling the shared arc; they
    are checked to be outside both open domains.
    """
    for g in (D_grid, E_grid):
        if not g.solved:
            raise ConfigurationError("both grids must be solved")
    (ej, ei), (dj, di) = _aligned_indices(D_grid, E_grid)
    if alpha is not None:
        pts = np.asarray(alpha, dtype=complex)
        if np.any(D_grid.inside_fn(pts)) or np.any(E_grid.inside_fn(pts)):
            raise ConfigurationError("alpha must lie on the boundary of both domains")
    omega = D_grid.u[dj, di]
    theta = E_grid.u[ej, ei]
    gap = omega - theta
    h = E_grid.h
    tie = h if near_tie is None else near_tie
    params = {"h": h, "nodes": int(gap.size), "min_gap": float(gap.min()),
              "near_ties": int(np.sum(np.abs(gap) < tie))}
    notes = []
    degenerate = bool(np.max(np.abs(gap)) < 1e-12)
    if degenerate:
        notes.append("degenerate pair: the two harmonic measures coincide (excluded: E must be a proper subdomain)")
    delta = eta = None
    disjoint = between = False
    try:
        delta = extract_half_level(D_grid)
        eta = extract_half_level(E_grid)
    except NotFoundError as exc:
        notes.append(str(exc))
    if delta is not None and eta is not None:
        sep = hausdorff_min(delta.points, eta.points)
        params["level_gap"] = sep
        disjoint = sep > 0.0
        # theta < 1/2 on delta (where delta is in E) and omega > 1/2 on eta
        d_in = delta.points[np.asarray(E_grid.inside_fn(delta.points))]
        th_on_delta = E_grid.value_at(d_in) if d_in.size else np.array([0.0])
        om_on_eta = D_grid.value_at(eta.points)
        params["max_theta_on_delta"] = float(np.max(th_on_delta))
        params["min_omega_on_eta"] = float(np.min(om_on_eta))
        between = bool(np.max(th_on_delta) < 0.5 and np.min(om_on_eta) > 0.5)
    params["disjoint"] = disjoint
    params["eta_between"] = between
    rep = InequalityReport.compare("separation", float(-gap.min()), 0.0, 0.0, params, "; ".join(notes))
    rep.passed = bool(gap.min() > 0 and disjoint and between and not degenerate)
    return rep


def hausdorff_min(p, q):
    """Smallest distance between two point sets."""
    from scipy.spatial import cKDTree

    P = np.column_stack([np.real(p), np.imag(p)])
    Q = np.column_stack([np.real(q), np.imag(q)])
    d, _ = cKDTree(Q).query(P)
    return float(d.min())


def square_separation_pair(h, D=None, tol=1e-10):
    """Solved grids for D = (-1,1)^2 (or ``D``) and E = (0,1) x (-1/2,1/2), alpha = {1} x [-1/2, 1/2]."""
    D = D or rectangle(-1.0, 1.0, -1.0, 1.0)
    E = rectangle(0.0, 1.0, -0.5, 0.5)
    Dg = Grid.build(D.contains, _alpha_indicator(D, h), D.bounds(), h)
    Eg = Grid.build(E.contains, _alpha_indicator(E, h), E.bounds(), h)
    laplace_solve(Dg, tol)
    laplace_solve(Eg, tol)
    alpha = 1.0 + 1j * np.linspace(-0.5, 0.5, 11)
    return Dg, Eg, alpha
