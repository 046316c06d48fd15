"""Area of f over hyperbolic tubes: Stolz regions and geodesic-segment neighbourhoods.

The tube {rho(z, [0, t1]) < d} is a rectangle 0 <= Re w <= rho, |Im w| < alpha
in strip coordinates w = 2 artanh z, plus two half-disc caps of Euclidean
radius tanh(d/2): one at 0 and one carried to t1 by a disc automorphism.
With rho = inf (no right cap) it is the Stolz region about [0, 1).
"""
import math

import numpy as np

from ..core.quadrature import gauss_legendre

U_MAX = 40.0


def _rule(lo, hi, n):
    x, w = gauss_legendre(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _strip_part(jac, rho, alpha, nu, nv):
    top = min(rho, U_MAX)
    edges = np.linspace(0.0, top, max(2, int(math.ceil(top))) + 1)
    v, wv = _rule(-alpha, alpha, nv)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        u, wu = _rule(a, b, nu)
        w = u[:, None] + 1j * v[None, :]
        z = np.tanh(0.5 * w)
        dz = 0.5 / np.cosh(0.5 * w) ** 2
        total += float(np.sum(wu[:, None] * wv[None, :] * jac(z) * np.abs(dz) ** 2))
    return total


def _half_disc(jac, R, right, nr, nphi, t1=0.0):
    r, wr = _rule(0.0, R, nr)
    lo, hi = (-0.5 * math.pi, 0.5 * math.pi) if right else (0.5 * math.pi, 1.5 * math.pi)
    phi, wphi = _rule(lo, hi, nphi)
    eta = r[:, None] * np.exp(1j * phi[None, :])
    if right:
        z = (eta + t1) / (1 + t1 * eta)
        J = ((1 - t1 * t1) / np.abs(1 + t1 * eta) ** 2) ** 2
    else:
        z, J = eta, 1.0
    return float(np.sum(wr[:, None] * wphi[None, :] * jac(z) * J * r[:, None]))


def tube_area(jac, rho, d, order=1):
    """∬ jac(z) dx dy over {rho(z, [0, tanh(rho/2)]) < d}; rho may be inf.

    ``jac`` must be vectorised. Returns (value, error estimate), the error
    being the change when every rule is doubled.
    """
    alpha = 2.0 * math.atan(math.tanh(0.5 * d))
    R = math.tanh(0.5 * d)
    t1 = math.tanh(0.5 * rho) if math.isfinite(rho) else 1.0

    def total(k):
        s = _strip_part(jac, rho, alpha, 12 * k, 24 * k) if rho > 0 else 0.0
        s += _half_disc(jac, R, False, 12 * k, 32 * k)
        if math.isfinite(rho):
            s += _half_disc(jac, R, True, 12 * k, 32 * k, t1)
        return s

    a = total(order)
    b = total(2 * order)
    return b, abs(b - a)


def segment_chart(z0, z1):
    """(psi, psi', rho): the automorphism psi with psi([0, tanh(rho/2)]) = [z0, z1]."""
    z0, z1 = complex(z0), complex(z1)
    m = (z1 - z0) / (1 - z0.conjugate() * z1)
    t1 = abs(m)
    rot = m / t1 if t1 > 0 else 1.0
    c = z0.conjugate() * rot

    def psi(zeta):
        zeta = np.asarray(zeta, dtype=complex)
        return (rot * zeta + z0) / (1 + c * zeta)

    def dpsi(zeta):
        zeta = np.asarray(zeta, dtype=complex)
        return rot * (1 - abs(z0) ** 2) / (1 + c * zeta) ** 2

    return psi, dpsi, 2.0 * math.atanh(min(t1, 1.0))
