"""Möbius transformations z -> (az+b)/(cz+d)."""
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, PoleError

POLE_TOL = 1e-14


def as_point(z):
    """Coerce ``z`` to a finite Python complex."""
    w = complex(z)
    if not (np.isfinite(w.real) and np.isfinite(w.imag)):
        raise DomainError(f"non-finite point {z!r}")
    return w


@dataclass(frozen=True)
class MoebiusMap:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_point(getattr(self, name)))
        if abs(self.determinant) == 0.0:
            raise DomainError("degenerate Möbius map (ad - bc = 0)")

    @property
    def determinant(self):
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def __call__(self, z):
        return moebius_apply(self, z)

    def compose(self, other):
        """Return self ∘ other."""
        a, b, c, d = self.a, self.b, self.c, self.d
        p, q, r, s = other.a, other.b, other.c, other.d
        return MoebiusMap(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    def inverse(self):
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        return self.determinant / den ** 2

    def eval_deriv(self, z):
        """Vectorised (value, derivative) pair; poles are the caller's problem."""
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        return (self.a * z + self.b) / den, self.determinant / den ** 2

    def area(self):
        """Area of the image of the unit disc, or inf when the pole lies in the closed disc."""
        if self.c != 0 and abs(self.d / self.c) <= 1.0:
            return float("inf")
        # image of the unit circle is a circle of radius |ad-bc| / ||d|^2 - |c|^2|
        radius = abs(self.determinant) / abs(abs(self.d) ** 2 - abs(self.c) ** 2)
        return float(np.pi * radius ** 2)

    def is_disc_automorphism(self, tol=1e-12):
        pts = np.exp(1j * np.linspace(0.0, 2 * np.pi, 7, endpoint=False))
        return bool(np.all(np.abs(np.abs(self.eval_deriv(pts)[0]) - 1.0) < tol)
                    and abs(self(0.0)) < 1.0)


def moebius_apply(m, z):
    z = as_point(z)
    den = m.c * z + m.d
    if abs(den) < POLE_TOL * max(1.0, abs(m.c), abs(m.d)):
        raise PoleError(f"{z} is the pole of the map")
    return (m.a * z + m.b) / den


def disc_automorphism(z0):
    """The automorphism w -> (w - z0)/(1 - conj(z0) w) of the unit disc."""
    z0 = as_point(z0)
    if abs(z0) >= 1.0:
        raise DomainError(f"centre {z0} is not in the unit disc")
    return MoebiusMap(1.0, -z0, -z0.conjugate(), 1.0)


def rotation(phi):
    return MoebiusMap(np.exp(1j * phi), 0.0, 0.0, 1.0)
