"""Truncated power series f(z) = sum a_n z^n on the unit disc."""
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True, eq=False)
class PowerSeriesFunction:
    """Polynomial a_0 + a_1 z + ... + a_N z^N, N >= 1.

    Only the stored coefficients exist; nothing is assumed about a tail.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if c.size < 2:
            c = np.concatenate([c, np.zeros(2 - c.size, dtype=complex)])
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self):
        return self.coeffs.size - 1

    def __repr__(self):
        return f"PowerSeriesFunction(order={self.order})"

    def eval_deriv(self, z):
        """Horner evaluation of (f(z), f'(z)); vectorised over ``z``."""
        z = np.asarray(z, dtype=complex)
        c = self.coeffs
        val = np.full(z.shape, c[-1], dtype=complex)
        der = np.zeros(z.shape, dtype=complex)
        for a in c[-2::-1]:
            der = der * z + val
            val = val * z + a
        return val, der

    def __call__(self, z):
        return self.eval_deriv(z)[0]

    def derivative_series(self):
        n = np.arange(1, self.coeffs.size)
        return PowerSeriesFunction(n * self.coeffs[1:])

    def area(self):
        return series_area(self)

    def abs_coefficients(self):
        """The series sum |a_n| z^n (same area, dominates E along [0, 1))."""
        return PowerSeriesFunction(np.abs(self.coeffs))

    def to_list(self):
        return [[float(a.real), float(a.imag)] for a in self.coeffs]

    @classmethod
    def from_list(cls, pairs):
        return cls([complex(re, im) for re, im in pairs])


def series_eval_deriv(f, z):
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"{z} is outside the unit disc")
    v, d = f.eval_deriv(z)
    return complex(v), complex(d)


def series_area(f):
    """Area of f(D) counted with multiplicity: pi * sum n |a_n|^2."""
    n = np.arange(f.coeffs.size)
    return float(np.pi * np.sum(n * np.abs(f.coeffs) ** 2))


def random_polynomial(rng, degree, decay=1.5, scale=1.0):
    """Polynomial with complex Gaussian coefficients shrinking like n^-decay."""
    n = np.arange(degree + 1)
    weights = scale / np.maximum(n, 1) ** decay
    g = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return PowerSeriesFunction(weights * g / np.sqrt(2.0))
