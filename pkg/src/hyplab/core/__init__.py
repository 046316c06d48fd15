"""Complex-analytic substrate: Möbius maps, power series, curves, quadrature."""
from .curves import Polyline, RadialSegment, Sampled, line_integral
from .moebius import MoebiusMap, as_point, disc_automorphism, moebius_apply, rotation
from .quadrature import (
    DEFAULT_TOL,
    QuadratureResult,
    cumulative_panel_integral,
    gauss_legendre,
    integrate_adaptive,
    integrate_radial,
    panel_rule,
)
from .series import PowerSeriesFunction, random_polynomial, series_area, series_eval_deriv

__all__ = [
    "DEFAULT_TOL", "MoebiusMap", "Polyline", "PowerSeriesFunction", "QuadratureResult",
    "RadialSegment", "Sampled", "as_point", "cumulative_panel_integral", "disc_automorphism",
    "gauss_legendre", "integrate_adaptive", "integrate_radial", "line_integral",
    "moebius_apply", "panel_rule", "random_polynomial", "rotation", "series_area",
    "series_eval_deriv",
]
