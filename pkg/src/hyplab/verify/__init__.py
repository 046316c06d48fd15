"""Numerical checks of the length inequalities, one report per inequality."""
from ..report import InequalityReport, combine
from .checks import (check_bounded_hyperbolic, check_covering_annulus, check_example_exponents,
                     check_invariant_length, check_lipschitz, check_lp_growth, check_mz,
                     check_neighborhood, check_omitted_point, check_ray_in_finite_area,
                     check_stolz_containment, decay_probe, harnack_sweep, lipschitz_sweep,
                     little_bloch_probe, mean_value_sweep, mz_constant, omitted_point_constant)
from .suite import FAMILIES, dirichlet_test_set, polynomial_test_set, run_suite
