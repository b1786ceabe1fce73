"""Riemann zeros as Schrodinger eigenvalues of a fractal-supplemented Wu-Sprung well."""

__version__ = "0.1.0"

from .eigensolver import EigenResult, SolverSettings, cross_validate, solve  # noqa: E402
from .fitstats import FitReport, fit, histogram, improvement_regions, rankit_points, refine_minimum  # noqa: E402
from .fractal import FractalParams, affine_residual, box_counting_dimension, eval_A  # noqa: E402
from .potential import (V0_DEFAULT, PotentialGrid, PotentialSpec, build_grid,  # noqa: E402
                        invert_potential, lambert_w, v_asymptotic, x_ws, x_ws_higher)
from .rvm import delta_term, n_connes, n_corrected, n_smooth  # noqa: E402
from .sweep import SweepConfig, SweepRecord, best_records, evaluate_point, run_sweep  # noqa: E402
from .zeros import ZeroTable, load_zeros, sum_of_squares  # noqa: E402
