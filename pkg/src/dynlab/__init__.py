"""Wealth-dynamics laboratory: admission models, fixed points and interventions."""

from .errors import DegenerateModelError, NumericError, ShapeViolationError
from .model import (GaussianParams, GaussianUpdateMap, admission_score_threshold, eval_K,
                    inflection_point, monte_carlo_admit_fraction, posterior_means, update_f,
                    update_f_deriv)
from .fixed_points import (FixedPointReport, classify_basins, contraction_check, find_fixed_points,
                           grid_multiplicity_survey, three_fp_sufficient)
from .dynamics import Trajectory, cobweb_points, iterate
from .interventions import (GenericUpdateMap, check_one_shot_optimality, compare_beta,
                            compare_threshold, compute_delta, dp_optimal_subsidy, simulate_subsidy,
                            subsidy_form_equivalence, threshold_schedule_affine)
from .discrete import DiscreteParams, accept_condition_case3, discrete_simulate, discrete_update, lambda_star
from .alt_models import (BernGaussParams, ParetoParams, bg_posterior, bg_score_cutoff, bg_threshold_k,
                         bg_update, bg_update_deriv, pareto_acceptance)

__version__ = "0.1.0"
