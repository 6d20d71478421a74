"""Spectral solver for the variable-coefficient two-sided fractional diffusion problem

    -D((r 0I_x^{2-a} + (1-r) xI_1^{2-a}) K Du) = f on (0, 1),  u(0) = u(1) = 0,

with 1 < a < 2, in a weighted Jacobi basis.
"""
from .analysis import (K_condition, RatePrediction, RegularityResult, chebyshev_points,
                       convergence_rate, f_regularity, factored_error_norm, fitted_rate,
                       linf_error, monomial_regularity, predict_rates, weighted_error_norm)
from .jacobi import (BasisExpansion, JacobiParams, eval_G, eval_G_all, eval_G_deriv,
                     eval_series, norm_sq, weight)
from .problem import (Diffusivity, ProblemError, ProblemSpec, SingularTerm, exact_Dw, exact_u,
                      exact_w, manufactured_problem)
from .quadrature import (QuadratureError, QuadratureRule, gauss_jacobi_rule, integrate,
                         integrate_from_zero, project_coeffs)
from .solver import (SpectralSolution, assemble_w, eval_Du, eval_Dw, eval_u, eval_w, lambda_i,
                     r_from_beta, solve_beta)
from .special import SpecialFunctionError, beta_fn, gamma_fn, hyp2f1, log_gamma

__version__ = "0.1.0"
