"""Transform-solve-postprocess pipeline.

1. Solve the constant-coefficient problem for w in the weighted Jacobi basis:
   w_N = omega^{(a-b, b)} sum_i c_i G_i^{(a-b, b)} with the diagonal solve
   c_i = f_i / (lambda_i |||G_i^{(b, a-b)}|||^2).
2. Pick C_{1,N} = c_{1,N} / den so the boundary condition u(1) = 0 holds.
3. u_N(x) = integral_0^x (C_{1,N} k_1'(s) + Dw_N(s)) / K(s) ds.

Here a is the fractional order alpha and b the splitting exponent beta.
"""
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .jacobi import (BasisExpansion, JacobiParams, eval_G_all, eval_series, norm_sq,
                     weight, weighted_deriv_expansion)
from .problem import ProblemError, kernel_integral, kernel_total
from .quadrature import default_order, gauss_jacobi_rule
from .special import gamma_ratio, sinpi

__all__ = [
    "SpectralSolution",
    "solve_beta",
    "r_from_beta",
    "sine_residual",
    "resolve",
    "lambda_i",
    "f_coeffs",
    "assemble_w",
    "eval_w",
    "eval_Dw",
    "compute_den",
    "compute_c1N",
    "eval_u",
    "eval_Du",
]

REFERENCE_ORDER = 2048


def sine_residual(alpha, r, beta):
    """(1-r) sin(pi beta) - r sin(pi (alpha - beta))."""
    return (1.0 - r) * sinpi(beta) - r * sinpi(alpha - beta)


def solve_beta(alpha, r, tol=1e-14):
    """Root beta in [alpha-1, 1] of (1-r) sin(pi beta) = r sin(pi (alpha-beta)), by bisection."""
    if not 1 < alpha < 2:
        raise ProblemError(f"alpha must lie in (1, 2), got {alpha}")
    if not 0 <= r <= 1:
        raise ProblemError(f"r must lie in [0, 1], got {r}")
    lo, hi = alpha - 1.0, 1.0
    g_lo = sine_residual(alpha, r, lo)
    if g_lo == 0:
        return lo
    if sine_residual(alpha, r, hi) == 0:
        return hi
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        g_mid = sine_residual(alpha, r, mid)
        if g_mid == 0:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def r_from_beta(alpha, beta):
    """The r for which ``solve_beta`` returns beta."""
    s_b = sinpi(beta)
    return float(s_b / (s_b + sinpi(alpha - beta)))


def resolve(problem):
    """(r, beta) actually used for a problem; beta wins when both are given."""
    alpha = problem.alpha
    if problem.beta is None:
        return problem.r, solve_beta(alpha, problem.r)
    beta = problem.beta
    if problem.r is not None:
        res = sine_residual(alpha, problem.r, beta)
        if abs(res) > 1e-6:
            warnings.warn(
                f"r={problem.r} and beta={beta} violate the sine relation by {res:.2e}; "
                f"using beta and r={r_from_beta(alpha, beta):.10g}",
                stacklevel=2,
            )
    return r_from_beta(alpha, beta), beta


def _check_open(alpha, beta):
    if not alpha - 1 < beta < 1:
        raise ProblemError(
            f"beta={beta} must lie strictly inside (alpha-1, 1) = ({alpha - 1}, 1)")


def lambda_i(i, alpha, beta):
    """lambda_i = -sin(pi a) / (sin(pi (a-b)) + sin(pi b)) * Gamma(i+1+a) / Gamma(i+1)."""
    i = np.asarray(i, dtype=float)
    scale = -sinpi(alpha) / (sinpi(alpha - beta) + sinpi(beta))
    return scale * gamma_ratio(i + 1.0, alpha)


def f_coeffs(problem, beta, N, Q=None):
    """f_i = integral_0^1 omega^{(b, a-b)} f G_i^{(b, a-b)} dx for i = 0..N.

    Each singular term of f is absorbed into the rule exponents
    (b + p, a - b + q); only the polynomial and smooth factors are sampled.
    """
    Q = default_order(N) if Q is None else int(Q)
    am = problem.alpha - beta
    basis = JacobiParams(beta, am)
    out = np.zeros(N + 1)
    for t in problem.f_terms:
        ea, eb = beta + t.p, am + t.q
        if not (ea > -1 and eb > -1):
            raise ProblemError(
                f"f term (p={t.p}, q={t.q}) is not integrable against omega^({beta}, {am})")
        rule = gauss_jacobi_rule(Q, (ea, eb))
        samples = t.coefficient * t.smooth_part(rule.nodes) * rule.weights
        out += eval_G_all(N, basis, rule.nodes) @ samples
    return out


@dataclass(frozen=True)
class SpectralSolution:
    alpha: float
    r: float
    beta: float
    N: int
    f_coeffs: np.ndarray
    lambdas: np.ndarray
    c_coeffs: np.ndarray
    den: float = math.nan
    c1N: float = math.nan
    C1N: float = math.nan
    quad_order: int = 0

    @property
    def w_expansion(self):
        params = JacobiParams(self.alpha - self.beta, self.beta)
        return BasisExpansion(params, self.c_coeffs, params)

    @property
    def dw_expansion(self):
        return weighted_deriv_expansion(self.w_expansion)


def compute_den(problem, beta, Q=None):
    """den = integral_0^1 (1-s)^{a-b-1} s^{b-1} / K(s) ds."""
    _check_open(problem.alpha, beta)
    Q = REFERENCE_ORDER if Q is None else Q
    return kernel_total(problem, beta, lambda s: np.ones_like(s), Q)


def compute_c1N(sol, problem, Q=None):
    """c_{1,N} = -integral_0^1 Dw_N / K, using the exact expansion of Dw_N."""
    Q = sol.quad_order if Q is None else Q
    dw = sol.dw_expansion
    return -kernel_total(problem, sol.beta, lambda s: eval_series(dw.coeffs, dw.params, s), Q)


def assemble_w(problem, N, Q=None, f_override=None):
    """Build the spectral solution for degree N.

    ``f_override`` replaces the computed f_i (used to probe the diagonal solve).
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    Q = default_order(N) if Q is None else int(Q)
    r, beta = resolve(problem)
    _check_open(problem.alpha, beta)
    alpha = problem.alpha
    if f_override is None:
        fc = f_coeffs(problem, beta, N, Q)
    else:
        fc = np.array(f_override, dtype=float)
        if fc.size != N + 1:
            raise ValueError("f_override must have N + 1 entries")
    i = np.arange(N + 1)
    lam = lambda_i(i, alpha, beta)
    c = fc / (lam * norm_sq(i, (beta, alpha - beta)))
    for arr in (fc, lam, c):
        arr.setflags(write=False)
    sol = SpectralSolution(alpha, r, beta, N, fc, lam, c, quad_order=Q)
    den = compute_den(problem, beta, Q)
    c1N = compute_c1N(sol, problem, Q)
    return replace(sol, den=den, c1N=c1N, C1N=c1N / den)


def eval_w(sol, x):
    """w_N(x) = omega^{(a-b, b)}(x) sum_i c_i G_i^{(a-b, b)}(x)."""
    return sol.w_expansion(x)


def _dw_factor(sol, x):
    # Dw_N / omega^{(a-b-1, b-1)}: a plain polynomial
    dw = sol.dw_expansion
    return eval_series(dw.coeffs, dw.params, x)


def eval_Dw(sol, x):
    """Dw_N(x) = -omega^{(a-b-1, b-1)}(x) sum_i c_i (i+1) G_{i+1}^{(a-b-1, b-1)}(x), 0 < x < 1."""
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0) | (x >= 1)):
        raise ProblemError("Dw_N is only defined on the open interval")
    return sol.dw_expansion(x)


def eval_u(sol, problem, x, Q=None, chunk=512):
    """u_N(x) = integral_0^x (C_{1,N} k_1'(s) + Dw_N(s)) / K(s) ds.

    Both pieces share the kernel weight (1-s)^{a-b-1} s^{b-1}, so one
    singularity-aware partial integral handles them together.
    """
    Q = sol.quad_order if Q is None else Q
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ProblemError("eval_u needs x in [0, 1]")

    def g(s):
        return sol.C1N + _dw_factor(sol, s)

    flat = x.ravel()
    out = np.empty(flat.shape)
    for start in range(0, flat.size, chunk):
        part = flat[start:start + chunk]
        out[start:start + chunk] = kernel_integral(problem, sol.beta, part, g, Q)
    return out.reshape(x.shape)


def eval_Du_factor(sol, problem, x):
    """D u_N / omega^{(a-b-1, b-1)} without the 1/K factor: C_{1,N} + Dw_N/omega."""
    return sol.C1N + _dw_factor(sol, x)


def eval_Du(sol, problem, x):
    """D u_N(x) = (C_{1,N} k_1'(x) + Dw_N(x)) / K(x) on the open interval."""
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0) | (x >= 1)):
        raise ProblemError("Du_N is only defined on the open interval")
    kern = weight((sol.alpha - sol.beta - 1.0, sol.beta - 1.0), x)
    return problem.diffusivity.inv(x) * kern * eval_Du_factor(sol, problem, x)
