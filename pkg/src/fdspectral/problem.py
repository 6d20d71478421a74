"""Problem definitions for -D((r 0I_x^{2-a} + (1-r) xI_1^{2-a}) K Du) = f, u(0) = u(1) = 0.

Both f and 1/K are stored as sums of singular monomial terms

    coefficient * (1 - x)**p * x**q * smooth(x)

so that every integral the solver needs can move the endpoint singularities
into Gauss-Jacobi weights instead of sampling them.
"""
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .quadrature import gauss_jacobi_rule, integrate, integrate_from_zero
from .special import gamma_fn, hyp2f1

__all__ = [
    "ProblemError",
    "SingularTerm",
    "Diffusivity",
    "ProblemSpec",
    "manufactured_problem",
    "exact_w",
    "exact_Dw",
    "exact_u",
]


class ProblemError(ValueError):
    """Parameters outside the admissible range."""


def _one(x):
    return np.ones_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class SingularTerm:
    """coefficient * (1-x)^p * x^q * smooth(x)."""

    coefficient: float
    p: float = 0.0
    q: float = 0.0
    smooth: Optional[Callable] = None

    def smooth_part(self, x):
        return _one(x) if self.smooth is None else self.smooth(x)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.coefficient * (1.0 - x) ** self.p * x ** self.q * self.smooth_part(x)


def _sum_terms(terms, x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for term in terms:
        out = out + term(x)
    return out


@dataclass(frozen=True)
class Diffusivity:
    """K described through 1/K (as singular terms), optional D(1/K), and bounds."""

    inv_terms: Tuple[SingularTerm, ...]
    d_inv: Optional[Callable] = None
    bounds: Tuple[float, float] = (0.0, np.inf)

    def inv(self, x):
        return _sum_terms(self.inv_terms, x)

    def __call__(self, x):
        return 1.0 / self.inv(x)

    def check_bounds(self, samples=201):
        k_min, k_max = self.bounds
        if not 0 < k_min <= k_max:
            raise ProblemError(f"need 0 < K_m <= K_M, got {self.bounds}")
        x = np.linspace(0.0, 1.0, samples)[1:-1]
        k = self(x)
        slack = 1e-12 * max(1.0, k_max)
        if np.any(k < k_min - slack) or np.any(k > k_max + slack):
            raise ProblemError("K leaves [K_m, K_M] on the sample grid")


@dataclass(frozen=True)
class ProblemSpec:
    """alpha in (1, 2); r in [0, 1] and/or beta in (alpha-1, 1).

    When beta is given it is the primary parameter (see ``solver.resolve``).
    ``gamma`` is set only for the manufactured family K = 1/(1 + x^gamma).
    """

    alpha: float
    diffusivity: Diffusivity
    f_terms: Tuple[SingularTerm, ...]
    r: Optional[float] = None
    beta: Optional[float] = None
    gamma: Optional[float] = None
    name: str = field(default="custom")

    def __post_init__(self):
        if not 1 < self.alpha < 2:
            raise ProblemError(f"alpha must lie in (1, 2), got {self.alpha}")
        if self.r is None and self.beta is None:
            raise ProblemError("one of r or beta is required")
        if self.r is not None and not 0 <= self.r <= 1:
            raise ProblemError(f"r must lie in [0, 1], got {self.r}")
        if self.beta is not None and not self.alpha - 1 < self.beta < 1:
            raise ProblemError(f"beta must lie in (alpha-1, 1) = ({self.alpha - 1}, 1)")
        self.diffusivity.check_bounds()

    def f(self, x):
        return _sum_terms(self.f_terms, x)

    @property
    def is_manufactured(self):
        return self.gamma is not None


def manufactured_problem(alpha, r=None, gamma=0.8, beta=None):
    """K = 1/(1 + x^gamma) with f = -r x^{1-a}/Gamma(2-a) + (1-r)(1-x)^{1-a}/Gamma(2-a).

    If ``beta`` is given, r is taken from the sine relation so that the
    closed-form reference solution is exact for the stated beta.
    """
    from .solver import r_from_beta, solve_beta

    if not 1 < alpha < 2:
        raise ProblemError(f"alpha must lie in (1, 2), got {alpha}")
    if not gamma > 0:
        raise ProblemError(f"gamma must be positive, got {gamma}")
    if beta is not None:
        if not alpha - 1 < beta < 1:
            raise ProblemError(f"beta must lie in (alpha-1, 1) = ({alpha - 1}, 1)")
        r = r_from_beta(alpha, beta)
    elif r is None:
        raise ProblemError("one of r or beta is required")
    else:
        beta = solve_beta(alpha, r)
    g2a = gamma_fn(2.0 - alpha)
    f_terms = (
        SingularTerm(-r / g2a, 0.0, 1.0 - alpha),
        SingularTerm((1.0 - r) / g2a, 1.0 - alpha, 0.0),
    )
    diffusivity = Diffusivity(
        inv_terms=(SingularTerm(1.0), SingularTerm(1.0, 0.0, gamma)),
        d_inv=lambda x: gamma * np.asarray(x, dtype=float) ** (gamma - 1.0),
        bounds=(0.5, 1.0),
    )
    return ProblemSpec(alpha, diffusivity, f_terms, r=r, beta=beta, gamma=gamma,
                       name="manufactured")


def _w_constant(alpha, beta):
    # C = 1 / 2F1(1+beta-alpha, beta; beta+1; 1)
    return 1.0 / hyp2f1(1.0 + beta - alpha, beta, beta + 1.0, 1.0)


def exact_w(alpha, beta, x):
    """w(x) = x - C x^beta 2F1(1+beta-alpha, beta; beta+1; x), with w(1) = 0."""
    x = np.asarray(x, dtype=float)
    C = _w_constant(alpha, beta)
    return x - C * x ** beta * hyp2f1(1.0 + beta - alpha, beta, beta + 1.0, x)


def exact_Dw(alpha, beta, x):
    """Dw(x) = 1 - C beta x^{beta-1} (1-x)^{alpha-beta-1} on the open interval."""
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0) | (x >= 1)):
        raise ProblemError("exact_Dw is singular at the endpoints")
    C = _w_constant(alpha, beta)
    return 1.0 - C * beta * x ** (beta - 1.0) * (1.0 - x) ** (alpha - beta - 1.0)


def kernel_integral(problem, beta, x, g, Q):
    """integral_0^x (1-s)^{a-b-1} s^{b-1} g(s) / K(s) ds, term by term in 1/K."""
    am = problem.alpha - beta
    out = np.zeros_like(np.asarray(x, dtype=float))
    for t in problem.diffusivity.inv_terms:
        def h(s, t=t):
            return t.coefficient * t.smooth_part(s) * g(s)
        out = out + integrate_from_zero(x, am - 1.0 + t.p, beta - 1.0 + t.q, h, Q)
    return out


def kernel_total(problem, beta, g, Q):
    """integral_0^1 (1-s)^{a-b-1} s^{b-1} g(s) / K(s) ds."""
    am = problem.alpha - beta
    total = 0.0
    for t in problem.diffusivity.inv_terms:
        rule = gauss_jacobi_rule(Q, (am - 1.0 + t.p, beta - 1.0 + t.q))
        total += integrate(rule, lambda s, t=t: t.coefficient * t.smooth_part(s) * g(s))
    return total


def exact_u(problem, beta, x, quad_order=2048):
    """Reference u from w's closed form and C_1 = c_1 / den.

    Dw = 1 - C beta omega^{(a-b-1, b-1)} splits into a plain part and a
    kernel-weighted part, each integrated with its own exponents.
    """
    if not problem.is_manufactured:
        raise ProblemError("exact_u needs the manufactured problem family")
    Q = quad_order
    alpha = problem.alpha
    c_beta = _w_constant(alpha, beta) * beta
    # integral_0^1 (1/K) and integral_0^x (1/K)
    plain_total = sum(
        integrate(gauss_jacobi_rule(Q, (t.p, t.q)), lambda s, t=t: t.coefficient * t.smooth_part(s))
        for t in problem.diffusivity.inv_terms
    )
    den = kernel_total(problem, beta, _one, Q)
    c1 = -plain_total + c_beta * den
    C1 = c1 / den
    x = np.asarray(x, dtype=float)
    plain = np.zeros_like(x)
    for t in problem.diffusivity.inv_terms:
        plain = plain + integrate_from_zero(
            x, t.p, t.q, lambda s, t=t: t.coefficient * t.smooth_part(s), Q)
    return (C1 - c_beta) * kernel_integral(problem, beta, x, _one, Q) + plain
