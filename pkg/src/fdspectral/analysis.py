"""Error norms, empirical convergence rates and the predicted rates.

The predicted rates follow from the regularity index t of f in
H^t_{omega^{(b, a-b)}}: a monomial x^mu lies in H^s_{omega^{(p,q)}} for
s < 2 mu + q + 1 (mirror image for (1-x)^mu).
"""
from dataclasses import dataclass

import numpy as np

from .jacobi import JacobiParams
from .quadrature import QuadratureError, gauss_jacobi_rule, integrate

__all__ = [
    "RegularityResult",
    "RatePrediction",
    "weighted_error_norm",
    "factored_error_norm",
    "chebyshev_points",
    "linf_error",
    "convergence_rate",
    "fitted_rate",
    "monomial_regularity",
    "f_regularity",
    "terms_regularity",
    "K_condition",
    "inv_K_derivative_condition",
    "predict_rates",
]


def _values(g, x):
    return g(x) if callable(g) else np.asarray(g, dtype=float)


def weighted_error_norm(g, h, params, Q=2048):
    """sqrt(integral_0^1 omega^{(a,b)} (g - h)^2), sampling g - h at interior nodes only."""
    params = JacobiParams(*params)
    if not (params.a > -1 and params.b > -1):
        raise QuadratureError(f"error-norm weight exponents must exceed -1, got {tuple(params)}")
    rule = gauss_jacobi_rule(Q, params)
    diff = _values(g, rule.nodes) - _values(h, rule.nodes)
    return float(np.sqrt(integrate(rule, diff * diff)))


def factored_error_norm(pieces, params, Q=2048):
    """Norm in L2_{omega^{(a,b)}} of e(x) = sum_k T_k(x) g_k(x).

    Each T_k = c_k (1-x)^{p_k} x^{q_k} s_k(x) is a singular term (anything with
    ``coefficient``, ``p``, ``q`` and ``smooth_part``) and g_k is sampled. The
    square is expanded pairwise so every endpoint power lands in a rule weight;
    when the g_k are polynomials the result is exact up to rounding.
    """
    a, b = params
    total = 0.0
    for ti, gi in pieces:
        for tj, gj in pieces:
            rule = gauss_jacobi_rule(Q, (a + ti.p + tj.p, b + ti.q + tj.q))
            x = rule.nodes
            vals = (ti.coefficient * tj.coefficient * ti.smooth_part(x) * tj.smooth_part(x)
                    * _values(gi, x) * _values(gj, x))
            total += integrate(rule, vals)
    return float(np.sqrt(max(total, 0.0)))


def chebyshev_points(M):
    """x_j = (1 - cos(pi j / (M-1))) / 2, j = 0..M-1; clustered at both ends."""
    if M < 2:
        raise ValueError("need at least two sample points")
    return (1.0 - np.cos(np.pi * np.arange(M) / (M - 1))) / 2.0


def linf_error(g, h, M=2001):
    """max |g - h| over M Chebyshev-distributed points of [0, 1]."""
    x = chebyshev_points(M)
    return float(np.max(np.abs(_values(g, x) - _values(h, x))))


def convergence_rate(e1, e2, N1, N2):
    """kappa = log(e1/e2) / log(N2/N1)."""
    if not (N2 > N1 >= 1):
        raise ValueError("need N2 > N1 >= 1")
    if not (e1 > 0 and e2 > 0):
        raise ValueError("errors must be positive")
    return float(np.log(e1 / e2) / np.log(N2 / N1))


def fitted_rate(Ns, errors):
    """Least-squares slope of -log(error) against log(N)."""
    Ns = np.asarray(Ns, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if Ns.size < 2:
        raise ValueError("need at least two points to fit a rate")
    slope, _ = np.polyfit(np.log(Ns), np.log(errors), 1)
    return float(-slope)


@dataclass(frozen=True)
class RegularityResult:
    t_max: float
    limiting_term: str


def monomial_regularity(mu, weight, side="left"):
    """Sup of s with x^mu (left) or (1-x)^mu (right) in H^s_{omega^{(a,b)}}."""
    a, b = weight
    if side == "left":
        if not mu > -(b + 1) / 2:
            raise ValueError("x^mu is not in L2 for this weight")
        return RegularityResult(2 * mu + b + 1, f"x^{mu:g}")
    if side == "right":
        if not mu > -(a + 1) / 2:
            raise ValueError("(1-x)^mu is not in L2 for this weight")
        return RegularityResult(2 * mu + a + 1, f"(1-x)^{mu:g}")
    raise ValueError("side must be 'left' or 'right'")


def terms_regularity(terms, weight):
    """Regularity of a sum of singular terms: the worst endpoint power binds.

    A term contributes x^q only when q != 0 and (1-x)^p only when p != 0;
    smooth parts are assumed smooth. Returns t_max = inf if nothing is singular.
    """
    best = RegularityResult(np.inf, "none")
    for t in terms:
        if t.coefficient == 0:
            continue
        for mu, side in ((t.q, "left"), (t.p, "right")):
            if mu == 0 or float(mu).is_integer() and mu > 0:
                continue
            res = monomial_regularity(mu, weight, side)
            if res.t_max < best.t_max:
                best = res
    return best


def f_regularity(alpha, beta):
    """t_max = 3 - alpha - max(alpha - beta, beta) for the manufactured right-hand side."""
    weight = (beta, alpha - beta)
    left = monomial_regularity(1 - alpha, weight, "left")
    right = monomial_regularity(1 - alpha, weight, "right")
    t = 3 - alpha - max(alpha - beta, beta)
    limiting = left.limiting_term if left.t_max <= right.t_max else right.limiting_term
    return RegularityResult(t, limiting)


def K_condition(gamma, alpha, beta):
    """D(1/K) = gamma x^{gamma-1} lies in L2_{omega^{(a-b, b)}} iff 2(gamma-1) + beta > -1."""
    if gamma == 1 or (float(gamma).is_integer() and gamma > 1):
        return True
    return 2 * (gamma - 1) + beta > -1


def inv_K_derivative_condition(terms, alpha, beta):
    """Same check for 1/K given as singular terms (smooth parts assumed smooth)."""
    am = alpha - beta
    for t in terms:
        if t.coefficient == 0:
            continue
        if t.q != 0 and not (float(t.q).is_integer() and t.q >= 1):
            if not 2 * (t.q - 1) + beta > -1:
                return False
        if t.p != 0 and not (float(t.p).is_integer() and t.p >= 1):
            if not 2 * (t.p - 1) + am > -1:
                return False
    return True


@dataclass(frozen=True)
class RatePrediction:
    rate_L2_weighted: float
    rate_Linf: float
    rate_D_weighted: float
    K_condition_holds: bool
    rate_w_L2_weighted: float
    rate_w_D_weighted: float


def predict_rates(alpha, beta, t, K_ok):
    """Predicted decay exponents for u - u_N (and w - w_N) given regularity index t."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    low = (alpha - 1) + t
    high = alpha + t
    return RatePrediction(
        rate_L2_weighted=high if K_ok else low,
        rate_Linf=low,
        rate_D_weighted=low,
        K_condition_holds=bool(K_ok),
        rate_w_L2_weighted=high,
        rate_w_D_weighted=low,
    )
