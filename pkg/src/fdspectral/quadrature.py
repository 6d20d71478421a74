"""Gauss-Jacobi quadrature on (0, 1) and weighted L2 projection.

Rules come from the Golub-Welsch eigenproblem for the symmetric tridiagonal
Jacobi matrix. They are cached and their arrays are read-only, so a rule can be
shared freely.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .jacobi import JacobiParams, eval_G_all, norm_sq
from .special import beta_fn

__all__ = [
    "QuadratureRule",
    "QuadratureError",
    "default_order",
    "gauss_jacobi_rule",
    "integrate",
    "project_coeffs",
    "integrate_from_zero",
]


class QuadratureError(ValueError):
    """Bad rule parameters or a non-finite integrand sample."""


def default_order(N):
    """Solver-facing rule size: max(200, 4N)."""
    return max(200, 4 * int(N))


@dataclass(frozen=True)
class QuadratureRule:
    params: JacobiParams
    order: int
    nodes: np.ndarray
    weights: np.ndarray


def _jacobi_matrix(Q, a, b):
    # recurrence coefficients of the monic Jacobi polynomials on (-1, 1)
    # for the weight (1-y)^a (1+y)^b
    n = np.arange(Q, dtype=float)
    s = 2 * n + a + b
    diag = np.empty(Q)
    diag[0] = (b - a) / (a + b + 2)
    if Q > 1:
        diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2))
    k = np.arange(1, Q, dtype=float)
    sk = 2 * k + a + b
    off2 = np.empty(Q - 1)
    if Q > 1:
        off2[0] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        kk, ss = k[1:], sk[1:]
        off2[1:] = 4 * kk * (kk + a) * (kk + b) * (kk + a + b) / (ss ** 2 * (ss + 1) * (ss - 1))
    return diag, np.sqrt(off2)


@lru_cache(maxsize=256)
def _cached_rule(Q, a, b):
    diag, off = _jacobi_matrix(Q, a, b)
    if Q == 1:
        y, v0 = diag.copy(), np.ones(1)
    else:
        try:
            y, vecs = eigh_tridiagonal(diag, off)
        except np.linalg.LinAlgError as exc:
            raise QuadratureError(f"eigensolver failed for Q={Q}, (a,b)=({a},{b})") from exc
        v0 = vecs[0]
    order = np.argsort(y)
    nodes = (y[order] + 1.0) / 2.0
    # weight_j = mu_0 * (first eigenvector component)^2, mu_0 rescaled to (0, 1)
    weights = beta_fn(a + 1.0, b + 1.0) * v0[order] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(JacobiParams(a, b), Q, nodes, weights)


def gauss_jacobi_rule(Q, params):
    """Q-point Gauss rule for integral_0^1 (1-x)^a x^b g(x) dx.

    Exact for g a polynomial of degree <= 2Q - 1. Weights sum to Beta(a+1, b+1).
    """
    a, b = float(params[0]), float(params[1])
    if not (a > -1 and b > -1):
        raise QuadratureError(f"weight exponents must exceed -1, got ({a}, {b})")
    if int(Q) < 1:
        raise QuadratureError("quadrature order must be >= 1")
    return _cached_rule(int(Q), a, b)


def integrate(rule, g):
    """sum_q w_q g(x_q), in ascending node order.

    ``g`` is a vectorised callable or an array of samples at ``rule.nodes``.
    """
    vals = g(rule.nodes) if callable(g) else np.asarray(g, dtype=float)
    vals = np.asarray(vals, dtype=float)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("integrand is not finite at a quadrature node")
    return float(np.dot(rule.weights, vals))


def project_coeffs(g, N, params, Q=None):
    """Coefficients of the weighted L2 projection of g onto degree <= N.

    Returns g_i = (g, G_i)_omega / |||G_i|||^2 for i = 0..N.
    """
    params = JacobiParams(*params)
    Q = default_order(N) if Q is None else int(Q)
    if Q < N + 1:
        raise QuadratureError("projection needs Q >= N + 1")
    rule = gauss_jacobi_rule(Q, params)
    vals = g(rule.nodes) if callable(g) else np.asarray(g, dtype=float)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("integrand is not finite at a quadrature node")
    basis = eval_G_all(N, params, rule.nodes)
    return (basis * rule.weights) @ vals / norm_sq(np.arange(N + 1), params)


def integrate_from_zero(x, p, q, g, Q):
    """integral_0^x (1-s)^p s^q g(s) ds for each x in [0, 1].

    Both endpoint singularities are absorbed into rule weights. For x <= 1/2
    the substitution s = x*tau uses the (0, q) rule and samples (1 - x*tau)^p,
    which is smooth there. For x > 1/2 the result is the full integral minus
    integral_x^1, the latter with s = x + (1-x)*tau and the (p, 0) rule.
    ``g`` must accept 2-d arrays.
    """
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.empty(flat.shape)
    left = flat <= 0.5
    if np.any(left):
        rl = gauss_jacobi_rule(Q, (0.0, q))
        xl = flat[left][:, None]
        s = xl * rl.nodes
        vals = (1.0 - s) ** p * g(s)
        out[left] = flat[left] ** (q + 1.0) * (vals @ rl.weights)
    right = ~left
    if np.any(right):
        full = integrate(gauss_jacobi_rule(Q, (p, q)), g)
        rr = gauss_jacobi_rule(Q, (p, 0.0))
        xr = flat[right][:, None]
        s = xr + (1.0 - xr) * rr.nodes
        vals = s ** q * g(s)
        out[right] = full - (1.0 - flat[right]) ** (p + 1.0) * (vals @ rr.weights)
    if not np.all(np.isfinite(out)):
        raise QuadratureError("partial integral is not finite")
    return out.reshape(x.shape)
