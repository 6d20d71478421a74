"""Shifted Jacobi polynomials G_n^{(a,b)}(x) = P_n^{(a,b)}(2x - 1) on [0, 1].

The weight convention throughout the package is

    omega^{(a,b)}(x) = (1 - x)**a * x**b,

so ``a`` is the exponent at x = 1 and ``b`` the exponent at x = 0.
"""
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .special import SpecialFunctionError, beta_fn, log_gamma, pochhammer

__all__ = [
    "JacobiParams",
    "BasisExpansion",
    "weight",
    "eval_G",
    "eval_G_all",
    "eval_series",
    "eval_G_deriv",
    "weighted_deriv_expansion",
    "norm_sq",
]


class JacobiParams(NamedTuple):
    """Exponent pair (a, b) of the weight (1-x)^a x^b."""

    a: float
    b: float

    def check_weight(self):
        if not (self.a > -1 and self.b > -1):
            raise ValueError(f"weight exponents must exceed -1, got {tuple(self)}")
        return self


def weight(params, x):
    """omega^{(a,b)}(x) = (1-x)^a x^b."""
    a, b = params
    x = np.asarray(x, dtype=float)
    return (1.0 - x) ** a * x ** b


def _recurrence_coeffs(n, a, b):
    # 2n(n+a+b)(2n+a+b-2) P_n = (2n+a+b-1)[(2n+a+b)(2n+a+b-2) y + a^2-b^2] P_{n-1}
    #                           - 2(n+a-1)(n+b-1)(2n+a+b) P_{n-2}
    s = 2 * n + a + b
    den = 2 * n * (n + a + b) * (s - 2)
    if den == 0:
        raise ValueError(f"three-term recurrence degenerates at n={n} for (a,b)=({a},{b})")
    c1 = (s - 1) * s * (s - 2) / den
    c0 = (s - 1) * (a * a - b * b) / den
    c2 = 2 * (n + a - 1) * (n + b - 1) * s / den
    return c1, c0, c2


def eval_G_all(N, params, x):
    """Values of G_0, ..., G_N at x; returns an array of shape (N+1,) + x.shape."""
    a, b = params
    x = np.asarray(x, dtype=float)
    y = 2.0 * x - 1.0
    out = np.empty((N + 1,) + x.shape)
    out[0] = 1.0
    if N >= 1:
        out[1] = (a + 1.0) + (a + b + 2.0) * (y - 1.0) / 2.0
    for n in range(2, N + 1):
        c1, c0, c2 = _recurrence_coeffs(n, a, b)
        out[n] = (c1 * y + c0) * out[n - 1] - c2 * out[n - 2]
    return out


def eval_series(coeffs, params, x):
    """sum_n coeffs[n] G_n^{(a,b)}(x), accumulated during the recurrence.

    Memory stays O(x.size) regardless of degree.
    """
    a, b = params
    coeffs = np.asarray(coeffs, dtype=float)
    x = np.asarray(x, dtype=float)
    acc = np.zeros_like(x)
    if coeffs.size == 0:
        return acc
    y = 2.0 * x - 1.0
    p_prev = np.ones_like(x)
    acc += coeffs[0] * p_prev
    if coeffs.size == 1:
        return acc
    p_cur = (a + 1.0) + (a + b + 2.0) * (y - 1.0) / 2.0
    acc += coeffs[1] * p_cur
    for n in range(2, coeffs.size):
        c1, c0, c2 = _recurrence_coeffs(n, a, b)
        p_prev, p_cur = p_cur, (c1 * y + c0) * p_cur - c2 * p_prev
        acc += coeffs[n] * p_cur
    return acc


def eval_G(n, params, x):
    """G_n^{(a,b)}(x) by the three-term recurrence in y = 2x - 1."""
    out = eval_G_all(n, params, x)[n]
    return out[()] if out.ndim == 0 else out


def eval_G_deriv(n, k, params, x):
    """k-th derivative of G_n^{(a,b)}.

    D^k G_n^{(a,b)} = (n+a+b+1)_k G_{n-k}^{(a+k,b+k)}, where (.)_k is the
    rising factorial (equal to Gamma(n+k+a+b+1)/Gamma(n+a+b+1)).
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    a, b = params
    scale = pochhammer(n + a + b + 1.0, k)
    return scale * eval_G(n - k, JacobiParams(a + k, b + k), x)


@dataclass(frozen=True)
class BasisExpansion:
    """sum_i coeffs[i] G_i^{params}(x), optionally times omega^{weight}(x)."""

    params: JacobiParams
    coeffs: np.ndarray
    weight: Optional[JacobiParams] = None

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("expansion coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "params", JacobiParams(*self.params))
        if self.weight is not None:
            object.__setattr__(self, "weight", JacobiParams(*self.weight))

    @property
    def degree(self):
        return self.coeffs.size - 1

    def polynomial(self, x):
        """The polynomial factor sum_i d_i G_i(x), without the weight."""
        return eval_series(self.coeffs, self.params, x)

    def __call__(self, x):
        out = self.polynomial(x)
        if self.weight is not None:
            out = weight(self.weight, x) * out
        return out


def weighted_deriv_expansion(expansion):
    """Exact derivative of omega^{(p,q)} sum_i d_i G_i^{(p,q)}.

    Uses D(omega^{(p,q)} G_i^{(p,q)}) = -(i+1) omega^{(p-1,q-1)} G_{i+1}^{(p-1,q-1)},
    so the result is omega^{(p-1,q-1)} sum_j e_j G_j^{(p-1,q-1)} with
    e_0 = 0 and e_{i+1} = -(i+1) d_i.
    """
    if expansion.weight is None or tuple(expansion.weight) != tuple(expansion.params):
        raise ValueError("expansion must carry the weight matching its basis")
    p, q = expansion.params
    d = expansion.coeffs
    e = np.zeros(d.size + 1)
    e[1:] = -np.arange(1, d.size + 1) * d
    lowered = JacobiParams(p - 1.0, q - 1.0)
    return BasisExpansion(lowered, e, lowered)


def norm_sq(n, params):
    """|||G_n^{(a,b)}|||^2 = integral_0^1 omega^{(a,b)} (G_n^{(a,b)})^2 dx.

    Vectorised over n; evaluated in log space so n ~ 1e3 does not overflow.
    """
    a, b = params
    if not (a > -1 and b > -1):
        raise SpecialFunctionError(f"norm_sq needs a, b > -1, got ({a}, {b})")
    n = np.asarray(n)
    out = np.empty(n.shape, dtype=float)
    zero = n == 0
    if np.any(zero):
        # n = 0: the Gamma(a+b+1) factor can sit on a pole; use Beta(a+1, b+1)
        out[zero] = beta_fn(a + 1.0, b + 1.0)
    pos = ~zero
    if np.any(pos):
        m = n[pos].astype(float)
        logv = (log_gamma(m + a + 1) + log_gamma(m + b + 1)
                - log_gamma(m + 1) - log_gamma(m + a + b + 1))
        out[pos] = np.exp(logv) / (2 * m + a + b + 1)
    return out[()] if out.ndim == 0 else out
