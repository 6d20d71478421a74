"""Shifted Jacobi polynomials and Gauss-Jacobi rules with endpoint singularities.

Run: python3 demos/01_basis_and_quadrature.py
"""
import numpy as np

from fdspectral import eval_G_all, gauss_jacobi_rule, integrate, norm_sq
from fdspectral.quadrature import integrate_from_zero
from fdspectral.special import beta_fn, hyp2f1

# %% orthogonality: the Gram matrix of G_0..G_20 under (1-x)^0.6 x^-0.4 is diagonal
ab = (0.6, -0.4)
rule = gauss_jacobi_rule(32, ab)
G = eval_G_all(20, ab, rule.nodes)
gram = (G * rule.weights) @ G.T
nrm = norm_sq(np.arange(21), ab)
print("max |Gram - diag(norms)| / norm:", np.abs(gram - np.diag(nrm)).max() / nrm.max())

# %% weights absorb singular powers, so x^-0.8 (1-x)^-0.3 is integrated exactly
rule = gauss_jacobi_rule(10, (-0.3, -0.8))
print("sum of weights:", rule.weights.sum(), " Beta(0.7, 0.2):", beta_fn(0.7, 0.2))

# sampling the same singularity instead converges slowly
plain = gauss_jacobi_rule(2048, (0.0, 0.0))
sampled = integrate(plain, lambda x: (1 - x) ** -0.3 * x ** -0.8)
print("sampled with 2048 Legendre nodes:", sampled, " error:", abs(sampled - beta_fn(0.7, 0.2)))

# %% partial integrals int_0^x (1-s)^p s^q ds for the whole interval at once
x = np.linspace(0, 1, 6)
vals = integrate_from_zero(x, -0.2, -0.6, lambda s: np.ones_like(s), 64)
print("x:", x)
print("int_0^x:", vals)
print("total  :", beta_fn(0.8, 0.4))

# %% Gauss hypergeometric function on [0, 1], including x = 1 via the Gauss sum
print("2F1(0.2, 0.8; 1.8; x) at 0.3, 0.9, 1:", hyp2f1(0.2, 0.8, 1.8, np.array([0.3, 0.9, 1.0])))
