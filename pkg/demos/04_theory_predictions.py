"""Regularity of f and the predicted convergence rates.

For a monomial x^mu in H^s with weight (1-x)^a x^b, s < 2 mu + b + 1. The
right-hand side of the manufactured family has x^{1-alpha} and (1-x)^{1-alpha}
terms, and the worse one sets t.

Run: python3 demos/04_theory_predictions.py
"""
import numpy as np

from fdspectral.analysis import K_condition, f_regularity, monomial_regularity, predict_rates

for alpha, beta, gamma in [(1.6, 0.8, 0.8), (1.3, 0.5, 0.8), (1.3, 0.5, 0.1)]:
    reg = f_regularity(alpha, beta)
    k_ok = K_condition(gamma, alpha, beta)
    pred = predict_rates(alpha, beta, reg.t_max, k_ok)
    print(f"alpha={alpha} beta={beta} gamma={gamma}: t < {reg.t_max:.2f} (limited by "
          f"{reg.limiting_term}), D(1/K) in L2: {k_ok}")
    print(f"   predicted rates  L2w {pred.rate_L2_weighted:.2f}  D {pred.rate_D_weighted:.2f}"
          f"  Linf {pred.rate_Linf:.2f}  w {pred.rate_w_L2_weighted:.2f}")

# %% how t depends on beta for alpha = 1.5: largest when beta = alpha / 2
alpha = 1.5
for beta in np.linspace(0.55, 0.95, 5):
    left = monomial_regularity(1 - alpha, (beta, alpha - beta), "left").t_max
    right = monomial_regularity(1 - alpha, (beta, alpha - beta), "right").t_max
    print(f"beta={beta:.2f}: left {left:.2f} right {right:.2f} -> t {min(left, right):.2f}")

# %% the K condition 2(gamma - 1) + beta > -1 switches at gamma = (1 - beta) / 2
beta = 0.5
for gamma in (0.1, 0.2, 0.25, 0.3, 0.8):
    print(f"gamma={gamma}: {K_condition(gamma, 1.3, beta)}")
