"""Solve the manufactured problem with alpha = 1.6, r = 0.5, K = 1/(1 + x^0.8).

The solver works in three steps: diagonal solve for w, choose C_{1,N} so that
u_N(1) = 0, then integrate Du_N. Here we look at each step.

Run: python3 demos/02_solve_one_problem.py
"""
import numpy as np

from fdspectral import assemble_w, eval_u, eval_w, exact_u, exact_w, manufactured_problem
from fdspectral.analysis import chebyshev_points

problem = manufactured_problem(1.6, r=0.5, gamma=0.8)
print("alpha =", problem.alpha, " r =", problem.r, " beta =", problem.beta)

sol = assemble_w(problem, N=24, Q=256)

# %% the w coefficients decay algebraically since f is only mildly regular
print("first c_i:", sol.c_coeffs[:5])
print("last c_i :", sol.c_coeffs[-3:])

# %% boundary constant and boundary values
print("den = %.12f   c1N = %.3e   C1N = %.6f" % (sol.den, sol.c1N, sol.C1N))
print("u_N(0), u_N(1):", eval_u(sol, problem, np.array([0.0, 1.0])))

# %% compare against the closed-form solution on a Chebyshev grid
x = chebyshev_points(401)
err_u = np.abs(exact_u(problem, problem.beta, x) - eval_u(sol, problem, x))
err_w = np.abs(exact_w(problem.alpha, problem.beta, x) - eval_w(sol, x))
print("max |u - u_N| = %.3e at x = %.4f" % (err_u.max(), x[err_u.argmax()]))
print("max |w - w_N| = %.3e" % err_w.max())
