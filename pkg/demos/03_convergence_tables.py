"""Convergence tables for the three manufactured experiments.

Experiment 1: alpha = 1.6, beta = 0.8, K = 1/(1 + x^0.8)
Experiment 2: alpha = 1.3, beta = 0.5, K = 1/(1 + x^0.8)
Experiment 3: alpha = 1.3, beta = 0.5, K = 1/(1 + x^0.1), where D(1/K) is not
square integrable and the weighted L2 prediction drops to 1.20.

Each table takes a few seconds. The same tables come from
``fdspectral run demos/configs/experiment1.cfg``.

Run: python3 demos/03_convergence_tables.py
"""
from fdspectral.harness import emit, experiment_config, run_convergence_study

for k in (1, 2, 3):
    report = run_convergence_study(experiment_config(k))
    meta = report.metadata
    print(f"Experiment {k}: t_max = {meta['t_max']:.2f}, K_condition = {meta['K_condition']}")
    print(emit(report, "csv"), end="")
    fits = report.fitted_rates
    print("fitted rates: " + ", ".join(f"{key} {val:.2f}" for key, val in fits.items()))
    print()
