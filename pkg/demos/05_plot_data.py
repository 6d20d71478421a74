"""Samples of u, u_N and u - u_N for the first experiment at N = 16.

Writes demos/output/plot_n16.csv; any plotting tool can draw the two panels
(u on the left, the error on the right).

Run: python3 demos/05_plot_data.py
"""
from pathlib import Path

import numpy as np

from fdspectral.harness import experiment_config, plot_data, plot_data_csv

table = plot_data(experiment_config(1), N=16, samples=401)
out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)
(out / "plot_n16.csv").write_text(plot_data_csv(table))

x, u, u_N, diff = table.T
print("u ranges over [%.4f, %.4f]" % (u.min(), u.max()))
print("largest |u - u_N| = %.3e at x = %.4f" % (np.abs(diff).max(), x[np.abs(diff).argmax()]))
# the error oscillates; count its sign changes
print("sign changes of u - u_N:", int(np.sum(np.diff(np.sign(diff[1:-1])) != 0)))
