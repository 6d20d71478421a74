"""A problem without a closed form: f = x^{-0.2}, 1/K = 1 + 0.5 sqrt(x).

Errors are measured against a high-degree solve (N_ref = 160) instead of an
exact solution. From the shell the same study is

    fdspectral run --alpha 1.4 --r 0.4 --f-terms "1:0:-0.2" \
        --invk-terms "1:0:0; 0.5:0:0.5" --n-list 8,16,32 --reference self-converged:160

Run: python3 demos/06_custom_problem.py
"""
from fdspectral.harness import RunConfig, emit, run_convergence_study

config = RunConfig(alpha=1.4, r=0.4, f_terms="1:0:-0.2", invk_terms="1:0:0; 0.5:0:0.5",
                   n_list=(8, 16, 32), reference="self-converged:160")
report = run_convergence_study(config)
print(f"t_max = {report.metadata['t_max']:.2f} ({report.metadata['limiting_term']}), "
      f"K_condition = {report.metadata['K_condition']}")
print(emit(report, "csv"), end="")
