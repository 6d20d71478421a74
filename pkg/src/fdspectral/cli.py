"""Command-line front end: ``fdspectral {run,predict,plot-data} [config] [flags]``.

A config is a flat ``key = value`` file (``#`` starts a comment); flags
override it. Keys are the long flag names with dashes or underscores.
"""
import argparse
import json
import sys
from dataclasses import asdict, fields

from .harness import (HarnessError, RunConfig, build_problem, emit, plot_data, plot_data_csv,
                      prediction_for, run_convergence_study)
from .solver import resolve

_FLOAT_KEYS = {"alpha", "r", "beta", "gamma"}
_INT_KEYS = {"quad_order", "quad_order_ref", "linf_samples", "plot_n", "plot_samples", "jobs"}
_KNOWN = {f.name for f in fields(RunConfig)}


def _convert(key, value):
    value = value.strip()
    try:
        if key in _FLOAT_KEYS:
            return None if value.lower() in ("", "none") else float(value)
        if key in _INT_KEYS:
            return None if value.lower() in ("", "none", "auto") else int(value)
        if key == "n_list":
            return tuple(int(v) for v in value.replace(",", " ").split())
        if key == "k_bounds":
            lo, hi = (float(v) for v in value.replace(",", " ").split())
            return (lo, hi)
    except ValueError as exc:
        raise HarnessError(f"bad value for {key}: {value!r} ({exc})") from None
    return value


def read_config_file(path):
    """Parse key = value lines into a dict of typed RunConfig fields."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise HarnessError(f"cannot read config {path}: {exc.strerror}") from exc
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise HarnessError(f"{path}:{num}: expected key = value")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if key not in _KNOWN or key == "mode":
            raise HarnessError(f"{path}:{num}: unknown key {key!r}")
        out[key] = _convert(key, value)
    return out


def _parser():
    parser = argparse.ArgumentParser(
        prog="fdspectral",
        description="Spectral solves and convergence studies for the fractional diffusion problem.")
    sub = parser.add_subparsers(dest="mode", required=True)
    for name, help_text in (("run", "convergence study over n_list"),
                            ("predict", "regularity index and predicted rates"),
                            ("plot-data", "samples of u, u_N and u - u_N")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", nargs="?", help="key = value config file")
        p.add_argument("--alpha", type=str)
        p.add_argument("--r", type=str)
        p.add_argument("--beta", type=str)
        p.add_argument("--gamma", type=str)
        p.add_argument("--f-terms", type=str, help="custom f as 'c:p:q; ...' for c (1-x)^p x^q")
        p.add_argument("--invk-terms", type=str, help="custom 1/K as 'c:p:q; ...'")
        p.add_argument("--k-bounds", type=str, help="'K_m,K_M' for a custom K")
        p.add_argument("--n-list", type=str, help="comma-separated degrees")
        p.add_argument("--quad-order", type=str, help="solver rule size (default max(200, 4N))")
        p.add_argument("--quad-order-ref", type=str)
        p.add_argument("--linf-samples", type=str)
        p.add_argument("--reference", type=str, help="closed-form or self-converged:<N_ref>")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--out", type=str, help="output path (default stdout)")
        p.add_argument("--jobs", type=str, help="rows solved in parallel")
        if name == "plot-data":
            p.add_argument("--plot-n", type=str, help="degree N of u_N")
            p.add_argument("--plot-samples", type=str, help="number of uniform samples")
    return parser


def config_from_args(args):
    values = read_config_file(args.config) if args.config else {}
    for key in _KNOWN:
        raw = getattr(args, key, None)
        if raw is not None and key != "mode":
            values[key] = _convert(key, raw) if isinstance(raw, str) else raw
    values["mode"] = args.mode
    if "alpha" not in values or values["alpha"] is None:
        raise HarnessError("alpha is required")
    return RunConfig(**values)


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise HarnessError(f"cannot write {path}: {exc.strerror}") from exc


def _predict_text(config):
    problem = build_problem(config)
    r, beta = resolve(problem)
    reg, k_ok, pred = prediction_for(problem, beta)
    data = {"alpha": problem.alpha, "r": r, "beta": beta, "t_max": reg.t_max,
            "limiting_term": reg.limiting_term, "K_condition": k_ok, **asdict(pred)}
    if config.format == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    keys = list(data)
    return ",".join(keys) + "\n" + ",".join(str(data[k]) for k in keys) + "\n"


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        if config.mode == "run":
            report = run_convergence_study(config)
            text = emit(report, config.format, config.out)
            if config.out is None:
                sys.stdout.write(text)
            fits = ", ".join(f"{k}={v:.2f}" for k, v in report.fitted_rates.items())
            meta = report.metadata
            print(f"t_max={meta['t_max']:.2f} K_condition={meta['K_condition']} "
                  f"fitted rates: {fits}", file=sys.stderr)
        elif config.mode == "predict":
            _write(_predict_text(config), config.out)
        else:
            _write(plot_data_csv(plot_data(config)), config.out)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"fdspectral: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
