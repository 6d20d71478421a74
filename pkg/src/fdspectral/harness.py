"""Convergence studies, reports and plot data for the batch front end."""
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from .analysis import (K_condition, chebyshev_points, convergence_rate, factored_error_norm,
                       f_regularity, fitted_rate, inv_K_derivative_condition, predict_rates,
                       terms_regularity, weighted_error_norm)
from .problem import (Diffusivity, ProblemError, ProblemSpec, SingularTerm, _w_constant,
                      exact_u, exact_w, manufactured_problem)
from .quadrature import default_order, gauss_jacobi_rule, integrate
from .solver import assemble_w, eval_u, eval_w, resolve

__all__ = [
    "RunConfig",
    "ConvergenceRow",
    "ConvergenceReport",
    "HarnessError",
    "CSV_COLUMNS",
    "experiment_config",
    "build_problem",
    "run_convergence_study",
    "prediction_for",
    "emit",
    "report_to_csv",
    "load_report",
    "plot_data",
    "plot_data_csv",
    "report_from_dict",
    "parse_terms",
]

CSV_COLUMNS = ("N", "err_u_L2w", "kappa_u_L2w", "err_u_DL2w", "kappa_u_DL2w",
               "err_u_Linf", "kappa_u_Linf", "err_w_L2w", "kappa_w_L2w")
ERROR_KEYS = ("err_u_L2w", "err_u_DL2w", "err_u_Linf", "err_w_L2w", "err_Dw_L2w")


class HarnessError(ValueError):
    """Invalid run configuration or an aborted study."""


def parse_terms(text):
    """'c:p:q; c:p:q' -> tuple of SingularTerm c (1-x)^p x^q."""
    terms = []
    for chunk in text.replace(",", ";").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if not 1 <= len(parts) <= 3:
            raise HarnessError(f"bad term {chunk!r}; expected coefficient:p:q")
        try:
            vals = [float(v) for v in parts] + [0.0] * (3 - len(parts))
        except ValueError as exc:
            raise HarnessError(f"bad term {chunk!r}: {exc}") from None
        terms.append(SingularTerm(vals[0], vals[1], vals[2]))
    if not terms:
        raise HarnessError("empty term list")
    return tuple(terms)


def _format_terms(terms):
    return "; ".join(f"{t.coefficient!r}:{t.p!r}:{t.q!r}" for t in terms)


@dataclass(frozen=True)
class RunConfig:
    alpha: float
    r: Optional[float] = None
    beta: Optional[float] = None
    gamma: Optional[float] = 0.8
    f_terms: Optional[str] = None
    invk_terms: Optional[str] = None
    k_bounds: Optional[Tuple[float, float]] = None
    n_list: Tuple[int, ...] = (16, 20, 24, 28, 32, 36)
    quad_order: Optional[int] = None
    quad_order_ref: int = 2048
    linf_samples: int = 2001
    reference: str = "closed-form"
    format: str = "csv"
    out: Optional[str] = None
    mode: str = "run"
    plot_n: int = 16
    plot_samples: int = 201
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        if self.r is None and self.beta is None:
            raise HarnessError("one of r or beta is required")
        if any(b <= a for a, b in zip(self.n_list, self.n_list[1:])):
            raise HarnessError(f"n_list must be strictly increasing, got {list(self.n_list)}")
        if any(n < 0 for n in self.n_list):
            raise HarnessError("n_list entries must be nonnegative")
        if self.format not in ("csv", "json"):
            raise HarnessError(f"format must be csv or json, got {self.format!r}")
        if self.mode not in ("run", "predict", "plot-data"):
            raise HarnessError(f"unknown mode {self.mode!r}")
        if self.linf_samples < 2:
            raise HarnessError("linf_samples must be >= 2")
        if self.jobs < 1:
            raise HarnessError("jobs must be >= 1")
        self.reference_order()

    @property
    def custom(self):
        return self.f_terms is not None or self.invk_terms is not None

    def reference_order(self):
        """None for the closed form, else N_ref of a self-converged reference."""
        if self.reference == "closed-form":
            return None
        kind, _, n = self.reference.partition(":")
        if kind != "self-converged" or not n.isdigit():
            raise HarnessError(
                f"reference must be 'closed-form' or 'self-converged:<N_ref>', got {self.reference!r}")
        return int(n)


def experiment_config(k, **overrides):
    """Configs for the three manufactured experiments (Q = 256, Q_ref = 2048)."""
    base = {
        1: dict(alpha=1.6, r=0.5, beta=0.8, gamma=0.8),
        2: dict(alpha=1.3, beta=0.5, gamma=0.8),
        3: dict(alpha=1.3, beta=0.5, gamma=0.1),
    }
    if k not in base:
        raise HarnessError(f"unknown experiment {k}")
    params = dict(base[k], n_list=(16, 20, 24, 28, 32, 36), quad_order=256, quad_order_ref=2048)
    params.update(overrides)
    return RunConfig(**params)


def build_problem(config):
    """ProblemSpec described by a config; the manufactured family unless terms are given."""
    if not config.custom:
        if config.gamma is None:
            raise HarnessError("gamma is required for the manufactured problem")
        if config.beta is not None:
            prob = manufactured_problem(config.alpha, gamma=config.gamma, beta=config.beta)
            if config.r is not None:
                prob = replace(prob, r=config.r)
            return prob
        return manufactured_problem(config.alpha, r=config.r, gamma=config.gamma)
    if config.f_terms is None or config.invk_terms is None:
        raise HarnessError("a custom problem needs both f_terms and invk_terms")
    inv_terms = parse_terms(config.invk_terms)
    bounds = config.k_bounds
    if bounds is None:
        x = np.linspace(0.0, 1.0, 1001)[1:-1]
        inv = sum(t(x) for t in inv_terms)
        k = 1.0 / inv
        bounds = (float(k.min()), float(k.max()))
    diffusivity = Diffusivity(inv_terms, bounds=tuple(bounds))
    return ProblemSpec(config.alpha, diffusivity, parse_terms(config.f_terms),
                       r=config.r, beta=config.beta, name="custom")


# ---------------------------------------------------------------- references
#
# A derivative is described as "pieces": (p, q, g) meaning (1-x)^p x^q g(x),
# times 1/K for u. Pieces sharing exponents are merged before squaring.


class _ClosedForm:
    def __init__(self, problem, beta, Q_ref):
        self.problem, self.beta, self.Q = problem, beta, Q_ref
        alpha = problem.alpha
        self.c_beta = _w_constant(alpha, beta) * beta
        self.kern = (alpha - beta - 1.0, beta - 1.0)
        # C_1 of the exact solution: u(1) = 0 with Du = (C_1 k_1' + Dw) / K
        plain = sum(integrate(gauss_jacobi_rule(Q_ref, (t.p, t.q)),
                              lambda s, t=t: t.coefficient * t.smooth_part(s))
                    for t in problem.diffusivity.inv_terms)
        den = sum(integrate(gauss_jacobi_rule(Q_ref, (self.kern[0] + t.p, self.kern[1] + t.q)),
                            lambda s, t=t: t.coefficient * t.smooth_part(s))
                  for t in problem.diffusivity.inv_terms)
        self.C1 = (-plain + self.c_beta * den) / den

    def u(self, x):
        return exact_u(self.problem, self.beta, x, self.Q)

    def w(self, x):
        return exact_w(self.problem.alpha, self.beta, x)

    def du_pieces(self):
        const = self.C1 - self.c_beta
        return [((0.0, 0.0), lambda x: np.ones_like(x)),
                (self.kern, lambda x, c=const: np.full_like(x, c))]

    def dw_pieces(self):
        return [((0.0, 0.0), lambda x: np.ones_like(x)),
                (self.kern, lambda x, c=self.c_beta: np.full_like(x, -c))]


class _Discrete:
    """Pieces of a computed solution; also serves as a self-converged reference."""

    def __init__(self, sol, problem):
        self.sol, self.problem = sol, problem
        self.kern = (sol.alpha - sol.beta - 1.0, sol.beta - 1.0)
        self.dw = sol.dw_expansion

    def u(self, x):
        return eval_u(self.sol, self.problem, x)

    def w(self, x):
        return eval_w(self.sol, x)

    def du_pieces(self):
        return [(self.kern, lambda x: self.sol.C1N + self.dw.polynomial(x))]

    def dw_pieces(self):
        return [(self.kern, self.dw.polynomial)]


def _difference(ref_pieces, approx_pieces):
    merged = {}
    for (p, q), g in ref_pieces:
        merged.setdefault((p, q), []).append((1.0, g))
    for (p, q), g in approx_pieces:
        merged.setdefault((p, q), []).append((-1.0, g))
    out = []
    for (p, q), parts in merged.items():
        def g(x, parts=parts):
            return sum(sign * fn(x) for sign, fn in parts)
        out.append(((p, q), g))
    return out


def _with_inv_k(pieces, problem):
    out = []
    for (p, q), g in pieces:
        for t in problem.diffusivity.inv_terms:
            out.append((SingularTerm(t.coefficient, p + t.p, q + t.q, t.smooth), g))
    return out


def _plain(pieces):
    return [(SingularTerm(1.0, p, q), g) for (p, q), g in pieces]


# ------------------------------------------------------------------- reports


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    err_u_L2w: float
    err_u_DL2w: float
    err_u_Linf: float
    err_w_L2w: float
    err_Dw_L2w: float
    u_N_at_1: float
    kappa_u_L2w: Optional[float] = None
    kappa_u_DL2w: Optional[float] = None
    kappa_u_Linf: Optional[float] = None
    kappa_w_L2w: Optional[float] = None
    kappa_Dw_L2w: Optional[float] = None


@dataclass(frozen=True)
class ConvergenceReport:
    rows: Tuple[ConvergenceRow, ...]
    prediction: dict
    fitted_rates: dict
    metadata: dict = field(default_factory=dict)

    def column(self, key):
        return [getattr(row, key) for row in self.rows]


def prediction_for(problem, beta):
    """(t_max, K_condition, RatePrediction) for a problem."""
    alpha = problem.alpha
    if problem.is_manufactured:
        reg = f_regularity(alpha, beta)
        k_ok = K_condition(problem.gamma, alpha, beta)
    else:
        reg = terms_regularity(problem.f_terms, (beta, alpha - beta))
        k_ok = inv_K_derivative_condition(problem.diffusivity.inv_terms, alpha, beta)
    # a smooth f gives t_max = inf and unbounded predicted rates
    return reg, k_ok, predict_rates(alpha, beta, max(reg.t_max, 0.0), k_ok)


def _measure(N, problem, beta, reference, config, nodes):
    Q = default_order(N) if config.quad_order is None else config.quad_order
    sol = assemble_w(problem, N, Q)
    approx = _Discrete(sol, problem)
    alpha, Q_ref = problem.alpha, config.quad_order_ref
    l2w = (-(alpha - beta), -beta)
    dl2w = (1.0 - (alpha - beta), 1.0 - beta)
    u_ref, w_ref, x_cheb, u_cheb = nodes
    err_u = weighted_error_norm(u_ref, approx.u(gauss_jacobi_rule(Q_ref, l2w).nodes), l2w, Q_ref)
    err_w = weighted_error_norm(w_ref, approx.w(gauss_jacobi_rule(Q_ref, l2w).nodes), l2w, Q_ref)
    du = _with_inv_k(_difference(reference.du_pieces(), approx.du_pieces()), problem)
    dw = _plain(_difference(reference.dw_pieces(), approx.dw_pieces()))
    err_du = factored_error_norm(du, dl2w, Q_ref)
    err_dw = factored_error_norm(dw, dl2w, Q_ref)
    u_cheb_N = approx.u(x_cheb)
    err_inf = float(np.max(np.abs(u_cheb - u_cheb_N)))
    u1 = float(eval_u(sol, problem, np.array([1.0]), Q=Q_ref)[0])
    return ConvergenceRow(N, err_u, err_du, err_inf, err_w, err_dw, u1)


def _make_reference(config, problem, beta):
    n_ref = config.reference_order()
    if n_ref is None:
        if not problem.is_manufactured:
            raise HarnessError("closed-form reference needs the manufactured family; "
                               "use --reference self-converged:<N_ref>")
        return _ClosedForm(problem, beta, config.quad_order_ref)
    if config.n_list and n_ref <= max(config.n_list):
        raise HarnessError(f"N_ref={n_ref} must exceed every N in n_list")
    Q = max(config.quad_order_ref, default_order(n_ref))
    return _Discrete(assemble_w(problem, n_ref, Q), problem)


def run_convergence_study(config):
    """Errors of u_N and w_N for each N in the config, kappa between neighbours, and predictions."""
    if not config.n_list:
        raise HarnessError("n_list is empty")
    problem = build_problem(config)
    r, beta = resolve(problem)
    reference = _make_reference(config, problem, beta)
    alpha, Q_ref = problem.alpha, config.quad_order_ref
    l2w = (-(alpha - beta), -beta)
    l2_nodes = gauss_jacobi_rule(Q_ref, l2w).nodes
    x_cheb = chebyshev_points(config.linf_samples)
    nodes = (reference.u(l2_nodes), reference.w(l2_nodes), x_cheb, reference.u(x_cheb))

    def work(N):
        try:
            return _measure(N, problem, beta, reference, config, nodes)
        except (ValueError, ArithmeticError) as exc:
            raise HarnessError(f"row N={N} failed: {exc}") from exc

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(work, config.n_list))
    else:
        rows = [work(N) for N in config.n_list]

    for row in rows:
        for key in ERROR_KEYS:
            if not getattr(row, key) > 0:
                raise HarnessError(f"non-positive error {key} at N={row.N}")
    rows = _attach_kappa(rows)

    reg, k_ok, pred = prediction_for(problem, beta)
    fits = {}
    if len(rows) >= 2:
        Ns = [row.N for row in rows]
        fits = {key: fitted_rate(Ns, [getattr(row, key) for row in rows]) for key in ERROR_KEYS}
    metadata = {
        "alpha": alpha, "r": r, "beta": beta, "gamma": problem.gamma,
        "problem": problem.name,
        "f_terms": _format_terms(problem.f_terms),
        "invk_terms": _format_terms(problem.diffusivity.inv_terms),
        "quad_order": config.quad_order, "quad_order_ref": Q_ref,
        "linf_samples": config.linf_samples, "reference": config.reference,
        "t_max": reg.t_max, "limiting_term": reg.limiting_term, "K_condition": k_ok,
    }
    return ConvergenceReport(tuple(rows), asdict(pred), fits, metadata)


def _attach_kappa(rows):
    out = [rows[0]]
    pairs = (("err_u_L2w", "kappa_u_L2w"), ("err_u_DL2w", "kappa_u_DL2w"),
             ("err_u_Linf", "kappa_u_Linf"), ("err_w_L2w", "kappa_w_L2w"),
             ("err_Dw_L2w", "kappa_Dw_L2w"))
    for prev, row in zip(rows, rows[1:]):
        kappas = {k: convergence_rate(getattr(prev, e), getattr(row, e), prev.N, row.N)
                  for e, k in pairs}
        out.append(replace(row, **kappas))
    return out


# -------------------------------------------------------------------- output


def _e(v):
    return "" if v is None else f"{v:.2E}"


def _k(v):
    return "" if v is None else f"{v:.2f}"


def report_to_csv(report):
    lines = [",".join(CSV_COLUMNS)]
    for row in report.rows:
        lines.append(",".join([
            str(row.N),
            _e(row.err_u_L2w), _k(row.kappa_u_L2w),
            _e(row.err_u_DL2w), _k(row.kappa_u_DL2w),
            _e(row.err_u_Linf), _k(row.kappa_u_Linf),
            _e(row.err_w_L2w), _k(row.kappa_w_L2w),
        ]))
    p = report.prediction
    lines.append(",".join(["Pred", "", _k(p["rate_L2_weighted"]), "", _k(p["rate_D_weighted"]),
                           "", _k(p["rate_Linf"]), "", _k(p["rate_w_L2_weighted"])]))
    return "\n".join(lines) + "\n"


def _report_dict(report):
    return {
        "rows": [asdict(row) for row in report.rows],
        "prediction": report.prediction,
        "fitted_rates": report.fitted_rates,
        "metadata": report.metadata,
    }


def report_from_dict(data):
    rows = tuple(ConvergenceRow(**row) for row in data["rows"])
    return ConvergenceReport(rows, data["prediction"], data["fitted_rates"], data["metadata"])


def emit(report, fmt="csv", path=None):
    """Write the report as CSV or JSON to ``path`` (or return the text when path is None)."""
    if not report.rows:
        raise HarnessError("refusing to emit an empty report")
    if fmt == "csv":
        text = report_to_csv(report)
    elif fmt == "json":
        text = json.dumps(_report_dict(report), indent=2, sort_keys=True) + "\n"
    else:
        raise HarnessError(f"unknown format {fmt!r}")
    if path is None:
        return text
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise HarnessError(f"cannot write {path}: {exc.strerror}") from exc
    return text


def load_report(path):
    """Read back a JSON report written by ``emit``."""
    try:
        with open(path, encoding="utf-8") as fh:
            return report_from_dict(json.load(fh))
    except OSError as exc:
        raise HarnessError(f"cannot read {path}: {exc.strerror}") from exc


def plot_data(config, N=None, samples=None):
    """Uniform samples (x, u, u_N, u - u_N) including both endpoints."""
    N = config.plot_n if N is None else N
    samples = config.plot_samples if samples is None else samples
    if samples < 2:
        raise HarnessError("need at least two plot samples")
    problem = build_problem(config)
    _, beta = resolve(problem)
    reference = _make_reference(replace(config, n_list=(N,)), problem, beta)
    Q = default_order(N) if config.quad_order is None else config.quad_order
    sol = assemble_w(problem, N, Q)
    x = np.linspace(0.0, 1.0, samples)
    u = reference.u(x)
    u_N = eval_u(sol, problem, x)
    return np.column_stack([x, u, u_N, u - u_N])


def plot_data_csv(table):
    lines = ["x,u,u_N,diff"]
    lines += [",".join(f"{v:.17g}" for v in row) for row in table]
    return "\n".join(lines) + "\n"

