"""Command-line front end: ``egnh eval|fit|analyze|simulate``.

Every command prints either an aligned table (``--format table``, the
default) or one JSON result document per line (``--format jsonl``).
Exit status: 0 success, 1 usage error, 2 data or domain error,
3 numerical non-convergence.
"""

import argparse
import math
import os
import sys
import warnings

import numpy as np

from . import datasets, distribution as dist, gof as gofmod, inference as inf, quadrature as quad, series
from .distribution import EgnhParams
from .errors import (
    DataError,
    DomainError,
    EgnhError,
    NoConvergence,
    NonConvergence,
    QuadratureFailure,
    SeriesOracleMismatch,
    SeriesPrecisionWarning,
)
from .results import ResultDocument, digest, fit_payload, sim_payload, to_plain
from .sample import Sample
from .simulation import REFERENCE_THETA, SimDesign, run_sim

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# flag types


def _real(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}") from None
    if math.isnan(v):
        raise argparse.ArgumentTypeError("NaN is not allowed")
    return v


def _positive(text):
    v = _real(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text!r}")
    return v


def _nonnegative(text):
    v = _real(text)
    if not (v >= 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a finite number >= 0, got {text!r}")
    return v


def _probability(text):
    v = _real(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"must lie strictly between 0 and 1, got {text!r}")
    return v


def _count(minimum):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be an integer >= {minimum}, got {text!r}")
        return v

    return parse


def _grid(text):
    """``start:stop:count`` (inclusive) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            count = int(count)
            if count < 1:
                raise ValueError
            # 15 significant digits drop linspace noise such as 1.5000000000000002
            return [float(f"{v:.15g}") for v in np.linspace(float(start), float(stop), count)]
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:count or a comma list, got {text!r}") from None


# --------------------------------------------------------------------------
# input helpers


def read_values(path: str) -> Sample:
    """One positive decimal per line; blank lines and ``#`` comments skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    values = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            v = float(text)
        except ValueError:
            raise DataError(f"not a number: {text!r}", line=lineno) from None
        if not (v > 0 and math.isfinite(v)):
            raise DataError(f"observations must be positive and finite, got {text!r}", line=lineno)
        values.append(v)
    if not values:
        raise DataError("no observations")
    return Sample(np.array(values), label=os.path.basename(path))


def load_data(spec: str) -> Sample:
    if spec.lower() in datasets.NAMES:
        return datasets.load(spec)
    return read_values(spec)


def _theta(args, default=None) -> EgnhParams:
    vals = [args.alpha, args.beta, args.a, args.b]
    if all(v is None for v in vals) and default is not None:
        return default
    missing = [n for n, v in zip(("--alpha", "--beta", "--a", "--b"), vals) if v is None]
    if missing:
        raise UsageError(f"missing parameter flags: {' '.join(missing)}")
    return EgnhParams(*vals)


def _add_theta(p, required=False):
    g = p.add_argument_group("parameters")
    for name in ("alpha", "beta", "a", "b"):
        g.add_argument(f"--{name}", type=_positive, required=required, help=f"EGNH parameter {name} (> 0)")


# --------------------------------------------------------------------------
# output


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return f"{v:.10g}"
    return str(v)


def render_table(header, rows) -> str:
    cells = [[str(h) for h in header]] + [[_fmt(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


class Output:
    """Collects one document plus the human-readable sections."""

    def __init__(self, args, command):
        self.args = args
        self.command = command
        self.sections = []

    def table(self, title, header, rows):
        self.sections.append((title, header, rows))

    def emit(self, kind, payload, inputs, stream):
        if self.args.format == "jsonl":
            doc = ResultDocument(self.command, kind, to_plain(payload), digest(self.command, inputs))
            stream.write(doc.to_json() + "\n")
            return
        blocks = []
        for title, header, rows in self.sections:
            text = render_table(header, rows)
            blocks.append(f"{title}\n{text}" if title else text)
        stream.write("\n\n".join(blocks) + "\n")


# --------------------------------------------------------------------------
# commands


_EVAL = {
    "pdf": dist.pdf,
    "cdf": dist.cdf,
    "sf": dist.sf,
    "hrf": dist.hrf,
    "quantile": dist.quantile,
}


def cmd_eval(args, out: Output):
    theta = _theta(args)
    fn = _EVAL[args.function]
    if args.function == "quantile":
        if not args.p:
            raise UsageError("eval quantile needs --p")
        points, col = args.p, "p"
    else:
        if not args.x:
            raise UsageError(f"eval {args.function} needs --x")
        points, col = args.x, "x"
    rows = [(v, float(fn(theta, v))) for v in points]
    out.table("", (col, args.function), rows)
    payload = {"function": args.function, "theta": theta.as_array(), "columns": [col, args.function], "rows": rows}
    return "curve", payload, [args.function, theta.as_array(), points]


def _fit_rows(f):
    rows = []
    for i, name in enumerate(f.param_names):
        se = None if f.std_errors is None else float(f.std_errors[i])
        lo, hi = (None, None) if f.ci95 is None else f.ci95[i]
        rows.append((name, float(f.estimates[i]), se, lo, hi, "yes" if name in f.at_bound else ""))
    return rows


def _gof_row(r):
    return (r.model, r.loglik, r.w_star, r.a_star, r.ks, r.aic, r.caic, r.bic, r.hqic)


_GOF_HEADER = ("model", "loglik", "W*", "A*", "KS", "AIC", "CAIC", "BIC", "HQIC")


def cmd_fit(args, out: Output):
    s = load_data(args.data)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.compare:
            ranking = gofmod.compare(s, method=args.method)
        else:
            kwargs = {"method": args.method}
            if inf.Model(args.model) is inf.Model.EGNH:
                kwargs.update(workers=args.workers, b_max=args.b_max)
            f = inf.fit_model(s, args.model, **kwargs)
            ranking = [(f, gofmod.gof(f, s))]
    notes = sorted({str(w.message) for w in caught})
    inputs = [s.values, args.model, args.method, args.compare, args.b_max]
    if args.compare:
        out.table(f"model ranking on {s.label} (n={s.n}), best W* first", ("rank",) + _GOF_HEADER,
                  [(i + 1,) + _gof_row(r) for i, (_, r) in enumerate(ranking)])
        payload = {"data": s.label, "models": [{"fit": fit_payload(f), "gof": r.as_dict()} for f, r in ranking], "notes": notes}
        kind = "compare"
    else:
        f, r = ranking[0]
        out.table(f"{f.model.value} fit to {s.label} (n={s.n}, {f.method.value} likelihood)",
                  ("param", "estimate", "std_err", "ci95_lo", "ci95_hi", "at_bound"), _fit_rows(f))
        out.table("goodness of fit", _GOF_HEADER, [_gof_row(r)])
        payload = {"data": s.label, "fit": fit_payload(f), "gof": r.as_dict(), "notes": notes}
        kind = "fit"
    if notes:
        out.table("notes", ("message",), [(m,) for m in notes])
    return kind, payload, inputs


def _analyze_moments(args, theta, out):
    summ = series.central_moments_cumulants(theta, max(args.r, 2), method=args.method)
    rows = [(r, float(summ.raw[r]), float(summ.central[r]), float(summ.cumulants[r])) for r in range(1, args.r + 1)]
    out.table("moments", ("r", "raw", "central", "cumulant"), rows)
    extra = [(k, v) for k, v in (("skewness", summ.skewness), ("kurtosis", summ.kurtosis)) if not math.isnan(v)]
    if extra:
        out.table("", ("measure", "value"), extra)
    return {"columns": ["r", "raw", "central", "cumulant"], "rows": rows, "skewness": summ.skewness, "kurtosis": summ.kurtosis}


def _analyze_entropy(args, theta, out):
    grid = args.lambda_grid or [0.5, 2.0, 5.0]
    rows = []
    for lam in grid:
        if lam == 1.0:
            rows.append((lam, quad.shannon_entropy(theta).value, "shannon limit"))
            continue
        try:
            with warnings.catch_warnings():
                # a cancelling series is reported through the status column
                warnings.simplefilter("ignore", SeriesPrecisionWarning)
                v = series.renyi_entropy(theta, lam, method=args.method)
            rows.append((lam, v.value, "ok" if v.method == "series" else f"ok via {v.method}"))
        except NonConvergence as exc:
            rows.append((lam, math.nan, f"diverges: {exc}"))
        except DomainError as exc:
            rows.append((lam, math.nan, str(exc)))
    out.table("Renyi entropy", ("lambda", "entropy", "status"), rows)
    return {"columns": ["lambda", "entropy", "status"], "rows": rows}


def _analyze_quantile_measures(args, theta, out):
    rows = [
        ("median", float(dist.quantile(theta, 0.5))),
        ("bowley_skewness", dist.bowley_skewness(theta)),
        ("moors_kurtosis", dist.moors_kurtosis(theta)),
    ]
    shape = dist.classify_shape(theta)
    rows += [("density_log_shape", shape.density_log_shape.value), ("hazard_shape", shape.hazard_shape.value)]
    out.table("quantile measures", ("measure", "value"), rows)
    return {"columns": ["measure", "value"], "rows": rows}


def _analyze_surface(args, theta, out):
    betas = args.beta_grid or [float(v) for v in np.linspace(0.5, 5, 10)]
    bs = args.b_grid or [float(v) for v in np.linspace(0.5, 5, 10)]
    rows = []
    for be in betas:
        for b in bs:
            t = theta.replace(beta=be, b=b)
            rows.append((be, b, dist.bowley_skewness(t), dist.moors_kurtosis(t)))
    out.table(f"Bowley and Moors over (beta, b), alpha={theta.alpha:g}, a={theta.a:g}", ("beta", "b", "bowley", "moors"), rows)
    return {"columns": ["beta", "b", "bowley", "moors"], "rows": rows}


def _analyze_deviations(args, theta, out):
    md = series.mean_deviations(theta, method=args.method)
    rows = [("about_mean", md.about_mean), ("about_median", md.about_median)]
    out.table("mean deviations", ("measure", "value"), rows)
    return {"columns": ["measure", "value"], "rows": rows}


def _analyze_inequality(args, theta, out):
    grid = args.pi_grid or [float(v) for v in np.linspace(0.05, 0.95, 19)]
    rows = []
    for p in grid:
        b_val, l_val = series.bonferroni_lorenz(theta, p, method=args.method)
        rows.append((p, b_val, l_val))
    out.table("Bonferroni and Lorenz curves", ("pi", "bonferroni", "lorenz"), rows)
    return {"columns": ["pi", "bonferroni", "lorenz"], "rows": rows}


def _x_grid(args, theta):
    if args.x_grid:
        return args.x_grid
    hi = float(dist.quantile(theta, 0.999))
    return [float(v) for v in np.linspace(hi / 200, hi, 200)]


def _analyze_density(args, theta, out):
    rows = []
    for x in _x_grid(args, theta):
        rows.append((x, float(dist.pdf(theta, x)), float(dist.cdf(theta, x)), float(dist.sf(theta, x)), float(dist.hrf(theta, x))))
    out.table("density curves", ("x", "pdf", "cdf", "sf", "hrf"), rows)
    return {"columns": ["x", "pdf", "cdf", "sf", "hrf"], "rows": rows}


def _analyze_orderstat(args, theta, out):
    if not 1 <= args.i <= args.n:
        raise UsageError("--i must satisfy 1 <= i <= n")
    rows = [(x, float(series.order_statistic_pdf(theta, args.i, args.n, x))) for x in _x_grid(args, theta)]
    out.table(f"density of order statistic {args.i} of {args.n}", ("x", "pdf"), rows)
    return {"columns": ["x", "pdf"], "rows": rows, "i": args.i, "n": args.n}


def _analyze_ttt(args, s, out):
    rows = [tuple(float(v) for v in r) for r in gofmod.ttt_plot_data(s)]
    out.table(f"TTT plot for {s.label}", ("r_over_n", "G"), rows)
    return {"columns": ["r_over_n", "G"], "rows": rows}


def _analyze_ecdf(args, s, out):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        f = inf.fit(s)
    y = s.sorted_view
    n = s.n
    rows = [(float(x), (i + 1) / n, float(f.cdf(x))) for i, x in enumerate(y)]
    out.table(f"empirical vs fitted cdf for {s.label}", ("x", "ecdf", "fitted_cdf"), rows)
    return {"columns": ["x", "ecdf", "fitted_cdf"], "rows": rows, "theta_hat": f.theta_hat.as_array()}


def _analyze_descriptive(args, s, out):
    d = gofmod.descriptive_stats(s).as_dict()
    rows = list(d.items())
    out.table(f"descriptive statistics for {s.label}", ("statistic", "value"), rows)
    return {"columns": ["statistic", "value"], "rows": rows}


_THETA_ANALYSES = {
    "moments": _analyze_moments,
    "entropy": _analyze_entropy,
    "quantile-measures": _analyze_quantile_measures,
    "surface": _analyze_surface,
    "deviations": _analyze_deviations,
    "inequality": _analyze_inequality,
    "density": _analyze_density,
    "orderstat": _analyze_orderstat,
}
_DATA_ANALYSES = {"ttt": _analyze_ttt, "ecdf": _analyze_ecdf, "descriptive": _analyze_descriptive}


def cmd_analyze(args, out: Output):
    what = args.what
    if what in _DATA_ANALYSES:
        if not args.data:
            raise UsageError(f"analyze {what} needs --data")
        s = load_data(args.data)
        payload = _DATA_ANALYSES[what](args, s, out)
        return "curve", {"analysis": what, **payload}, [what, s.values]
    if what == "surface":
        # beta and b are swept, so only alpha and a are needed
        theta = EgnhParams(args.alpha or 1.0, 1.0, args.a or 1.0, 1.0)
    else:
        theta = _theta(args)
    payload = _THETA_ANALYSES[what](args, theta, out)
    return "curve", {"analysis": what, "theta": theta.as_array(), **payload}, [what, theta.as_array(), vars(args).get("r")]


def cmd_simulate(args, out: Output):
    theta = _theta(args, default=REFERENCE_THETA)
    design = SimDesign(theta0=theta, sizes=tuple(args.sizes), replications=args.reps, seed=args.seed,
                       method=args.method, b_max=args.b_max)
    result = run_sim(design, workers=args.workers)
    rows = [(r.size, r.parameter, r.bias, r.std_error, r.converged, r.failed, r.at_bound) for r in result.rows]
    out.table(f"simulation at theta0={tuple(theta.as_tuple())}, {args.reps} replications, seed {args.seed}",
              ("n", "param", "bias", "std_error", "converged", "failed", "at_bound"), rows)
    inputs = [theta.as_array(), list(design.sizes), args.reps, args.seed, args.method, args.b_max]
    return "sim", sim_payload(result), inputs


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="egnh", description="EGNH lifetime distribution toolkit", allow_abbrev=False)
    parser.add_argument("--format", choices=("table", "jsonl"), default="table", help="output format (default: table)")
    # --format is also accepted after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "jsonl"), default=argparse.SUPPRESS, help="output format")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate pdf/cdf/sf/hrf/quantile", parents=[common], allow_abbrev=False)
    ev.add_argument("function", choices=sorted(_EVAL))
    _add_theta(ev, required=True)
    ev.add_argument("--x", type=_nonnegative, nargs="+", help="points x >= 0")
    ev.add_argument("--p", type=_probability, nargs="+", help="probabilities in (0, 1)")

    ft = sub.add_parser("fit", help="fit a model to a dataset or file", parents=[common], allow_abbrev=False)
    ft.add_argument("--data", required=True, help="fixture name (aarset, kevlar) or path to a file")
    ft.add_argument("--model", choices=[m.value for m in inf.Model], default="egnh")
    ft.add_argument("--method", choices=[m.value for m in inf.FitMethod], default="profile")
    ft.add_argument("--compare", action="store_true", help="fit every model and rank them")
    ft.add_argument("--b-max", type=_positive, default=1e4, help="upper bound on b for the optimiser (default 1e4)")
    ft.add_argument("--workers", type=_count(1), default=1, help="threads for the multi-start search")

    an = sub.add_parser("analyze", help="series analytics and plot-ready curves", parents=[common], allow_abbrev=False)
    an.add_argument("what", choices=sorted(list(_THETA_ANALYSES) + list(_DATA_ANALYSES)))
    _add_theta(an)
    an.add_argument("--data", help="fixture name or file (ttt, ecdf, descriptive)")
    an.add_argument("--r", type=_count(1), default=4, help="highest moment order (default 4)")
    an.add_argument("--lambda-grid", type=_grid, help="Renyi orders, start:stop:count or comma list")
    an.add_argument("--pi-grid", type=_grid, help="probabilities for Bonferroni/Lorenz curves")
    an.add_argument("--x-grid", type=_grid, help="evaluation points for density-type curves")
    an.add_argument("--beta-grid", type=_grid, help="beta values for the quantile-measure surface")
    an.add_argument("--b-grid", type=_grid, help="b values for the quantile-measure surface")
    an.add_argument("--i", type=_count(1), default=1, help="order-statistic index")
    an.add_argument("--n", type=_count(1), default=1, help="order-statistic sample size")
    an.add_argument("--method", choices=("auto", "series", "quadrature"), default="auto", help="moment evaluation route")

    sm = sub.add_parser("simulate", help="Monte Carlo bias and standard-error study", parents=[common], allow_abbrev=False)
    _add_theta(sm)
    sm.add_argument("--sizes", type=_count(2), nargs="+", default=list(range(10, 251, 5)))
    sm.add_argument("--reps", type=_count(2), default=1000)
    sm.add_argument("--seed", type=_count(0), default=2024)
    sm.add_argument("--method", choices=[m.value for m in inf.FitMethod], default="profile")
    sm.add_argument("--b-max", type=_positive, default=1e4)
    sm.add_argument("--workers", type=_count(1), default=None, help="processes (default: all cores)")
    return parser


_COMMANDS = {"eval": cmd_eval, "fit": cmd_fit, "analyze": cmd_analyze, "simulate": cmd_simulate}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out = Output(args, args.command)
        kind, payload, inputs = _COMMANDS[args.command](args, out)
        out.emit(kind, payload, inputs, stdout)
        return EXIT_OK
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (NonConvergence, NoConvergence, QuadratureFailure, SeriesOracleMismatch) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_NUMERIC
    except (DataError, DomainError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DATA
    except EgnhError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
