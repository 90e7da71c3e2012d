"""Command-line front end: ``jaya-lab <subcommand> [options]``.

Any long option may also come from ``--config FILE``, a plain ``key = value``
file whose keys are option names (``runs = 500``, ``jobs = 4``). Explicit
command-line flags override the file. ``--jobs`` falls back to the
``JAYA_LAB_JOBS`` environment variable.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import math
import sys
from contextlib import contextmanager
from pathlib import Path

from . import benchmarks, reproduce as repro
from .batched import iter_records
from .costs import (
    CostConstants,
    additional_cost_bound,
    jaya_cost_breakdown,
    sjaya_cost_breakdown,
)
from .experiments import (
    EnsembleConfig,
    default_jobs,
    execute,
    oracle_pmf_estimate,
    summarize,
    transition_estimate,
)
from .models import (
    DISTRIBUTIONS,
    DistributionKind,
    WorstModelParams,
    best_update_bound,
    best_update_expectation,
    best_update_limit,
    worst_update_expectation,
    worst_update_pmf,
)
from .optimizers import RunConfig, run, write_trace_csv
from .published import BEST_UPDATE_N, MAX_WORST_RESCANS
from .report import FORMATS, write_table

log = logging.getLogger("jaya_lab")

DEFAULT_SEED = 20240601


def int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("values must be positive integers")
    return values


def positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def probability(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {text}")
    return v


def non_negative(text: str) -> float:
    v = float(text)
    if v < 0 or math.isnan(v):
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return v


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _dist(tag: str, args) -> DistributionKind:
    return DistributionKind(tag, a=args.a, b=args.b, lam=args.lam, mu=args.mu, sigma=args.sigma)


# --------------------------------------------------------------------------
# subcommands


def cmd_theory_worst(args) -> int:
    rows = [{"n": n, "p": args.p, "E_X": worst_update_expectation(WorstModelParams(n, args.p))}
            for n in args.n]
    with _output(args.output) as fh:
        write_table(rows, ["n", "p", "E_X"], fh, args.format, {"E_X": 6})
    return 0


def cmd_theory_best(args) -> int:
    dists = [_dist(t, args) for t in args.dist.split(",")]
    rows = []
    for n in args.n:
        row = {"n": n}
        row.update({d.tag: best_update_expectation(d, n, args.g) for d in dists})
        rows.append(row)
    if args.g == 1:
        rows.append({"n": "inf"} | {d.tag: best_update_limit(d) for d in dists})
        rows.append({"n": "bound"} | {d.tag: best_update_bound(d) for d in dists})
    cols = ["n"] + [d.tag for d in dists]
    with _output(args.output) as fh:
        write_table(rows, cols, fh, args.format, {d.tag: 4 for d in dists})
    return 0


def cmd_cost(args) -> int:
    dist = _dist(args.dist, args)
    costs = CostConstants(args.Cc, args.Ca, args.Cp, args.Cop, phi=lambda d: args.phi * d)
    e_assign = args.expected_assign
    if e_assign is None:
        e_assign = best_update_expectation(dist, args.n, 1)
    rows = []
    if args.algorithm in ("sjaya", "both"):
        b = sjaya_cost_breakdown(args.n, args.d, args.G, dist, costs, e_assign, args.rescans)
        rows += [{"term": f"sjaya: {k}", "value": v} for k, v in b.rows()]
    if args.algorithm in ("jaya", "both"):
        b = jaya_cost_breakdown(args.n, args.d, args.G, dist, costs)
        rows += [{"term": f"jaya: {k}", "value": v} for k, v in b.rows()]
    exact, approx = additional_cost_bound(args.n, costs)
    rows += [{"term": "extra per generation bound", "value": exact},
             {"term": "extra per generation bound (large n)", "value": approx}]
    with _output(args.output) as fh:
        write_table(rows, ["term", "value"], fh, args.format, {"value": 4})
    return 0


def cmd_run(args) -> int:
    spec = benchmarks.make_problem(args.function, args.d)
    trace = run(RunConfig(args.algorithm, spec, args.n, args.G, args.seed, args.stream))
    with _output(args.output) as fh:
        write_trace_csv([(args.stream, trace.records)], fh)
    log.info("final best fitness %.6g", trace.best_history[-1])
    return 0


def _ensemble_config(args) -> EnsembleConfig:
    spec = benchmarks.make_problem(args.function, args.d)
    return EnsembleConfig(args.algorithm, spec, args.n, args.G, args.runs, args.seed, args.jobs)


def cmd_ensemble(args) -> int:
    config = _ensemble_config(args)
    result = execute(config)
    rep = summarize(config, result)
    if args.traces:
        with open(args.traces, "w", newline="") as fh:
            write_trace_csv(iter_records(result), fh)
    rows = [{"statistic": k, "value": v} for k, v in rep.summary_row().items()]
    rows += [{"statistic": f"E_Y_gen{g}", "value": float(v)}
             for g, v in enumerate(rep.empirical_E_Y_by_generation, start=1)]
    rows += [{"statistic": "flag", "value": f} for f in rep.flags]
    with _output(args.output) as fh:
        write_table(rows, ["statistic", "value"], fh, args.format, {"value": 4})
    return 0


def cmd_oracle(args) -> int:
    params = WorstModelParams(args.n, args.p)
    if not 1 <= args.k <= args.n:
        raise SystemExit(f"--k must lie in [1, {args.n}]")
    freq = oracle_pmf_estimate(args.k, params, args.trials, args.seed)
    rows = []
    for m, f in enumerate(freq):
        model = worst_update_pmf(m, args.k, params)
        sigma = math.sqrt(model * (1 - model) / args.trials)
        rows.append({"m": m, "empirical": float(f), "model": model,
                     "within_4_sigma": abs(f - model) <= 4 * sigma + 1.0 / args.trials})
    with _output(args.output) as fh:
        write_table(rows, ["m", "empirical", "model", "within_4_sigma"], fh, args.format,
                    {"empirical": 6, "model": 6})
    return 0 if all(r["within_4_sigma"] for r in rows) else 1


def cmd_transition(args) -> int:
    args.algorithm = "sjaya"
    config = _ensemble_config(args)
    est = transition_estimate(execute(config), config.n)
    labels = list(range(config.n, 0, -1))
    rows = []
    for k in labels:
        row = {"current": k}
        row.update({str(j): float(est.matrix[k - 1, j - 1]) for j in labels})
        row["initial"] = float(est.initial_distribution[k - 1])
        row["samples"] = int(est.row_counts[k - 1])
        rows.append(row)
    cols = ["current"] + [str(j) for j in labels] + ["initial", "samples"]
    with _output(args.output) as fh:
        write_table(rows, cols, fh, args.format, {c: 3 for c in cols[1:-1]})
    return 0


def cmd_reproduce(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = repro.reproduce(args.table, args.runs, args.seed, args.jobs)
    ok = True
    for res in results:
        for fmt, ext in (("csv", "csv"), ("markdown", "md")):
            with open(out_dir / f"{res.name}.{ext}", "w", newline="") as fh:
                write_table(res.rows, res.columns, fh, fmt, res.digits)
        if args.format == "markdown":
            print(f"\n### {res.name}\n")
            write_table(res.rows, res.columns, sys.stdout, "markdown", res.digits)
        for note in res.notes:
            print(f"note: {res.name}: {note}")
        print(f"{res.name}: {'PASS' if res.passed else 'FAIL'}")
        ok &= res.passed
    return 0 if ok else 1


# --------------------------------------------------------------------------
# parser


def _add_common(p, fmt=True):
    p.add_argument("--config", help="key = value file supplying defaults")
    if fmt:
        p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--output", "-o", default=None, help="output file (default stdout)")


def _add_dist_params(p):
    p.add_argument("--a", type=float, default=0.0, help="uniform lower end")
    p.add_argument("--b", type=float, default=1.0, help="uniform upper end")
    p.add_argument("--lam", type=float, default=1.0, help="exponential rate")
    p.add_argument("--mu", type=float, default=0.0, help="normal mean")
    p.add_argument("--sigma", type=float, default=1.0, help="normal standard deviation")


def _add_run_params(p, runs=False):
    p.add_argument("--function", choices=benchmarks.NAMES, default="ackley")
    p.add_argument("--d", type=positive_int, default=None, help="dimension override")
    p.add_argument("--n", type=positive_int, default=10, help="population size")
    p.add_argument("--G", type=positive_int, default=20, help="generations")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    if runs:
        p.add_argument("--runs", type=positive_int, default=500)
        p.add_argument("--jobs", type=positive_int, default=default_jobs())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jaya-lab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theory-worst", help="expected worst-index re-scans per generation")
    p.add_argument("--n", type=int_list, default=list(MAX_WORST_RESCANS))
    p.add_argument("--p", type=probability, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_theory_worst)

    p = sub.add_parser("theory-best", help="expected best-index updates per generation")
    p.add_argument("--dist", default=",".join(DISTRIBUTIONS),
                   help="comma-separated subset of " + ", ".join(DISTRIBUTIONS))
    p.add_argument("--n", type=int_list, default=list(BEST_UPDATE_N))
    p.add_argument("--g", type=positive_int, default=1, help="generation")
    _add_dist_params(p)
    _add_common(p)
    p.set_defaults(func=cmd_theory_best)

    p = sub.add_parser("cost", help="operation-count cost of one run")
    p.add_argument("--algorithm", choices=("jaya", "sjaya", "both"), default="both")
    p.add_argument("--n", type=positive_int, default=100)
    p.add_argument("--d", type=positive_int, default=30)
    p.add_argument("--G", type=int, default=20)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--Cc", type=non_negative, default=1.0, help="comparison cost")
    p.add_argument("--Ca", type=non_negative, default=1.0, help="assignment cost")
    p.add_argument("--Cp", type=non_negative, default=1.0, help="per-dimension parameter cost")
    p.add_argument("--Cop", type=non_negative, default=1.0, help="per-dimension candidate cost")
    p.add_argument("--phi", type=non_negative, default=1.0, help="evaluation cost per dimension")
    p.add_argument("--expected-assign", type=non_negative, default=None,
                   help="best-index assignments per generation (default: first-generation model value)")
    p.add_argument("--rescans", type=non_negative, default=1.7,
                   help="worst re-scans per generation")
    _add_dist_params(p)
    _add_common(p)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("run", help="one instrumented run; per-generation trace CSV")
    p.add_argument("--algorithm", choices=("jaya", "sjaya"), default="sjaya")
    _add_run_params(p)
    p.add_argument("--stream", type=int, default=0, help="run index within the seed")
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("ensemble", help="aggregate statistics over independent runs")
    p.add_argument("--algorithm", choices=("jaya", "sjaya"), default="sjaya")
    _add_run_params(p, runs=True)
    p.add_argument("--traces", help="also write every run's trace CSV here")
    _add_common(p)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("oracle", help="Monte-Carlo check of the re-scan distribution")
    p.add_argument("--k", type=positive_int, default=5)
    p.add_argument("--n", type=positive_int, default=10)
    p.add_argument("--p", type=probability, default=0.5)
    p.add_argument("--trials", type=positive_int, default=1_000_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("transition", help="empirical worst-index transition matrix")
    p.add_argument("--function", choices=benchmarks.NAMES, default="chung_reynolds")
    p.add_argument("--d", type=positive_int, default=10)
    p.add_argument("--n", type=positive_int, default=10)
    p.add_argument("--G", type=positive_int, default=10)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--runs", type=positive_int, default=5000)
    p.add_argument("--jobs", type=positive_int, default=default_jobs())
    _add_common(p)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("reproduce", help="regenerate a published table and grade it")
    p.add_argument("--table", choices=repro.TABLE_IDS + ("all",), required=True)
    p.add_argument("--runs", type=positive_int, default=None,
                   help="override the published run count")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=positive_int, default=default_jobs())
    p.add_argument("--out", default="reproduction", help="directory for CSV/Markdown files")
    p.add_argument("--config", help="key = value file supplying defaults")
    p.add_argument("--format", choices=FORMATS, default="csv",
                   help="markdown also prints each table to stdout")
    p.set_defaults(func=cmd_reproduce)
    return parser


def read_config(path) -> dict:
    cp = configparser.ConfigParser()
    cp.read_string("[jaya-lab]\n" + Path(path).read_text())
    return {k.replace("-", "_"): v for k, v in cp["jaya-lab"].items()}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        # re-parse with the file's values as defaults so explicit flags still win
        sub = parser._subparsers._group_actions[0].choices[args.command]
        values = read_config(args.config)
        known = {a.dest for a in sub._actions}
        unknown = set(values) - known
        if unknown:
            parser.error(f"unknown config keys: {', '.join(sorted(unknown))}")
        sub.set_defaults(**values)
        args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
