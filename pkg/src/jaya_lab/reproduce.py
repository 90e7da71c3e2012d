"""Side-by-side reproduction of the published tables with pass/fail tolerances."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import published
from .benchmarks import NAMES, make_problem
from .experiments import (
    EnsembleConfig,
    estimate_transition_matrix,
    execute,
    summarize,
    theorem2_empirical_check,
    transition_estimate,
)
from .models import (
    DistributionKind,
    WorstModelParams,
    best_update_expectation,
    best_update_limit,
    worst_update_expectation,
)

TABLE_IDS = ("1", "2", "3", "4", "5", "matrix")

TOL_MAX_RESCANS = 1e-6
TOL_BEST_MODEL = 5e-5
TOL_P = 0.02
TOL_E_X = 0.15
TOL_MODEL_E_X = 0.02
TOL_E_Y = 0.1
INITIAL_RANGE = (0.08, 0.12)
DIAGONAL_RANGE = (0.02, 0.08)
ROW_SUM_TOL = 1e-9
MIN_SIDE_ROWS = 9

ENSEMBLE_N = (10, 50, 100, 1000)
ENSEMBLE_RUNS = 500
ENSEMBLE_G = 20
MATRIX_RUNS = 5000
MATRIX_G = 10
MATRIX_N = 10
MATRIX_D = 10


@dataclass
class Reproduction:
    name: str
    columns: list[str]
    rows: list[dict]
    passed: bool
    digits: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def table1() -> Reproduction:
    rows = []
    for n, ref in published.MAX_WORST_RESCANS.items():
        val = worst_update_expectation(WorstModelParams(n, 1.0))
        rows.append({"n": n, "published": ref, "computed": val,
                     "status": abs(val - ref) <= TOL_MAX_RESCANS})
    return Reproduction("table1", ["n", "published", "computed", "status"], rows,
                        all(r["status"] for r in rows), {"published": 6, "computed": 6})


def table4() -> Reproduction:
    rows = []
    for tag, refs in published.BEST_UPDATES.items():
        dist = DistributionKind(tag)
        for n, ref in zip(published.BEST_UPDATE_N, refs):
            val = best_update_expectation(dist, n, 1)
            rows.append({"distribution": tag, "n": n, "published": ref, "computed": val,
                         "status": abs(val - ref) <= TOL_BEST_MODEL})
        lim = best_update_limit(dist)
        ref = published.BEST_UPDATE_LIMITS[tag]
        ok = (lim is None) if ref is None else (lim is not None and abs(lim - ref) <= TOL_BEST_MODEL)
        rows.append({"distribution": tag, "n": "inf", "published": ref, "computed": lim, "status": ok})
    return Reproduction("table4", ["distribution", "n", "published", "computed", "status"], rows,
                        all(r["status"] for r in rows), {"published": 4, "computed": 4})


def ensemble_reports(runs: int = ENSEMBLE_RUNS, seed: int = 0, jobs: int = 1,
                     functions=NAMES, sizes=ENSEMBLE_N, G: int = ENSEMBLE_G):
    """SJaya ensembles for every (function, n) row; shared by tables 2 and 5."""
    out = {}
    for name in functions:
        for n in sizes:
            config = EnsembleConfig("sjaya", name, n, G, runs, seed, jobs)
            out[name, n] = summarize(config, execute(config))
    return out


def table2(reports) -> Reproduction:
    rows, notes = [], []
    for (name, n), rep in reports.items():
        ref_p, ref_e, ref_theo = published.WORST_ENSEMBLES[name, n]
        ok = bool(abs(rep.empirical_p - ref_p) <= TOL_P
              and abs(rep.empirical_E_X - ref_e) <= TOL_E_X
              and abs(rep.theoretical_E_X - ref_theo) <= TOL_MODEL_E_X)
        soft = bool(rep.empirical_E_X >= rep.theoretical_E_X)
        if not soft:
            notes.append(f"{name} n={n}: empirical E(X) below the model value")
        rows.append({
            "function": name, "n": n,
            "p_published": ref_p, "p": rep.empirical_p,
            "E_X_published": ref_e, "E_X": rep.empirical_E_X,
            "model_E_X_published": ref_theo, "model_E_X": rep.theoretical_E_X,
            "empirical_ge_model": soft, "status": ok,
        })
    cols = ["function", "n", "p_published", "p", "E_X_published", "E_X",
            "model_E_X_published", "model_E_X", "empirical_ge_model", "status"]
    digits = {c: 4 for c in cols[2:8]}
    return Reproduction("table2", cols, rows, all(r["status"] for r in rows), digits, notes)


def table5(reports) -> Reproduction:
    rows = []
    for (name, n), rep in reports.items():
        g1, g10, g20, mean = published.BEST_ENSEMBLES[name, n]
        ey = rep.empirical_E_Y_by_generation
        trend, _ = theorem2_empirical_check(rep)
        graded = n <= 100
        ok = bool(abs(ey[0] - g1) <= TOL_E_Y and trend) if graded else None
        row = {"function": name, "n": n,
               "gen1_published": g1, "gen1": float(ey[0]),
               "gen10_published": g10, "gen10": float(ey[9]) if ey.size >= 10 else None,
               "gen20_published": g20, "gen20": float(ey[19]) if ey.size >= 20 else None,
               "mean_published": mean, "mean": rep.empirical_E_Y_mean,
               "decreasing_trend": "yes" if trend else "no", "status": ok}
        rows.append(row)
    cols = list(rows[0]) if rows else []
    digits = {c: 3 for c in cols if c.startswith("gen")} | {"mean_published": 4, "mean": 4}
    passed = all(r["status"] for r in rows if r["status"] is not None)
    return Reproduction("table5", cols, rows, passed, digits,
                        ["rows with n > 100 are reported but not graded"])


def _matrix_config(runs, seed, jobs):
    return EnsembleConfig("sjaya", make_problem("chung_reynolds", MATRIX_D), MATRIX_N, MATRIX_G,
                          runs, seed, jobs)


def table3(runs: int = MATRIX_RUNS, seed: int = 0, jobs: int = 1, estimate=None) -> Reproduction:
    est = estimate or estimate_transition_matrix(_matrix_config(runs, seed, jobs))
    lo, hi = INITIAL_RANGE
    rows = []
    for label in range(est.n, 0, -1):
        val = float(est.initial_distribution[label - 1])
        rows.append({"label": label, "published": published.INITIAL_WORST.get(label),
                     "computed": val, "status": lo <= val <= hi})
    return Reproduction("table3", ["label", "published", "computed", "status"], rows,
                        all(r["status"] for r in rows), {"published": 4, "computed": 4})


def matrix(runs: int = MATRIX_RUNS, seed: int = 0, jobs: int = 1, estimate=None) -> Reproduction:
    est = estimate or estimate_transition_matrix(_matrix_config(runs, seed, jobs))
    side = est.traversal_side_check()
    lo, hi = DIAGONAL_RANGE
    rows = []
    for label in range(est.n, 0, -1):
        r = est.matrix[label - 1]
        row = {"current": label}
        row.update({str(j): float(r[j - 1]) for j in range(est.n, 0, -1)})
        row_sum = float(r.sum())
        diag = float(r[label - 1])
        row.update({"row_sum": row_sum, "samples": int(est.row_counts[label - 1]),
                    "diagonal_ok": lo <= diag <= hi, "side_ok": bool(side[label - 1]),
                    "status": abs(row_sum - 1.0) <= ROW_SUM_TOL and lo <= diag <= hi})
        rows.append(row)
    side_rows = int(side.sum())
    passed = all(r["status"] for r in rows) and side_rows >= MIN_SIDE_ROWS
    cols = ["current"] + [str(j) for j in range(est.n, 0, -1)] + [
        "row_sum", "samples", "diagonal_ok", "side_ok", "status"]
    digits = {str(j): 3 for j in range(1, est.n + 1)} | {"row_sum": 6}
    return Reproduction("matrix", cols, rows, passed, digits,
                        [f"traversal-side inequality holds in {side_rows}/{est.n} rows "
                         f"(need >= {MIN_SIDE_ROWS})"])


def reproduce(table: str, runs: int | None = None, seed: int = 0, jobs: int = 1,
              sizes=ENSEMBLE_N) -> list[Reproduction]:
    """Run one table (or ``"all"``); ``runs`` overrides the published run count."""
    if table not in TABLE_IDS + ("all",):
        raise ValueError(f"unknown table {table!r}; choose from {TABLE_IDS + ('all',)}")
    wanted = TABLE_IDS if table == "all" else (table,)
    out = []
    if "1" in wanted:
        out.append(table1())
    if "4" in wanted:
        out.append(table4())
    if "2" in wanted or "5" in wanted:
        reports = ensemble_reports(runs or ENSEMBLE_RUNS, seed, jobs, sizes=sizes)
        if "2" in wanted:
            out.append(table2(reports))
        if "5" in wanted:
            out.append(table5(reports))
    if "3" in wanted or "matrix" in wanted:
        result = execute(_matrix_config(runs or MATRIX_RUNS, seed, jobs))
        est = transition_estimate(result, MATRIX_N)
        if "3" in wanted:
            out.append(table3(estimate=est))
        if "matrix" in wanted:
            out.append(matrix(estimate=est))
    return out
