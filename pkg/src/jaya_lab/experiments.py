"""Monte-Carlo harness: worst-index process oracle and SJaya/Jaya ensembles.

Slot labels: reports follow the convention of the worst-index model, where the
slot processed first carries label ``n`` and the slot processed last carries
label ``1``. Array position ``pos`` (0-based, ascending traversal) therefore
has label ``n - pos``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .batched import BatchResult, run_batch
from .benchmarks import make_problem
from .models import WorstModelParams, worst_update_expectation
from .population import ConfigurationError, ProblemSpec, RngStream

# rough cap on genes held by one lock-step block (floats)
BLOCK_BUDGET = 8_000_000


# --------------------------------------------------------------------------
# worst-index process oracle


def oracle_worst_process(k: int, params: WorstModelParams, rng) -> int:
    """Simulate one generation of the idealised worst-index process from label ``k``."""
    if not 1 <= k <= params.n:
        raise ValueError(f"k must lie in [1, {params.n}], got {k}")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    count, pos = 0, k
    while True:
        if gen.random() >= params.p:
            return count
        count += 1
        j = int(gen.integers(1, params.n + 1))
        if j >= pos:
            return count
        pos = j


def oracle_samples(k: int, params: WorstModelParams, trials: int, seed: int) -> np.ndarray:
    """``trials`` independent outcomes of the oracle process, simulated side by side."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 1 <= k <= params.n:
        raise ValueError(f"k must lie in [1, {params.n}], got {k}")
    gen = RngStream(seed, 0).generator()
    count = np.zeros(trials, dtype=np.int64)
    pos = np.full(trials, k, dtype=np.int64)
    live = np.arange(trials)
    while live.size:
        replaced = gen.random(live.size) < params.p
        live = live[replaced]
        count[live] += 1
        j = gen.integers(1, params.n + 1, size=live.size)
        down = j < pos[live]
        pos[live[down]] = j[down]
        live = live[down]
    return count


def oracle_pmf_estimate(k: int, params: WorstModelParams, trials: int, seed: int = 0) -> np.ndarray:
    """Relative frequencies of ``m = 0..k`` re-scans over ``trials`` oracle runs."""
    counts = np.bincount(oracle_samples(k, params, trials, seed), minlength=k + 1)
    return counts / trials


# --------------------------------------------------------------------------
# ensembles


@dataclass
class EnsembleConfig:
    algorithm: str
    problem: ProblemSpec | str
    n: int
    G: int
    runs: int
    master_seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if isinstance(self.problem, str):
            self.problem = make_problem(self.problem)
        if self.runs < 1:
            raise ConfigurationError(f"runs must be >= 1, got {self.runs}")
        if self.n < 1 or self.G < 1:
            raise ConfigurationError("n and G must be >= 1")


def _blocks(config: EnsembleConfig) -> list[range]:
    size = max(1, BLOCK_BUDGET // (config.n * config.problem.d))
    return [range(s, min(s + size, config.runs)) for s in range(0, config.runs, size)]


def _run_block(args) -> BatchResult:
    config, ids = args
    return run_batch(config.algorithm, config.problem, config.n, config.G, config.master_seed, ids)


def execute(config: EnsembleConfig) -> BatchResult:
    """Run every member of the ensemble; run ``i`` uses ``RngStream(master_seed, i)``."""
    blocks = _blocks(config)
    jobs = max(1, min(config.jobs, len(blocks)))
    if jobs == 1:
        parts = [_run_block((config, b)) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_block, [(config, b) for b in blocks]))
    return BatchResult.concatenate(parts)


@dataclass
class EnsembleReport:
    algorithm: str
    function: str
    n: int
    G: int
    run_count: int
    empirical_p: float
    p_samples: int
    empirical_E_X: float | None
    theoretical_E_X: float | None
    empirical_E_Y_by_generation: np.ndarray
    empirical_E_Y_mean: float
    runs_without_worst_encounter: int = 0
    flags: list[str] = field(default_factory=list)

    def summary_row(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "function": self.function,
            "n": self.n,
            "G": self.G,
            "runs": self.run_count,
            "empirical_p": self.empirical_p,
            "empirical_E_X": self.empirical_E_X,
            "theoretical_E_X": self.theoretical_E_X,
            "E_Y_gen1": float(self.empirical_E_Y_by_generation[0]),
            "E_Y_mean": self.empirical_E_Y_mean,
        }


def summarize(config: EnsembleConfig, result: BatchResult) -> EnsembleReport:
    c = result.counters
    encounters = c["worst_encounters"].sum(axis=1)
    successes = c["worst_replacements"].sum(axis=1)
    has = encounters > 0
    per_run_p = successes[has] / encounters[has]
    p = float(per_run_p.mean()) if per_run_p.size else math.nan
    flags = []
    missing = int((~has).sum())
    if missing:
        flags.append(f"{missing} run(s) never met the tracked worst; no p sample")

    e_y = c["best_updates"].mean(axis=0)
    if config.algorithm == "sjaya":
        e_x = float(c["worst_recomputations"].mean())
        theo = worst_update_expectation(WorstModelParams(config.n, p)) if per_run_p.size else None
        if theo is not None and e_x < theo:
            flags.append(f"empirical E(X) {e_x:.4f} below model value {theo:.4f}")
    else:
        e_x = theo = None

    return EnsembleReport(
        algorithm=config.algorithm,
        function=config.problem.name,
        n=config.n,
        G=config.G,
        run_count=config.runs,
        empirical_p=p,
        p_samples=int(per_run_p.size),
        empirical_E_X=e_x,
        theoretical_E_X=theo,
        empirical_E_Y_by_generation=e_y,
        empirical_E_Y_mean=float(e_y.mean()),
        runs_without_worst_encounter=missing,
        flags=flags,
    )


def run_ensemble(config: EnsembleConfig) -> EnsembleReport:
    return summarize(config, execute(config))


# --------------------------------------------------------------------------
# worst-index transitions


@dataclass
class TransitionEstimate:
    """Empirical worst-index kernel in label coordinates.

    ``matrix[k-1, j-1]`` estimates ``P(next worst label = j | replaced worst label = k)``
    and ``initial_distribution[k-1]`` the probability that the initial worst
    sits at label ``k``.
    """

    matrix: np.ndarray
    row_counts: np.ndarray
    initial_distribution: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def traversal_side_check(self) -> np.ndarray:
        """Per row: yet-to-be-traversed labels (``j < k``) average at least the
        already-traversed ones (``j > k``). Rows with an empty side pass."""
        ok = np.ones(self.n, dtype=bool)
        for k in range(1, self.n + 1):
            row = self.matrix[k - 1]
            ahead, behind = row[: k - 1], row[k:]
            if ahead.size and behind.size:
                ok[k - 1] = ahead.mean() >= behind.mean()
        return ok


def to_labels(counts_by_position: np.ndarray) -> np.ndarray:
    """Reverse both axes: position ``pos`` becomes label ``n - pos``, stored at ``label - 1``."""
    return counts_by_position[::-1, ::-1] if counts_by_position.ndim == 2 else counts_by_position[::-1]


def transition_estimate(result: BatchResult, n: int) -> TransitionEstimate:
    counts = to_labels(result.transition_counts).astype(float)
    row_counts = counts.sum(axis=1)
    matrix = np.divide(counts, row_counts[:, None], out=np.zeros_like(counts),
                       where=row_counts[:, None] > 0)
    initial = np.bincount(result.initial_worst, minlength=n)[::-1] / result.initial_worst.size
    return TransitionEstimate(matrix, row_counts.astype(np.int64), initial)


def estimate_transition_matrix(config: EnsembleConfig, problem: ProblemSpec | str | None = None
                               ) -> TransitionEstimate:
    if config.algorithm != "sjaya":
        raise ConfigurationError("transition estimates need SJaya runs")
    if problem is not None:
        config = EnsembleConfig(config.algorithm, problem, config.n, config.G, config.runs,
                                config.master_seed, config.jobs)
    return transition_estimate(execute(config), config.n)


# --------------------------------------------------------------------------
# best-update trend


def theorem2_empirical_check(report) -> tuple[bool, dict]:
    """Decreasing trend of the per-generation best-update means.

    Passes when the least-squares slope over generations is negative and the
    first generation's mean exceeds the last one's.
    """
    seq = report.empirical_E_Y_by_generation if isinstance(report, EnsembleReport) else report
    seq = np.asarray(seq, dtype=float)
    if seq.size < 2:
        return False, {"reason": "need at least two generations"}
    slope = float(np.polyfit(np.arange(1, seq.size + 1), seq, 1)[0])
    passed = bool(slope < 0 and seq[0] > seq[-1])
    return passed, {"slope": slope, "first": float(seq[0]), "last": float(seq[-1])}


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("JAYA_LAB_JOBS", "1")))
    except ValueError:
        return 1
