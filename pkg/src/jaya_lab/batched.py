"""Lock-step execution of many independent runs.

Runs in an ensemble never interact, so slot ``i`` of every population can be
processed with one set of array operations. Each run still draws from its own
``RngStream(seed, stream_id)`` in the same order as :func:`optimizers.run`,
so a run's trajectory does not depend on which batch it was executed in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .optimizers import ALGORITHMS, CounterRecord
from .population import ConfigurationError, ProblemSpec, RngStream, record_count

COUNTERS = (
    "worst_recomputations",
    "best_updates",
    "replacements",
    "worst_encounters",
    "worst_replacements",
    "scan_comparisons",
    "scan_assignments",
)


@dataclass
class BatchResult:
    """Per-run, per-generation counters for a block of runs.

    ``counters[name]`` has shape ``(runs, G)``. ``transition_counts[a, b]``
    tallies worst-index re-scans that moved the tracked worst from position
    ``a`` to position ``b`` (SJaya only).
    """

    stream_ids: np.ndarray
    counters: dict
    best_fitness: np.ndarray
    initial_worst: np.ndarray
    initial_best: np.ndarray
    transition_counts: np.ndarray
    genes: np.ndarray
    fitness: np.ndarray
    best_index: np.ndarray
    worst_index: np.ndarray

    @classmethod
    def concatenate(cls, parts: list["BatchResult"]) -> "BatchResult":
        if len(parts) == 1:
            return parts[0]
        cat = lambda name: np.concatenate([getattr(p, name) for p in parts])  # noqa: E731
        return cls(
            stream_ids=cat("stream_ids"),
            counters={k: np.concatenate([p.counters[k] for p in parts]) for k in COUNTERS},
            best_fitness=cat("best_fitness"),
            initial_worst=cat("initial_worst"),
            initial_best=cat("initial_best"),
            transition_counts=sum(p.transition_counts for p in parts),
            genes=cat("genes"),
            fitness=cat("fitness"),
            best_index=cat("best_index"),
            worst_index=cat("worst_index"),
        )


def run_batch(algorithm: str, spec: ProblemSpec, n: int, G: int, seed: int,
              stream_ids) -> BatchResult:
    if algorithm not in ALGORITHMS:
        raise ConfigurationError(f"unknown algorithm {algorithm!r}")
    if n < 1 or G < 1:
        raise ConfigurationError("n and G must be >= 1")
    stream_ids = np.asarray(stream_ids, dtype=np.int64)
    R, d = stream_ids.size, spec.d
    rngs = [RngStream(seed, int(s)).generator() for s in stream_ids]
    lo, hi = spec.lower, spec.upper
    rows = np.arange(R)

    genes = np.empty((R, n, d))
    for r, rng in enumerate(rngs):
        genes[r] = lo + (hi - lo) * rng.random((n, d))
    fitness = np.asarray(spec.objective(genes), dtype=float).reshape(R, n)
    best = np.argmin(fitness, axis=1)
    worst = np.argmax(fitness, axis=1)
    initial_worst, initial_best = worst.copy(), best.copy()

    counters = {k: np.zeros((R, G), dtype=np.int64) for k in COUNTERS}
    best_fitness = np.empty((R, G))
    transitions = np.zeros((n, n), dtype=np.int64)
    sjaya = algorithm == "sjaya"

    r1 = np.empty((R, d))
    r2 = np.empty((R, d))
    for g in range(G):
        c = {k: v[:, g] for k, v in counters.items()}
        if not sjaya:
            best = np.argmin(fitness, axis=1)
            worst = np.argmax(fitness, axis=1)
            c["worst_recomputations"][:] = 1
            c["scan_comparisons"][:] = 2 * n
            c["scan_assignments"][:] = record_count(fitness, "best") + record_count(fitness, "worst")
        for r, rng in enumerate(rngs):
            r1[r] = rng.random(d)
            r2[r] = rng.random(d)

        for i in range(n):
            x = genes[:, i]
            ax = np.abs(x)
            cand = np.clip(x + r1 * (genes[rows, best] - ax) - r2 * (genes[rows, worst] - ax), lo, hi)
            cand_fit = np.asarray(spec.objective(cand), dtype=float)
            at_worst = worst == i
            c["worst_encounters"] += at_worst
            accept = cand_fit <= fitness[:, i]
            if not accept.any():
                continue
            genes[accept, i] = cand[accept]
            fitness[accept, i] = cand_fit[accept]
            c["replacements"] += accept
            hit = accept & at_worst
            c["worst_replacements"] += hit
            if not sjaya:
                continue

            improved = accept & (fitness[:, i] < fitness[rows, best])
            best[improved] = i
            c["best_updates"] += improved
            if hit.any():
                sub = fitness[hit]
                new_worst = np.argmax(sub, axis=1)
                c["worst_recomputations"] += hit
                c["scan_comparisons"][hit] += n
                c["scan_assignments"][hit] += record_count(sub, "worst")
                np.add.at(transitions, (np.full(new_worst.size, i), new_worst), 1)
                worst[hit] = new_worst
        best_fitness[:, g] = fitness.min(axis=1)

    return BatchResult(
        stream_ids=stream_ids,
        counters=counters,
        best_fitness=best_fitness,
        initial_worst=initial_worst,
        initial_best=initial_best,
        transition_counts=transitions,
        genes=genes,
        fitness=fitness,
        best_index=best,
        worst_index=worst,
    )


def iter_records(result: BatchResult):
    """Yield ``(run_id, [CounterRecord, ...])`` per run, for :func:`optimizers.write_trace_csv`."""
    G = result.best_fitness.shape[1]
    for r, run_id in enumerate(result.stream_ids):
        records = []
        for g in range(G):
            rec = CounterRecord(g + 1, best_fitness=float(result.best_fitness[r, g]))
            for k in COUNTERS:
                setattr(rec, k, int(result.counters[k][r, g]))
            records.append(rec)
        yield int(run_id), records
