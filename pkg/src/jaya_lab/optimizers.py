"""Instrumented Jaya and semi-steady-state Jaya (SJaya).

This is the per-population reference implementation: it walks the slots of a
single population exactly as the pseudocode does and counts the events the
stochastic models talk about. Ensembles use :mod:`jaya_lab.batched`, which
runs many populations in lock-step and is checked against this module.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, fields
from typing import Iterable, Sequence

import numpy as np

from .benchmarks import make_problem
from .population import (
    ConfigurationError,
    Individual,
    Population,
    ProblemSpec,
    RngStream,
    find_extreme,
    init_population,
)

ALGORITHMS = ("jaya", "sjaya")

TRACE_COLUMNS = (
    "run_id",
    "generation",
    "worst_recomputations",
    "best_updates",
    "replacements",
    "worst_encounters",
    "worst_replacements",
    "best_fitness",
    "scan_comparisons",
    "scan_assignments",
)


@dataclass
class CounterRecord:
    """Event counts for one generation.

    ``worst_recomputations`` counts findWorst calls inside the generation, and
    ``best_updates`` counts mid-generation best-index reassignments. For Jaya
    these are fixed at 1 and 0 respectively. ``worst_encounters`` and
    ``worst_replacements`` give the empirical replacement probability of the
    tracked worst member. ``scan_*`` are the comparisons and assignments spent
    inside full-population scans during the generation.
    """

    generation: int
    worst_recomputations: int = 0
    best_updates: int = 0
    replacements: int = 0
    worst_encounters: int = 0
    worst_replacements: int = 0
    best_fitness: float = float("nan")
    scan_comparisons: int = 0
    scan_assignments: int = 0
    worst_transitions: list = field(default_factory=list, repr=False)

    def as_row(self, run_id: int = 0) -> dict:
        row = {"run_id": run_id}
        for f in fields(self):
            if f.name != "worst_transitions":
                row[f.name] = getattr(self, f.name)
        return row


@dataclass
class RunConfig:
    algorithm: str
    problem: ProblemSpec | str
    n: int
    G: int
    seed: int = 0
    stream_id: int = 0

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if isinstance(self.problem, str):
            self.problem = make_problem(self.problem)
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")
        if self.G < 1:
            raise ConfigurationError(f"G must be >= 1, got {self.G}")


@dataclass
class RunTrace:
    config: RunConfig
    records: list[CounterRecord]
    population: Population
    initial_worst_index: int
    initial_best_index: int

    @property
    def best_history(self) -> list[float]:
        return [r.best_fitness for r in self.records]


def make_candidate(current: Individual, best: Individual, worst: Individual,
                   r1: np.ndarray, r2: np.ndarray, spec: ProblemSpec) -> Individual:
    """Move ``current`` toward ``best`` and away from ``worst``, clamp, evaluate."""
    x = current.genes
    ax = np.abs(x)
    genes = spec.clamp(x + r1 * (best.genes - ax) - r2 * (worst.genes - ax))
    return Individual(genes, float(spec.objective(genes)))


def _draw_parameters(rng: np.random.Generator, d: int):
    r1 = rng.random(d)
    r2 = rng.random(d)
    return r1, r2


def jaya_generation(pop: Population, rng: np.random.Generator, spec: ProblemSpec,
                    generation: int = 1) -> tuple[Population, CounterRecord]:
    pop = pop.copy()
    rec = CounterRecord(generation)
    best = find_extreme(pop.fitness, "best")
    worst = find_extreme(pop.fitness, "worst")
    pop.best_index, pop.worst_index = best.index, worst.index
    rec.scan_comparisons = best.comparisons + worst.comparisons
    rec.scan_assignments = best.assignments + worst.assignments
    rec.worst_recomputations = 1

    r1, r2 = _draw_parameters(rng, pop.d)
    for i in range(pop.n):
        # members at the tracked indices may already have been replaced this generation
        cand = make_candidate(pop[i], pop[pop.best_index], pop[pop.worst_index], r1, r2, spec)
        at_worst = i == pop.worst_index
        rec.worst_encounters += at_worst
        if cand.fitness <= pop.fitness[i]:
            pop.replace(i, cand)
            rec.replacements += 1
            rec.worst_replacements += at_worst
    rec.best_fitness = float(pop.fitness.min())
    return pop, rec


def sjaya_generation(pop: Population, rng: np.random.Generator, spec: ProblemSpec,
                     generation: int = 1) -> tuple[Population, CounterRecord]:
    """One SJaya generation; requires valid ``best_index``/``worst_index`` on entry."""
    pop = pop.copy()
    rec = CounterRecord(generation)

    r1, r2 = _draw_parameters(rng, pop.d)
    for i in range(pop.n):
        cand = make_candidate(pop[i], pop[pop.best_index], pop[pop.worst_index], r1, r2, spec)
        at_worst = i == pop.worst_index
        rec.worst_encounters += at_worst
        if cand.fitness > pop.fitness[i]:
            continue
        pop.replace(i, cand)
        rec.replacements += 1
        if pop.fitness[i] < pop.fitness[pop.best_index]:
            pop.best_index = i
            rec.best_updates += 1
        if at_worst:
            rec.worst_replacements += 1
            scan = find_extreme(pop.fitness, "worst")
            rec.worst_recomputations += 1
            rec.scan_comparisons += scan.comparisons
            rec.scan_assignments += scan.assignments
            rec.worst_transitions.append((i, scan.index))
            pop.worst_index = scan.index
    rec.best_fitness = float(pop.fitness.min())
    return pop, rec


GENERATIONS = {"jaya": jaya_generation, "sjaya": sjaya_generation}


def run(config: RunConfig) -> RunTrace:
    spec = config.problem
    rng = RngStream(config.seed, config.stream_id).generator()
    pop = init_population(spec, config.n, rng)
    initial_worst, initial_best = pop.worst_index, pop.best_index
    step = GENERATIONS[config.algorithm]
    records = []
    for g in range(1, config.G + 1):
        pop, rec = step(pop, rng, spec, g)
        records.append(rec)
    return RunTrace(config, records, pop, initial_worst, initial_best)


def write_trace_csv(traces: Sequence[RunTrace] | Iterable[tuple[int, Sequence[CounterRecord]]], fh) -> None:
    """One CSV row per generation per run, columns as in ``TRACE_COLUMNS``."""
    writer = csv.DictWriter(fh, fieldnames=TRACE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for run_id, item in enumerate(traces):
        if isinstance(item, RunTrace):
            records = item.records
        else:
            run_id, records = item
        for rec in records:
            row = rec.as_row(run_id)
            row["best_fitness"] = repr(float(row["best_fitness"]))
            writer.writerow(row)
