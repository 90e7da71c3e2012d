"""Individuals, populations, seeded random streams and the instrumented extreme scan.

Fitness is minimized everywhere: the *best* member has the lowest objective
value and the *worst* member the highest. Array positions are 0-based and are
traversed in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class ConfigurationError(ValueError):
    """Raised for invalid problem or run configuration."""


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream keyed by ``(seed, stream_id)``.

    Distinct stream ids spawn statistically independent PCG64 generators from
    the same seed, so run ``i`` of an ensemble can use ``RngStream(seed, i)``.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    d: int
    lower: np.ndarray
    upper: np.ndarray
    objective: Callable[[np.ndarray], np.ndarray]
    known_optimum: float
    optimizer_location: np.ndarray | None = None
    optimizer_description: str = ""

    def __post_init__(self):
        lower = np.broadcast_to(np.asarray(self.lower, dtype=float), (self.d,)).copy()
        upper = np.broadcast_to(np.asarray(self.upper, dtype=float), (self.d,)).copy()
        if self.d < 1:
            raise ConfigurationError(f"{self.name}: dimension must be >= 1, got {self.d}")
        if np.any(lower > upper):
            raise ConfigurationError(f"{self.name}: lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def evaluate(self, x) -> np.ndarray | float:
        """Objective on one point ``(d,)`` or a batch ``(..., d)``."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.d:
            raise ValueError(f"{self.name}: expected {self.d} coordinates, got {x.shape[-1]}")
        out = self.objective(x)
        return float(out) if np.ndim(out) == 0 else out

    def clamp(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)


@dataclass
class Individual:
    genes: np.ndarray
    fitness: float


@dataclass
class Population:
    """``n`` members stored row-wise, with tracked best/worst positions."""

    genes: np.ndarray
    fitness: np.ndarray
    best_index: int = 0
    worst_index: int = 0

    def __post_init__(self):
        if self.genes.ndim != 2 or self.fitness.shape != (self.genes.shape[0],):
            raise ValueError("genes must be (n, d) and fitness (n,)")

    @property
    def n(self) -> int:
        return self.genes.shape[0]

    @property
    def d(self) -> int:
        return self.genes.shape[1]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Individual:
        return Individual(self.genes[i].copy(), float(self.fitness[i]))

    def replace(self, i: int, ind: Individual) -> None:
        self.genes[i] = ind.genes
        self.fitness[i] = ind.fitness

    def copy(self) -> "Population":
        return Population(self.genes.copy(), self.fitness.copy(), self.best_index, self.worst_index)


@dataclass(frozen=True)
class ScanResult:
    index: int
    comparisons: int
    assignments: int


def find_extreme(fitness, which: str) -> ScanResult:
    """Linear scan for the lowest (``"best"``) or highest (``"worst"``) fitness.

    The first position holding the extreme value wins ties. ``comparisons`` is
    always ``n``; ``assignments`` counts the initial seed plus every strict
    improvement of the running extreme, so its mean over random orderings is
    the ``n``-th harmonic number.
    """
    if isinstance(fitness, Population):
        fitness = fitness.fitness
    fitness = np.asarray(fitness, dtype=float)
    if fitness.size == 0:
        raise ValueError("find_extreme on an empty population")
    if which == "best":
        better = lambda a, b: a < b  # noqa: E731
    elif which == "worst":
        better = lambda a, b: a > b  # noqa: E731
    else:
        raise ValueError(f"which must be 'best' or 'worst', got {which!r}")

    index, value = 0, fitness[0]
    assignments = 1
    for j in range(1, fitness.size):
        if better(fitness[j], value):
            index, value = j, fitness[j]
            assignments += 1
    return ScanResult(index, fitness.size, assignments)


def record_count(fitness: np.ndarray, which: str) -> np.ndarray:
    """Vectorized ``find_extreme`` assignment counts along the last axis."""
    f = -fitness if which == "best" else fitness
    prev = np.maximum.accumulate(f, axis=-1)[..., :-1]
    return 1 + np.count_nonzero(f[..., 1:] > prev, axis=-1)


def init_population(spec: ProblemSpec, n: int, rng: RngStream | np.random.Generator) -> Population:
    """Uniform random genes within bounds, evaluated, with best/worst set by full scans."""
    if n < 1:
        raise ConfigurationError(f"population size must be >= 1, got {n}")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    genes = spec.lower + (spec.upper - spec.lower) * gen.random((n, spec.d))
    fitness = np.asarray(spec.evaluate(genes), dtype=float)
    pop = Population(genes, fitness)
    pop.best_index = find_extreme(fitness, "best").index
    pop.worst_index = find_extreme(fitness, "worst").index
    return pop
