"""Abstract operation-count costs of Jaya and SJaya runs.

Costs are unitless. ``C_c`` and ``C_a`` price one comparison and one
assignment, ``C_p`` and ``C_op`` are per-dimension costs of setting the random
parameters and of building a candidate, and ``phi(d)`` prices one fitness
evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from scipy import integrate

from .models import EULER_GAMMA, DistributionKind, harmonic

WORST_RESCANS_PER_GENERATION = 1.7


@dataclass(frozen=True)
class CostConstants:
    C_c: float = 1.0
    C_a: float = 1.0
    C_p: float = 1.0
    C_op: float = 1.0
    phi: Callable[[int], float] = field(default=lambda d: float(d))

    def __post_init__(self):
        for name in ("C_c", "C_a", "C_p", "C_op"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass
class CostBreakdown:
    terms: dict[str, float]

    @property
    def total(self) -> float:
        return math.fsum(self.terms.values())

    def rows(self):
        yield from self.terms.items()
        yield "total", self.total


def acceptance_integral(dist: DistributionKind) -> float:
    """``int F(x) f(x) dx`` by adaptive quadrature over the distribution's support."""
    # normal support is truncated at +-12 sigma; the mass outside is negligible
    lo, hi = dist.support()
    val, err = integrate.quad(lambda x: float(dist.cdf(x) * dist.pdf(x)), lo, hi,
                              epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def expected_comparisons(dist: DistributionKind, n: int) -> float:
    """Expected number of accepted candidates per generation, ``n * int F f``.

    Exactly ``n / 2`` for the uniform, exponential and logistic families; the
    normal case goes through quadrature.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if dist.tag == "normal":
        return n * acceptance_integral(dist)
    return n / 2.0


def naive_scan_costs(n: int) -> tuple[int, float]:
    """(comparisons, expected assignments) of a linear extreme scan over ``n`` items."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n, harmonic(n)


def _scan_cost(n: int, costs: CostConstants) -> float:
    comparisons, assignments = naive_scan_costs(n)
    return comparisons * costs.C_c + assignments * costs.C_a


def sjaya_cost_breakdown(n: int, d: int, G: int, dist: DistributionKind, costs: CostConstants,
                         expected_assign: float,
                         rescans: float = WORST_RESCANS_PER_GENERATION) -> CostBreakdown:
    e_comp = expected_comparisons(dist, n)
    scan = _scan_cost(n, costs)
    return CostBreakdown({
        "initialization": n * costs.phi(d),
        "initial best/worst scans": 2 * scan,
        "parameter setup": G * costs.C_p * d,
        "candidate creation": G * n * (costs.C_op * d + costs.phi(d)),
        "acceptance tests": G * n * costs.C_c,
        "replacements": G * e_comp * costs.C_a,
        "best-improvement tests": G * e_comp * costs.C_c,
        "best-index assignments": G * expected_assign * costs.C_a,
        "worst-index tests": G * e_comp * costs.C_c,
        "worst re-scans": G * rescans * scan,
    })


def sjaya_run_cost(n: int, d: int, G: int, dist: DistributionKind, costs: CostConstants,
                   expected_assign: float, rescans: float = WORST_RESCANS_PER_GENERATION) -> float:
    """Total SJaya run cost. ``expected_assign`` is the per-generation best-update count."""
    return sjaya_cost_breakdown(n, d, G, dist, costs, expected_assign, rescans).total


def jaya_cost_breakdown(n: int, d: int, G: int, dist: DistributionKind,
                        costs: CostConstants) -> CostBreakdown:
    e_comp = expected_comparisons(dist, n)
    return CostBreakdown({
        "initialization": n * costs.phi(d),
        "best/worst scans": G * 2 * _scan_cost(n, costs),
        "parameter setup": G * costs.C_p * d,
        "candidate creation": G * n * (costs.C_op * d + costs.phi(d)),
        "acceptance tests": G * n * costs.C_c,
        "replacements": G * e_comp * costs.C_a,
    })


def jaya_run_cost(n: int, d: int, G: int, dist: DistributionKind, costs: CostConstants) -> float:
    return jaya_cost_breakdown(n, d, G, dist, costs).total


def additional_cost_bound(n: int, costs: CostConstants) -> tuple[float, float]:
    """Per-generation extra cost of SJaya over Jaya: (exact bound, large-n approximation).

    Takes the best-update count at its upper limit (every accepted candidate)
    and ``n / 2`` accepted candidates per generation.
    """
    exact = (n / 2.0) * (2 * costs.C_a + costs.C_c) - 0.3 * (n * costs.C_c + harmonic(n) * costs.C_a)
    approx = (n - 0.3 * math.log(n) - 0.3 * EULER_GAMMA) * costs.C_a + 0.2 * n * costs.C_c
    return exact, approx
