"""Instrumented Jaya / semi-steady-state Jaya with closed-form update-count models."""

from .benchmarks import CATALOG, evaluate_benchmark, make_problem
from .experiments import (
    EnsembleConfig,
    EnsembleReport,
    TransitionEstimate,
    estimate_transition_matrix,
    oracle_pmf_estimate,
    oracle_worst_process,
    run_ensemble,
    theorem2_empirical_check,
)
from .models import (
    DistributionKind,
    WorstModelParams,
    best_update_expectation,
    best_update_limit,
    exceed_prob,
    expected_max,
    harmonic,
    worst_update_expectation,
    worst_update_expectation_given_k,
    worst_update_pmf,
)
from .optimizers import RunConfig, RunTrace, make_candidate, run
from .population import ConfigurationError, Population, ProblemSpec, RngStream, find_extreme, init_population

__version__ = "0.1.0"
