"""Benchmark objectives with their bounds, dimensions and global minima.

Every function accepts a single point ``(d,)`` or a batch ``(..., d)`` and
reduces over the last axis.
"""

import numpy as np

from .population import ProblemSpec


def ackley(x):
    x = np.asarray(x, dtype=float)
    return (
        -20.0 * np.exp(-0.2 * np.sqrt(np.mean(x**2, axis=-1)))
        - np.exp(np.mean(np.cos(2.0 * np.pi * x), axis=-1))
        + 20.0
        + np.e
    )


def rosenbrock(x):
    x = np.asarray(x, dtype=float)
    head, tail = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (tail - head**2) ** 2 + (1.0 - head) ** 2, axis=-1)


def sphere(x):
    x = np.asarray(x, dtype=float)
    return np.sum(x**2, axis=-1)


def chung_reynolds(x):
    return sphere(x) ** 2


def step(x):
    x = np.asarray(x, dtype=float)
    return np.sum(np.floor(np.abs(x)), axis=-1)


def goldstein_price(x):
    x = np.asarray(x, dtype=float)
    x1, x2 = x[..., 0], x[..., 1]
    a = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1**2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2**2
    )
    b = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1**2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2**2
    )
    return a * b


def _spec(name, func, d, bound, optimum, location, description):
    return ProblemSpec(
        name=name,
        d=d,
        lower=np.full(d, -bound),
        upper=np.full(d, bound),
        objective=func,
        known_optimum=optimum,
        optimizer_location=np.asarray(location, dtype=float),
        optimizer_description=description,
    )


def make_problem(name: str, d: int | None = None) -> ProblemSpec:
    """Build the catalog entry ``name``, optionally at a non-default dimension.

    Goldstein-Price is fixed at two dimensions.
    """
    if name not in _CATALOG:
        raise KeyError(f"unknown benchmark {name!r}; choose from {sorted(_CATALOG)}")
    func, default_d, bound, optimum, loc, desc = _CATALOG[name]
    if d is None:
        d = default_d
    if name == "goldstein_price" and d != 2:
        raise ValueError("goldstein_price is two-dimensional")
    return _spec(name, func, d, bound, optimum, loc(d), desc)


_CATALOG = {
    "ackley": (ackley, 30, 10.0, 0.0, lambda d: np.zeros(d), "x* = (0, ..., 0)"),
    "rosenbrock": (rosenbrock, 30, 10.0, 0.0, lambda d: np.ones(d), "x* = (1, ..., 1)"),
    "chung_reynolds": (chung_reynolds, 30, 10.0, 0.0, lambda d: np.zeros(d), "x* = (0, ..., 0)"),
    "step": (step, 30, 100.0, 0.0, lambda d: np.zeros(d), "x*_i in (-1, 1)"),
    "goldstein_price": (goldstein_price, 2, 2.0, 3.0, lambda d: np.array([0.0, -1.0]), "x* = (0, -1)"),
}

NAMES = tuple(_CATALOG)

CATALOG = {name: make_problem(name) for name in NAMES}


def evaluate_benchmark(name: str, x) -> float:
    spec = CATALOG[name] if name in CATALOG else make_problem(name)
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.d,):
        raise ValueError(f"{name} expects a vector of length {spec.d}, got shape {x.shape}")
    return float(spec.objective(x))
