"""Closed-form models for worst-index re-scans and best-index updates.

Worst-index model: a generation starts with the tracked worst at slot label
``k`` (labels count down in traversal order, so ``k - 1`` slots remain after
it). Each time the worst is met it is replaced with probability ``p``; every
replacement costs one re-scan, which lands uniformly on ``1..n``. Landing on
a label ``>= k`` ends the generation's re-scans; landing below restarts the
story from the new label.

Best-index model (maximization): the ``i``-th candidate of generation ``g``
updates the best when it exceeds the expected maximum of ``g*n + i - 1``
i.i.d. fitness samples.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

EULER_GAMMA = 0.5772156649015329
LN2 = 0.6931471805599453

_DIRECT_HARMONIC_LIMIT = 1_000_000
_NORMAL_HALF_WIDTH = 12.0
_QUAD_TOL = 1e-10


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


# --------------------------------------------------------------------------
# harmonic numbers


class HarmonicTable:
    """Lazily grown table of ``H_0 .. H_N``.

    Built by cumulative summation in extended precision, so entries are
    accurate to double rounding well past ``N = 10**6``.
    """

    def __init__(self):
        self._values = np.zeros(1)
        self._lock = threading.Lock()

    def _grow(self, n: int) -> None:
        with self._lock:
            size = self._values.size
            if n < size:
                return
            new_size = max(n + 1, 2 * size, 1024)
            terms = 1.0 / np.arange(size, new_size, dtype=np.longdouble)
            tail = np.cumsum(terms) + np.longdouble(self._prefix())
            self._values = np.concatenate([self._values, tail.astype(float)])
            self._tail_ld = tail[-1]

    def _prefix(self):
        return getattr(self, "_tail_ld", np.longdouble(0.0))

    def __getitem__(self, n):
        n_arr = np.asarray(n)
        top = int(n_arr.max()) if n_arr.size else 0
        if top >= self._values.size:
            self._grow(top)
        return self._values[n]


_HARMONIC = HarmonicTable()


def harmonic(n):
    """``H_n = 1 + 1/2 + ... + 1/n`` with ``H_0 = 0``; accepts ints or int arrays."""
    arr = np.asarray(n)
    if np.any(arr < 0):
        raise ValueError("harmonic number of a negative integer")
    if arr.ndim == 0:
        n = int(arr)
        if n > _DIRECT_HARMONIC_LIMIT:
            return _harmonic_asymptotic(n)
        return float(_HARMONIC[n])
    out = np.empty(arr.shape)
    big = arr > _DIRECT_HARMONIC_LIMIT
    out[~big] = _HARMONIC[arr[~big]]
    if big.any():
        out[big] = [_harmonic_asymptotic(int(v)) for v in arr[big]]
    return out


def _harmonic_asymptotic(n: int) -> float:
    inv = 1.0 / n
    inv2 = inv * inv
    return math.log(n) + EULER_GAMMA + 0.5 * inv - inv2 / 12.0 + inv2 * inv2 / 120.0


# --------------------------------------------------------------------------
# worst-index re-scans


@dataclass(frozen=True)
class WorstModelParams:
    n: int
    p: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


def worst_update_pmf(m: int, k: int, params: WorstModelParams) -> float:
    """Probability of exactly ``m`` re-scans in a generation that starts at label ``k``.

    For ``1 <= m <= k``::

        P = (p/n)^m * (n + p - p*k/m) * prod_{j=1}^{m-1} (k - j) / (m - 1)!

    ``P(0) = 1 - p`` and ``P(m) = 0`` for ``m > k``.
    """
    n, p = params.n, params.p
    if m < 0 or not 1 <= k <= n:
        raise ValueError(f"need m >= 0 and 1 <= k <= n, got m={m}, k={k}, n={n}")
    if m == 0:
        return 1.0 - p
    if m > k:
        return 0.0
    # c = (p/n)^(m-1) * prod_{j<m} (k-j) / (m-1)!, built term by term
    c = 1.0
    for j in range(1, m):
        c *= p * (k - j) / (n * j)
    return c * (p / n) * (n + p - p * k / m)


def worst_update_pmf_table(params: WorstModelParams, tol: float = 1e-18) -> np.ndarray:
    """``P(X = m | k)`` for every start label, as an ``(n, M + 1)`` array.

    Row ``k - 1`` holds the pmf for start label ``k``; columns run over
    ``m = 0..M``. Columns stop once every remaining term is below ``tol``
    relative to the accumulated mass.
    """
    n, p = params.n, params.p
    k = np.arange(1, n + 1, dtype=float)
    cols = [np.full(n, 1.0 - p)]
    c = np.ones(n)
    for m in range(1, n + 1):
        if m > 1:
            c = c * p * (k - (m - 1)) / (n * (m - 1))
        col = np.where(k >= m, c * (p / n) * (n + p - p * k / m), 0.0)
        cols.append(col)
        if col.max() <= tol * p or p == 0.0:
            break
    return np.column_stack(cols)


def worst_update_expectation_given_k(k: int, params: WorstModelParams) -> float:
    """``E(X | start label k)`` = sum over m of ``m * P(X = m | k)``."""
    if not 1 <= k <= params.n:
        raise ValueError(f"k must lie in [1, {params.n}], got {k}")
    row = worst_update_pmf_table(params)[k - 1]
    return float(np.dot(np.arange(row.size), row))


def worst_update_expectation(params: WorstModelParams | int, p: float | None = None) -> float:
    """``E(X | n)``: the start label is uniform over ``1..n``.

    Accepts ``worst_update_expectation(params)`` or ``worst_update_expectation(n, p)``.
    """
    if not isinstance(params, WorstModelParams):
        params = WorstModelParams(int(params), float(p))
    table = worst_update_pmf_table(params)
    per_k = table @ np.arange(table.shape[1])
    return float(per_k.mean())


# --------------------------------------------------------------------------
# fitness distributions and best-index updates


@dataclass(frozen=True)
class DistributionKind:
    """One of the four fitness-distribution families.

    ``logistic`` is always standard (location 0, scale 1).
    """

    tag: str
    a: float = 0.0
    b: float = 1.0
    lam: float = 1.0
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if self.tag not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.tag!r}; choose from {DISTRIBUTIONS}")
        if self.tag == "uniform" and not self.b > self.a:
            raise ValueError("uniform requires b > a")
        if self.tag == "exponential" and not self.lam > 0:
            raise ValueError("exponential requires lam > 0")
        if self.tag == "normal" and not self.sigma > 0:
            raise ValueError("normal requires sigma > 0")

    @classmethod
    def uniform(cls, a=0.0, b=1.0):
        return cls("uniform", a=a, b=b)

    @classmethod
    def exponential(cls, lam=1.0):
        return cls("exponential", lam=lam)

    @classmethod
    def normal(cls, mu=0.0, sigma=1.0):
        return cls("normal", mu=mu, sigma=sigma)

    @classmethod
    def logistic(cls):
        return cls("logistic")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.tag == "uniform":
            return np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0)
        if self.tag == "exponential":
            return np.where(x > 0, -np.expm1(-self.lam * np.maximum(x, 0.0)), 0.0)
        if self.tag == "normal":
            return special.ndtr((x - self.mu) / self.sigma)
        return special.expit(x)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.tag == "uniform":
            return np.where((x >= self.a) & (x <= self.b), 1.0 / (self.b - self.a), 0.0)
        if self.tag == "exponential":
            return np.where(x >= 0, self.lam * np.exp(-self.lam * np.maximum(x, 0.0)), 0.0)
        if self.tag == "normal":
            z = (x - self.mu) / self.sigma
            return np.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2.0 * math.pi))
        s = special.expit(x)
        return s * (1.0 - s)

    def support(self) -> tuple[float, float]:
        if self.tag == "uniform":
            return self.a, self.b
        if self.tag == "exponential":
            return 0.0, math.inf
        if self.tag == "normal":
            return self.mu - _NORMAL_HALF_WIDTH * self.sigma, self.mu + _NORMAL_HALF_WIDTH * self.sigma
        return -math.inf, math.inf


DISTRIBUTIONS = ("exponential", "logistic", "normal", "uniform")


class _NormalMaxCache:
    """Memoized expected maximum of ``m`` standard-normal samples."""

    def __init__(self):
        self._values: dict[int, float] = {}
        self._lock = threading.Lock()

    def get(self, counts) -> np.ndarray:
        counts = np.asarray(counts, dtype=np.int64)
        missing = sorted({int(m) for m in np.unique(counts)} - self._values.keys())
        if missing:
            values = _standard_normal_max(np.asarray(missing))
            with self._lock:
                self._values.update(zip(missing, values.tolist()))
        return np.array([self._values[int(m)] for m in counts.ravel()]).reshape(counts.shape)


def _standard_normal_max(counts: np.ndarray) -> np.ndarray:
    """``int x * m * Phi(x)^(m-1) * phi(x) dx`` over ``[-12, 12]`` for every ``m`` at once."""
    m = counts.astype(float)

    def integrand(x):
        log_f = (m - 1.0) * special.log_ndtr(x) - 0.5 * x * x
        return m * x * np.exp(log_f) / math.sqrt(2.0 * math.pi)

    lim = _NORMAL_HALF_WIDTH
    value, err = integrate.quad_vec(integrand, -lim, lim, epsabs=_QUAD_TOL, epsrel=0.0,
                                    norm="max", limit=5000)
    if not err <= _QUAD_TOL:
        raise QuadratureError(
            f"normal expected-maximum quadrature error {err:.3e} exceeds {_QUAD_TOL:.0e} "
            f"(counts {counts.min()}..{counts.max()})"
        )
    return value


_NORMAL_MAX = _NormalMaxCache()


def expected_max(dist: DistributionKind, n):
    """Expected maximum of ``n`` i.i.d. samples from ``dist`` (``n`` may be an array)."""
    n_arr = np.asarray(n)
    if np.any(n_arr < 1):
        raise ValueError("expected_max needs n >= 1")
    if dist.tag == "uniform":
        out = (dist.a + dist.b * n_arr) / (n_arr + 1.0)
    elif dist.tag == "exponential":
        out = harmonic(n_arr) / dist.lam
    elif dist.tag == "logistic":
        out = harmonic(n_arr - 1)
    else:
        out = dist.mu + dist.sigma * _NORMAL_MAX.get(n_arr)
    return float(out) if n_arr.ndim == 0 else np.asarray(out, dtype=float)


def exceed_prob(dist: DistributionKind, threshold):
    """``P(x > threshold) = 1 - F(threshold)``."""
    t = np.asarray(threshold, dtype=float)
    if dist.tag == "uniform":
        out = np.clip((dist.b - t) / (dist.b - dist.a), 0.0, 1.0)
    elif dist.tag == "exponential":
        out = np.where(t > 0, np.exp(-dist.lam * np.maximum(t, 0.0)), 1.0)
    elif dist.tag == "normal":
        out = special.ndtr(-(t - dist.mu) / dist.sigma)
    else:
        out = special.expit(-t)
    return float(out) if t.ndim == 0 else out


def best_update_terms(dist: DistributionKind, n: int, g: int = 1) -> np.ndarray:
    """Per-iteration update probabilities for generation ``g`` (length ``n``)."""
    if n < 1 or g < 1:
        raise ValueError("n and g must be >= 1")
    counts = g * n + np.arange(n)
    return np.atleast_1d(exceed_prob(dist, expected_max(dist, counts)))


def best_update_expectation(dist: DistributionKind, n: int, g: int = 1) -> float:
    """Expected number of best-index updates in generation ``g`` for population size ``n``."""
    return float(math.fsum(best_update_terms(dist, n, g)))


BEST_UPDATE_BOUNDS = {
    "uniform": LN2,
    "exponential": math.exp(-EULER_GAMMA) * LN2,
    "normal": 0.5,
    "logistic": 0.5,
}

BEST_UPDATE_LIMITS = {
    "uniform": LN2,
    "exponential": math.exp(-EULER_GAMMA) * LN2,
    "logistic": math.exp(-EULER_GAMMA) * LN2,
    "normal": None,
}


def best_update_limit(dist: DistributionKind | str) -> float | None:
    """Large-``n`` limit of the first-generation expectation; ``None`` when unknown."""
    tag = dist.tag if isinstance(dist, DistributionKind) else dist
    return BEST_UPDATE_LIMITS[tag]


def best_update_bound(dist: DistributionKind | str) -> float:
    """Upper bound of the first-generation expectation over all ``n``."""
    tag = dist.tag if isinstance(dist, DistributionKind) else dist
    return BEST_UPDATE_BOUNDS[tag]
