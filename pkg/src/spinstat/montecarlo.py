"""Ideal Stern-Gerlach simulation: per-particle Born sampling, trial statistics,
and an exact convolution oracle for the total-spin distribution.

Reproducibility contract: the outcome of particle ``j`` in trial ``t`` under
seed ``s`` is a pure function of ``(s, t, j)``. Each trial owns a disjoint
counter block of a Philox stream, so results are bit-identical regardless of
how trials are scheduled across threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox

from .ensemble import EnsembleSpec
from .qcore import Spinor
from .spin import Axis, SpinOutcome, born_probability, state_mean_and_variance

__all__ = [
    "SeededSampler",
    "TrialRecord",
    "TrialStatistics",
    "TotalSpinDistribution",
    "PredictionReport",
    "measure_particle",
    "measure_ensemble_total",
    "run_trials",
    "exact_total_distribution",
    "preparation_aware_prediction",
]

# Dense convolution guard: refuse totals with more support points than this.
MAX_SUPPORT_POINTS = 1_000_000


@dataclass(frozen=True)
class SeededSampler:
    """Counter-based random source with one disjoint stream per trial.

    Trial ``t`` draws from a Philox generator whose 256-bit counter starts at
    ``t * 2**128``; within a trial, particle ``j`` consumes the ``j``-th
    uniform. Identical (seed, trial, particle) therefore yields the identical
    draw no matter the execution order.
    """

    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        object.__setattr__(self, "seed", self.seed % (1 << 64))

    def stream(self, trial_index: int) -> Generator:
        if trial_index < 0:
            raise ValueError("trial index must be non-negative")
        return Generator(Philox(counter=trial_index << 128, key=self.seed))

    def uniforms(self, trial_index: int, count: int) -> np.ndarray:
        """The first ``count`` uniform draws of the trial's stream."""
        return self.stream(trial_index).random(count)

    def uniform(self, trial_index: int, particle_index: int) -> float:
        """Single positional draw; equals ``uniforms(t, n)[particle_index]`` for any n."""
        if particle_index < 0:
            raise ValueError("particle index must be non-negative")
        return float(self.uniforms(trial_index, particle_index + 1)[particle_index])


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of measuring every particle of the ensemble once."""

    trial_index: int
    total_half_quanta: int
    n_plus: int
    n_minus: int

    def __post_init__(self) -> None:
        if self.n_plus < 0 or self.n_minus < 0:
            raise ValueError("outcome counts must be non-negative")
        if self.total_half_quanta != self.n_plus - self.n_minus:
            raise ValueError("total must equal n_plus - n_minus")


@dataclass(frozen=True)
class TrialStatistics:
    """Empirical summary over independent repeated trials."""

    trials: int
    sample_mean: float
    sample_variance: float
    min_total: int
    max_total: int

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "sample_mean": self.sample_mean,
            "sample_variance": self.sample_variance,
            "min": self.min_total,
            "max": self.max_total,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrialStatistics":
        return cls(
            trials=int(data["trials"]),
            sample_mean=float(data["sample_mean"]),
            sample_variance=float(data["sample_variance"]),
            min_total=int(data["min"]),
            max_total=int(data["max"]),
        )


class TotalSpinDistribution:
    """Exact probability mass function of the ensemble total, half-quantum units."""

    def __init__(self, support: np.ndarray, probabilities: np.ndarray):
        support = np.asarray(support, dtype=np.int64)
        probabilities = np.asarray(probabilities, dtype=float)
        if support.shape != probabilities.shape or support.ndim != 1:
            raise ValueError("support and probabilities must be 1-d arrays of equal length")
        if abs(float(probabilities.sum()) - 1.0) > 1e-10:
            raise ValueError("probabilities must sum to 1")
        self.support = support
        self.probabilities = probabilities

    def mean(self) -> float:
        return float(self.probabilities @ self.support.astype(float))

    def variance(self) -> float:
        m = self.mean()
        second = float(self.probabilities @ (self.support.astype(float) ** 2))
        return second - m * m

    def probability_of(self, total: int) -> float:
        hits = np.nonzero(self.support == total)[0]
        return float(self.probabilities[hits[0]]) if hits.size else 0.0


@dataclass(frozen=True)
class PredictionReport:
    """Predicted (mean, variance) for the ensemble total along one axis."""

    mean: float
    variance: float
    method: str
    units: str = "half_quanta"

    @property
    def sigma(self) -> float:
        return math.sqrt(max(self.variance, 0.0))

    def to_json_dict(self) -> dict:
        return {
            "mean": self.mean,
            "variance": self.variance,
            "sigma": self.sigma,
            "method": self.method,
            "units": self.units,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PredictionReport":
        return cls(
            mean=float(data["mean"]),
            variance=float(data["variance"]),
            method=str(data["method"]),
            units=str(data["units"]),
        )


def measure_particle(state: Spinor, axis: Axis, draw: float) -> SpinOutcome:
    """Projective measurement of one particle given a uniform draw in [0, 1)."""
    if not (0.0 <= draw < 1.0):
        raise ValueError(f"draw must lie in [0, 1), got {draw!r}")
    p_plus = born_probability(state, axis, SpinOutcome.PLUS)
    return SpinOutcome.PLUS if draw < p_plus else SpinOutcome.MINUS


def _component_probabilities(e: EnsembleSpec, axis: Axis) -> list[tuple[int, float]]:
    return [
        (c.count, born_probability(c.state, axis, SpinOutcome.PLUS))
        for c in e.components
        if c.count > 0
    ]


def _count_plus(draws: np.ndarray, component_probs: list[tuple[int, float]]) -> int:
    plus = 0
    offset = 0
    for count, p in component_probs:
        plus += int(np.count_nonzero(draws[offset : offset + count] < p))
        offset += count
    return plus


def measure_ensemble_total(
    e: EnsembleSpec, axis: Axis, sampler: SeededSampler, trial_index: int
) -> TrialRecord:
    """Measure every particle once and record the trial's counts and total."""
    n = e.total_count
    draws = sampler.uniforms(trial_index, n)
    plus = _count_plus(draws, _component_probabilities(e, axis))
    return TrialRecord(trial_index, 2 * plus - n, plus, n - plus)


def run_trials(
    e: EnsembleSpec,
    axis: Axis,
    trials: int,
    seed: int,
    workers: int = 1,
    keep_records: bool = False,
):
    """Repeat the full-ensemble measurement and summarize the totals.

    Deterministic for fixed (ensemble, axis, trials, seed) at any worker
    count. Returns :class:`TrialStatistics`, or ``(stats, records)`` when
    ``keep_records`` is set.
    """
    if trials < 2:
        raise ValueError("at least 2 trials are needed for an unbiased variance")
    if workers < 1:
        raise ValueError("worker count must be positive")

    sampler = SeededSampler(seed)
    component_probs = _component_probabilities(e, axis)
    n = e.total_count
    n_plus = np.empty(trials, dtype=np.int64)

    def fill(start: int, stop: int) -> None:
        for t in range(start, stop):
            draws = sampler.uniforms(t, n)
            n_plus[t] = _count_plus(draws, component_probs)

    if workers == 1:
        fill(0, trials)
    else:
        chunk = -(-trials // workers)
        bounds = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for future in [pool.submit(fill, lo, hi) for lo, hi in bounds]:
                future.result()

    totals = 2 * n_plus - n
    stats = TrialStatistics(
        trials=trials,
        sample_mean=float(int(totals.sum()) / trials),
        sample_variance=float(np.var(totals, ddof=1)),
        min_total=int(totals.min()),
        max_total=int(totals.max()),
    )
    if not keep_records:
        return stats
    records = [
        TrialRecord(t, int(totals[t]), int(n_plus[t]), n - int(n_plus[t]))
        for t in range(trials)
    ]
    return stats, records


def _binomial_count_pmf(count: int, p: float) -> np.ndarray:
    """PMF of the number of + outcomes among ``count`` particles with + probability p.

    Built by binary-power convolution of [1-p, p]; for dyadic p and small
    counts every value is an exact double.
    """
    result = np.array([1.0])
    power = np.array([1.0 - p, p])
    k = count
    while k:
        if k & 1:
            result = np.convolve(result, power)
        k >>= 1
        if k:
            power = np.convolve(power, power)
    return result


def exact_total_distribution(e: EnsembleSpec, axis: Axis) -> TotalSpinDistribution:
    """Exact total-spin PMF by convolving every particle's two-point law.

    Support points with exactly zero probability are dropped, so a
    deterministic preparation reports a single-point distribution.
    """
    n = e.total_count
    if n + 1 > MAX_SUPPORT_POINTS:
        raise ValueError(
            f"total of {n} particles exceeds the dense-convolution guard "
            f"({MAX_SUPPORT_POINTS} support points)"
        )
    pmf = np.array([1.0])
    for count, p in _component_probabilities(e, axis):
        pmf = np.convolve(pmf, _binomial_count_pmf(count, p))
    support = 2 * np.arange(n + 1, dtype=np.int64) - n
    keep = pmf > 0.0
    return TotalSpinDistribution(support[keep], pmf[keep])


def preparation_aware_prediction(e: EnsembleSpec, axis: Axis) -> PredictionReport:
    """Mean and variance of the total from the preparation record.

    Particles are independent, so component means and variances add with
    multiplicity; matches the exact distribution's moments.
    """
    mean = 0.0
    variance = 0.0
    for component in e.components:
        m, v = state_mean_and_variance(component.state, axis)
        mean += component.count * m
        variance += component.count * v
    return PredictionReport(mean, variance, method="preparation_aware")
