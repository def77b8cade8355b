"""Seeded Monte Carlo sampling of the two-stage awakening experiment.

Trials are generated in fixed-size chunks. Chunk ``i`` draws from its own
PCG64 stream seeded with ``SeedSequence(seed, spawn_key=(i,))``, so a run is
reproducible for a given (spec, n_trials, seed, chunk_size) no matter how
many workers process the chunks. Inside a chunk all coin draws come first,
then one uniform day draw in 1..n per trial; heads trials ignore their day
draw and wake on day 1 only.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .experiments import (
    ExperimentSpec,
    InvalidSpec,
    awakening_schedule,
    build_sbre,
    day_star,
    heads_awakening_fraction,
)
from .prob_core import Coin

GENERATOR = "numpy.random.PCG64"
DEFAULT_SEED = 8675309
DEFAULT_CHUNK_SIZE = 1 << 16
DEFAULT_TRIALS = 1_000_000
Z95 = 1.96

# numpy's bounded integer sampler takes int64 bounds
_MAX_EXACT_DEN = 1 << 62

ESTIMATORS = (
    "heads_among_all_awakenings",
    "heads_among_current_states",
    "day1_current_fraction",
    "heads_given_day1_current",
    "day1_selected_among_monday_awakenings",
    "day1_given_tails",
)


@dataclass(frozen=True)
class TrialRecord:
    coin: Coin
    awakenings: tuple[int, ...]
    current_state_day: int | None = None


def _validate_run(spec, n_trials, seed, chunk_size):
    if not isinstance(spec, ExperimentSpec):
        raise InvalidSpec(f"expected ExperimentSpec, got {type(spec).__name__}")
    if isinstance(n_trials, bool) or not isinstance(n_trials, int) or n_trials < 1:
        raise InvalidSpec(f"n_trials must be a positive integer, got {n_trials!r}")
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise InvalidSpec(f"seed must be a non-negative integer, got {seed!r}")
    if isinstance(chunk_size, bool) or not isinstance(chunk_size, int) or chunk_size < 1:
        raise InvalidSpec(f"chunk_size must be a positive integer, got {chunk_size!r}")


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,)))
    )


def chunk_sizes(n_trials: int, chunk_size: int = DEFAULT_CHUNK_SIZE) -> list[int]:
    full, rest = divmod(n_trials, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def _draw_heads(rng: np.random.Generator, p: Fraction, size=None):
    if p.denominator <= _MAX_EXACT_DEN:
        return rng.integers(0, p.denominator, size=size) < p.numerator
    return rng.random(size) < float(p)


def sample_trial(rng: np.random.Generator, spec: ExperimentSpec) -> TrialRecord:
    """Draw one trial: the coin first, then the current awakening if tails."""
    heads = bool(_draw_heads(rng, spec.p_heads))
    coin = Coin.HEADS if heads else Coin.TAILS
    days = awakening_schedule(coin, spec).days
    current = 1 if heads else int(rng.integers(1, spec.tails_days + 1))
    return TrialRecord(coin, days, current)


def _chunk_arrays(spec: ExperimentSpec, seed: int, index: int, size: int):
    rng = chunk_rng(seed, index)
    heads = _draw_heads(rng, spec.p_heads, size)
    days = rng.integers(1, spec.tails_days + 1, size=size)
    current = np.where(heads, 1, days)
    return heads, current


@dataclass(frozen=True)
class TrialCounts:
    """Sufficient statistics of a batch of trials."""

    n_trials: int = 0
    heads: int = 0
    tails_day1: int = 0
    tails_days: int = 2

    @property
    def tails(self) -> int:
        return self.n_trials - self.heads

    @property
    def day1_current(self) -> int:
        return self.heads + self.tails_day1

    @property
    def total_awakenings(self) -> int:
        return self.heads + self.tails_days * self.tails

    def __add__(self, other: "TrialCounts") -> "TrialCounts":
        if self.tails_days != other.tails_days:
            raise ValueError("cannot merge counts from different tails_days")
        return TrialCounts(
            self.n_trials + other.n_trials,
            self.heads + other.heads,
            self.tails_day1 + other.tails_day1,
            self.tails_days,
        )

    @classmethod
    def from_trials(cls, trials: Iterable[TrialRecord], tails_days: int) -> "TrialCounts":
        n = heads = tails_day1 = 0
        for t in trials:
            n += 1
            if t.coin is Coin.HEADS:
                heads += 1
            elif t.current_state_day == 1:
                tails_day1 += 1
        return cls(n, heads, tails_day1, tails_days)


def count_chunk(spec: ExperimentSpec, seed: int, index: int, size: int) -> TrialCounts:
    heads, current = _chunk_arrays(spec, seed, index, size)
    n_heads = int(np.count_nonzero(heads))
    tails_day1 = int(np.count_nonzero(~heads & (current == 1)))
    return TrialCounts(size, n_heads, tails_day1, spec.tails_days)


def iter_trials(
    spec: ExperimentSpec,
    n_trials: int,
    seed: int = DEFAULT_SEED,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> Iterator[TrialRecord]:
    """Yield the same trial stream that :func:`simulate_counts` aggregates."""
    _validate_run(spec, n_trials, seed, chunk_size)
    schedules = {c: awakening_schedule(c, spec).days for c in Coin}
    for index, size in enumerate(chunk_sizes(n_trials, chunk_size)):
        heads, current = _chunk_arrays(spec, seed, index, size)
        for h, d in zip(heads.tolist(), current.tolist()):
            coin = Coin.HEADS if h else Coin.TAILS
            yield TrialRecord(coin, schedules[coin], d)


def simulate_counts(
    spec: ExperimentSpec,
    n_trials: int,
    seed: int = DEFAULT_SEED,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
) -> TrialCounts:
    _validate_run(spec, n_trials, seed, chunk_size)
    jobs = list(enumerate(chunk_sizes(n_trials, chunk_size)))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: count_chunk(spec, seed, *j), jobs))
    else:
        parts = [count_chunk(spec, seed, i, size) for i, size in jobs]
    total = TrialCounts(tails_days=spec.tails_days)
    for part in parts:
        total = total + part
    return total


def ratio_std_error(groups: Sequence[tuple[int, float, float]]) -> tuple[float, float]:
    """Point estimate and delta-method standard error of sum(x) / sum(y).

    ``groups`` lists ``(count, x, y)`` for each distinct per-trial value pair.
    For a plain proportion (y = 1 throughout) this reduces to the binomial
    standard error; for a conditional proportion it is the binomial error
    over the conditioning trials.
    """
    n = sum(c for c, _, _ in groups)
    sx = sum(c * x for c, x, _ in groups)
    sy = sum(c * y for c, _, y in groups)
    r = sx / sy
    var = sum(c * (x - r * y) ** 2 for c, x, y in groups) / n
    return r, math.sqrt(var / n) / (sy / n)


@dataclass(frozen=True)
class FrequencyEstimate:
    hits: int
    total: int
    point: float
    std_error: float
    ci95_low: float
    ci95_high: float

    @classmethod
    def from_groups(cls, hits: int, total: int, groups) -> "FrequencyEstimate":
        _, se = ratio_std_error(groups)
        point = hits / total
        low = min(max(point - Z95 * se, 0.0), point)
        high = max(min(point + Z95 * se, 1.0), point)
        return cls(hits, total, point, se, low, high)

    def fraction(self) -> Fraction:
        return Fraction(self.hits, self.total)

    def z_score(self, target) -> float:
        if self.std_error == 0:
            return 0.0 if self.point == float(target) else math.inf
        return abs(self.point - float(target)) / self.std_error


def estimates_from_counts(c: TrialCounts) -> dict[str, FrequencyEstimate]:
    """Frequency estimators, skipping those whose denominator is zero."""
    n = c.tails_days
    tails_other = c.tails - c.tails_day1
    # (count, x, y) groups per trial type: heads, tails with day 1 current, other tails
    specs = {
        "heads_among_all_awakenings": (
            c.heads, c.total_awakenings,
            [(c.heads, 1, 1), (c.tails, 0, n)],
        ),
        "heads_among_current_states": (
            c.heads, c.n_trials,
            [(c.heads, 1, 1), (c.tails, 0, 1)],
        ),
        "day1_current_fraction": (
            c.day1_current, c.n_trials,
            [(c.day1_current, 1, 1), (tails_other, 0, 1)],
        ),
        "heads_given_day1_current": (
            c.heads, c.day1_current,
            [(c.heads, 1, 1), (c.tails_day1, 0, 1), (tails_other, 0, 0)],
        ),
        # every trial has a day-1 awakening, so the denominator is n_trials
        "day1_selected_among_monday_awakenings": (
            c.day1_current, c.n_trials,
            [(c.day1_current, 1, 1), (tails_other, 0, 1)],
        ),
        "day1_given_tails": (
            c.tails_day1, c.tails,
            [(c.heads, 0, 0), (c.tails_day1, 1, 1), (tails_other, 0, 1)],
        ),
    }
    out = {}
    for name in ESTIMATORS:
        hits, total, groups = specs[name]
        if total > 0:
            out[name] = FrequencyEstimate.from_groups(hits, total, groups)
    return out


def exact_targets(spec: ExperimentSpec) -> dict[str, Fraction]:
    """Exact long-run value of each estimator, where it is defined."""
    sbre = build_sbre(spec)
    day1 = day_star(1)
    out = {
        "heads_among_all_awakenings": heads_awakening_fraction(spec),
        "heads_among_current_states": sbre.probability("heads"),
        "day1_current_fraction": sbre.probability(day1),
        "heads_given_day1_current": sbre.conditional("heads", day1),
        "day1_selected_among_monday_awakenings": sbre.probability(day1),
    }
    if sbre.probability("tails") > 0:
        out["day1_given_tails"] = sbre.conditional(day1, "tails")
    return {name: out[name] for name in ESTIMATORS if name in out}


@dataclass(frozen=True)
class SimulationReport:
    spec: ExperimentSpec
    n_trials: int
    seed: int
    counts: TrialCounts
    empirical: dict[str, FrequencyEstimate]
    exact: dict[str, Fraction]
    chunk_size: int = DEFAULT_CHUNK_SIZE
    generator: str = field(default=GENERATOR)


def run_simulation(
    spec: ExperimentSpec,
    n_trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
) -> SimulationReport:
    counts = simulate_counts(spec, n_trials, seed, chunk_size, workers)
    return SimulationReport(
        spec=spec,
        n_trials=n_trials,
        seed=seed,
        counts=counts,
        empirical=estimates_from_counts(counts),
        exact=exact_targets(spec),
        chunk_size=chunk_size,
    )
