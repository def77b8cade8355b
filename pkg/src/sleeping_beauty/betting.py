"""Expected gain of betting on heads at every awakening.

A bet costs ``cost`` and returns ``payoff`` gross when the coin is heads.
On heads there is one awakening and one winning bet. On tails there are
``tails_days`` awakenings and the agent loses every bet.

Two closed forms are provided. The per-trial expectation weights the
tails loss by the number of bets offered. The per-awakening expectation
uses the share of awakenings that are heads awakenings as if it were the
probability of heads on a single bet. The simulation measures both: the
first is the mean gain per run of the experiment, the second the mean gain
per bet placed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .experiments import ExperimentSpec, InvalidSpec
from .prob_core import as_rational
from .simulation import (
    DEFAULT_CHUNK_SIZE,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    GENERATOR,
    Z95,
    TrialCounts,
    ratio_std_error,
    simulate_counts,
)

ODDS_CAVEAT = (
    "payoff ratio is gross payoff over stake, not the odds of heads: "
    "a tails outcome is bet on once per tails awakening"
)


@dataclass(frozen=True)
class BetSpec:
    cost: Fraction
    payoff: Fraction

    def __post_init__(self):
        try:
            cost = as_rational(self.cost)
            payoff = as_rational(self.payoff)
        except (TypeError, ValueError) as exc:
            raise InvalidSpec(str(exc)) from exc
        if cost <= 0:
            raise InvalidSpec(f"cost must be positive, got {cost}")
        if payoff < 0:
            raise InvalidSpec(f"payoff must be non-negative, got {payoff}")
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "payoff", payoff)

    @property
    def net_win(self) -> Fraction:
        return self.payoff - self.cost

    @property
    def payoff_ratio(self) -> Fraction:
        return self.payoff / self.cost

    def scaled(self, factor) -> "BetSpec":
        factor = as_rational(factor)
        return BetSpec(self.cost * factor, self.payoff * factor)

    def as_dict(self) -> dict:
        return {
            "cost": str(self.cost),
            "payoff": str(self.payoff),
            "payoff_ratio": str(self.payoff_ratio),
            "odds_caveat": ODDS_CAVEAT,
        }


def _check(spec, bet):
    if not isinstance(spec, ExperimentSpec):
        raise InvalidSpec(f"expected ExperimentSpec, got {type(spec).__name__}")
    if not isinstance(bet, BetSpec):
        raise InvalidSpec(f"expected BetSpec, got {type(bet).__name__}")


def halfer_expected_gain(spec: ExperimentSpec, bet: BetSpec) -> Fraction:
    """Expected net gain per run: p * (payoff - cost) - (1 - p) * n * cost."""
    _check(spec, bet)
    p = spec.p_heads
    return p * bet.net_win + (1 - p) * spec.tails_days * -bet.cost


def heads_awakening_weight(spec: ExperimentSpec) -> Fraction:
    """p / (p + (1 - p) * n), the heads share of all awakenings."""
    p = spec.p_heads
    return p / (p + (1 - p) * spec.tails_days)


def thirder_expected_gain(spec: ExperimentSpec, bet: BetSpec) -> Fraction:
    """Expected net gain of a single bet weighted by the heads share of awakenings.

    This is a per-awakening quantity. It equals the per-run expectation
    divided by the expected number of awakenings.
    """
    _check(spec, bet)
    q = heads_awakening_weight(spec)
    return q * bet.net_win + (1 - q) * -bet.cost


def zero_gain_payoff(spec: ExperimentSpec, cost) -> Fraction | None:
    """Payoff at which both expectations vanish, or None when heads is impossible."""
    p = spec.p_heads
    if p == 0:
        return None
    cost = as_rational(cost)
    return cost + (1 - p) * spec.tails_days * cost / p


def trial_gain(heads: bool, spec: ExperimentSpec, bet: BetSpec) -> Fraction:
    """Net gain of one run, settling one bet per awakening."""
    if heads:
        return bet.net_win
    return -spec.tails_days * bet.cost


@dataclass(frozen=True)
class BettingReport:
    spec: ExperimentSpec
    bet: BetSpec
    halfer_expectation: Fraction
    thirder_expectation: Fraction
    total_gain: Fraction
    n_trials: int
    total_awakenings: int
    empirical_per_trial_mean: float
    per_trial_std_error: float
    empirical_per_awakening_mean: float
    per_awakening_std_error: float
    seed: int
    counts: TrialCounts
    chunk_size: int = DEFAULT_CHUNK_SIZE
    generator: str = GENERATOR

    def ci95(self, which: str) -> tuple[float, float]:
        mean = getattr(self, f"empirical_per_{which}_mean")
        se = getattr(self, f"per_{which}_std_error")
        return mean - Z95 * se, mean + Z95 * se


def betting_from_counts(
    spec: ExperimentSpec, bet: BetSpec, counts: TrialCounts, seed: int,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> BettingReport:
    _check(spec, bet)
    g_heads = trial_gain(True, spec, bet)
    g_tails = trial_gain(False, spec, bet)
    total = counts.heads * g_heads + counts.tails * g_tails
    n = spec.tails_days
    per_trial = [(counts.heads, float(g_heads), 1), (counts.tails, float(g_tails), 1)]
    per_awake = [(counts.heads, float(g_heads), 1), (counts.tails, float(g_tails), n)]
    _, se_trial = ratio_std_error(per_trial)
    _, se_awake = ratio_std_error(per_awake)
    return BettingReport(
        spec=spec,
        bet=bet,
        halfer_expectation=halfer_expected_gain(spec, bet),
        thirder_expectation=thirder_expected_gain(spec, bet),
        total_gain=total,
        n_trials=counts.n_trials,
        total_awakenings=counts.total_awakenings,
        empirical_per_trial_mean=float(total / counts.n_trials),
        per_trial_std_error=se_trial,
        empirical_per_awakening_mean=float(total / counts.total_awakenings),
        per_awakening_std_error=se_awake,
        seed=seed,
        counts=counts,
        chunk_size=chunk_size,
    )


def simulate_betting(
    spec: ExperimentSpec,
    bet: BetSpec,
    n_trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
) -> BettingReport:
    """Bet on heads at every awakening of ``n_trials`` simulated runs."""
    _check(spec, bet)
    counts = simulate_counts(spec, n_trials, seed, chunk_size, workers)
    return betting_from_counts(spec, bet, counts, seed, chunk_size)
