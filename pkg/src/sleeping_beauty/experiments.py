"""Builders for the experimenter's coin-toss experiment and the awakened
agent's two-stage current-state experiment.

Both are parameterised by the coin's heads probability ``p_heads`` and the
number of awakenings on tails ``tails_days``. Heads always yields exactly one
awakening, on day 1. The defaults (1/2, 2) give the classic setup: fair coin,
woken once on heads and twice on tails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .prob_core import (
    Coin,
    Event,
    Experiment,
    Outcome,
    ProbabilityError,
    as_rational,
)

WEEKDAYS = ("Monday", "Tuesday")


class InvalidSpec(ProbabilityError, ValueError):
    pass


@dataclass(frozen=True)
class ExperimentSpec:
    p_heads: Fraction = Fraction(1, 2)
    tails_days: int = 2

    def __post_init__(self):
        try:
            p = as_rational(self.p_heads)
        except (TypeError, ValueError) as exc:
            raise InvalidSpec(str(exc)) from exc
        object.__setattr__(self, "p_heads", p)
        if not 0 <= p <= 1:
            raise InvalidSpec(f"p_heads must lie in [0, 1], got {p}")
        if isinstance(self.tails_days, bool) or not isinstance(self.tails_days, int):
            raise InvalidSpec(f"tails_days must be an integer, got {self.tails_days!r}")
        if self.tails_days < 1:
            raise InvalidSpec(f"tails_days must be at least 1, got {self.tails_days}")

    @property
    def heads_days(self) -> int:
        return 1

    @property
    def p_tails(self) -> Fraction:
        return 1 - self.p_heads

    def expected_awakenings(self) -> Fraction:
        return self.p_heads + self.p_tails * self.tails_days

    def as_dict(self) -> dict:
        return {"p_heads": str(self.p_heads), "tails_days": self.tails_days}


PAPER_SPEC = ExperimentSpec(Fraction(1, 2), 2)


def day_label(day: int, tails_days: int) -> str:
    """Display name for a day index: weekday names for the two-day setup."""
    if tails_days <= len(WEEKDAYS):
        return WEEKDAYS[day - 1]
    return f"day{day}"


@dataclass(frozen=True)
class AwakeningSchedule:
    coin: Coin
    days: tuple[int, ...]


def awakening_schedule(coin: Coin, spec: ExperimentSpec) -> AwakeningSchedule:
    if Coin(coin) is Coin.HEADS:
        return AwakeningSchedule(Coin.HEADS, (1,))
    return AwakeningSchedule(Coin.TAILS, tuple(range(1, spec.tails_days + 1)))


@dataclass(frozen=True)
class BuiltExperiment:
    spec: ExperimentSpec
    experiment: Experiment
    named_events: Mapping[str, Event] = field(repr=False)

    def __getitem__(self, name: str) -> Event:
        return self.named_events[name]

    def probability(self, e: Event | str) -> Fraction:
        if isinstance(e, str):
            e = self.named_events[e]
        return self.experiment.probability(e)

    def conditional(self, a: Event | str, given: Event | str) -> Fraction:
        if isinstance(a, str):
            a = self.named_events[a]
        if isinstance(given, str):
            given = self.named_events[given]
        return self.experiment.conditional(a, given)


def _check(spec) -> ExperimentSpec:
    if not isinstance(spec, ExperimentSpec):
        raise InvalidSpec(f"expected ExperimentSpec, got {type(spec).__name__}")
    return spec


def day_star(k: int) -> str:
    """Name of the SBRE event "day ``k`` is the selected current state"."""
    return f"day_star({k})"


def build_ere(spec: ExperimentSpec = PAPER_SPEC) -> BuiltExperiment:
    """The experimenter's single coin toss, sample space {H, T}.

    ``monday_occurs`` is the whole space because day 1 is always an
    awakening; ``tuesday_occurs`` is {T}.
    """
    spec = _check(spec)
    exp = Experiment(
        "ERE",
        [Outcome("H", Coin.HEADS), Outcome("T", Coin.TAILS)],
        {"H": spec.p_heads, "T": spec.p_tails},
    )
    heads = exp.where(lambda o: o.coin is Coin.HEADS)
    events = {
        "heads": heads,
        "tails": ~heads,
        "monday_occurs": exp.full(),
        "tuesday_occurs": exp.where(
            lambda o: 2 in awakening_schedule(o.coin, spec).days
        ),
    }
    return BuiltExperiment(spec, exp, MappingProxyType(events))


def build_sbre(spec: ExperimentSpec = PAPER_SPEC) -> BuiltExperiment:
    """The two-stage current-state experiment, sample space {H1, T1, ..., Tn}.

    Stage one tosses the coin. Stage two picks the current awakening: day 1
    on heads, uniformly among days 1..n on tails.
    """
    spec = _check(spec)
    n = spec.tails_days
    outcomes = [Outcome("H1", Coin.HEADS, 1)]
    outcomes += [Outcome(f"T{k}", Coin.TAILS, k) for k in range(1, n + 1)]
    measure = {"H1": spec.p_heads}
    measure.update({f"T{k}": spec.p_tails / n for k in range(1, n + 1)})
    exp = Experiment("SBRE", outcomes, measure)

    heads = exp.where(lambda o: o.coin is Coin.HEADS)
    events = {"heads": heads, "tails": ~heads}
    for k in range(1, n + 1):
        events[day_star(k)] = exp.where(lambda o, k=k: o.day == k)
    return BuiltExperiment(spec, exp, MappingProxyType(events))


def heads_awakening_fraction(spec: ExperimentSpec) -> Fraction:
    """Long-run share of all awakenings (over repeated ERE runs) that are heads awakenings."""
    ere = build_ere(spec).experiment
    heads = Fraction(0)
    total = Fraction(0)
    for o in ere:
        count = len(awakening_schedule(o.coin, spec).days)
        total += ere.measure[o.label] * count
        if o.coin is Coin.HEADS:
            heads += ere.measure[o.label] * count
    return heads / total


def paper_table(spec: ExperimentSpec = PAPER_SPEC) -> dict[str, Fraction]:
    """Exact values of the headline quantities for ``spec``.

    Conditionals on a zero-probability event (tails when ``p_heads`` is 1)
    are left out.
    """
    spec = _check(spec)
    ere = build_ere(spec)
    sbre = build_sbre(spec)
    day1 = day_star(1)

    table = {
        "P_heads_ere": ere.probability("heads"),
        "P_heads_given_monday_ere": ere.conditional("heads", "monday_occurs"),
        "P_heads_sbre": sbre.probability("heads"),
        "P_H1": sbre.probability(sbre.experiment.event(["H1"])),
    }
    for k in range(1, spec.tails_days + 1):
        table[f"P_T{k}"] = sbre.probability(sbre.experiment.event([f"T{k}"]))
    table["P_monday_star"] = sbre.probability(day1)
    table["P_heads_given_monday_star"] = sbre.conditional("heads", day1)
    table["P_tails_given_monday_star"] = sbre.conditional("tails", day1)
    if sbre.probability("tails") > 0:
        table["P_monday_star_given_tails"] = sbre.conditional(day1, "tails")
    return table


def table_label(name: str, spec: ExperimentSpec) -> str:
    """Human-readable form of a :func:`paper_table` key."""
    d1 = day_label(1, spec.tails_days)
    labels = {
        "P_heads_ere": "P(Heads) [ERE]",
        "P_heads_given_monday_ere": f"P(Heads|{d1}) [ERE]",
        "P_heads_sbre": "P(Heads) [SBRE]",
        "P_H1": "P(H1)",
        "P_monday_star": f"P({d1}*)",
        "P_heads_given_monday_star": f"P(Heads|{d1}*)",
        "P_tails_given_monday_star": f"P(Tails|{d1}*)",
        "P_monday_star_given_tails": f"P({d1}*|Tails)",
    }
    if name in labels:
        return labels[name]
    if name.startswith("P_T"):
        return f"P({name[2:]})"
    return name
