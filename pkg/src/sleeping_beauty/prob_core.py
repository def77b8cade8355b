"""Exact finite probability spaces.

Every experiment carries a unique tag. Events remember the tag of the
experiment that produced them, and any attempt to mix events from two
different experiments raises :class:`TagMismatch` instead of returning a
number. Probabilities are :class:`fractions.Fraction` values throughout.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping

Rational = Fraction

_tag_ids = itertools.count(1)


class ProbabilityError(Exception):
    """Base class for errors raised by this package's probability layer."""


class TagMismatch(ProbabilityError, ValueError):
    """Events or experiments from different random experiments were combined."""


class ZeroCondition(ProbabilityError, ZeroDivisionError):
    """Conditioning on an event of probability zero."""


class InvalidMeasure(ProbabilityError, ValueError):
    pass


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction without going through floating point.

    Accepts ints, Fractions, other exact rationals and strings such as
    ``"2/3"`` or ``"0.25"``. Floats are rejected.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (_RationalABC, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"N/D"``, ``"N"`` or a finite decimal string."""
    return as_rational(text.strip())


def format_rational(q: Fraction) -> str:
    """Reduced ``num/den`` string; integers are written without a denominator."""
    return str(as_rational(q))


class Coin(str, enum.Enum):
    HEADS = "Heads"
    TAILS = "Tails"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ExperimentTag:
    """Identity of one random experiment.

    Two calls to :meth:`new` never return equal tags, even with the same name.
    """

    id: int
    name: str

    @classmethod
    def new(cls, name: str) -> "ExperimentTag":
        return cls(next(_tag_ids), name)

    def __str__(self) -> str:
        return f"{self.name}#{self.id}"


@dataclass(frozen=True)
class Outcome:
    label: str
    coin: Coin
    day: int | None = None

    @property
    def attributes(self) -> Mapping[str, object]:
        attrs: dict[str, object] = {"coin": self.coin}
        if self.day is not None:
            attrs["day"] = self.day
        return MappingProxyType(attrs)


@dataclass(frozen=True)
class Event:
    """A set of outcome labels belonging to one tagged experiment.

    ``universe`` holds the owning experiment's labels so complements can be
    taken without a reference back to the experiment.
    """

    tag: ExperimentTag
    members: frozenset[str]
    universe: frozenset[str] = field(repr=False)

    def __post_init__(self):
        extra = self.members - self.universe
        if extra:
            raise ValueError(f"labels not in experiment {self.tag}: {sorted(extra)}")

    def _check(self, other: "Event") -> None:
        if not isinstance(other, Event):
            raise TypeError(f"expected Event, got {type(other).__name__}")
        if other.tag != self.tag:
            raise TagMismatch(
                f"cannot combine an event of {self.tag} with an event of {other.tag}"
            )

    def intersection(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.tag, self.members & other.members, self.universe)

    def union(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.tag, self.members | other.members, self.universe)

    def difference(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.tag, self.members - other.members, self.universe)

    def complement(self) -> "Event":
        return Event(self.tag, self.universe - self.members, self.universe)

    def issubset(self, other: "Event") -> bool:
        self._check(other)
        return self.members <= other.members

    __and__ = intersection
    __or__ = union
    __sub__ = difference
    __invert__ = complement
    __le__ = issubset

    def __contains__(self, label: str) -> bool:
        return label in self.members

    def __len__(self) -> int:
        return len(self.members)


class Experiment:
    """A finite sample space with an exact probability measure.

    ``measure`` maps outcome labels to probabilities. The probabilities must
    be exact rationals in [0, 1] summing to exactly one.
    """

    def __init__(
        self,
        name: str,
        outcomes: Iterable[Outcome],
        measure: Mapping[str, object],
    ):
        outcomes = tuple(outcomes)
        labels = [o.label for o in outcomes]
        if len(set(labels)) != len(labels):
            raise InvalidMeasure(f"duplicate outcome labels in {labels}")
        if set(measure) != set(labels):
            raise InvalidMeasure("measure keys must equal the outcome labels")
        probs = {label: as_rational(measure[label]) for label in labels}
        for label, p in probs.items():
            if not 0 <= p <= 1:
                raise InvalidMeasure(f"P({label}) = {p} is outside [0, 1]")
        total = sum(probs.values(), Fraction(0))
        if total != 1:
            raise InvalidMeasure(f"probabilities sum to {total}, not 1")

        self.tag = ExperimentTag.new(name)
        self.outcomes = outcomes
        self.measure: Mapping[str, Fraction] = MappingProxyType(probs)
        self._by_label = MappingProxyType({o.label: o for o in outcomes})
        self._universe = frozenset(labels)

    def __repr__(self) -> str:
        body = ", ".join(f"{o.label}: {self.measure[o.label]}" for o in self.outcomes)
        return f"Experiment({self.tag}, {{{body}}})"

    def __iter__(self) -> Iterator[Outcome]:
        return iter(self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)

    @property
    def name(self) -> str:
        return self.tag.name

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(o.label for o in self.outcomes)

    def outcome(self, label: str) -> Outcome:
        return self._by_label[label]

    def event(self, labels: Iterable[str]) -> Event:
        return Event(self.tag, frozenset(labels), self._universe)

    def where(self, predicate: Callable[[Outcome], bool]) -> Event:
        return self.event(o.label for o in self.outcomes if predicate(o))

    def full(self) -> Event:
        return self.event(self._universe)

    def empty(self) -> Event:
        return self.event(())

    def _own(self, e: Event) -> None:
        if not isinstance(e, Event):
            raise TypeError(f"expected Event, got {type(e).__name__}")
        if e.tag != self.tag:
            raise TagMismatch(f"event of {e.tag} used with experiment {self.tag}")

    def probability(self, e: Event) -> Fraction:
        self._own(e)
        # iterate in construction order so the summation is deterministic
        return sum(
            (self.measure[o.label] for o in self.outcomes if o.label in e.members),
            Fraction(0),
        )

    def conditional(self, a: Event, given: Event) -> Fraction:
        """P(a | given), refusing events that belong to another experiment."""
        self._own(a)
        self._own(given)
        p_given = self.probability(given)
        if p_given == 0:
            raise ZeroCondition(f"P({sorted(given.members)}) = 0 in {self.tag}")
        return self.probability(a & given) / p_given


def probability(exp: Experiment, e: Event) -> Fraction:
    return exp.probability(e)


def conditional(exp: Experiment, a: Event, given: Event) -> Fraction:
    return exp.conditional(a, given)
