from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sleeping_beauty.experiments import ExperimentSpec, build_ere, build_sbre, day_star
from sleeping_beauty.prob_core import (
    Coin,
    Experiment,
    ExperimentTag,
    InvalidMeasure,
    Outcome,
    TagMismatch,
    ZeroCondition,
    as_rational,
    conditional,
    format_rational,
    parse_rational,
    probability,
)

from . import oracles
from .conftest import probabilities, tails_days


def coin_space(p=Fraction(1, 2)):
    return Experiment(
        "coin", [Outcome("H", Coin.HEADS), Outcome("T", Coin.TAILS)], {"H": p, "T": 1 - p}
    )


class TestRationals:
    @pytest.mark.parametrize(
        "text, expected",
        [("1/2", Fraction(1, 2)), ("4/8", Fraction(1, 2)), ("3", Fraction(3)),
         ("0.25", Fraction(1, 4)), (" -2/6 ", Fraction(-1, 3))],
    )
    def test_parse(self, text, expected):
        q = parse_rational(text)
        assert q == expected
        assert q.denominator > 0

    @pytest.mark.parametrize("bad", ["", "1/0", "abc", "1/2/3"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_rational(0.5)
        with pytest.raises(TypeError):
            as_rational(True)

    def test_format(self):
        assert format_rational(Fraction(2, 3)) == "2/3"
        assert format_rational(Fraction(30, 2)) == "15"
        assert format_rational(Fraction(-10, 4)) == "-5/2"

    @given(st.integers(-10**30, 10**30), st.integers(1, 10**30))
    def test_always_reduced(self, num, den):
        q = as_rational(f"{num}/{den}")
        assert q.denominator > 0
        from math import gcd
        assert gcd(abs(q.numerator), q.denominator) == 1
        assert parse_rational(format_rational(q)) == q


class TestExperiment:
    def test_tags_are_unique(self):
        a, b = coin_space(), coin_space()
        assert a.tag != b.tag
        assert a.tag.name == b.tag.name == "coin"
        assert ExperimentTag.new("x") != ExperimentTag.new("x")

    @pytest.mark.parametrize(
        "measure",
        [{"H": Fraction(1, 2), "T": Fraction(1, 3)},
         {"H": Fraction(3, 2), "T": Fraction(-1, 2)},
         {"H": Fraction(1)}],
    )
    def test_invalid_measures(self, measure):
        with pytest.raises(InvalidMeasure):
            Experiment("bad", [Outcome("H", Coin.HEADS), Outcome("T", Coin.TAILS)], measure)

    def test_duplicate_labels(self):
        with pytest.raises(InvalidMeasure):
            Experiment("bad", [Outcome("H", Coin.HEADS)] * 2, {"H": 1})

    def test_float_measure_rejected(self):
        with pytest.raises(TypeError):
            Experiment("bad", [Outcome("H", Coin.HEADS)], {"H": 1.0})

    def test_outcome_attributes(self):
        sbre = build_sbre().experiment
        assert dict(sbre.outcome("T2").attributes) == {"coin": Coin.TAILS, "day": 2}
        ere = build_ere().experiment
        assert dict(ere.outcome("H").attributes) == {"coin": Coin.HEADS}

    def test_ordering_is_fixed(self):
        assert build_sbre(ExperimentSpec(Fraction(1, 2), 3)).experiment.labels == (
            "H1", "T1", "T2", "T3")


class TestProbability:
    def test_monday_certain_in_ere(self):
        ere = build_ere()
        assert probability(ere.experiment, ere["monday_occurs"]) == 1

    def test_empty_event(self):
        for built in (build_ere(), build_sbre()):
            assert probability(built.experiment, built.experiment.empty()) == 0

    def test_monday_star(self):
        sbre = build_sbre()
        assert probability(sbre.experiment, sbre[day_star(1)]) == Fraction(3, 4)

    def test_foreign_event(self):
        a, b = coin_space(), coin_space()
        with pytest.raises(TagMismatch):
            probability(a, b.full())


class TestConditional:
    def test_heads_given_monday_ere(self):
        ere = build_ere()
        assert conditional(ere.experiment, ere["heads"], ere["monday_occurs"]) == Fraction(1, 2)

    def test_heads_given_monday_star(self):
        sbre = build_sbre()
        assert conditional(sbre.experiment, sbre["heads"], sbre[day_star(1)]) == Fraction(2, 3)

    def test_monday_star_given_tails(self):
        sbre = build_sbre()
        assert conditional(sbre.experiment, sbre[day_star(1)], sbre["tails"]) == Fraction(1, 2)

    def test_sbre_heads_given_ere_monday_is_refused(self):
        ere, sbre = build_ere(), build_sbre()
        with pytest.raises(TagMismatch):
            conditional(sbre.experiment, sbre["heads"], ere["monday_occurs"])
        with pytest.raises(TagMismatch):
            conditional(ere.experiment, sbre["heads"], ere["monday_occurs"])

    def test_same_parameters_still_distinct(self):
        s1, s2 = build_sbre(), build_sbre()
        with pytest.raises(TagMismatch):
            s1.conditional(s1["heads"], s2[day_star(1)])

    def test_zero_condition(self):
        ere = build_ere(ExperimentSpec(Fraction(1), 2))
        with pytest.raises(ZeroCondition):
            ere.conditional("heads", "tails")


class TestEventOps:
    def test_union_gives_monday_star(self):
        sbre = build_sbre()
        exp = sbre.experiment
        assert exp.event(["H1"]) | exp.event(["T1"]) == sbre[day_star(1)]

    def test_idempotence(self):
        sbre = build_sbre()
        a = sbre["heads"]
        assert a & a == a
        assert a | a == a

    def test_complement_of_monday_star(self):
        sbre = build_sbre()
        assert ~sbre[day_star(1)] == sbre[day_star(2)]
        assert (~sbre[day_star(1)]).members == {"T2"}

    def test_cross_experiment_ops(self):
        s1, s2 = build_sbre(), build_sbre()
        for op in ("intersection", "union", "difference", "issubset"):
            with pytest.raises(TagMismatch):
                getattr(s1["heads"], op)(s2["heads"])

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            build_ere().experiment.event(["X"])


# Property suites over the generated experiments.

@st.composite
def experiment_and_events(draw, k=2):
    p = draw(probabilities())
    n = draw(tails_days)
    kind = draw(st.sampled_from(["ere", "sbre"]))
    spec = ExperimentSpec(p, n)
    built = build_ere(spec) if kind == "ere" else build_sbre(spec)
    labels = list(built.experiment.labels)
    events = [
        built.experiment.event(draw(st.sets(st.sampled_from(labels))))
        for _ in range(k)
    ]
    return kind, spec, built, events


@given(experiment_and_events())
def test_normalization(case):
    _, _, built, _ = case
    exp = built.experiment
    assert sum(exp.measure.values()) == 1
    assert exp.probability(exp.full()) == 1
    assert all(0 <= v <= 1 for v in exp.measure.values())


@given(experiment_and_events())
def test_chain_rule(case):
    _, _, built, (a, b) = case
    exp = built.experiment
    if exp.probability(b) > 0:
        assert exp.conditional(a, b) * exp.probability(b) == exp.probability(a & b)
    else:
        with pytest.raises(ZeroCondition):
            exp.conditional(a, b)


@given(experiment_and_events())
def test_complement(case):
    _, _, built, (a, _) = case
    exp = built.experiment
    assert exp.probability(a) + exp.probability(~a) == 1


@given(experiment_and_events())
def test_monotonicity(case):
    _, _, built, (a, b) = case
    exp = built.experiment
    assert exp.probability(a & b) <= exp.probability(a) <= exp.probability(a | b)


@given(experiment_and_events())
def test_oracle_equivalence(case):
    kind, spec, built, (a, b) = case
    weights = (oracles.ere_weights if kind == "ere" else oracles.sbre_weights)(
        spec.p_heads, spec.tails_days)
    exp = built.experiment
    assert exp.probability(a) == oracles.prob(weights, a.members)
    if oracles.prob(weights, b.members) > 0:
        assert exp.conditional(a, b) == oracles.cond(weights, a.members, b.members)


@given(experiment_and_events(), experiment_and_events())
def test_tag_mismatch_always_raised(c1, c2):
    _, _, b1, (a1, _) = c1
    _, _, b2, (a2, _) = c2
    with pytest.raises(TagMismatch):
        b1.experiment.conditional(a1, a2)
    with pytest.raises(TagMismatch):
        b2.experiment.conditional(a1, a2)
    with pytest.raises(TagMismatch):
        b1.experiment.conditional(a2, b1.experiment.full())
