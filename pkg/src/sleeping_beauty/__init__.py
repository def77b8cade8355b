"""Exact and Monte Carlo analysis of the Sleeping Beauty coin-toss experiments."""

from .betting import (
    BetSpec,
    BettingReport,
    halfer_expected_gain,
    simulate_betting,
    thirder_expected_gain,
)
from .experiments import (
    PAPER_SPEC,
    AwakeningSchedule,
    BuiltExperiment,
    ExperimentSpec,
    InvalidSpec,
    awakening_schedule,
    build_ere,
    build_sbre,
    day_star,
    paper_table,
)
from .prob_core import (
    Coin,
    Event,
    Experiment,
    ExperimentTag,
    Outcome,
    Rational,
    TagMismatch,
    ZeroCondition,
    conditional,
    probability,
)
from .simulation import (
    FrequencyEstimate,
    SimulationReport,
    TrialRecord,
    run_simulation,
    sample_trial,
)

__version__ = "0.1.0"
