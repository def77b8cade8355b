"""Command-line interface: ``sleeping-beauty analyze|simulate|bet``.

Exit status is 0 on success and 2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .betting import BetSpec, simulate_betting, zero_gain_payoff
from .betting import halfer_expected_gain, thirder_expected_gain
from .experiments import PAPER_SPEC, ExperimentSpec, InvalidSpec, paper_table
from .prob_core import parse_rational
from .report import FORMATS, Check, analysis_report, betting_report, render
from .report import simulation_report
from .simulation import DEFAULT_SEED, DEFAULT_TRIALS, run_simulation

F = Fraction

# Reference values for the fair coin with two tails awakenings.
PAPER_EXACT = {
    "P_heads_ere": F(1, 2),
    "P_heads_given_monday_ere": F(1, 2),
    "P_heads_sbre": F(1, 2),
    "P_H1": F(1, 2),
    "P_T1": F(1, 4),
    "P_T2": F(1, 4),
    "P_monday_star": F(3, 4),
    "P_heads_given_monday_star": F(2, 3),
    "P_tails_given_monday_star": F(1, 3),
    "P_monday_star_given_tails": F(1, 2),
}
# (cost, payoff) -> (per-run, per-bet) expected gain
PAPER_BETS = {
    (F(10), F(30)): (F(0), F(0)),
    (F(10), F(60)): (F(15), F(10)),
}
PAPER_SIM_TOLERANCE = F(5, 1000)
PAPER_SIM_TARGETS = {
    "heads_among_all_awakenings": F(1, 3),
    "heads_among_current_states": F(1, 2),
    "day1_current_fraction": F(3, 4),
    "heads_given_day1_current": F(2, 3),
    "day1_given_tails": F(1, 2),
}
PAPER_BET = (F(10), F(60))
PAPER_BET_TOLERANCE = {"per_trial": F(15, 100), "per_awakening": F(10, 100)}


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p-heads", type=_rational, default=None, metavar="N/D",
                        help="probability of heads (default 1/2)")
    common.add_argument("--tails-days", type=int, default=None, metavar="K",
                        help="awakenings on tails (default 2)")
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--paper", action="store_true",
                        help="use the fair-coin, two-awakening setup and print conformance checks")

    sampled = argparse.ArgumentParser(add_help=False)
    sampled.add_argument("--n-trials", type=int, default=DEFAULT_TRIALS, metavar="N")
    sampled.add_argument("--seed", type=_nonneg_int, default=DEFAULT_SEED, metavar="S")
    sampled.add_argument("--workers", type=int, default=1,
                         help="threads for chunk generation; does not change results")

    parser = argparse.ArgumentParser(
        prog="sleeping-beauty",
        description="Exact and simulated probabilities for the Sleeping Beauty experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="exact probability table")
    sub.add_parser("simulate", parents=[common, sampled], help="Monte Carlo frequencies")
    bet = sub.add_parser("bet", parents=[common, sampled], help="betting expectations")
    bet.add_argument("--cost", type=_rational, default=None, metavar="N/D",
                     help="stake per bet (default 10)")
    bet.add_argument("--payoff", type=_rational, default=None, metavar="N/D",
                     help="gross payoff of a winning bet (default 60)")
    return parser


def _spec(args, parser) -> ExperimentSpec:
    if args.paper:
        if args.p_heads is not None or args.tails_days is not None:
            parser.error("--paper fixes --p-heads and --tails-days; do not pass them")
        return PAPER_SPEC
    p = F(1, 2) if args.p_heads is None else args.p_heads
    n = 2 if args.tails_days is None else args.tails_days
    return ExperimentSpec(p, n)


def cmd_analyze(args, spec: ExperimentSpec):
    report = analysis_report(spec)
    if args.paper:
        values = paper_table(spec)
        report.checks = [Check(k, v, values[k]) for k, v in PAPER_EXACT.items()]
        for (cost, payoff), (half, third) in PAPER_BETS.items():
            bet = BetSpec(cost, payoff)
            tag = f"cost {cost}, payoff {payoff}"
            report.checks.append(Check(f"halfer gain, {tag}", half,
                                       halfer_expected_gain(spec, bet)))
            report.checks.append(Check(f"thirder gain, {tag}", third,
                                       thirder_expected_gain(spec, bet)))
    return report


def cmd_simulate(args, spec: ExperimentSpec):
    sim = run_simulation(spec, args.n_trials, args.seed, workers=args.workers)
    report = simulation_report(sim)
    if args.paper:
        report.checks = [
            Check(name, target, sim.empirical[name].point, PAPER_SIM_TOLERANCE)
            for name, target in PAPER_SIM_TARGETS.items()
        ]
    return report


def cmd_bet(args, spec: ExperimentSpec, parser):
    if args.paper and (args.cost is not None or args.payoff is not None):
        parser.error("--paper fixes --cost and --payoff; do not pass them")
    cost = PAPER_BET[0] if args.cost is None else args.cost
    payoff = PAPER_BET[1] if args.payoff is None else args.payoff
    bet = BetSpec(cost, payoff)
    result = simulate_betting(spec, bet, args.n_trials, args.seed, workers=args.workers)
    report = betting_report(result, zero_gain_payoff(spec, bet.cost))
    if args.paper:
        report.checks = [
            Check("halfer_expectation", F(15), result.halfer_expectation),
            Check("thirder_expectation", F(10), result.thirder_expectation),
            Check("per_trial_mean", F(15), result.empirical_per_trial_mean,
                  PAPER_BET_TOLERANCE["per_trial"]),
            Check("per_awakening_mean", F(10), result.empirical_per_awakening_mean,
                  PAPER_BET_TOLERANCE["per_awakening"]),
        ]
    return report


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _spec(args, parser)
        if args.command == "analyze":
            report = cmd_analyze(args, spec)
        elif args.command == "simulate":
            report = cmd_simulate(args, spec)
        else:
            report = cmd_bet(args, spec, parser)
    except InvalidSpec as exc:
        parser.error(str(exc))
    sys.stdout.write(render(report, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
