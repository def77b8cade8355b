"""Rendering of analysis, simulation and betting results as table, JSON or CSV.

Exact values are written as reduced fraction strings. Empirical values are
floats rounded to ``DECIMALS`` places, which is recorded in ``meta``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from .betting import BettingReport
from .experiments import ExperimentSpec, paper_table, table_label
from .prob_core import format_rational
from .simulation import FrequencyEstimate, SimulationReport

DECIMALS = 10
FORMATS = ("table", "json", "csv")
CSV_HEADER = ("name", "kind", "exact", "point", "std_error", "ci_low", "ci_high")


@dataclass(frozen=True)
class Estimate:
    point: float
    std_error: float
    ci95: tuple[float, float]
    total: int
    hits: int | None = None

    @classmethod
    def from_frequency(cls, f: FrequencyEstimate) -> "Estimate":
        return cls(f.point, f.std_error, (f.ci95_low, f.ci95_high), f.total, f.hits)


@dataclass(frozen=True)
class Row:
    name: str
    label: str
    exact: Fraction | None = None
    estimate: Estimate | None = None


@dataclass(frozen=True)
class Check:
    name: str
    expected: Fraction
    actual: Fraction | float
    tolerance: Fraction = Fraction(0)

    @property
    def ok(self) -> bool:
        return abs(Fraction(self.actual) - self.expected) <= self.tolerance


@dataclass
class Report:
    command: str
    spec: ExperimentSpec
    rows: list[Row]
    seed: int | None = None
    n_trials: int | None = None
    generator: str | None = None
    extra_meta: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def meta(self) -> dict[str, Any]:
        meta = {
            "command": self.command,
            "spec": self.spec.as_dict(),
            "seed": self.seed,
            "n_trials": self.n_trials,
            "generator": self.generator,
            "decimal_places": DECIMALS,
        }
        meta.update(self.extra_meta)
        return meta


def _dec(x: float) -> float:
    return round(float(x), DECIMALS)


def _fmt_actual(x) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    return repr(_dec(x))


def analysis_report(spec: ExperimentSpec) -> Report:
    rows = [
        Row(name, table_label(name, spec), value)
        for name, value in paper_table(spec).items()
    ]
    return Report("analyze", spec, rows)


def simulation_report(sim: SimulationReport) -> Report:
    rows = []
    for name, est in sim.empirical.items():
        rows.append(Row(name, name, sim.exact.get(name), Estimate.from_frequency(est)))
    for name, value in sim.exact.items():
        if name not in sim.empirical:
            rows.append(Row(name, name, value))
    c = sim.counts
    return Report(
        "simulate", sim.spec, rows,
        seed=sim.seed, n_trials=sim.n_trials, generator=sim.generator,
        extra_meta={
            "chunk_size": sim.chunk_size,
            "counts": {
                "trials": c.n_trials,
                "heads_trials": c.heads,
                "tails_trials": c.tails,
                "total_awakenings": c.total_awakenings,
                "day1_current": c.day1_current,
                "tails_day1_current": c.tails_day1,
            },
        },
    )


def betting_report(b: BettingReport, zero_gain: Fraction | None = None) -> Report:
    rows = [
        Row("halfer_expectation", "halfer expected gain per run", b.halfer_expectation),
        Row("thirder_expectation", "thirder expected gain per bet", b.thirder_expectation),
    ]
    if zero_gain is not None:
        rows.append(Row("zero_gain_payoff", "payoff with zero expected gain", zero_gain))
    lo, hi = b.ci95("trial")
    rows.append(Row(
        "per_trial_mean", "mean gain per run", b.halfer_expectation,
        Estimate(b.empirical_per_trial_mean, b.per_trial_std_error, (lo, hi), b.n_trials),
    ))
    lo, hi = b.ci95("awakening")
    rows.append(Row(
        "per_awakening_mean", "mean gain per bet", b.thirder_expectation,
        Estimate(b.empirical_per_awakening_mean, b.per_awakening_std_error, (lo, hi),
                 b.total_awakenings),
    ))
    return Report(
        "bet", b.spec, rows,
        seed=b.seed, n_trials=b.n_trials, generator=b.generator,
        extra_meta={
            "chunk_size": b.chunk_size,
            "bet": b.bet.as_dict(),
            "total_gain": format_rational(b.total_gain),
            "total_awakenings": b.total_awakenings,
        },
    )


def to_json_obj(report: Report) -> dict[str, Any]:
    exact = {}
    empirical = {}
    for row in report.rows:
        est = row.estimate
        if est is None:
            exact[row.name] = format_rational(row.exact)
            continue
        if row.exact is not None and report.command == "simulate":
            exact[row.name] = format_rational(row.exact)
        empirical[row.name] = {
            "hits": est.hits,
            "total": est.total,
            "point": _dec(est.point),
            "std_error": _dec(est.std_error),
            "ci95": [_dec(est.ci95[0]), _dec(est.ci95[1])],
        }
    obj: dict[str, Any] = {"meta": report.meta(), "exact": exact, "empirical": empirical}
    if report.checks:
        obj["checks"] = {
            c.name: {
                "expected": format_rational(c.expected),
                "actual": _fmt_actual(c.actual),
                "tolerance": format_rational(c.tolerance),
                "ok": c.ok,
            }
            for c in report.checks
        }
    return obj


def render_json(report: Report) -> str:
    return json.dumps(to_json_obj(report), indent=2) + "\n"


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        exact = "" if row.exact is None else format_rational(row.exact)
        est = row.estimate
        if est is None:
            writer.writerow([row.name, "exact", exact, "", "", "", ""])
        else:
            writer.writerow([
                row.name, "empirical", exact,
                repr(_dec(est.point)), repr(_dec(est.std_error)),
                repr(_dec(est.ci95[0])), repr(_dec(est.ci95[1])),
            ])
    return buf.getvalue()


def fraction_hint(q: Fraction) -> str:
    return f"{format_rational(q)} ({float(q):.6f})"


def render_table(report: Report) -> str:
    spec = report.spec
    lines = [f"{report.command}: p_heads={spec.p_heads}, tails_days={spec.tails_days}"]
    if report.n_trials is not None:
        lines.append(
            f"trials={report.n_trials}  seed={report.seed}  generator={report.generator}"
        )
    bet = report.extra_meta.get("bet")
    if bet:
        lines.append(
            f"cost={bet['cost']}  payoff={bet['payoff']}  payoff ratio={bet['payoff_ratio']}"
        )
        lines.append(f"note: {bet['odds_caveat']}")
    lines.append("")

    has_est = any(r.estimate is not None for r in report.rows)
    header = ["quantity", "exact"] + (["estimate", "std err", "95% CI"] if has_est else [])
    body = []
    for r in report.rows:
        cells = [r.label, fraction_hint(r.exact) if r.exact is not None else "-"]
        if has_est:
            e = r.estimate
            if e is None:
                cells += ["", "", ""]
            else:
                cells += [
                    f"{e.point:.6f}", f"{e.std_error:.6f}",
                    f"[{e.ci95[0]:.6f}, {e.ci95[1]:.6f}]",
                ]
        body.append(cells)
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    for cells in [header] + body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())

    if report.checks:
        lines.append("")
        lines.append("conformance checks:")
        for c in report.checks:
            status = "PASS" if c.ok else "FAIL"
            tol = "" if c.tolerance == 0 else f" (tol {format_rational(c.tolerance)})"
            lines.append(
                f"  [{status}] {c.name}: expected {format_rational(c.expected)}, "
                f"got {_fmt_actual(c.actual)}{tol}"
            )
    return "\n".join(lines) + "\n"


def load_schema() -> dict:
    """JSON Schema that every ``--format json`` report validates against."""
    text = resources.files(__package__).joinpath("report.schema.json").read_text()
    return json.loads(text)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    return render_table(report)
