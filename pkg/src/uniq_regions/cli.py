"""Command-line front end and machine-readable document emission.

Subcommands: point feasibility verdicts (``check``), window comparison
reports (``sigma``), grid scans as CSV (``region``), layered SVG figures
(``figure``), the verification suites (``verify``) and the threshold
enclosure (``s0``).  Every JSON document is validated against a schema
shipped with the package before it is written.  Exit codes: 0 for
feasible or all-pass, 1 for infeasible or any-fail, 2 for usage errors.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from importlib import resources

import click
import jsonschema

from . import __version__
from .exact import IntervalSet, Q, format_rational, rat
from .predicates import s0 as threshold_enclosure
from .regions import GridSpec, RegionGrid, default_alpha_max, scan
from .render import figure_grid, figure_spec, render_figure
from .scenarios import (
    ProblemParams,
    ScenarioNotApplicable,
    applicable_scenarios,
    feasibility,
    sigma_report,
    sigma_window,
)
from .verify import SUITES, run_suite

# --------------------------------------------------------------------------
# documents
# --------------------------------------------------------------------------


@dataclass(slots=True)
class VerdictDocument:
    """One feasibility verdict, ready for serialization."""

    params: ProblemParams
    scenario: str
    feasible: bool
    sigma_interval: IntervalSet
    witness: dict[str, str] | None
    violated: tuple[str, ...] | None
    mode: str = "single"
    detail: list[dict] | None = None

    def to_obj(self) -> dict:
        return {
            "params": {
                "n": self.params.n,
                "s": format_rational(self.params.s),
                "alpha": format_rational(self.params.alpha),
            },
            "scenario": self.scenario,
            "feasible": self.feasible,
            "sigma_interval": _window_pairs(self.sigma_interval),
            "witness": self.witness,
            "violated": None if self.violated is None else list(self.violated),
            "version": __version__,
            "meta": {"mode": self.mode, "detail": self.detail},
        }


def _window_pairs(window: IntervalSet) -> list[list[str]]:
    """Flatten a window into ``[value, closedness]`` pairs, two per piece."""
    return [pair for interval in window.as_pairs() for pair in interval]


def _witness_obj(witness: dict[str, Q] | None) -> dict[str, str] | None:
    if witness is None:
        return None
    return {name: format_rational(value) for name, value in sorted(witness.items())}


def _schema(name: str) -> dict:
    path = resources.files(__package__) / "schemas" / f"{name}.schema.json"
    return json.loads(path.read_text(encoding="utf-8"))


def _validated(obj: dict, schema_name: str) -> dict:
    jsonschema.validate(obj, _schema(schema_name))
    return obj


def export(doc, format: str = "json") -> bytes:
    """Serialize a document deterministically.

    Verdict documents export as schema-validated JSON, region grids as
    CSV; any other pairing is an error.
    """
    if isinstance(doc, VerdictDocument) and format == "json":
        obj = _validated(doc.to_obj(), "verdict")
        return (json.dumps(obj, indent=2) + "\n").encode("utf-8")
    if isinstance(doc, RegionGrid) and format == "csv":
        return doc.to_csv().encode("utf-8")
    raise ValueError(
        f"unsupported export combination: {type(doc).__name__} as {format}"
    )


# --------------------------------------------------------------------------
# option parsing helpers
# --------------------------------------------------------------------------


def _parse_rational(text: str, flag: str) -> Q:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise click.UsageError(
            f"{flag}: {text!r} is not a rational number (want p or p/q)"
        ) from None


_PARAM_FLAGS = {"dimension": "--n", "regularity": "--s", "power": "--alpha"}


def _parse_params(n: int, s_text: str, alpha_text: str) -> ProblemParams:
    s = _parse_rational(s_text, "--s")
    alpha = _parse_rational(alpha_text, "--alpha")
    try:
        return ProblemParams(n, s, alpha)
    except ValueError as exc:
        flag = _PARAM_FLAGS.get(str(exc).split()[0], "--n")
        raise click.UsageError(f"{flag}: {exc}") from None


def _emit(payload: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        with open(out, "wb") as handle:
            handle.write(payload)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


@click.group()
@click.version_option(__version__, prog_name="uniq-regions")
def main() -> None:
    """Exact feasibility verdicts and uniqueness-region maps."""


def _scenario_entry(scenario_id: str, params: ProblemParams) -> dict:
    """Per-scenario verdict fields shared by single and auto mode."""
    verdict = feasibility(scenario_id, params)
    if verdict.feasible:
        window = sigma_window(scenario_id, params)
        return {
            "scenario": scenario_id,
            "feasible": True,
            "sigma_interval": _window_pairs(window),
            "witness": _witness_obj(verdict.witness),
            "violated": None,
        }
    return {
        "scenario": scenario_id,
        "feasible": False,
        "sigma_interval": [],
        "witness": None,
        "violated": list(verdict.certificate),
    }


@main.command()
@click.option("--n", type=int, required=True, help="Space dimension.")
@click.option("--s", "s_text", required=True, help="Regularity, a rational.")
@click.option("--alpha", "alpha_text", required=True, help="Power, a rational.")
@click.option(
    "--scenario",
    "scenario_id",
    default="auto",
    show_default=True,
    help="Scenario id, or 'auto' to try every applicable scenario.",
)
def check(n: int, s_text: str, alpha_text: str, scenario_id: str) -> None:
    """Decide feasibility at one parameter point."""
    params = _parse_params(n, s_text, alpha_text)
    if scenario_id == "auto":
        ids = applicable_scenarios(params)
        if not ids:
            raise click.UsageError(
                "--scenario auto: no scenario guard admits "
                f"n={params.n}, s={format_rational(params.s)}, "
                f"alpha={format_rational(params.alpha)}"
            )
        detail = [_scenario_entry(i, params) for i in ids]
        feasible = any(entry["feasible"] for entry in detail)
        window = IntervalSet.from_intervals(
            iv
            for i in ids
            for iv in sigma_window(i, params).intervals
        )
        witness = next(
            (e["witness"] for e in detail if e["feasible"]), None
        )
        violated = None
        if not feasible:
            violated = tuple(sorted({
                label for e in detail for label in e["violated"]
            }))
        doc = VerdictDocument(
            params=params,
            scenario="auto",
            feasible=feasible,
            sigma_interval=window,
            witness=witness,
            violated=violated,
            mode="auto",
            detail=detail,
        )
        _emit(export(doc, "json"), None)
        sys.exit(0 if feasible else 1)
    try:
        entry = _scenario_entry(scenario_id, params)
    except ScenarioNotApplicable as exc:
        raise click.UsageError(f"--scenario: {exc}") from None
    except ValueError as exc:
        raise click.UsageError(f"--scenario: {exc}") from None
    doc = VerdictDocument(
        params=params,
        scenario=scenario_id,
        feasible=entry["feasible"],
        sigma_interval=(
            sigma_window(scenario_id, params)
            if entry["feasible"]
            else IntervalSet.from_intervals([])
        ),
        witness=entry["witness"],
        violated=None if entry["violated"] is None else tuple(entry["violated"]),
    )
    _emit(export(doc, "json"), None)
    sys.exit(0 if entry["feasible"] else 1)


@main.command()
@click.option("--n", type=int, required=True, help="Space dimension.")
@click.option("--s", "s_text", required=True, help="Regularity, a rational.")
@click.option("--alpha", "alpha_text", required=True, help="Power, a rational.")
@click.option("--scenario", "scenario_id", required=True, help="Scenario id.")
def sigma(n: int, s_text: str, alpha_text: str, scenario_id: str) -> None:
    """Compare the engine's shift window with the closed form."""
    params = _parse_params(n, s_text, alpha_text)
    try:
        report = sigma_report(scenario_id, params)
    except ScenarioNotApplicable as exc:
        raise click.UsageError(f"--scenario: {exc}") from None
    except ValueError as exc:
        raise click.UsageError(f"--scenario: {exc}") from None
    obj = _validated(
        {
            "params": {
                "n": params.n,
                "s": format_rational(params.s),
                "alpha": format_rational(params.alpha),
            },
            "scenario": scenario_id,
            "engine": _window_pairs(report.engine),
            "closed_form": _window_pairs(report.closed_form),
            "agree": report.agree,
            "note": report.note,
            "version": __version__,
        },
        "sigma",
    )
    click.echo(json.dumps(obj, indent=2))
    sys.exit(0 if report.agree else 1)


@main.command()
@click.option("--n", type=int, required=True, help="Space dimension.")
@click.option(
    "--targets",
    "targets_text",
    required=True,
    help="Comma-separated scenario or predicate ids.",
)
@click.option("--step", "step_text", default="1/64", show_default=True,
              help="Grid step, a rational.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write CSV here instead of standard output.")
def region(n: int, targets_text: str, step_text: str, out: str | None) -> None:
    """Scan a parameter grid and emit the tri-state table as CSV."""
    step = _parse_rational(step_text, "--step")
    targets = tuple(t.strip() for t in targets_text.split(",") if t.strip())
    if not targets:
        raise click.UsageError("--targets: give at least one id")
    try:
        spec = GridSpec(n, (rat(0), rat(1)), (rat(0), default_alpha_max(n)), step)
    except ValueError as exc:
        flag = "--step" if "step" in str(exc) else "--n"
        raise click.UsageError(f"{flag}: {exc}") from None
    try:
        grid = scan(spec, targets)
    except ValueError as exc:
        raise click.UsageError(f"--targets: {exc}") from None
    _emit(export(grid, "csv"), out)


@main.command()
@click.option("--n", type=int, required=True,
              help="Space dimension, 3 or higher.")
@click.option("--step", "step_text", default="1/64", show_default=True,
              help="Grid step, a rational.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write SVG here instead of standard output.")
def figure(n: int, step_text: str, out: str | None) -> None:
    """Render the layered region figure for one dimension."""
    step = _parse_rational(step_text, "--step")
    try:
        spec = figure_spec(n)
    except ValueError as exc:
        raise click.UsageError(f"--n: {exc}") from None
    try:
        grid = figure_grid(spec, step)
    except ValueError as exc:
        raise click.UsageError(f"--step: {exc}") from None
    _emit(render_figure(spec, grid), out)


@main.command()
@click.option(
    "--suite",
    default="all",
    show_default=True,
    help="One suite name, or 'all'.",
)
def verify(suite: str) -> None:
    """Run verification suites; exit 0 only when every check passes."""
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        known = ", ".join([*SUITES, "all"])
        raise click.UsageError(f"--suite: unknown suite {suite!r} (known: {known})")
    results = []
    for name in names:
        result = run_suite(name)
        results.append(result)
        click.echo(f"[{'PASS' if result.passed else 'FAIL'}] {name}")
        for line in result.details:
            click.echo(f"    {line}")
    obj = _validated(
        {
            "passed": all(r.passed for r in results),
            "suites": [
                {
                    "suite": r.suite,
                    "passed": r.passed,
                    "details": r.details,
                    "data": r.data,
                }
                for r in results
            ],
            "version": __version__,
        },
        "verify",
    )
    click.echo(json.dumps(obj, separators=(",", ":"), sort_keys=True))
    sys.exit(0 if obj["passed"] else 1)


@main.command(name="s0")
@click.option("--n", type=int, required=True,
              help="Space dimension, 5 or higher.")
@click.option("--tol", "tol_text", default="1/1000000", show_default=True,
              help="Enclosure width bound, a positive rational.")
def s0_command(n: int, tol_text: str) -> None:
    """Enclose the critical regularity threshold for one dimension."""
    tol = _parse_rational(tol_text, "--tol")
    if tol <= 0:
        raise click.UsageError("--tol: must be positive")
    try:
        lower, upper = threshold_enclosure(n, tol)
    except ValueError as exc:
        raise click.UsageError(f"--n: {exc}") from None
    obj = _validated(
        {
            "n": n,
            "tol": format_rational(tol),
            "lower": format_rational(lower),
            "upper": format_rational(upper),
            "width": format_rational(upper - lower),
            "version": __version__,
        },
        "s0",
    )
    click.echo(json.dumps(obj, indent=2))


if __name__ == "__main__":
    main()
