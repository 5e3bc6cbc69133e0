"""Command-line interface.

Subcommands emit one schema-versioned report (JSON by default, TSV with
--format tsv) to stdout or --out.  Commands that consume randomness
(simulate, orcheck) require an explicit seed and echo it in the report, so
identical invocations produce byte-identical output.  Exit codes: 0 on
success, 1 for domain errors (the report carries the typed error name),
2 for usage errors.
"""

from __future__ import annotations

import argparse
import sys

from .errors import SwitchRiskError
from .figures import render_figure
from .ingest import ingest
from .measures import (
    RISK_TOL,
    EffectMeasure,
    EffectMeasureKind,
    RiskPair,
    compute_measure,
    raw_effect,
)
from .orcheck import collapsibility_audit, counterexample_search, or_residual
from .report import base_report, error_report, render_report, write_report
from .scc import (
    MechanismSpec,
    Representation,
    analytic_risks,
    bounds_nonmonotone,
    simulate,
    stability_table,
)
from .scenario import ScenarioConfig, load_scenario
from .transport import PredictionRequest, predict_risk

_KIND_CHOICES = tuple(kind.value for kind in EffectMeasureKind)


def _parse_backgrounds(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--backgrounds must be comma-separated numbers, got {text!r}")
    if not values:
        raise ValueError("--backgrounds must name at least one prevalence")
    return values


def _load_config(args) -> ScenarioConfig | None:
    path = getattr(args, "config", None)
    config = load_scenario(path) if path else None
    # stash for output resolution after the handler returns
    args.scenario_config = config
    return config


def _resolve_mechanism(args, config: ScenarioConfig | None) -> MechanismSpec:
    base = config.mechanism if config else None
    representation = getattr(args, "representation", None)
    if representation is None and base is not None:
        representation = base.representation.value
    background = getattr(args, "background_prev", None)
    if background is None and base is not None:
        background = base.background_prev
    increase = getattr(args, "switch_increase", None)
    if increase is None:
        increase = base.switch_prev_increase if base else 0.0
    decrease = getattr(args, "switch_decrease", None)
    if decrease is None:
        decrease = base.switch_prev_decrease if base else 0.0
    if representation is None:
        raise ValueError(
            "a mechanism is required: pass --representation or a --config "
            "file with a mechanism block"
        )
    if background is None:
        raise ValueError("a mechanism needs --background-prev (or the config field)")
    return MechanismSpec(
        representation=Representation(representation),
        background_prev=background,
        switch_prev_increase=increase,
        switch_prev_decrease=decrease,
        dependence=base.dependence if base else None,
    )


def _mechanism_params(mech: MechanismSpec) -> dict:
    dependence = None
    if mech.dependence is not None:
        dependence = {
            "given_background": mech.dependence.given_background,
            "given_no_background": mech.dependence.given_no_background,
        }
    return {
        "representation": mech.representation.value,
        "background_prev": mech.background_prev,
        "switch_prev_increase": mech.switch_prev_increase,
        "switch_prev_decrease": mech.switch_prev_decrease,
        "dependence": dependence,
    }


def _measure_cells(pair: RiskPair, kinds, tol: float) -> list[dict]:
    cells = []
    for kind in kinds:
        try:
            value = compute_measure(kind, pair, tol=tol).value
            cells.append({"kind": kind.value, "value": value, "defined": True,
                          "detail": None})
        except SwitchRiskError as exc:
            cells.append({"kind": kind.value, "value": None, "defined": False,
                          "detail": str(exc)})
    return cells


def cmd_measure(args) -> dict:
    kinds = (
        list(EffectMeasureKind)
        if args.kind == "all"
        else [EffectMeasureKind(args.kind)]
    )
    report = base_report(
        "measure",
        {
            "input": args.input,
            "p0": args.p0,
            "p1": args.p1,
            "kind": args.kind,
            "tol": args.tol,
        },
    )
    rows = []
    if args.input is not None:
        if args.p0 is not None or args.p1 is not None:
            raise ValueError("pass either --input or --p0/--p1, not both")
        for record in ingest(args.input):
            for cell in _measure_cells(record.pair, kinds, args.tol):
                rows.append(
                    {
                        "setting": record.setting,
                        "stratum": record.stratum,
                        "weight": record.weight,
                        "p0": record.pair.p0,
                        "p1": record.pair.p1,
                        **cell,
                    }
                )
    else:
        if args.p0 is None or args.p1 is None:
            raise ValueError("measure needs --p0 and --p1 (or --input FILE)")
        pair = RiskPair(args.p0, args.p1)
        for cell in _measure_cells(pair, kinds, args.tol):
            rows.append(
                {
                    "setting": None,
                    "stratum": None,
                    "weight": None,
                    "p0": pair.p0,
                    "p1": pair.p1,
                    **cell,
                }
            )
    report["rows"] = rows
    return report


def cmd_predict(args) -> dict:
    measure = EffectMeasure(EffectMeasureKind(args.kind), args.value)
    predicted = predict_risk(PredictionRequest(args.p0, measure))
    report = base_report(
        "predict", {"p0": args.p0, "kind": args.kind, "value": args.value}
    )
    report["result"] = {
        "baseline_risk": args.p0,
        "kind": args.kind,
        "value": args.value,
        "predicted_risk": predicted,
    }
    return report


def _stability_rows(report_rows) -> list[dict]:
    return [
        {
            "background_prev": row.background_prev,
            "p0": row.p0,
            "p1": row.p1,
            "rd": row.rd,
            "rr": row.rr,
            "odds_ratio": row.odds_ratio,
            "sr": row.sr,
            "switch": row.switch,
        }
        for row in report_rows
    ]


def cmd_stability(args) -> dict:
    config = _load_config(args)
    backgrounds = args.backgrounds
    if backgrounds is None and config is not None:
        backgrounds = config.backgrounds
    if backgrounds is None:
        raise ValueError(
            "stability needs --backgrounds (or a backgrounds list in the config)"
        )
    mech = _resolve_mechanism(args, config)
    table = stability_table(mech, backgrounds)
    params = _mechanism_params(mech)
    params["background_prevs"] = list(backgrounds)
    report = base_report("stability", params)
    report["rows"] = _stability_rows(table.rows)
    return report


def cmd_simulate(args) -> dict:
    config = _load_config(args)
    sim = config.simulation if config else None
    n = args.n if args.n is not None else (sim.n if sim else None)
    seed = args.seed if args.seed is not None else (sim.seed if sim else None)
    if n is None:
        raise ValueError("simulate needs --n (or simulation.n in the config)")
    if seed is None:
        raise ValueError("simulate needs --seed (or simulation.seed in the config)")
    mech = _resolve_mechanism(args, config)
    result = simulate(mech, n=n, seed=seed)
    analytic = analytic_risks(mech)
    params = _mechanism_params(mech)
    params.update({"n": n, "seed": seed})
    report = base_report("simulate", params)
    report["result"] = {
        "n": result.n,
        "seed": result.seed,
        "p0_hat": result.p0_hat,
        "p1_hat": result.p1_hat,
        "analytic_p0": analytic.p0,
        "analytic_p1": analytic.p1,
    }
    return report


def cmd_bounds(args) -> dict:
    config = _load_config(args)
    settings = config.bounds if config else None
    max_opposing = (
        args.max_opposing
        if args.max_opposing is not None
        else (settings.max_opposing_prev if settings else None)
    )
    if max_opposing is None:
        raise ValueError(
            "bounds needs --max-opposing (or bounds.max_opposing_prev in the config)"
        )
    resolution = (
        args.resolution
        if args.resolution is not None
        else (settings.resolution if settings else 2001)
    )
    if args.p0 is None or args.p1 is None:
        raise ValueError("bounds needs --p0 and --p1")
    observed = RiskPair(args.p0, args.p1)
    bounds = bounds_nonmonotone(observed, max_opposing, grid_resolution=resolution)
    report = base_report(
        "bounds",
        {
            "p0": observed.p0,
            "p1": observed.p1,
            "max_opposing_prev": max_opposing,
            "resolution": resolution,
        },
    )
    report["result"] = {
        "kind": bounds.kind.value,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "feasible": bounds.feasible,
    }
    return report


def cmd_orcheck(args) -> dict:
    if args.audit is not None:
        kind = EffectMeasureKind(args.audit)
        audit = collapsibility_audit(kind, trials=args.trials, seed=args.seed)
        report = base_report(
            "orcheck",
            {"mode": "audit", "kind": kind.value, "trials": args.trials,
             "seed": args.seed},
        )
        witness = None
        if audit.witness is not None:
            witness = {
                "shared_value": audit.witness.shared_value,
                "p0_a": audit.witness.stratum_a.p0,
                "p1_a": audit.witness.stratum_a.p1,
                "p0_b": audit.witness.stratum_b.p0,
                "p1_b": audit.witness.stratum_b.p1,
                "weight_a": audit.witness.weight_a,
                "pooled_value": audit.witness.pooled_value,
                "violation": audit.witness.violation,
            }
        report["result"] = {
            "collapsible": audit.collapsible,
            "worst_violation": audit.worst_violation,
            "witness": witness,
        }
        return report

    hit = counterexample_search(
        trials=args.trials,
        seed=args.seed,
        residual_tol=args.residual_tol,
        degeneracy_tol=args.degeneracy_tol,
        family=args.family,
    )
    report = base_report(
        "orcheck",
        {
            "mode": "search",
            "trials": args.trials,
            "seed": args.seed,
            "residual_tol": args.residual_tol,
            "degeneracy_tol": args.degeneracy_tol,
            "family": args.family,
        },
    )
    counterexample = None
    if hit is not None:
        counterexample = {
            "p0_s": hit.p0_s,
            "p1_s": hit.p1_s,
            "p0_t": hit.p0_t,
            "p1_t": hit.p1_t,
            "w": hit.w,
            "residual": or_residual(hit),
        }
    report["result"] = {"found": hit is not None, "counterexample": counterexample}
    return report


def cmd_curves(args) -> dict:
    measure = EffectMeasure(EffectMeasureKind(args.kind), args.value)
    if args.points < 2:
        raise ValueError(f"--points must be >= 2, got {args.points}")
    report = base_report(
        "curves",
        {"kind": args.kind, "value": args.value, "points": args.points,
         "tol": args.tol},
    )
    rows = []
    for i in range(args.points):
        p = i / (args.points - 1)
        raw = raw_effect(measure.kind, measure.value, p)
        valid = -args.tol <= raw <= 1.0 + args.tol
        rows.append(
            {
                "p": p,
                "value": min(1.0, max(0.0, raw)) if valid else raw,
                "valid": valid,
            }
        )
    report["rows"] = rows
    return report


def _add_output_flags(sub, plot: bool = False) -> None:
    sub.add_argument("--format", choices=("json", "tsv"), default=None,
                     help="report format (default json)")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="write the report here instead of stdout")
    if plot:
        sub.add_argument("--plot", default=None, metavar="PATH",
                         help="also render the report as a PNG figure")


def _add_mechanism_flags(sub) -> None:
    sub.add_argument("--config", default=None, metavar="FILE",
                     help="scenario file (YAML)")
    sub.add_argument("--representation",
                     choices=tuple(r.value for r in Representation), default=None)
    sub.add_argument("--background-prev", dest="background_prev", type=float,
                     default=None)
    sub.add_argument("--switch-increase", dest="switch_increase", type=float,
                     default=None, help="prevalence of the risk-increase switch")
    sub.add_argument("--switch-decrease", dest="switch_decrease", type=float,
                     default=None, help="prevalence of the risk-decrease switch")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="switchrisk",
        description="Effect-measure algebra and switch-mechanism analysis "
        "for binary outcomes",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("measure", help="compute effect measures from risks")
    sub.add_argument("--p0", type=float, default=None)
    sub.add_argument("--p1", type=float, default=None)
    sub.add_argument("--input", default=None, metavar="FILE",
                     help="CSV of trial summaries")
    sub.add_argument("--kind", choices=_KIND_CHOICES + ("all",), default="all")
    sub.add_argument("--tol", type=float, default=RISK_TOL,
                     help="risk-equality tolerance for the switch scale")
    _add_output_flags(sub)
    sub.set_defaults(handler=cmd_measure)

    sub = commands.add_parser("predict", help="transport an effect size to a baseline")
    sub.add_argument("--p0", type=float, required=True)
    sub.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    sub.add_argument("--value", type=float, required=True)
    _add_output_flags(sub)
    sub.set_defaults(handler=cmd_predict)

    sub = commands.add_parser(
        "stability", help="tabulate all scales across background prevalences"
    )
    _add_mechanism_flags(sub)
    sub.add_argument("--backgrounds", type=_parse_backgrounds, default=None,
                     metavar="P,P,...", help="background prevalences to sweep")
    _add_output_flags(sub, plot=True)
    sub.set_defaults(handler=cmd_stability)

    sub = commands.add_parser("simulate", help="Monte Carlo draw from a mechanism")
    _add_mechanism_flags(sub)
    sub.add_argument("--n", type=int, default=None, help="number of individuals")
    sub.add_argument("--seed", type=int, default=None, help="RNG seed (required)")
    _add_output_flags(sub, plot=True)
    sub.set_defaults(handler=cmd_simulate)

    sub = commands.add_parser(
        "bounds", help="bound the switch prevalence without monotonicity"
    )
    sub.add_argument("--p0", type=float, default=None)
    sub.add_argument("--p1", type=float, default=None)
    sub.add_argument("--max-opposing", dest="max_opposing", type=float, default=None,
                     help="cap on the opposing switch prevalence")
    sub.add_argument("--resolution", type=int, default=None,
                     help="grid resolution (default 2001)")
    sub.add_argument("--config", default=None, metavar="FILE")
    _add_output_flags(sub, plot=True)
    sub.set_defaults(handler=cmd_bounds)

    sub = commands.add_parser(
        "orcheck", help="odds-ratio stability search / collapsibility audit"
    )
    sub.add_argument("--trials", type=int, required=True)
    sub.add_argument("--seed", type=int, required=True, help="RNG seed (required)")
    sub.add_argument("--residual-tol", dest="residual_tol", type=float, default=1e-10)
    sub.add_argument("--degeneracy-tol", dest="degeneracy_tol", type=float,
                     default=1e-3)
    sub.add_argument("--family", choices=("equal_risks", "null"), default=None,
                     help="restrict the search to a degenerate family")
    sub.add_argument("--audit", choices=_KIND_CHOICES, default=None,
                     help="run a collapsibility audit for this scale instead")
    _add_output_flags(sub)
    sub.set_defaults(handler=cmd_orcheck)

    sub = commands.add_parser("curves", help="tabulate one effect function over [0, 1]")
    sub.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    sub.add_argument("--value", type=float, required=True)
    sub.add_argument("--points", type=int, default=101)
    sub.add_argument("--tol", type=float, default=RISK_TOL,
                     help="validity margin around [0, 1]")
    _add_output_flags(sub, plot=True)
    sub.set_defaults(handler=cmd_curves)

    return parser


def _resolve_output(args, config: ScenarioConfig | None) -> tuple[str, str | None]:
    out_settings = config.output if config else None
    fmt = args.format or (out_settings.format if out_settings else None) or "json"
    out = args.out if args.out is not None else (
        out_settings.path if out_settings else None
    )
    return fmt, out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except (ValueError, OSError) as exc:
        parser.error(str(exc))
    except SwitchRiskError as exc:
        fmt, out = _resolve_output(args, getattr(args, "scenario_config", None))
        write_report(render_report(error_report(args.command, exc), fmt), out)
        return 1
    fmt, out = _resolve_output(args, getattr(args, "scenario_config", None))
    write_report(render_report(report, fmt), out)
    plot_path = getattr(args, "plot", None)
    if plot_path:
        render_figure(args.command, report, plot_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
