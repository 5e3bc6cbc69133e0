"""Scenario configuration files: one YAML document describing a mechanism,
the background sweep, simulation settings, bounds settings and output
defaults.  Every block is optional; unknown keys are rejected."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import ValidationError
from .scc import MechanismSpec, Representation, SwitchDependence

_FORMATS = ("json", "tsv")


@dataclass(frozen=True)
class SimulationSettings:
    n: int
    seed: int | None = None


@dataclass(frozen=True)
class BoundsSettings:
    max_opposing_prev: float
    resolution: int = 2001


@dataclass(frozen=True)
class OutputSettings:
    format: str = "json"
    path: str | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    mechanism: MechanismSpec | None = None
    backgrounds: tuple[float, ...] | None = None
    simulation: SimulationSettings | None = None
    bounds: BoundsSettings | None = None
    output: OutputSettings | None = None


def _require_mapping(value, context: str) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(f"{context} must be a mapping, got {type(value).__name__}")
    return value


def _reject_unknown(block: dict, allowed: tuple[str, ...], context: str) -> None:
    unknown = sorted(set(block) - set(allowed))
    if unknown:
        raise ValidationError(f"unknown key(s) in {context}: {', '.join(unknown)}")


def _as_float(value, context: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{context} must be a number, got {value!r}")
    return float(value)


def _as_int(value, context: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{context} must be an integer, got {value!r}")
    return value


def _parse_mechanism(block: dict) -> MechanismSpec:
    _reject_unknown(
        block,
        (
            "representation",
            "background_prev",
            "switch_prev_increase",
            "switch_prev_decrease",
            "dependence",
        ),
        "mechanism",
    )
    try:
        representation = Representation(block.get("representation"))
    except ValueError:
        names = ", ".join(r.value for r in Representation)
        raise ValidationError(
            f"mechanism.representation must be one of {names}, "
            f"got {block.get('representation')!r}"
        ) from None
    if "background_prev" not in block:
        raise ValidationError("mechanism.background_prev is required")
    dependence = None
    if "dependence" in block and block["dependence"] is not None:
        dep = _require_mapping(block["dependence"], "mechanism.dependence")
        _reject_unknown(
            dep, ("given_background", "given_no_background"), "mechanism.dependence"
        )
        for key in ("given_background", "given_no_background"):
            if key not in dep:
                raise ValidationError(f"mechanism.dependence.{key} is required")
        dependence = SwitchDependence(
            given_background=_as_float(
                dep["given_background"], "mechanism.dependence.given_background"
            ),
            given_no_background=_as_float(
                dep["given_no_background"], "mechanism.dependence.given_no_background"
            ),
        )
    try:
        return MechanismSpec(
            representation=representation,
            background_prev=_as_float(
                block["background_prev"], "mechanism.background_prev"
            ),
            switch_prev_increase=_as_float(
                block.get("switch_prev_increase", 0.0), "mechanism.switch_prev_increase"
            ),
            switch_prev_decrease=_as_float(
                block.get("switch_prev_decrease", 0.0), "mechanism.switch_prev_decrease"
            ),
            dependence=dependence,
        )
    except ValueError as exc:
        raise ValidationError(f"mechanism: {exc}") from None


def load_scenario(path: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario file."""
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        try:
            raw = yaml.safe_load(handle)
        except yaml.YAMLError as exc:
            raise ValidationError(f"malformed scenario file: {exc}") from None
    if raw is None:
        raw = {}
    top = _require_mapping(raw, "scenario")
    _reject_unknown(
        top, ("mechanism", "backgrounds", "simulation", "bounds", "output"), "scenario"
    )

    mechanism = None
    if top.get("mechanism") is not None:
        mechanism = _parse_mechanism(_require_mapping(top["mechanism"], "mechanism"))

    backgrounds = None
    if top.get("backgrounds") is not None:
        if not isinstance(top["backgrounds"], list) or not top["backgrounds"]:
            raise ValidationError("backgrounds must be a non-empty list of numbers")
        values = tuple(
            _as_float(v, f"backgrounds[{i}]") for i, v in enumerate(top["backgrounds"])
        )
        for i, v in enumerate(values):
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"backgrounds[{i}] must lie in [0, 1], got {v!r}")
        backgrounds = values

    simulation = None
    if top.get("simulation") is not None:
        block = _require_mapping(top["simulation"], "simulation")
        _reject_unknown(block, ("n", "seed"), "simulation")
        if "n" not in block:
            raise ValidationError("simulation.n is required")
        n = _as_int(block["n"], "simulation.n")
        if n < 1:
            raise ValidationError(f"simulation.n must be >= 1, got {n}")
        seed = None
        if block.get("seed") is not None:
            seed = _as_int(block["seed"], "simulation.seed")
        simulation = SimulationSettings(n=n, seed=seed)

    bounds = None
    if top.get("bounds") is not None:
        block = _require_mapping(top["bounds"], "bounds")
        _reject_unknown(block, ("max_opposing_prev", "resolution"), "bounds")
        if "max_opposing_prev" not in block:
            raise ValidationError("bounds.max_opposing_prev is required")
        max_opposing = _as_float(block["max_opposing_prev"], "bounds.max_opposing_prev")
        if not 0.0 <= max_opposing <= 1.0:
            raise ValidationError(
                f"bounds.max_opposing_prev must lie in [0, 1], got {max_opposing!r}"
            )
        resolution = _as_int(block.get("resolution", 2001), "bounds.resolution")
        if resolution < 2:
            raise ValidationError(f"bounds.resolution must be >= 2, got {resolution}")
        bounds = BoundsSettings(max_opposing_prev=max_opposing, resolution=resolution)

    output = None
    if top.get("output") is not None:
        block = _require_mapping(top["output"], "output")
        _reject_unknown(block, ("format", "path"), "output")
        fmt = block.get("format", "json")
        if fmt not in _FORMATS:
            raise ValidationError(
                f"output.format must be one of {', '.join(_FORMATS)}, got {fmt!r}"
            )
        out_path = block.get("path")
        if out_path is not None and not isinstance(out_path, str):
            raise ValidationError(f"output.path must be a string, got {out_path!r}")
        output = OutputSettings(format=fmt, path=out_path)

    return ScenarioConfig(
        mechanism=mechanism,
        backgrounds=backgrounds,
        simulation=simulation,
        bounds=bounds,
        output=output,
    )
