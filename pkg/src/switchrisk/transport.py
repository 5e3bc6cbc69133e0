"""Carrying a published effect size to a population with a different baseline.

A prediction request pairs a baseline risk with either a bare effect
measure or a table of per-stratum measures keyed by modifier level.  The
divergence report makes the scale dependence of such transport explicit:
it measures one reference pair on all five scales and shows how far apart
the five predicted treated risks land at a new baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import UndefinedMeasure, UnknownModifier
from .measures import (
    RISK_TOL,
    EffectMeasure,
    EffectMeasureKind,
    RiskPair,
    apply_effect,
    compute_measure,
    raw_effect,
    validate_risk,
)


@dataclass(frozen=True)
class ModifierTable:
    """Per-stratum effect sizes on a single scale, keyed by opaque labels."""

    entries: Mapping[str, EffectMeasure]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("a modifier table needs at least one entry")
        kinds = {measure.kind for measure in self.entries.values()}
        if len(kinds) != 1:
            names = ", ".join(sorted(k.value for k in kinds))
            raise ValueError(f"modifier table mixes scales: {names}")
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    @property
    def kind(self) -> EffectMeasureKind:
        return next(iter(self.entries.values())).kind

    def lookup(self, key: str) -> EffectMeasure:
        try:
            return self.entries[key]
        except KeyError:
            raise UnknownModifier(key, tuple(sorted(self.entries))) from None


@dataclass(frozen=True)
class PredictionRequest:
    """Baseline risk plus the effect size to transport onto it."""

    baseline_risk: float
    source: EffectMeasure | ModifierTable
    modifier_key: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "baseline_risk", validate_risk(self.baseline_risk, "baseline_risk")
        )
        if isinstance(self.source, ModifierTable):
            if self.modifier_key is None:
                raise ValueError("a modifier table source needs modifier_key")
        elif self.modifier_key is not None:
            raise ValueError("modifier_key is only meaningful with a table source")

    def resolve(self) -> EffectMeasure:
        if isinstance(self.source, ModifierTable):
            return self.source.lookup(self.modifier_key)
        return self.source


def predict_risk(request: PredictionRequest) -> float:
    """Treated risk implied by the request's effect size at its baseline."""
    return apply_effect(request.resolve(), request.baseline_risk)


@dataclass(frozen=True)
class DivergenceRow:
    """One scale's reading of the reference pair and its transported risk.

    predicted carries the raw effect-function value even when it is
    invalid, so reports can show where a scale escaped [0, 1]; value and
    predicted are None when the scale is undefined at the reference.
    """

    kind: EffectMeasureKind
    value: float | None
    predicted: float | None
    valid: bool
    detail: str | None = None


@dataclass(frozen=True)
class DivergenceReport:
    """All five scales applied to one reference pair at one new baseline."""

    reference: RiskPair
    target_baseline: float
    rows: tuple[DivergenceRow, ...] = field(default_factory=tuple)

    def row(self, kind: EffectMeasureKind) -> DivergenceRow:
        for row in self.rows:
            if row.kind is kind:
                return row
        raise KeyError(kind)


def divergence_report(reference: RiskPair, target_baseline: float) -> DivergenceReport:
    """Measure a reference pair on every scale and transport each to a new baseline.

    Different scales passing through the same reference pair generally
    disagree at any other baseline; the report lays the disagreement out.
    """
    target = validate_risk(target_baseline, "target_baseline")
    rows = []
    for kind in EffectMeasureKind:
        try:
            measure = compute_measure(kind, reference)
        except UndefinedMeasure as exc:
            rows.append(DivergenceRow(kind, None, None, False, str(exc)))
            continue
        raw = raw_effect(kind, measure.value, target)
        if raw < -RISK_TOL or raw > 1.0 + RISK_TOL:
            detail = f"predicted risk {raw!r} lies outside [0, 1]"
            rows.append(DivergenceRow(kind, measure.value, raw, False, detail))
        else:
            rows.append(
                DivergenceRow(kind, measure.value, min(1.0, max(0.0, raw)), True)
            )
    return DivergenceReport(reference, target, tuple(rows))


def rare_disease_gap(pair: RiskPair) -> float:
    """|(1 - survival ratio) - risk difference| for one pair.

    The survival ratio's complement and the risk difference approximate
    each other when the outcome is rare; the gap quantifies the slippage,
    which grows with the baseline risk.
    """
    sr = compute_measure(EffectMeasureKind.SR, pair).value
    rd = pair.p1 - pair.p0
    return abs((1.0 - sr) - rd)
