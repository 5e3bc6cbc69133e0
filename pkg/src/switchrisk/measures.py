"""Effect-measure algebra for binary outcomes.

Five scales contrast a treated risk p1 with a baseline risk p0: the risk
difference, the risk ratio, the odds ratio, the survival ratio (the risk
ratio of the complement event), and the switch relative risk, a composite
scale that works on the complement when risk rises and on the outcome when
risk falls.  Each scale comes with an effect function g that maps a
baseline risk to the implied treated risk; this module computes measures,
applies and converts them, pools strata, and probes the closure and
prediction-equivalence behaviour of the scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

from .errors import InvalidPrediction, UndefinedMeasure, WeightError

RISK_TOL = 1e-12
WEIGHT_TOL = 1e-9
DEFAULT_GRID = 1001


class EffectMeasureKind(Enum):
    """The five supported effect-measure scales."""

    RD = "rd"
    RR = "rr"
    OR = "or"
    SR = "sr"
    SWITCH = "switch"

    @property
    def null_value(self) -> float:
        """Value of this measure when treatment leaves risk unchanged."""
        if self in (EffectMeasureKind.RD, EffectMeasureKind.SWITCH):
            return 0.0
        return 1.0


# admissible value range per scale (closed at both ends where finite)
_RANGES: dict[EffectMeasureKind, tuple[float, float]] = {
    EffectMeasureKind.RD: (-1.0, 1.0),
    EffectMeasureKind.RR: (0.0, math.inf),
    EffectMeasureKind.OR: (0.0, math.inf),
    EffectMeasureKind.SR: (0.0, math.inf),
    EffectMeasureKind.SWITCH: (-1.0, 1.0),
}


def validate_risk(value: float, name: str = "risk") -> float:
    """Return value as a float after checking it lies in [0, 1]."""
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class EffectMeasure:
    """A (scale, value) pair, range-checked against the scale."""

    kind: EffectMeasureKind
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", float(self.value))
        lo, hi = _RANGES[self.kind]
        if not math.isfinite(self.value) or not lo <= self.value <= hi:
            raise ValueError(
                f"{self.kind.value} must lie in [{lo}, {hi}], got {self.value!r}"
            )

    @property
    def is_null(self) -> bool:
        return self.value == self.kind.null_value


@dataclass(frozen=True)
class RiskPair:
    """Baseline and treated risks (p0, p1) for one population."""

    p0: float
    p1: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "p0", validate_risk(self.p0, "p0"))
        object.__setattr__(self, "p1", validate_risk(self.p1, "p1"))


@dataclass(frozen=True)
class StratumRow:
    """One stratum of a mixture: population share, risks, opaque label."""

    weight: float
    pair: RiskPair
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", float(self.weight))
        if not math.isfinite(self.weight) or self.weight < 0.0:
            raise WeightError(f"stratum weight must be >= 0, got {self.weight!r}")


def compute_measure(
    kind: EffectMeasureKind, pair: RiskPair, tol: float = RISK_TOL
) -> EffectMeasure:
    """Measure the contrast between pair.p1 and pair.p0 on the given scale.

    Risks within tol of each other count as equal for the switch scale,
    which is defined piecewise around the null.
    """
    p0, p1 = pair.p0, pair.p1
    if kind is EffectMeasureKind.RD:
        return EffectMeasure(kind, p1 - p0)
    if kind is EffectMeasureKind.RR:
        if p0 == 0.0:
            raise UndefinedMeasure(kind, "risk ratio needs p0 > 0")
        return EffectMeasure(kind, p1 / p0)
    if kind is EffectMeasureKind.SR:
        if p0 == 1.0:
            raise UndefinedMeasure(kind, "survival ratio needs p0 < 1")
        return EffectMeasure(kind, (1.0 - p1) / (1.0 - p0))
    if kind is EffectMeasureKind.OR:
        if p0 == 0.0 or p0 == 1.0:
            raise UndefinedMeasure(kind, "odds ratio needs 0 < p0 < 1")
        if p1 == 1.0:
            raise UndefinedMeasure(kind, "odds ratio needs p1 < 1")
        return EffectMeasure(kind, (p1 / (1.0 - p1)) / (p0 / (1.0 - p0)))
    if kind is EffectMeasureKind.SWITCH:
        if abs(p1 - p0) <= tol:
            return EffectMeasure(kind, 0.0)
        if p1 > p0:
            return EffectMeasure(kind, 1.0 - (1.0 - p1) / (1.0 - p0))
        return EffectMeasure(kind, -1.0 + p1 / p0)
    raise TypeError(f"unknown measure kind {kind!r}")


def raw_effect(kind: EffectMeasureKind, value: float, p: float) -> float:
    """Effect function g_value(p) without range policing.

    May leave [0, 1] for RD, RR and SR; the odds-ratio corner p = 1 with
    value 0 is defined as 0 by continuity in p.
    """
    if kind is EffectMeasureKind.RD:
        return p + value
    if kind is EffectMeasureKind.RR:
        return p * value
    if kind is EffectMeasureKind.OR:
        denom = 1.0 - p + p * value
        if denom == 0.0:
            return 0.0
        return p * value / denom
    if kind is EffectMeasureKind.SR:
        return 1.0 - (1.0 - p) * value
    if kind is EffectMeasureKind.SWITCH:
        if value > 0.0:
            return 1.0 - (1.0 - p) * (1.0 - value)
        if value < 0.0:
            return p * (1.0 + value)
        return p
    raise TypeError(f"unknown measure kind {kind!r}")


def apply_effect(measure: EffectMeasure, p: float) -> float:
    """Predicted treated risk g_lambda(p) at baseline risk p.

    The switch and odds-ratio effect functions always land in [0, 1].  The
    other three may not: excursions beyond RISK_TOL raise InvalidPrediction
    carrying the raw value, smaller float jitter is clamped to the boundary.
    """
    p = validate_risk(p, "p")
    raw = raw_effect(measure.kind, measure.value, p)
    if raw < 0.0:
        if raw >= -RISK_TOL:
            return 0.0
        raise InvalidPrediction(measure.kind, raw)
    if raw > 1.0:
        if raw <= 1.0 + RISK_TOL:
            return 1.0
        raise InvalidPrediction(measure.kind, raw)
    return raw


def convert_measure(
    measure: EffectMeasure, p0: float, to_kind: EffectMeasureKind
) -> EffectMeasure:
    """Re-express a measure on another scale at a given baseline risk.

    Conversion routes through the implied treated risk, so a round trip
    back to the original scale reproduces the value up to float error.
    """
    p1 = apply_effect(measure, p0)
    return compute_measure(to_kind, RiskPair(p0, p1))


def recode_outcome(pair: RiskPair) -> RiskPair:
    """Swap the event and its complement: (p0, p1) -> (1 - p0, 1 - p1)."""
    return RiskPair(1.0 - pair.p0, 1.0 - pair.p1)


def pool_strata(strata: Sequence[StratumRow]) -> RiskPair:
    """Marginal risks of a mixture of strata.

    Weights must sum to one within WEIGHT_TOL; the convex combination is
    clamped to [0, 1] to absorb that tolerance.
    """
    rows = list(strata)
    if not rows:
        raise WeightError("at least one stratum is required")
    total = sum(row.weight for row in rows)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise WeightError(f"stratum weights must sum to 1, got {total!r}")
    p0 = sum(row.weight * row.pair.p0 for row in rows)
    p1 = sum(row.weight * row.pair.p1 for row in rows)
    return RiskPair(min(1.0, max(0.0, p0)), min(1.0, max(0.0, p1)))


class ClosureResult(NamedTuple):
    closed: bool
    violation_at: float | None
    raw_value: float | None


def closure_check(
    kind: EffectMeasureKind, value: float, grid_size: int = DEFAULT_GRID
) -> ClosureResult:
    """Scan a uniform baseline grid for effect-function range violations.

    Returns the first grid point (and raw prediction) where g_value left
    [0, 1]; the switch and odds-ratio scales are closed and never violate.
    """
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size!r}")
    measure = EffectMeasure(kind, value)
    for i in range(grid_size):
        p = i / (grid_size - 1)
        try:
            apply_effect(measure, p)
        except InvalidPrediction as exc:
            return ClosureResult(False, p, exc.raw_value)
    return ClosureResult(True, None, None)


def prediction_equivalent(
    first: EffectMeasure,
    second: EffectMeasure,
    grid_size: int = DEFAULT_GRID,
    tol: float = RISK_TOL,
) -> bool:
    """Whether two measures predict the same treated risk at every baseline.

    Compared on a uniform grid, skipping points where either effect
    function leaves [0, 1].
    """
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size!r}")
    for i in range(grid_size):
        p = i / (grid_size - 1)
        try:
            a = apply_effect(first, p)
            b = apply_effect(second, p)
        except InvalidPrediction:
            continue
        if abs(a - b) > tol:
            return False
    return True
