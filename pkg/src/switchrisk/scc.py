"""Sufficient-component-cause mechanisms with treatment-response switches.

Two generative representations describe how a binary treatment moves a
binary outcome:

* outcome pies: a background event carries the baseline risk, a B-type
  switch makes treatment sufficient for the outcome (risk up), a C-type
  switch makes absence of treatment sufficient (risk down);
* complement pies: the same structure written for the complement of the
  outcome, with a D-type switch that makes treatment sufficient for
  staying event-free (risk down) and an E-type switch for absence of
  treatment (risk up).

Each arm's risk is the probability of the union of the background event
with that arm's switch.  The module computes those risks analytically,
simulates individuals, sweeps the background prevalence to expose which
measure a mechanism pins, stress-tests the independence assumption, and
bounds the switch prevalence when monotonicity is dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DependencePresent,
    IncoherentMechanism,
    Infeasible,
    InfeasibleDependence,
    NotMonotone,
    UndefinedMeasure,
)
from .measures import (
    EffectMeasure,
    EffectMeasureKind,
    RiskPair,
    compute_measure,
    validate_risk,
)

DEPENDENCE_TOL = 1e-9
DEFAULT_BOUNDS_RESOLUTION = 2001


class Representation(Enum):
    OUTCOME_PIES = "outcome_pies"
    COMPLEMENT_PIES = "complement_pies"


class SwitchKind(Enum):
    """Switch types, named by which arm they force and in which direction."""

    B = "B"  # outcome pies, treatment sufficient for the outcome
    C = "C"  # outcome pies, no treatment sufficient for the outcome
    D = "D"  # complement pies, treatment sufficient for the complement
    E = "E"  # complement pies, no treatment sufficient for the complement


# B and D determine the treated arm from the control arm; C and E the reverse
_FORWARD_KINDS = frozenset({SwitchKind.B, SwitchKind.D})
_BACKWARD_KINDS = frozenset({SwitchKind.C, SwitchKind.E})


def coherence_check(kinds: Iterable[SwitchKind]) -> None:
    """Reject switch-type sets whose assignment directions are circular.

    Subsets of {B, D} and subsets of {C, E} (including the empty set) are
    coherent; any mix of the two groups would need each arm's response to
    be derived from the other.
    """
    kind_set = frozenset(kinds)
    forward = sorted(kind_set & _FORWARD_KINDS, key=lambda k: k.value)
    backward = sorted(kind_set & _BACKWARD_KINDS, key=lambda k: k.value)
    if forward and backward:
        raise IncoherentMechanism(forward[0], backward[0])


@dataclass(frozen=True)
class SwitchDependence:
    """Prevalence of the active switch conditional on the background event."""

    given_background: float
    given_no_background: float

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "given_background",
            validate_risk(self.given_background, "given_background"),
        )
        object.__setattr__(
            self,
            "given_no_background",
            validate_risk(self.given_no_background, "given_no_background"),
        )


@dataclass(frozen=True)
class MechanismSpec:
    """A background event plus up to two switches in one representation.

    Prevalences are marginal.  A dependence block ties the single active
    switch to the background event; its implied marginal must match the
    stated one within DEPENDENCE_TOL.  Switches are independent of the
    background (and of each other) unless a dependence is given.
    """

    representation: Representation
    background_prev: float
    switch_prev_increase: float = 0.0
    switch_prev_decrease: float = 0.0
    dependence: SwitchDependence | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "background_prev", validate_risk(self.background_prev, "background_prev")
        )
        object.__setattr__(
            self,
            "switch_prev_increase",
            validate_risk(self.switch_prev_increase, "switch_prev_increase"),
        )
        object.__setattr__(
            self,
            "switch_prev_decrease",
            validate_risk(self.switch_prev_decrease, "switch_prev_decrease"),
        )
        if self.dependence is not None:
            if self.switch_prev_increase > 0.0 and self.switch_prev_decrease > 0.0:
                raise ValueError(
                    "dependence needs a single active switch; "
                    "both switch prevalences are positive"
                )
            bg = self.background_prev
            implied = (
                bg * self.dependence.given_background
                + (1.0 - bg) * self.dependence.given_no_background
            )
            stated = (
                self.switch_prev_increase
                if self._dependence_on_increase()
                else self.switch_prev_decrease
            )
            if abs(implied - stated) > DEPENDENCE_TOL:
                raise ValueError(
                    f"dependence implies a marginal switch prevalence of "
                    f"{implied!r} but the mechanism states {stated!r}"
                )

    def _dependence_on_increase(self) -> bool:
        return self.switch_prev_increase > 0.0 or self.switch_prev_decrease == 0.0

    @property
    def increase_kind(self) -> SwitchKind:
        if self.representation is Representation.OUTCOME_PIES:
            return SwitchKind.B
        return SwitchKind.E

    @property
    def decrease_kind(self) -> SwitchKind:
        if self.representation is Representation.OUTCOME_PIES:
            return SwitchKind.C
        return SwitchKind.D

    @property
    def active_kinds(self) -> frozenset[SwitchKind]:
        kinds = set()
        if self.switch_prev_increase > 0.0:
            kinds.add(self.increase_kind)
        if self.switch_prev_decrease > 0.0:
            kinds.add(self.decrease_kind)
        return frozenset(kinds)

    @property
    def is_monotone(self) -> bool:
        return not (self.switch_prev_increase > 0.0 and self.switch_prev_decrease > 0.0)


def _union_with_background(bg: float, switch_given_clear: float) -> float:
    # Pr(background or switch) = bg + Pr(switch and no background);
    # the clamp absorbs float rounding at the upper boundary
    union = bg + (1.0 - bg) * switch_given_clear
    return min(1.0, max(0.0, union))


def _conditional_prevs(mech: MechanismSpec) -> tuple[float, float]:
    """Each switch's prevalence among individuals without the background event."""
    inc = mech.switch_prev_increase
    dec = mech.switch_prev_decrease
    if mech.dependence is not None:
        if mech._dependence_on_increase():
            inc = mech.dependence.given_no_background
        else:
            dec = mech.dependence.given_no_background
    return inc, dec


def analytic_risks(mech: MechanismSpec) -> RiskPair:
    """Exact counterfactual risks implied by a mechanism."""
    inc_clear, dec_clear = _conditional_prevs(mech)
    union_inc = _union_with_background(mech.background_prev, inc_clear)
    union_dec = _union_with_background(mech.background_prev, dec_clear)
    if mech.representation is Representation.OUTCOME_PIES:
        return RiskPair(p0=union_dec, p1=union_inc)
    return RiskPair(p0=1.0 - union_inc, p1=1.0 - union_dec)


@dataclass(frozen=True)
class IndividualSample:
    """Per-individual component flags and potential outcomes, as parallel
    boolean arrays of length n."""

    background: np.ndarray
    switch_increase: np.ndarray
    switch_decrease: np.ndarray
    y0: np.ndarray
    y1: np.ndarray


@dataclass(frozen=True)
class SimulationResult:
    p0_hat: float
    p1_hat: float
    n: int
    seed: int
    individuals: IndividualSample | None = None


def simulate(
    mech: MechanismSpec,
    n: int,
    seed: int,
    return_individuals: bool = False,
) -> SimulationResult:
    """Monte Carlo draw of n individuals from a mechanism.

    Uses numpy's default PCG64 generator with a fixed draw order (one
    uniform array each for the background event, the risk-increase switch,
    the risk-decrease switch), so a given (mech, n, seed) reproduces
    bit for bit.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    rng = np.random.default_rng(seed)
    bg_prev = mech.background_prev
    inc_clear, dec_clear = _conditional_prevs(mech)
    if mech.dependence is not None and mech._dependence_on_increase():
        inc_given_bg = mech.dependence.given_background
        dec_given_bg = dec_clear
    elif mech.dependence is not None:
        inc_given_bg = inc_clear
        dec_given_bg = mech.dependence.given_background
    else:
        inc_given_bg, dec_given_bg = inc_clear, dec_clear

    background = rng.random(n) < bg_prev
    increase = rng.random(n) < np.where(background, inc_given_bg, inc_clear)
    decrease = rng.random(n) < np.where(background, dec_given_bg, dec_clear)

    if mech.representation is Representation.OUTCOME_PIES:
        y1 = background | increase
        y0 = background | decrease
    else:
        y1 = ~(background | decrease)
        y0 = ~(background | increase)

    individuals = None
    if return_individuals:
        individuals = IndividualSample(background, increase, decrease, y0, y1)
    return SimulationResult(
        p0_hat=float(y0.mean()),
        p1_hat=float(y1.mean()),
        n=int(n),
        seed=int(seed),
        individuals=individuals,
    )


@dataclass(frozen=True)
class StabilityRow:
    """Risks and all five measures for one background prevalence.

    Measure cells are None where the scale is undefined at those risks.
    """

    background_prev: float
    p0: float
    p1: float
    rd: float | None
    rr: float | None
    odds_ratio: float | None
    sr: float | None
    switch: float | None

    def measure(self, kind: EffectMeasureKind) -> float | None:
        return {
            EffectMeasureKind.RD: self.rd,
            EffectMeasureKind.RR: self.rr,
            EffectMeasureKind.OR: self.odds_ratio,
            EffectMeasureKind.SR: self.sr,
            EffectMeasureKind.SWITCH: self.switch,
        }[kind]


@dataclass(frozen=True)
class StabilityReport:
    rows: tuple[StabilityRow, ...]

    def column(self, kind: EffectMeasureKind) -> tuple[float | None, ...]:
        return tuple(row.measure(kind) for row in self.rows)


def _with_background(template: MechanismSpec, bg: float) -> MechanismSpec:
    if template.dependence is None:
        return replace(template, background_prev=bg)
    # the conditionals are the mechanism; the marginal moves with the background
    dep = template.dependence
    marginal = bg * dep.given_background + (1.0 - bg) * dep.given_no_background
    if template._dependence_on_increase():
        return replace(template, background_prev=bg, switch_prev_increase=marginal)
    return replace(template, background_prev=bg, switch_prev_decrease=marginal)


def stability_table(
    template: MechanismSpec, background_prevs: Sequence[float]
) -> StabilityReport:
    """Rerun one mechanism across background prevalences and tabulate all scales.

    The switch prevalences are held fixed while the background (and with it
    the baseline risk) sweeps, which is exactly the regime where a
    mechanism's characteristic measure shows itself by not moving.
    """
    rows = []
    for bg in background_prevs:
        mech = _with_background(template, validate_risk(bg, "background_prev"))
        pair = analytic_risks(mech)
        values: dict[EffectMeasureKind, float | None] = {}
        for kind in EffectMeasureKind:
            try:
                values[kind] = compute_measure(kind, pair).value
            except UndefinedMeasure:
                values[kind] = None
        rows.append(
            StabilityRow(
                background_prev=bg,
                p0=pair.p0,
                p1=pair.p1,
                rd=values[EffectMeasureKind.RD],
                rr=values[EffectMeasureKind.RR],
                odds_ratio=values[EffectMeasureKind.OR],
                sr=values[EffectMeasureKind.SR],
                switch=values[EffectMeasureKind.SWITCH],
            )
        )
    return StabilityReport(tuple(rows))


def stable_measure_value(mech: MechanismSpec) -> EffectMeasure:
    """The measure a monotone, independent mechanism pins, with its value.

    Outcome-pie mechanisms pin the survival ratio, complement-pie
    mechanisms the risk ratio.  When the switch works on the same side as
    the representation (B-only, D-only) the value is the prevalence of not
    carrying the switch; for the opposing side (C-only, E-only) it is the
    constant implied by the union algebra, 1 / (1 - prevalence).
    """
    if mech.dependence is not None:
        raise DependencePresent(
            "the pinned-measure identities assume switch-background independence"
        )
    inc = mech.switch_prev_increase
    dec = mech.switch_prev_decrease
    if inc > 0.0 and dec > 0.0:
        raise NotMonotone(
            f"both switch prevalences are positive ({inc!r} up, {dec!r} down)"
        )
    if mech.representation is Representation.OUTCOME_PIES:
        kind = EffectMeasureKind.SR
        if dec == 0.0:
            return EffectMeasure(kind, 1.0 - inc)
    else:
        kind = EffectMeasureKind.RR
        if inc == 0.0:
            return EffectMeasure(kind, 1.0 - dec)
    return compute_measure(kind, analytic_risks(mech))


@dataclass(frozen=True)
class FalsificationResult:
    consistent: bool
    violated: str | None = None


def falsification_check(
    kind: SwitchKind, switch_prev: float, observed: RiskPair
) -> FalsificationResult:
    """Check the deterministic implication of one switch type against data.

    A switch carrier's outcome in the arm the switch forces is certain, so
    that arm's risk (or survival) can be no smaller than the switch
    prevalence.
    """
    prev = validate_risk(switch_prev, "switch_prev")
    p0, p1 = observed.p0, observed.p1
    if kind is SwitchKind.B:
        ok, actual, bound = p1 >= prev, p1, "p1"
    elif kind is SwitchKind.C:
        ok, actual, bound = p0 >= prev, p0, "p0"
    elif kind is SwitchKind.D:
        ok, actual, bound = 1.0 - p1 >= prev, 1.0 - p1, "1 - p1"
    elif kind is SwitchKind.E:
        ok, actual, bound = 1.0 - p0 >= prev, 1.0 - p0, "1 - p0"
    else:
        raise TypeError(f"unknown switch kind {kind!r}")
    if ok:
        return FalsificationResult(True)
    return FalsificationResult(
        False,
        f"{bound} = {actual!r} is smaller than the {kind.value} prevalence {prev!r}",
    )


@dataclass(frozen=True)
class SensitivityPoint:
    """Characteristic measure at one level of switch-background dependence."""

    given_background: float
    given_no_background: float
    p0: float
    p1: float
    value: float


def correlation_sensitivity(
    mech: MechanismSpec,
    conditional_prev_range: tuple[float, float],
    steps: int,
) -> list[SensitivityPoint]:
    """Sweep Pr(switch | background event) while holding the marginal fixed.

    Only B-only and D-only mechanisms are supported; each sweep point
    reports the mechanism's characteristic measure (survival ratio for
    B-only, risk ratio for D-only), which drifts from its independence
    value as the dependence grows.
    """
    if mech.dependence is not None:
        raise DependencePresent("the sweep starts from an independence mechanism")
    inc, dec = mech.switch_prev_increase, mech.switch_prev_decrease
    if inc > 0.0 and dec > 0.0:
        raise NotMonotone(
            f"both switch prevalences are positive ({inc!r} up, {dec!r} down)"
        )
    if mech.representation is Representation.OUTCOME_PIES:
        if dec > 0.0:
            raise ValueError("the sweep supports B-only mechanisms, not C-only")
        kind, marginal = EffectMeasureKind.SR, inc
    else:
        if inc > 0.0:
            raise ValueError("the sweep supports D-only mechanisms, not E-only")
        kind, marginal = EffectMeasureKind.RR, dec
    lo = validate_risk(conditional_prev_range[0], "conditional_prev_range[0]")
    hi = validate_risk(conditional_prev_range[1], "conditional_prev_range[1]")
    if lo > hi:
        raise ValueError(f"empty sweep range ({lo!r}, {hi!r})")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps!r}")

    bg = mech.background_prev
    points = []
    for i in range(steps):
        c1 = lo if steps == 1 else lo + (hi - lo) * i / (steps - 1)
        if bg == 1.0:
            if abs(c1 - marginal) > DEPENDENCE_TOL:
                raise InfeasibleDependence(
                    f"with background prevalence 1, Pr(switch | background) "
                    f"must equal the marginal {marginal!r}, got {c1!r}"
                )
            c0 = 0.0
        else:
            c0 = (marginal - bg * c1) / (1.0 - bg)
            if c0 < -1e-12 or c0 > 1.0 + 1e-12:
                raise InfeasibleDependence(
                    f"no joint keeps the marginal at {marginal!r} with "
                    f"Pr(switch | background) = {c1!r}"
                )
            c0 = min(1.0, max(0.0, c0))
        swept = replace(mech, dependence=SwitchDependence(c1, c0))
        pair = analytic_risks(swept)
        value = compute_measure(kind, pair).value
        points.append(SensitivityPoint(c1, c0, pair.p0, pair.p1, value))
    return points


@dataclass(frozen=True)
class EffectBounds:
    """Partial-identification interval for Pr(no risk-increase switch)."""

    kind: EffectMeasureKind
    lower: float | None
    upper: float | None
    feasible: bool

    def __post_init__(self) -> None:
        if self.feasible:
            if self.lower is None or self.upper is None:
                raise ValueError("feasible bounds need both endpoints")
            if self.lower > self.upper:
                raise ValueError(
                    f"lower bound {self.lower!r} exceeds upper bound {self.upper!r}"
                )


def bounds_nonmonotone(
    observed: RiskPair,
    max_opposing_prev: float,
    grid_resolution: int = DEFAULT_BOUNDS_RESOLUTION,
) -> EffectBounds:
    """Bound Pr(no risk-increase switch) when monotonicity is relaxed.

    Enumerates outcome-pie mechanisms on a uniform grid over the
    background, increase-switch and opposing-switch prevalences (the
    latter capped at max_opposing_prev, all three independent) and keeps
    the triples whose implied risks reproduce the observed pair within
    half a grid step.  With max_opposing_prev = 0 this recovers the
    monotone point identification, survival ratio = Pr(no switch); a
    positive cap widens the interval.
    """
    max_opposing = validate_risk(max_opposing_prev, "max_opposing_prev")
    if grid_resolution < 2:
        raise ValueError(f"grid_resolution must be >= 2, got {grid_resolution!r}")
    step = 1.0 / (grid_resolution - 1)
    tol = step / 2.0
    grid = np.arange(grid_resolution) / (grid_resolution - 1)
    opposing_values = grid[grid <= max_opposing]

    p0, p1 = observed.p0, observed.p1
    best_min: float | None = None
    best_max: float | None = None
    for c in opposing_values:
        implied_p0 = grid + (1.0 - grid) * c
        for u in grid[np.abs(implied_p0 - p0) <= tol]:
            implied_p1 = u + (1.0 - u) * grid
            hits = np.nonzero(np.abs(implied_p1 - p1) <= tol)[0]
            if hits.size == 0:
                continue
            b_lo = float(grid[hits[0]])
            b_hi = float(grid[hits[-1]])
            best_min = b_lo if best_min is None else min(best_min, b_lo)
            best_max = b_hi if best_max is None else max(best_max, b_hi)
    if best_min is None or best_max is None:
        raise Infeasible(
            f"no mechanism with opposing prevalence <= {max_opposing!r} on a "
            f"{grid_resolution}-point grid reproduces p0 = {p0!r}, p1 = {p1!r}"
        )
    return EffectBounds(
        kind=EffectMeasureKind.SR,
        lower=1.0 - best_max,
        upper=1.0 - best_min,
        feasible=True,
    )
