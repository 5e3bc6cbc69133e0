"""Numerical evidence that no mechanism can stabilize the odds ratio.

A two-setting scenario holds one covariate stratum observed in two
settings plus their pooled population.  If one odds ratio described the
stratum in both settings and in the pool, the three log odds ratios would
agree; or_residual measures the worst disagreement.  The randomized search
looks for a non-degenerate scenario with a vanishing residual (the
impossibility result predicts it finds none), and the collapsibility audit
contrasts the odds ratio with the four scales that do pool cleanly.

All randomness comes from numpy's default PCG64 generator under an
explicit seed, so every search and audit is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidPrediction
from .measures import (
    EffectMeasure,
    EffectMeasureKind,
    RiskPair,
    StratumRow,
    apply_effect,
    compute_measure,
    pool_strata,
)

COLLAPSIBLE_TOL = 1e-9
# sampled risks stay this far inside (0, 1) to keep log odds well conditioned
_RISK_MARGIN = 1e-3

_SEARCH_FAMILIES = (None, "equal_risks", "null")


def _check_open_unit(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie strictly inside (0, 1), got {value!r}")
    return value


@dataclass(frozen=True)
class TwoSettingScenario:
    """Conditional risks for one stratum in settings s and t, plus the
    share w of setting s in the pooled population."""

    p0_s: float
    p1_s: float
    p0_t: float
    p1_t: float
    w: float

    def __post_init__(self) -> None:
        for name in ("p0_s", "p1_s", "p0_t", "p1_t", "w"):
            object.__setattr__(self, name, _check_open_unit(getattr(self, name), name))


def pooled_pair(scenario: TwoSettingScenario) -> RiskPair:
    """Risks in the w : (1 - w) mixture of the two settings."""
    w = scenario.w
    return RiskPair(
        p0=w * scenario.p0_s + (1.0 - w) * scenario.p0_t,
        p1=w * scenario.p1_s + (1.0 - w) * scenario.p1_t,
    )


def _log_odds(p: float) -> float:
    return math.log(p) - math.log1p(-p)


def or_residual(scenario: TwoSettingScenario) -> float:
    """Worst absolute disagreement in the three-way log-odds-ratio equality.

    Zero residual means one odds ratio serves setting s, setting t and
    their pool simultaneously.
    """
    lor_s = _log_odds(scenario.p1_s) - _log_odds(scenario.p0_s)
    lor_t = _log_odds(scenario.p1_t) - _log_odds(scenario.p0_t)
    pool = pooled_pair(scenario)
    lor_pool = _log_odds(pool.p1) - _log_odds(pool.p0)
    return max(abs(lor_s - lor_t), abs(lor_s - lor_pool))


def counterexample_search(
    trials: int,
    seed: int,
    residual_tol: float = 1e-10,
    degeneracy_tol: float = 1e-3,
    family: str | None = None,
) -> TwoSettingScenario | None:
    """Randomized hunt for a non-degenerate scenario with a tiny residual.

    Scenarios are sampled with the two settings sharing one odds ratio by
    construction (p1_t is solved from the other three risks), so only the
    pooled equality can fail.  A hit must keep the residual below
    residual_tol while separating both the settings and the arms by more
    than degeneracy_tol; the two known residual-zero families, equal risks
    across settings ("equal_risks") and no effect in either setting
    ("null"), are degenerate and can be sampled directly via family.
    Returns the first hit, or None.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    if residual_tol <= 0.0 or degeneracy_tol <= 0.0:
        raise ValueError("residual_tol and degeneracy_tol must be positive")
    if family not in _SEARCH_FAMILIES:
        raise ValueError(f"unknown family {family!r}; use one of {_SEARCH_FAMILIES}")

    rng = np.random.default_rng(seed)
    lo, hi = _RISK_MARGIN, 1.0 - _RISK_MARGIN
    w = rng.uniform(lo, hi, trials)
    if family == "equal_risks":
        p0_s = rng.uniform(lo, hi, trials)
        p1_s = rng.uniform(lo, hi, trials)
        p0_t, p1_t = p0_s, p1_s
    elif family == "null":
        p0_s = rng.uniform(lo, hi, trials)
        p0_t = rng.uniform(lo, hi, trials)
        p1_s, p1_t = p0_s, p0_t
    else:
        p0_s = rng.uniform(lo, hi, trials)
        p1_s = rng.uniform(lo, hi, trials)
        p0_t = rng.uniform(lo, hi, trials)
        lor_s = np.log(p1_s) - np.log1p(-p1_s) - (np.log(p0_s) - np.log1p(-p0_s))
        odds_t = np.exp(lor_s + np.log(p0_t) - np.log1p(-p0_t))
        p1_t = odds_t / (1.0 + odds_t)

    lor_s = np.log(p1_s) - np.log1p(-p1_s) - (np.log(p0_s) - np.log1p(-p0_s))
    lor_t = np.log(p1_t) - np.log1p(-p1_t) - (np.log(p0_t) - np.log1p(-p0_t))
    pool0 = w * p0_s + (1.0 - w) * p0_t
    pool1 = w * p1_s + (1.0 - w) * p1_t
    lor_pool = np.log(pool1) - np.log1p(-pool1) - (np.log(pool0) - np.log1p(-pool0))
    residual = np.maximum(np.abs(lor_s - lor_t), np.abs(lor_s - lor_pool))

    setting_gap = np.maximum(np.abs(p0_s - p0_t), np.abs(p1_s - p1_t))
    effect_gap = np.maximum(np.abs(p1_s - p0_s), np.abs(p1_t - p0_t))
    hits = (
        (residual < residual_tol)
        & (setting_gap > degeneracy_tol)
        & (effect_gap > degeneracy_tol)
    )
    if not hits.any():
        return None
    i = int(np.argmax(hits))
    return TwoSettingScenario(
        p0_s=float(p0_s[i]),
        p1_s=float(p1_s[i]),
        p0_t=float(p0_t[i]),
        p1_t=float(p1_t[i]),
        w=float(w[i]),
    )


@dataclass(frozen=True)
class CollapsibilityWitness:
    """Two strata sharing one measure value, with the pooled value."""

    shared_value: float
    stratum_a: RiskPair
    stratum_b: RiskPair
    weight_a: float
    pooled_value: float
    violation: float


@dataclass(frozen=True)
class CollapsibilityReport:
    kind: EffectMeasureKind
    trials: int
    seed: int
    collapsible: bool
    worst_violation: float
    witness: CollapsibilityWitness | None


def _valid_baseline_range(measure: EffectMeasure) -> tuple[float, float]:
    """Interval of baseline risks (inside [0.01, 0.99]) where the effect
    function stays in [0, 1]."""
    lo, hi = 0.01, 0.99
    kind, value = measure.kind, measure.value
    if kind is EffectMeasureKind.RD:
        lo, hi = max(lo, -value), min(hi, 1.0 - value)
    elif kind is EffectMeasureKind.RR and value > 1.0:
        hi = min(hi, 1.0 / value)
    elif kind is EffectMeasureKind.SR and value > 1.0:
        lo = max(lo, 1.0 - 1.0 / value)
    return lo, hi


def collapsibility_audit(
    kind: EffectMeasureKind, trials: int, seed: int
) -> CollapsibilityReport:
    """Sample two-stratum mixtures sharing one measure value and compare
    the pooled value against the shared one.

    The risk difference, risk ratio, survival ratio and switch scales pool
    exactly (their effect functions are affine in the baseline risk); the
    odds ratio does not, and the report's witness shows the worst clash.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    rng = np.random.default_rng(seed)
    worst = -1.0
    witness = None
    for _ in range(trials):
        pair_a = RiskPair(rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99))
        shared = compute_measure(kind, pair_a)
        lo, hi = _valid_baseline_range(shared)
        q0 = float(rng.uniform(lo, hi))
        try:
            q1 = apply_effect(shared, q0)
        except InvalidPrediction:
            # the range above makes this unreachable; skip defensively
            continue
        pair_b = RiskPair(q0, q1)
        weight_a = float(rng.uniform(0.05, 0.95))
        pooled = pool_strata(
            [StratumRow(weight_a, pair_a), StratumRow(1.0 - weight_a, pair_b)]
        )
        pooled_value = compute_measure(kind, pooled).value
        violation = abs(pooled_value - shared.value)
        if violation > worst:
            worst = violation
            witness = CollapsibilityWitness(
                shared_value=shared.value,
                stratum_a=pair_a,
                stratum_b=pair_b,
                weight_a=weight_a,
                pooled_value=pooled_value,
                violation=violation,
            )
    return CollapsibilityReport(
        kind=kind,
        trials=trials,
        seed=seed,
        collapsible=worst <= COLLAPSIBLE_TOL,
        worst_violation=worst,
        witness=witness,
    )
