"""Unit and property tests for the effect-measure algebra."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from switchrisk import (
    ClosureResult,
    EffectMeasure,
    EffectMeasureKind,
    InvalidPrediction,
    RiskPair,
    StratumRow,
    UndefinedMeasure,
    WeightError,
    apply_effect,
    closure_check,
    compute_measure,
    convert_measure,
    pool_strata,
    prediction_equivalent,
    recode_outcome,
)

K = EffectMeasureKind
KINDS = list(EffectMeasureKind)

interior_risks = st.floats(min_value=0.001, max_value=0.999)


@st.composite
def interior_pairs(draw, min_gap: float = 0.0):
    p0 = draw(interior_risks)
    p1 = draw(interior_risks)
    if min_gap and abs(p1 - p0) < min_gap:
        p1 = p0 + min_gap if p0 <= 0.5 else p0 - min_gap
    return RiskPair(p0, p1)


class TestRiskPair:
    def test_accepts_boundaries(self):
        RiskPair(0.0, 1.0)

    @pytest.mark.parametrize("p0,p1", [(-0.1, 0.5), (0.5, 1.1), (float("nan"), 0.5)])
    def test_rejects_invalid(self, p0, p1):
        with pytest.raises(ValueError):
            RiskPair(p0, p1)


class TestEffectMeasure:
    @pytest.mark.parametrize(
        "kind,value",
        [(K.RD, 1.5), (K.RD, -1.5), (K.RR, -0.1), (K.OR, -2.0), (K.SR, -0.5),
         (K.SWITCH, 1.5), (K.SWITCH, -2.0), (K.RR, float("inf"))],
    )
    def test_rejects_out_of_range(self, kind, value):
        with pytest.raises(ValueError):
            EffectMeasure(kind, value)

    def test_null_values(self):
        assert K.RD.null_value == 0.0
        assert K.SWITCH.null_value == 0.0
        for kind in (K.RR, K.OR, K.SR):
            assert kind.null_value == 1.0


class TestComputeMeasure:
    def test_known_contrasts(self):
        pair = RiskPair(0.005, 0.01495)
        assert compute_measure(K.RD, pair).value == pytest.approx(0.00995, abs=1e-12)
        assert compute_measure(K.RR, pair).value == pytest.approx(2.99, abs=1e-12)
        assert compute_measure(K.SR, pair).value == pytest.approx(0.99, abs=1e-12)

    def test_switch_decrease_is_relative_to_baseline(self):
        # risk halved: the switch scale reads -0.5
        assert compute_measure(K.SWITCH, RiskPair(0.02, 0.01)).value == -0.5

    def test_switch_increase_works_on_survival(self):
        value = compute_measure(K.SWITCH, RiskPair(0.02, 0.04)).value
        assert value == pytest.approx(1.0 - 0.96 / 0.98, abs=1e-12)

    def test_odds_ratio_value(self):
        value = compute_measure(K.OR, RiskPair(0.001, 0.01099)).value
        expected = (0.01099 / 0.98901) / (0.001 / 0.999)
        assert value == pytest.approx(expected, abs=1e-9)

    def test_switch_null_band(self):
        assert compute_measure(K.SWITCH, RiskPair(0.3, 0.3)).value == 0.0
        assert compute_measure(K.SWITCH, RiskPair(0.3, 0.3 + 5e-13)).value == 0.0
        assert compute_measure(K.SWITCH, RiskPair(0.3, 0.3 + 5e-9)).value != 0.0

    def test_switch_null_band_override(self):
        pair = RiskPair(0.3, 0.3005)
        assert compute_measure(K.SWITCH, pair, tol=1e-3).value == 0.0
        assert compute_measure(K.SWITCH, pair, tol=1e-6).value > 0.0

    @pytest.mark.parametrize(
        "kind,pair",
        [
            (K.RR, RiskPair(0.0, 0.5)),
            (K.OR, RiskPair(0.0, 0.5)),
            (K.OR, RiskPair(1.0, 0.5)),
            (K.OR, RiskPair(0.5, 1.0)),
            (K.SR, RiskPair(1.0, 0.5)),
        ],
    )
    def test_undefined_denominators(self, kind, pair):
        with pytest.raises(UndefinedMeasure) as excinfo:
            compute_measure(kind, pair)
        assert excinfo.value.kind is kind

    def test_rd_and_switch_defined_everywhere(self):
        for p0 in (0.0, 0.5, 1.0):
            for p1 in (0.0, 0.5, 1.0):
                pair = RiskPair(p0, p1)
                compute_measure(K.RD, pair)
                compute_measure(K.SWITCH, pair)

    @given(interior_pairs())
    def test_values_land_in_declared_ranges(self, pair):
        for kind in KINDS:
            compute_measure(kind, pair)  # EffectMeasure rejects out-of-range

    @given(interior_pairs(min_gap=1e-6))
    def test_switch_sign_tracks_direction(self, pair):
        value = compute_measure(K.SWITCH, pair).value
        if pair.p1 > pair.p0:
            assert value > 0.0
        else:
            assert value < 0.0


class TestApplyEffect:
    def test_switch_examples(self):
        assert apply_effect(EffectMeasure(K.SWITCH, 0.02), 0.03) == pytest.approx(
            0.0494, abs=1e-12
        )
        assert apply_effect(EffectMeasure(K.SWITCH, -0.5), 0.03) == pytest.approx(
            0.015, abs=1e-12
        )

    def test_switch_boundary_baselines(self):
        assert apply_effect(EffectMeasure(K.SWITCH, 0.25), 0.0) == 0.25
        assert apply_effect(EffectMeasure(K.SWITCH, -0.25), 1.0) == 0.75

    def test_invalid_prediction_carries_raw_value(self):
        with pytest.raises(InvalidPrediction) as excinfo:
            apply_effect(EffectMeasure(K.RR, 2.0), 0.6)
        assert excinfo.value.raw_value == pytest.approx(1.2, abs=1e-12)
        assert excinfo.value.kind is K.RR

    @pytest.mark.parametrize(
        "kind,value,p",
        [(K.RD, 0.5, 0.7), (K.RD, -0.5, 0.2), (K.SR, 1.5, 0.1), (K.RR, 3.0, 0.4)],
    )
    def test_open_scales_can_escape(self, kind, value, p):
        with pytest.raises(InvalidPrediction):
            apply_effect(EffectMeasure(kind, value), p)

    def test_odds_ratio_zero_at_certain_baseline(self):
        # continuity in p pins g(1) = 0 for a zero odds ratio
        assert apply_effect(EffectMeasure(K.OR, 0.0), 1.0) == 0.0
        assert apply_effect(EffectMeasure(K.OR, 3.0), 1.0) == 1.0

    @given(st.sampled_from(KINDS), interior_risks)
    def test_null_is_identity(self, kind, p):
        null = EffectMeasure(kind, kind.null_value)
        assert apply_effect(null, p) == pytest.approx(p, abs=1e-12)

    @given(st.sampled_from(KINDS), st.data())
    def test_effect_functions_are_increasing(self, kind, data):
        pair = data.draw(interior_pairs(min_gap=1e-4))
        measure = compute_measure(kind, pair)
        low = data.draw(st.floats(min_value=0.001, max_value=0.99))
        high = low + data.draw(st.floats(min_value=1e-5, max_value=0.999 - low))
        try:
            g_low = apply_effect(measure, low)
            g_high = apply_effect(measure, high)
        except InvalidPrediction:
            return
        assert g_low < g_high


class TestConvertMeasure:
    def test_survival_ratio_to_switch(self):
        measure = compute_measure(K.SR, RiskPair(0.3, 0.1))
        converted = convert_measure(measure, 0.3, K.SWITCH)
        assert converted.value == pytest.approx(-2.0 / 3.0, abs=1e-12)

    def test_protective_risk_ratio_to_switch(self):
        converted = convert_measure(EffectMeasure(K.RR, 0.05), 0.02, K.SWITCH)
        assert converted.value == -0.95

    def test_null_converts_to_null(self):
        for to_kind in KINDS:
            converted = convert_measure(EffectMeasure(K.RR, 1.0), 0.37, to_kind)
            assert converted.value == pytest.approx(to_kind.null_value, abs=1e-12)

    @given(st.sampled_from(KINDS), st.sampled_from(KINDS), interior_pairs())
    def test_round_trip(self, kind_a, kind_b, pair):
        original = compute_measure(kind_a, pair)
        there = convert_measure(original, pair.p0, kind_b)
        back = convert_measure(there, pair.p0, kind_a)
        assert math.isclose(back.value, original.value, rel_tol=1e-9, abs_tol=1e-9)


class TestRecodeOutcome:
    def test_swaps_event_and_complement(self):
        assert recode_outcome(RiskPair(0.2, 0.5)) == RiskPair(0.8, 0.5)

    def test_involution(self):
        pair = RiskPair(0.25, 0.125)
        assert recode_outcome(recode_outcome(pair)) == pair

    @given(interior_pairs())
    def test_switch_antisymmetry(self, pair):
        theta = compute_measure(K.SWITCH, pair).value
        theta_recoded = compute_measure(K.SWITCH, recode_outcome(pair)).value
        assert abs(theta_recoded + theta) <= 1e-12

    @given(interior_pairs())
    def test_survival_and_risk_ratio_are_dual(self, pair):
        sr = compute_measure(K.SR, pair).value
        rr_recoded = compute_measure(K.RR, recode_outcome(pair)).value
        assert rr_recoded == pytest.approx(sr, rel=1e-12)

    @given(interior_pairs())
    def test_odds_ratio_inverts(self, pair):
        odds = compute_measure(K.OR, pair).value
        odds_recoded = compute_measure(K.OR, recode_outcome(pair)).value
        assert odds_recoded * odds == pytest.approx(1.0, rel=1e-9)


class TestPoolStrata:
    def test_two_strata(self):
        pooled = pool_strata(
            [
                StratumRow(0.25, RiskPair(0.1, 0.3)),
                StratumRow(0.75, RiskPair(0.5, 0.7)),
            ]
        )
        assert pooled.p0 == pytest.approx(0.4, abs=1e-12)
        assert pooled.p1 == pytest.approx(0.6, abs=1e-12)

    def test_single_stratum_is_identity(self):
        pair = RiskPair(0.125, 0.625)
        assert pool_strata([StratumRow(1.0, pair)]) == pair

    def test_rejects_empty(self):
        with pytest.raises(WeightError):
            pool_strata([])

    def test_rejects_bad_sum(self):
        rows = [StratumRow(0.5, RiskPair(0.1, 0.2)), StratumRow(0.4, RiskPair(0.3, 0.4))]
        with pytest.raises(WeightError):
            pool_strata(rows)

    def test_rejects_negative_weight(self):
        with pytest.raises(WeightError):
            StratumRow(-0.1, RiskPair(0.1, 0.2))

    def test_tolerates_tiny_weight_slack(self):
        rows = [
            StratumRow(0.5 + 2e-10, RiskPair(0.2, 0.4)),
            StratumRow(0.5, RiskPair(0.2, 0.4)),
        ]
        pooled = pool_strata(rows)
        assert pooled.p0 == pytest.approx(0.2, abs=1e-9)


class TestClosure:
    def test_switch_is_closed(self):
        for value in (-1.0, -0.5, 0.0, 0.5, 0.999, 1.0):
            assert closure_check(K.SWITCH, value) == ClosureResult(True, None, None)

    def test_odds_ratio_is_closed(self):
        for value in (0.0, 0.01, 1.0, 100.0):
            assert closure_check(K.OR, value).closed

    def test_risk_ratio_above_one_escapes(self):
        result = closure_check(K.RR, 2.0)
        assert not result.closed
        assert result.violation_at == pytest.approx(0.501, abs=1e-12)
        assert result.raw_value > 1.0

    def test_survival_ratio_above_one_escapes_at_zero(self):
        result = closure_check(K.SR, 1.5)
        assert result == ClosureResult(False, 0.0, -0.5)

    def test_risk_difference_escapes(self):
        assert not closure_check(K.RD, 0.25).closed
        assert not closure_check(K.RD, -0.25).closed

    @given(st.floats(min_value=-1.0, max_value=1.0))
    def test_switch_closed_for_any_value(self, value):
        assert closure_check(K.SWITCH, value, grid_size=101).closed


class TestPredictionEquivalence:
    def test_sr_and_switch_agree_for_risk_increase(self):
        # a survival ratio below one and the switch value it implies
        delta = 0.8
        assert prediction_equivalent(
            EffectMeasure(K.SR, delta), EffectMeasure(K.SWITCH, 1.0 - delta)
        )

    def test_rr_and_switch_agree_for_risk_decrease(self):
        beta = 0.7
        assert prediction_equivalent(
            EffectMeasure(K.RR, beta), EffectMeasure(K.SWITCH, beta - 1.0)
        )

    def test_different_scales_disagree(self):
        rd = EffectMeasure(K.RD, 0.02)
        rr = EffectMeasure(K.RR, 2.0)
        assert not prediction_equivalent(rd, rr)

    def test_self_equivalence(self):
        measure = EffectMeasure(K.OR, 2.5)
        assert prediction_equivalent(measure, measure)


class TestCollapsibility:
    @staticmethod
    def _valid_baseline_interval(kind, value):
        lo, hi = 1e-3, 1.0 - 1e-3
        if kind is K.RD:
            lo, hi = max(lo, -value), min(hi, 1.0 - value)
        elif kind is K.RR and value > 1.0:
            hi = min(hi, 1.0 / value)
        elif kind is K.SR and value > 1.0:
            lo = max(lo, 1.0 - 1.0 / value)
        return lo, hi

    @given(
        st.sampled_from([K.RD, K.RR, K.SR, K.SWITCH]),
        st.floats(min_value=0.05, max_value=0.95),
        st.floats(min_value=0.05, max_value=0.95),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.05, max_value=0.95),
    )
    def test_affine_scales_pool_exactly(self, kind, p0_a, p1_a, t, weight):
        shared = compute_measure(kind, RiskPair(p0_a, p1_a))
        lo, hi = self._valid_baseline_interval(kind, shared.value)
        q0 = lo + t * (hi - lo)
        q1 = apply_effect(shared, q0)
        pooled = pool_strata(
            [
                StratumRow(weight, RiskPair(p0_a, p1_a)),
                StratumRow(1.0 - weight, RiskPair(q0, q1)),
            ]
        )
        pooled_value = compute_measure(kind, pooled).value
        assert math.isclose(pooled_value, shared.value, rel_tol=1e-9, abs_tol=1e-9)

    def test_odds_ratio_counterexample(self):
        stratum_a = RiskPair(0.1, 4.0 / 13.0)
        stratum_b = RiskPair(0.6, 6.0 / 7.0)
        or_a = compute_measure(K.OR, stratum_a).value
        or_b = compute_measure(K.OR, stratum_b).value
        assert or_a == pytest.approx(4.0, abs=1e-12)
        assert or_b == pytest.approx(4.0, abs=1e-12)
        pooled = pool_strata([StratumRow(0.5, stratum_a), StratumRow(0.5, stratum_b)])
        pooled_or = compute_measure(K.OR, pooled).value
        assert abs(pooled_or - or_a) > 0.01
