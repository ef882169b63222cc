from __future__ import annotations

import pytest

from fairaudit import (
    AuditError,
    Definition,
    GroupedPredictions,
    InputError,
    PredictionRecord,
    balance_gap,
    calibration_gaps,
    evaluate,
)

from .conftest import (
    CAL_MEN,
    CAL_WOMEN,
    DP_MEN,
    DP_WOMEN,
    MEN,
    PE_MEN,
    WOMEN,
    grouped_from_matrices,
    random_nondegenerate_matrix,
)


class TestDemographicParity:
    def test_optimised_tables_satisfy_with_zero_gap(self):
        grouped = grouped_from_matrices({"men": DP_MEN, "women": DP_WOMEN}, favourable=0)
        result = evaluate(grouped, Definition.DEMOGRAPHIC_PARITY)
        # Both groups sit at NR = 2/3.
        assert result.per_group_stats["men"]["NR"] == pytest.approx(24 / 36)
        assert result.per_group_stats["women"]["NR"] == pytest.approx(18 / 27)
        assert result.max_gap < 1e-9
        assert result.satisfied is True

    def test_original_tables_fail_at_default_tolerance(self):
        grouped = grouped_from_matrices({"men": MEN, "women": WOMEN}, favourable=0)
        result = evaluate(grouped, Definition.DEMOGRAPHIC_PARITY, tolerance=0.01)
        assert result.max_gap == pytest.approx(abs(29 / 42 - 13 / 21), abs=1e-12)
        assert result.max_gap == pytest.approx(0.071, abs=5e-4)
        assert result.satisfied is False

    def test_favourable_one_compares_positive_rate(self):
        grouped = grouped_from_matrices({"men": MEN, "women": WOMEN}, favourable=1)
        result = evaluate(grouped, Definition.DEMOGRAPHIC_PARITY)
        assert result.per_group_stats["men"]["PR"] == pytest.approx(13 / 42)
        assert result.per_group_stats["women"]["PR"] == pytest.approx(8 / 21)

    def test_works_without_ground_truth(self):
        records = [
            PredictionRecord(sensitive="a", y_pred=1),
            PredictionRecord(sensitive="a", y_pred=0),
            PredictionRecord(sensitive="b", y_pred=1),
            PredictionRecord(sensitive="b", y_pred=0),
        ]
        grouped = GroupedPredictions(
            groups={"a": records[:2], "b": records[2:]}, favourable=1
        )
        assert evaluate(grouped, Definition.DEMOGRAPHIC_PARITY).satisfied is True


class TestEqualisedOdds:
    def test_optimised_tables_satisfy(self):
        grouped = grouped_from_matrices({"men": CAL_MEN, "women": CAL_WOMEN})
        result = evaluate(grouped, Definition.EQUALISED_ODDS)
        assert result.per_group_stats["men"]["TPR"] == pytest.approx(2 / 3)
        assert result.per_group_stats["women"]["TPR"] == pytest.approx(2 / 3)
        assert result.per_group_stats["men"]["TNR"] == pytest.approx(5 / 6)
        assert result.per_group_stats["women"]["TNR"] == pytest.approx(5 / 6)
        assert result.max_gap == 0.0
        assert result.satisfied is True

    def test_missing_ground_truth_is_rejected(self):
        records = [
            PredictionRecord(sensitive="a", y_pred=1),
            PredictionRecord(sensitive="b", y_pred=0),
        ]
        grouped = GroupedPredictions(
            groups={"a": records[:1], "b": records[1:]}, favourable=0
        )
        with pytest.raises(AuditError, match="ground truth required"):
            evaluate(grouped, Definition.EQUALISED_ODDS)

    def test_undefined_rate_makes_verdict_not_evaluable(self):
        # Group "b" has no actual positives, so TPR does not exist there.
        records_a = [
            PredictionRecord(sensitive="a", y_true=1, y_pred=1),
            PredictionRecord(sensitive="a", y_true=0, y_pred=0),
        ]
        records_b = [PredictionRecord(sensitive="b", y_true=0, y_pred=0)] * 3
        grouped = GroupedPredictions(groups={"a": records_a, "b": records_b}, favourable=0)
        result = evaluate(grouped, Definition.EQUALISED_ODDS)
        assert result.satisfied is None
        assert result.max_gap is None
        assert any("TPR undefined" in note for note in result.notes)


class TestPredictiveEquality:
    def test_optimised_tables_satisfy_but_odds_fail(self):
        grouped = grouped_from_matrices({"men": PE_MEN, "women": CAL_WOMEN})
        pe = evaluate(grouped, Definition.PREDICTIVE_EQUALITY)
        assert pe.per_group_stats["men"]["FPR"] == pytest.approx(1 / 6)
        assert pe.per_group_stats["women"]["FPR"] == pytest.approx(1 / 6)
        assert pe.satisfied is True
        odds = evaluate(grouped, Definition.EQUALISED_ODDS, tolerance=0.01)
        assert odds.max_gap == pytest.approx(3 / 4 - 2 / 3, abs=1e-12)
        assert odds.max_gap == pytest.approx(0.083, abs=5e-4)
        assert odds.satisfied is False


class TestEqualSelectionParity:
    def test_counts_compared_in_absolute_terms(self):
        grouped = grouped_from_matrices({"men": MEN, "women": WOMEN}, favourable=0)
        result = evaluate(grouped, Definition.EQUAL_SELECTION_PARITY)
        assert result.per_group_stats["men"]["favourable_count"] == 29
        assert result.per_group_stats["women"]["favourable_count"] == 13
        assert result.max_gap == 16.0
        assert result.satisfied is False

    def test_equal_counts_satisfy_even_with_unequal_sizes(self):
        records = (
            [PredictionRecord(sensitive="a", y_pred=1)] * 4
            + [PredictionRecord(sensitive="a", y_pred=0)] * 6
            + [PredictionRecord(sensitive="b", y_pred=1)] * 4
            + [PredictionRecord(sensitive="b", y_pred=0)] * 1
        )
        grouped = GroupedPredictions(
            groups={"a": records[:10], "b": records[10:]}, favourable=1
        )
        result = evaluate(grouped, Definition.EQUAL_SELECTION_PARITY)
        assert result.max_gap == 0.0
        assert result.satisfied is True


class TestConditionalStatisticalParity:
    @staticmethod
    def _records(sensitive, stratum, y_pred, count):
        return [
            PredictionRecord(
                sensitive=sensitive, y_pred=y_pred, legitimate={"prior": stratum}
            )
        ] * count

    def test_parity_within_every_stratum(self):
        a = (
            self._records("a", "yes", 1, 5)
            + self._records("a", "yes", 0, 5)
            + self._records("a", "no", 1, 2)
            + self._records("a", "no", 0, 8)
        )
        b = (
            self._records("b", "yes", 1, 10)
            + self._records("b", "yes", 0, 10)
            + self._records("b", "no", 1, 1)
            + self._records("b", "no", 0, 4)
        )
        grouped = GroupedPredictions(groups={"a": a, "b": b}, favourable=1)
        result = evaluate(
            grouped, Definition.CONDITIONAL_STATISTICAL_PARITY, legitimate=["prior"]
        )
        assert result.satisfied is True
        assert result.per_group_stats["a"]["prior=yes"] == pytest.approx(0.5)
        assert result.per_group_stats["b"]["prior=no"] == pytest.approx(0.2)

    def test_stratum_below_min_support_is_reported_not_judged(self):
        a = self._records("a", "yes", 1, 6) + self._records("a", "no", 1, 2)
        b = self._records("b", "yes", 1, 6) + self._records("b", "no", 0, 2)
        grouped = GroupedPredictions(groups={"a": a, "b": b}, favourable=1)
        result = evaluate(
            grouped,
            Definition.CONDITIONAL_STATISTICAL_PARITY,
            legitimate=["prior"],
            min_support=5,
        )
        # The divergent "no" stratum has support 2 < 5, so the verdict rests
        # on the agreeing "yes" stratum alone.
        assert result.satisfied is True
        assert any("prior=no" in note and "not judged" in note for note in result.notes)

    def test_no_supported_stratum_is_not_evaluable(self):
        a = self._records("a", "yes", 1, 2)
        b = self._records("b", "yes", 1, 2)
        grouped = GroupedPredictions(groups={"a": a, "b": b}, favourable=1)
        result = evaluate(
            grouped, Definition.CONDITIONAL_STATISTICAL_PARITY, legitimate=["prior"]
        )
        assert result.satisfied is None

    def test_missing_attribute_is_an_input_error(self):
        records = [
            PredictionRecord(sensitive="a", y_pred=1),
            PredictionRecord(sensitive="b", y_pred=1),
        ]
        grouped = GroupedPredictions(
            groups={"a": records[:1], "b": records[1:]}, favourable=1
        )
        with pytest.raises(InputError, match="legitimate"):
            evaluate(grouped, Definition.CONDITIONAL_STATISTICAL_PARITY, legitimate=["prior"])
        with pytest.raises(InputError, match="needs the names"):
            evaluate(grouped, Definition.CONDITIONAL_STATISTICAL_PARITY)


class TestCalibration:
    def test_identical_groups_have_zero_gap(self, rng):
        def make(sensitive):
            out = []
            for _ in range(200):
                s = rng.random()
                out.append(
                    PredictionRecord(
                        sensitive=sensitive, y_true=int(rng.random() < s), score=s
                    )
                )
            return out

        state = rng.getstate()
        a = make("a")
        rng.setstate(state)  # identical draws for the second group
        b = make("b")
        grouped = GroupedPredictions(groups={"a": a, "b": b}, favourable=1)
        result = calibration_gaps(grouped, bins=10, min_support=5)
        assert result.max_gap == pytest.approx(0.0, abs=1e-12)

    def test_single_bin_fixture_gap(self):
        a = [PredictionRecord(sensitive="a", y_true=1, score=0.9)] * 8 + [
            PredictionRecord(sensitive="a", y_true=0, score=0.9)
        ] * 2
        b = [PredictionRecord(sensitive="b", y_true=1, score=0.9)] * 4 + [
            PredictionRecord(sensitive="b", y_true=0, score=0.9)
        ] * 6
        grouped = GroupedPredictions(groups={"a": a, "b": b}, favourable=1)
        result = calibration_gaps(grouped, bins=10, min_support=5)
        assert result.max_gap == pytest.approx(0.4)
        assert result.satisfied is False

    def test_binary_scores_reproduce_fdr_for_comparison(self):
        grouped = grouped_from_matrices(
            {"men": CAL_MEN, "women": CAL_WOMEN}, score_from_pred=True
        )
        result = calibration_gaps(grouped, bins=10, min_support=5)
        assert result.satisfied is True
        assert result.max_gap == pytest.approx(0.0, abs=1e-12)
        # Bottom bin holds the negative predictions: positive fraction = FOR.
        assert result.per_group_stats["men"]["[0.00,0.10)"] == pytest.approx(1 / 6)
        assert result.per_group_stats["women"]["[0.00,0.10)"] == pytest.approx(1 / 6)
        # Top bin holds the positive predictions: positive fraction = PPV = 1 - FDR.
        assert result.per_group_stats["men"]["[0.90,1.00]"] == pytest.approx(1 - 1 / 3)
        assert result.per_group_stats["women"]["[0.90,1.00]"] == pytest.approx(1 - 1 / 3)

    def test_unsupported_bins_are_noted(self):
        a = [PredictionRecord(sensitive="a", y_true=1, score=0.95)] * 6 + [
            PredictionRecord(sensitive="a", y_true=0, score=0.05)
        ] * 2
        b = [PredictionRecord(sensitive="b", y_true=1, score=0.95)] * 6
        grouped = GroupedPredictions(groups={"a": a, "b": b}, favourable=1)
        result = calibration_gaps(grouped, bins=10, min_support=5)
        assert any("[0.00,0.10)" in note and "lacks support" in note for note in result.notes)

    def test_missing_scores_rejected(self, sample_grouped):
        with pytest.raises(AuditError, match="score output required"):
            calibration_gaps(sample_grouped)

    def test_bad_bins_rejected(self, sample_grouped):
        with pytest.raises(InputError):
            calibration_gaps(sample_grouped, bins=1)


class TestBalance:
    @staticmethod
    def _grouped(scores_a, scores_b, cls=1):
        def make(sensitive, scores):
            return [
                PredictionRecord(sensitive=sensitive, y_true=cls, score=s) for s in scores
            ] + [PredictionRecord(sensitive=sensitive, y_true=1 - cls, score=0.5)]

        return GroupedPredictions(
            groups={"a": make("a", scores_a), "b": make("b", scores_b)}, favourable=1
        )

    def test_identical_score_lists_balance(self):
        grouped = self._grouped([0.2, 0.4, 0.9], [0.9, 0.2, 0.4])
        result = balance_gap(grouped, 1)
        assert result.max_gap == pytest.approx(0.0, abs=1e-12)
        assert result.satisfied is True

    def test_mean_difference_fixture(self):
        grouped = self._grouped([0.7, 0.9], [0.5, 0.7])
        result = balance_gap(grouped, 1)
        assert result.per_group_stats["a"]["mean_score"] == pytest.approx(0.8)
        assert result.per_group_stats["b"]["mean_score"] == pytest.approx(0.6)
        assert result.max_gap == pytest.approx(0.2)
        assert result.definition is Definition.BALANCE_POSITIVE

    def test_constant_negative_scores_balance(self):
        grouped = self._grouped([0.3, 0.3], [0.3, 0.3, 0.3], cls=0)
        result = balance_gap(grouped, 0)
        assert result.max_gap == pytest.approx(0.0, abs=1e-12)
        assert result.definition is Definition.BALANCE_NEGATIVE

    def test_group_without_the_class_is_not_evaluable(self):
        a = [
            PredictionRecord(sensitive="a", y_true=1, score=0.9),
            PredictionRecord(sensitive="a", y_true=0, score=0.1),
        ]
        b = [PredictionRecord(sensitive="b", y_true=0, score=0.2)]
        grouped = GroupedPredictions(groups={"a": a, "b": b}, favourable=1)
        result = balance_gap(grouped, 1)
        assert result.satisfied is None
        assert any("no records of class 1" in note for note in result.notes)


class TestProperties:
    RATE_DEFINITIONS = [
        Definition.DEMOGRAPHIC_PARITY,
        Definition.CONDITIONAL_USE_ACCURACY_EQUALITY,
        Definition.PREDICTIVE_PARITY,
        Definition.EQUALISED_ODDS,
        Definition.EQUALISED_OPPORTUNITIES,
        Definition.PREDICTIVE_EQUALITY,
    ]

    def test_identical_record_lists_satisfy_everything(self, rng):
        m = random_nondegenerate_matrix(rng)
        grouped = grouped_from_matrices({"a": m, "b": m}, favourable=0)
        for definition in self.RATE_DEFINITIONS:
            result = evaluate(grouped, definition)
            assert result.satisfied is True, definition
            assert result.max_gap == 0.0

    def test_group_order_invariance(self, rng):
        for _ in range(25):
            ma = random_nondegenerate_matrix(rng)
            mb = random_nondegenerate_matrix(rng)
            fwd = grouped_from_matrices({"a": ma, "b": mb}, favourable=0)
            rev = grouped_from_matrices({"b": mb, "a": ma}, favourable=0)
            for definition in self.RATE_DEFINITIONS:
                r1 = evaluate(fwd, definition)
                r2 = evaluate(rev, definition)
                assert r1.satisfied == r2.satisfied
                assert r1.max_gap == pytest.approx(r2.max_gap, abs=1e-15)

    def test_scaling_invariance(self, rng):
        for _ in range(25):
            ma = random_nondegenerate_matrix(rng, hi=15)
            mb = random_nondegenerate_matrix(rng, hi=15)
            k = rng.randint(2, 5)
            plain = grouped_from_matrices({"a": ma, "b": mb}, favourable=0)
            scaled = grouped_from_matrices(
                {"a": ma.scaled(k), "b": mb.scaled(k)}, favourable=0
            )
            for definition in self.RATE_DEFINITIONS:
                r1 = evaluate(plain, definition)
                r2 = evaluate(scaled, definition)
                assert r1.satisfied == r2.satisfied
                assert r1.max_gap == pytest.approx(r2.max_gap, abs=1e-12)
            c1 = evaluate(plain, Definition.EQUAL_SELECTION_PARITY)
            c2 = evaluate(scaled, Definition.EQUAL_SELECTION_PARITY)
            assert c2.max_gap == pytest.approx(k * c1.max_gap)

    def test_relaxation_implications(self, rng):
        # EqualisedOdds => EqualisedOpportunities and PredictiveEquality;
        # ConditionalUseAccuracyEquality => PredictiveParity.
        for _ in range(100):
            grouped = grouped_from_matrices(
                {
                    "a": random_nondegenerate_matrix(rng, hi=12),
                    "b": random_nondegenerate_matrix(rng, hi=12),
                },
                favourable=0,
            )
            tol = rng.choice([0.01, 0.05, 0.2])
            odds = evaluate(grouped, Definition.EQUALISED_ODDS, tolerance=tol)
            if odds.satisfied:
                assert evaluate(grouped, Definition.EQUALISED_OPPORTUNITIES, tolerance=tol).satisfied
                assert evaluate(grouped, Definition.PREDICTIVE_EQUALITY, tolerance=tol).satisfied
            cuae = evaluate(grouped, Definition.CONDITIONAL_USE_ACCURACY_EQUALITY, tolerance=tol)
            if cuae.satisfied:
                assert evaluate(grouped, Definition.PREDICTIVE_PARITY, tolerance=tol).satisfied

    def test_equal_base_rates_with_equal_tpr_tnr_align_all_families(self, rng):
        # Scaled copies share BR, TPR and TNR exactly; every rate-based
        # definition in every family must then pass at once.
        for _ in range(25):
            m = random_nondegenerate_matrix(rng, hi=10)
            grouped = grouped_from_matrices(
                {"a": m.scaled(rng.randint(1, 3)), "b": m.scaled(rng.randint(1, 3))},
                favourable=0,
            )
            for definition in self.RATE_DEFINITIONS:
                assert evaluate(grouped, definition).satisfied is True, definition
