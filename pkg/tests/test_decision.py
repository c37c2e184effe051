"""Decision layer: tables, inverse queries, coverage calibration."""

import numpy as np
import pytest

from fuzzrel import (
    CalibrationError,
    DecisionQuery,
    FuzzyNumber,
    Interval,
    MTBF,
    NoContainmentError,
    STEADY_AVAILABILITY,
    UnknownParameterError,
    ValidationError,
    build_table,
    calibrate_coverage,
    characteristic_bounds,
    invert_query,
    required_parameter_range,
)

from test_bounds import ALPHAS_11, REFERENCE_MTBF_BOUNDS, crisp_params, demo_params


@pytest.fixture(scope="module")
def demo_table():
    return build_table(demo_params(), MTBF, ALPHAS_11)


@pytest.fixture(scope="module")
def demo_curve(demo_table):
    return demo_table.to_curve()


class TestBuildTable:
    def test_parameter_columns_are_the_cuts(self, demo_table):
        for row in demo_table.rows:
            a = row.alpha
            assert row.cuts["lambda"].lo == pytest.approx(0.5 + 0.1 * a, abs=1e-12)
            assert row.cuts["lambda"].hi == pytest.approx(0.8 - 0.1 * a, abs=1e-12)
            assert row.cuts["theta"].lo == pytest.approx(0.1 + 0.1 * a, abs=1e-12)
            assert row.cuts["theta"].hi == pytest.approx(0.4 - 0.1 * a, abs=1e-12)
            assert row.cuts["mu"].lo == pytest.approx(3.0 + a, abs=1e-12)
            assert row.cuts["mu"].hi == pytest.approx(6.0 - a, abs=1e-12)

    def test_bounds_column_matches_reference(self, demo_table):
        for row in demo_table.rows:
            lo, hi = REFERENCE_MTBF_BOUNDS[round(row.alpha, 1)]
            assert row.bounds.lo == pytest.approx(lo, abs=5e-3)
            assert row.bounds.hi == pytest.approx(hi, abs=5e-3)

    def test_mtbf_table_has_three_parameters(self, demo_table):
        assert demo_table.parameters == ("lambda", "theta", "mu")

    def test_availability_table_adds_reboot_column(self):
        table = build_table(demo_params(), STEADY_AVAILABILITY, (0.0, 0.5, 1.0))
        assert table.parameters == ("lambda", "theta", "mu", "beta")
        assert table.rows[0].cuts["beta"].lo == pytest.approx(1.5)

    def test_crisp_rows_identical(self):
        table = build_table(crisp_params(), MTBF, (0.0, 0.5, 1.0))
        first = table.rows[0]
        for row in table.rows:
            assert row.bounds == first.bounds
            assert row.cuts == first.cuts

    def test_every_column_nested(self, demo_table):
        for prev, row in zip(demo_table.rows, demo_table.rows[1:]):
            assert prev.bounds.encloses(row.bounds)
            for name in demo_table.parameters:
                assert prev.cuts[name].encloses(row.cuts[name])


class TestInvertQuery:
    def test_management_target(self, demo_curve):
        alpha = invert_query(
            demo_curve, DecisionQuery(MTBF, Interval(4.939, 6.716))
        )
        assert alpha == pytest.approx(0.90, abs=0.02)

    def test_support_target_needs_no_confidence_tradeoff(self, demo_curve):
        alpha = invert_query(demo_curve, DecisionQuery(MTBF, demo_curve.support))
        assert alpha == 0.0

    def test_top_row_target(self, demo_curve):
        alpha = invert_query(
            demo_curve, DecisionQuery(MTBF, demo_curve.intervals[-1])
        )
        assert alpha == 1.0

    def test_stored_rows_round_trip(self, demo_curve):
        for a, iv in demo_curve.rows:
            assert invert_query(demo_curve, DecisionQuery(MTBF, iv)) == pytest.approx(
                a, abs=1e-9
            )

    def test_wide_target_costs_nothing(self, demo_curve):
        alpha = invert_query(demo_curve, DecisionQuery(MTBF, Interval(0.0, 100.0)))
        assert alpha == 0.0

    def test_unreachable_target(self, demo_curve):
        with pytest.raises(NoContainmentError):
            invert_query(demo_curve, DecisionQuery(MTBF, Interval(5.2, 6.0)))

    def test_one_sided_threshold(self, demo_curve):
        # loose upper bound: the answer is set by the lower branch alone
        top = demo_curve.intervals[-1]
        target = Interval(demo_curve.interval_at(0.6).lo, 100.0)
        alpha = invert_query(demo_curve, DecisionQuery(MTBF, target))
        assert alpha == pytest.approx(0.6, abs=1e-9)
        assert demo_curve.interval_at(alpha).lo >= target.lo - 1e-9
        assert top.hi <= target.hi


class TestRequiredParameterRange:
    def test_repair_rate_at_high_confidence(self, demo_table):
        rng = required_parameter_range(demo_table, 0.9, "mu")
        assert rng.lo == pytest.approx(3.9, abs=1e-12)
        assert rng.hi == pytest.approx(5.1, abs=1e-12)

    def test_stored_rows_reproduced(self, demo_table):
        for row in demo_table.rows:
            for name in demo_table.parameters:
                rng = required_parameter_range(demo_table, row.alpha, name)
                assert rng.lo == pytest.approx(row.cuts[name].lo, abs=1e-12)
                assert rng.hi == pytest.approx(row.cuts[name].hi, abs=1e-12)

    def test_interpolates_between_rows(self, demo_table):
        rng = required_parameter_range(demo_table, 0.85, "lambda")
        assert rng.lo == pytest.approx(0.585, abs=1e-12)
        assert rng.hi == pytest.approx(0.715, abs=1e-12)

    def test_unknown_parameter(self, demo_table):
        with pytest.raises(UnknownParameterError):
            required_parameter_range(demo_table, 0.5, "gamma")
        with pytest.raises(UnknownParameterError):
            required_parameter_range(demo_table, 0.5, "beta")  # mtbf table

    def test_alpha_outside_table(self, demo_table):
        with pytest.raises(ValidationError):
            required_parameter_range(demo_table, 1.5, "mu")


class TestCalibrateCoverage:
    @pytest.mark.parametrize("coverage", [0.5, 0.8, 0.9, 0.95, 1.0])
    def test_round_trip(self, coverage):
        fp = demo_params()
        anchor = characteristic_bounds(
            fp.with_coverage(coverage), MTBF, 1.0
        ).bounds
        result = calibrate_coverage(fp, MTBF, 1.0, anchor)
        assert result.coverage == pytest.approx(coverage, abs=1e-6)
        assert abs(result.lower_residual) < 1e-6

    def test_upper_residual_reported(self):
        fp = demo_params()
        anchor = characteristic_bounds(fp.with_coverage(0.9), MTBF, 1.0).bounds
        widened = Interval(anchor.lo, anchor.hi + 0.05)
        result = calibrate_coverage(fp, MTBF, 1.0, widened)
        assert result.coverage == pytest.approx(0.9, abs=1e-6)
        assert result.upper_residual == pytest.approx(-0.05, abs=1e-6)

    def test_no_root_in_unit_interval(self):
        fp = demo_params()
        with pytest.raises(CalibrationError):
            calibrate_coverage(fp, MTBF, 1.0, Interval(100.0, 200.0))

    def test_availability_metric_calibrates_too(self):
        fp = demo_params()
        anchor = characteristic_bounds(
            fp.with_coverage(0.7), STEADY_AVAILABILITY, 1.0
        ).bounds
        result = calibrate_coverage(fp, STEADY_AVAILABILITY, 1.0, anchor)
        assert result.coverage == pytest.approx(0.7, abs=1e-6)
