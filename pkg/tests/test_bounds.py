"""Interval bounds over alpha-cut boxes: NLP pipeline vs grid scans."""

import os

import numpy as np
import pytest

from fuzzrel import (
    BoundsMethod,
    FuzzyNumber,
    FuzzySystemParams,
    KernelEvaluationError,
    MTBF,
    Metric,
    STEADY_AVAILABILITY,
    SystemParams,
    ValidationError,
    brute_force_bounds,
    characteristic_bounds,
    evaluate_metric,
    membership_curve,
    mttf,
    reliability_at_time,
)

# Frozen regression targets for the standard demo parameter set
# (trapezoidal rates below with coverage 0.9), validated against an
# independent grid scan during development.
REFERENCE_MTBF_BOUNDS = {
    0.0: (3.8952, 8.6229),
    0.1: (4.0030, 8.3722),
    0.2: (4.1126, 8.1330),
    0.3: (4.2242, 7.9046),
    0.4: (4.3377, 7.6859),
    0.5: (4.4534, 7.4764),
    0.6: (4.5712, 7.2752),
    0.7: (4.6913, 7.0817),
    0.8: (4.8139, 6.8955),
    0.9: (4.9390, 6.7159),
    1.0: (5.0669, 6.5424),
}

ALPHAS_11 = tuple(i / 10 for i in range(11))


def demo_params(coverage=0.9, **overrides):
    kwargs = dict(
        failure_rate=FuzzyNumber.trapezoidal(0.5, 0.6, 0.7, 0.8),
        standby_failure_rate=FuzzyNumber.trapezoidal(0.1, 0.2, 0.3, 0.4),
        repair_rate=FuzzyNumber.trapezoidal(3.0, 4.0, 5.0, 6.0),
        reboot_rate=FuzzyNumber.trapezoidal(1.5, 2.0, 2.5, 3.0),
        coverage=coverage,
    )
    kwargs.update(overrides)
    return FuzzySystemParams(**kwargs)


def crisp_params():
    return FuzzySystemParams(
        failure_rate=FuzzyNumber.crisp(0.6),
        standby_failure_rate=FuzzyNumber.crisp(0.2),
        repair_rate=FuzzyNumber.crisp(4.0),
        reboot_rate=FuzzyNumber.crisp(2.0),
        coverage=0.9,
    )


class TestMetric:
    def test_reliability_requires_time(self):
        with pytest.raises(ValidationError):
            Metric("reliability")
        with pytest.raises(ValidationError):
            Metric("reliability", -1.0)
        assert reliability_at_time(2.0).t == 2.0

    def test_point_metrics_take_no_time(self):
        with pytest.raises(ValidationError):
            Metric("mtbf", 1.0)

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            Metric("median")

    def test_axis_selection(self):
        assert not MTBF.uses_reboot_rate
        assert STEADY_AVAILABILITY.uses_reboot_rate


class TestFuzzyParamsValidation:
    def test_requires_positive_supports(self):
        with pytest.raises(ValidationError):
            demo_params(failure_rate=FuzzyNumber.trapezoidal(0.0, 0.1, 0.2, 0.3))
        with pytest.raises(ValidationError):
            demo_params(repair_rate=FuzzyNumber.trapezoidal(-1.0, 1.0, 2.0, 3.0))

    def test_requires_coverage_in_unit_interval(self):
        with pytest.raises(ValidationError):
            demo_params(coverage=1.2)

    def test_standby_coupling_validates_cut_containment(self):
        with pytest.raises(ValidationError):
            demo_params(
                standby_failure_rate=FuzzyNumber.trapezoidal(0.5, 0.9, 1.0, 1.2),
                enforce_standby_slower=True,
            )
        # theta cuts below lambda's upper bounds: accepted
        demo_params(enforce_standby_slower=True)

    def test_modal_reduction(self):
        p = demo_params().modal_params()
        assert p.failure_rate == pytest.approx(0.65)
        assert p.standby_failure_rate == pytest.approx(0.25)
        assert p.repair_rate == pytest.approx(4.5)
        assert p.coverage == 0.9
        assert p.reboot_rate == pytest.approx(2.25)


class TestCharacteristicBounds:
    def test_reproduces_reference_intervals(self):
        fp = demo_params()
        for alpha in (0.0, 0.5, 1.0):
            res = characteristic_bounds(fp, MTBF, alpha)
            lo, hi = REFERENCE_MTBF_BOUNDS[alpha]
            assert res.bounds.lo == pytest.approx(lo, abs=5e-3)
            assert res.bounds.hi == pytest.approx(hi, abs=5e-3)

    def test_extremes_at_monotone_corners(self):
        # MTBF falls with both failure rates and grows with repair rate
        res = characteristic_bounds(demo_params(), MTBF, 0.5)
        assert res.argmin["lambda"] == pytest.approx(0.75)
        assert res.argmin["theta"] == pytest.approx(0.35)
        assert res.argmin["mu"] == pytest.approx(3.5)
        assert res.argmax["lambda"] == pytest.approx(0.55)
        assert res.argmax["theta"] == pytest.approx(0.15)
        assert res.argmax["mu"] == pytest.approx(5.5)

    def test_bounds_reproduced_by_kernel_at_argpoints(self):
        fp = demo_params()
        for metric in (MTBF, STEADY_AVAILABILITY, reliability_at_time(2.0)):
            res = characteristic_bounds(fp, metric, 0.3)
            beta_mid = fp.reboot_rate.modal_interval.midpoint
            at_min = SystemParams(
                res.argmin["lambda"],
                res.argmin["theta"],
                res.argmin["mu"],
                fp.coverage,
                res.argmin.get("beta", beta_mid),
            )
            at_max = SystemParams(
                res.argmax["lambda"],
                res.argmax["theta"],
                res.argmax["mu"],
                fp.coverage,
                res.argmax.get("beta", beta_mid),
            )
            assert evaluate_metric(at_min, metric) == pytest.approx(
                res.bounds.lo, abs=1e-10
            )
            assert evaluate_metric(at_max, metric) == pytest.approx(
                res.bounds.hi, abs=1e-10
            )

    def test_argpoints_inside_box(self):
        res = characteristic_bounds(demo_params(), STEADY_AVAILABILITY, 0.2)
        for point in (res.argmin, res.argmax):
            for name, iv in res.box.items():
                assert iv.contains(point[name], tol=1e-12)

    def test_crisp_box_collapses_to_point(self):
        fp = crisp_params()
        res = characteristic_bounds(fp, MTBF, 0.5)
        assert res.method is BoundsMethod.CORNER_SCAN
        assert res.bounds.is_point
        assert res.bounds.lo == pytest.approx(mttf(fp.modal_params()), abs=1e-12)

    def test_deterministic_in_seed(self):
        fp = demo_params()
        a = characteristic_bounds(fp, MTBF, 0.4, seed=11)
        b = characteristic_bounds(fp, MTBF, 0.4, seed=11)
        assert a.bounds == b.bounds
        assert a.argmin == b.argmin
        assert a.argmax == b.argmax

    def test_availability_bounds_inside_unit_interval(self):
        res = characteristic_bounds(demo_params(), STEADY_AVAILABILITY, 0.0)
        assert 0.0 < res.bounds.lo < res.bounds.hi < 1.0
        assert set(res.box) == {"lambda", "theta", "mu", "beta"}

    def test_reliability_bounds_inside_unit_interval(self):
        res = characteristic_bounds(demo_params(), reliability_at_time(1.5), 0.0)
        assert 0.0 < res.bounds.lo < res.bounds.hi < 1.0

    def test_alpha_domain_checked(self):
        with pytest.raises(ValidationError):
            characteristic_bounds(demo_params(), MTBF, 1.5)

    def test_kernel_error_carries_offending_point(self):
        # theta support reaches above lambda's: some box corners invalid
        fp = demo_params(
            standby_failure_rate=FuzzyNumber.trapezoidal(0.5, 0.9, 1.0, 1.2)
        )
        with pytest.raises(KernelEvaluationError) as err:
            characteristic_bounds(fp, MTBF, 0.0)
        assert "theta" in err.value.point

    def test_standby_coupling_skips_infeasible_corners(self):
        fp = demo_params(
            failure_rate=FuzzyNumber.trapezoidal(0.5, 0.6, 0.7, 0.8),
            standby_failure_rate=FuzzyNumber.trapezoidal(0.3, 0.5, 0.6, 0.8),
            enforce_standby_slower=True,
        )
        res = characteristic_bounds(fp, MTBF, 0.0)
        assert res.argmin["theta"] <= res.argmin["lambda"] + 1e-12
        assert res.argmax["theta"] <= res.argmax["lambda"] + 1e-12
        assert res.bounds.lo < res.bounds.hi


class TestBruteForce:
    def test_validates_grid(self):
        with pytest.raises(ValidationError):
            brute_force_bounds(demo_params(), MTBF, 0.5, 1)

    def test_two_point_grid_is_corner_scan(self):
        fp = demo_params()
        grid = brute_force_bounds(fp, MTBF, 0.5, 2)
        nlp = characteristic_bounds(fp, MTBF, 0.5)
        assert grid.method is BoundsMethod.GRID_REFINE
        assert grid.bounds.lo == pytest.approx(nlp.bounds.lo, abs=1e-12)
        assert grid.bounds.hi == pytest.approx(nlp.bounds.hi, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 0.3, 0.5, 0.8, 1.0])
    def test_grid_agrees_with_nlp(self, alpha):
        fp = demo_params()
        grid = brute_force_bounds(fp, MTBF, alpha, 21)
        nlp = characteristic_bounds(fp, MTBF, alpha)
        assert grid.bounds.lo == pytest.approx(nlp.bounds.lo, rel=1e-4)
        assert grid.bounds.hi == pytest.approx(nlp.bounds.hi, rel=1e-4)
        # the grid samples a subset of the box, so it brackets from inside
        assert grid.bounds.lo >= nlp.bounds.lo - 1e-9
        assert grid.bounds.hi <= nlp.bounds.hi + 1e-9

    def test_availability_grid_agrees_with_nlp(self):
        fp = demo_params()
        grid = brute_force_bounds(fp, STEADY_AVAILABILITY, 0.5, 5)
        nlp = characteristic_bounds(fp, STEADY_AVAILABILITY, 0.5)
        assert grid.bounds.lo == pytest.approx(nlp.bounds.lo, rel=1e-4)
        assert grid.bounds.hi == pytest.approx(nlp.bounds.hi, rel=1e-4)


class TestMembershipCurveOp:
    def test_reproduces_reference_table(self):
        curve = membership_curve(demo_params(), MTBF, ALPHAS_11)
        for alpha, iv in curve.rows:
            lo, hi = REFERENCE_MTBF_BOUNDS[round(alpha, 1)]
            assert iv.lo == pytest.approx(lo, abs=5e-3)
            assert iv.hi == pytest.approx(hi, abs=5e-3)

    def test_rows_are_nested(self):
        curve = membership_curve(demo_params(), MTBF, ALPHAS_11)
        for (a0, iv0), (a1, iv1) in zip(curve.rows, curve.rows[1:]):
            assert iv0.encloses(iv1)

    def test_crisp_inputs_give_identical_point_rows(self):
        curve = membership_curve(crisp_params(), MTBF, (0.0, 0.5, 1.0))
        first = curve.intervals[0]
        assert first.is_point
        assert all(iv == first for iv in curve.intervals)

    def test_ladder_validation(self):
        fp = demo_params()
        with pytest.raises(ValidationError):
            membership_curve(fp, MTBF, (0.0, 0.5))  # missing 1
        with pytest.raises(ValidationError):
            membership_curve(fp, MTBF, (0.1, 1.0))  # missing 0
        with pytest.raises(ValidationError):
            membership_curve(fp, MTBF, (0.0, 0.5, 0.5, 1.0))

    def test_thread_cap_does_not_change_results(self):
        fp = demo_params()
        sequential = os.environ.get("FUZZREL_THREADS")
        try:
            os.environ["FUZZREL_THREADS"] = "1"
            one = membership_curve(fp, MTBF, (0.0, 0.5, 1.0))
            os.environ["FUZZREL_THREADS"] = "3"
            three = membership_curve(fp, MTBF, (0.0, 0.5, 1.0))
        finally:
            if sequential is None:
                os.environ.pop("FUZZREL_THREADS", None)
            else:
                os.environ["FUZZREL_THREADS"] = sequential
        assert one.intervals == three.intervals

    def test_invalid_thread_cap_rejected(self):
        saved = os.environ.get("FUZZREL_THREADS")
        try:
            os.environ["FUZZREL_THREADS"] = "many"
            with pytest.raises(ValidationError):
                membership_curve(demo_params(), MTBF, (0.0, 1.0))
        finally:
            if saved is None:
                os.environ.pop("FUZZREL_THREADS", None)
            else:
                os.environ["FUZZREL_THREADS"] = saved

    def test_availability_curve_nested_and_bounded(self):
        curve = membership_curve(demo_params(), STEADY_AVAILABILITY, (0.0, 0.5, 1.0))
        assert 0.0 < curve.intervals[0].lo
        assert curve.intervals[0].hi < 1.0
        assert curve.intervals[0].encloses(curve.intervals[2])
