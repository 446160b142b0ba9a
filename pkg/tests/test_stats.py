"""Tests for correlation, disparities, bounds, and the shift estimator."""

import math

import numpy as np
import pytest

Y = [1, 1, 0, 0, 1, 0, 1, 0]
Z = [1, 1, 1, 1, 0, 0, 0, 0]
YHAT = [1, 1, 1, 0, 0, 0, 1, 0]


def random_instances(count, n=200, seed=0):
    """Random (y, z, yhat) draws with every (y, z) cell present."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        y = rng.integers(0, 2, size=n)
        z = rng.integers(0, 2, size=n)
        y[:4], z[:4] = [1, 1, 0, 0], [1, 0, 1, 0]
        yhat = (rng.random(n) < rng.uniform(0.05, 0.95, size=4)[2 * y + z]).astype(int)
        yhat[:2] = [0, 1]
        yield y, z, yhat


class TestCorrelation:
    """Tests for label/group correlation statistics."""

    def test_independent_ratios(self):
        """Test that uniform ratios have zero correlation."""
        from fairshift.core.types import JointRatios
        from fairshift.stats.fairness import correlation

        report = correlation(JointRatios(0.25, 0.25, 0.25, 0.25))
        assert report.rho == pytest.approx(0.0)
        assert report.c == pytest.approx(0.0)
        assert report.eta_low == pytest.approx(1.0)

    def test_known_values(self):
        """Test rho and c on a hand-computed instance."""
        from fairshift.core.types import JointRatios
        from fairshift.stats.fairness import correlation

        report = correlation(JointRatios(0.4, 0.1, 0.2, 0.3))
        assert report.c == pytest.approx(0.4 / 0.6 - 0.1 / 0.4)
        assert report.rho == pytest.approx(0.1 / math.sqrt(0.25 * 0.24))

    def test_rho_equals_eta_times_c(self):
        """Test that rho = sqrt(Var z / Var y) * c when marginals are fixed."""
        from fairshift.core.types import JointRatios
        from fairshift.stats.fairness import correlation

        rng = np.random.default_rng(1)
        for _ in range(50):
            r = JointRatios.from_array(rng.dirichlet(np.ones(4)) * 0.96 + 0.01)
            report = correlation(r)
            eta = math.sqrt(r.py * (1 - r.py) / (r.pz * (1 - r.pz)))
            assert report.rho == pytest.approx(report.c / eta, abs=1e-9)
            assert report.eta_low == pytest.approx(eta)

    def test_eta_band_widens_with_gamma(self):
        """Test that allowing marginal drift widens the eta band."""
        from fairshift.stats.fairness import eta_band

        lo0, hi0 = eta_band(0.4, 0.5)
        lo, hi = eta_band(0.4, 0.5, 0.1, 0.1)
        assert lo < lo0 <= hi0 < hi

    def test_degenerate_marginal(self):
        """Test that a missing label value is rejected."""
        from fairshift.core.errors import DegenerateMarginalError
        from fairshift.core.types import JointRatios
        from fairshift.stats.fairness import correlation

        with pytest.raises(DegenerateMarginalError):
            correlation(JointRatios(0.5, 0.5, 0.0, 0.0))

    def test_alignment_is_one_plus_c(self):
        """Test that Pr(y=1|z=1) + Pr(y=0|z=0) equals 1 + c."""
        from fairshift.core.types import JointRatios
        from fairshift.stats.fairness import alignment, correlation

        r = JointRatios(0.3, 0.2, 0.1, 0.4)
        assert alignment(r) == pytest.approx(1 + correlation(r).c)

    def test_correlation_shift(self):
        """Test the shift on identical, opposite-extreme, and synthetic train/test ratios."""
        from fairshift.core.types import JointRatios
        from fairshift.data.ratios import joint_ratios
        from fairshift.sim.synthetic import SyntheticSpec, generate_synthetic
        from fairshift.sim.testsets import make_test_resampled
        from fairshift.stats.fairness import correlation, correlation_shift

        uniform = JointRatios(0.25, 0.25, 0.25, 0.25)
        assert correlation_shift(uniform, uniform) == 0.0
        assert correlation_shift(JointRatios(0.5, 0.0, 0.0, 0.5), uniform) == pytest.approx(1.0)

        train = joint_ratios(generate_synthetic(SyntheticSpec(n=2000, seed=0)))
        test_base = generate_synthetic(SyntheticSpec(n=2000, seed=10_000))
        test = joint_ratios(make_test_resampled(test_base, 0.1 * correlation(train).c, seed=0))
        expected = abs(correlation(train).rho - correlation(test).rho)
        assert correlation_shift(train, test) == pytest.approx(expected, abs=1e-12)
        assert correlation_shift(train, test) > 0

    def test_matches_sample_pearson(self):
        """Test that rho equals the sample Pearson correlation of a materialized dataset."""
        from conftest import make_dataset
        from fairshift.core.types import JointRatios
        from fairshift.stats.fairness import correlation

        for counts in [(3, 2, 2, 3), (30, 20, 10, 40), (7, 1, 4, 9)]:
            data = make_dataset(counts=counts)
            n = sum(counts)
            ratios = JointRatios(*(k / n for k in counts))
            sample = np.corrcoef(data.labels, data.groups)[0, 1]
            assert correlation(ratios).rho == pytest.approx(sample, abs=1e-12)


class TestDisparities:
    """Tests for DP, EO, and PP disparities."""

    def test_known_values(self):
        """Test disparities on a hand-computed instance."""
        from fairshift.stats.fairness import disparities

        report = disparities(Y, Z, YHAT)
        assert report.dp == pytest.approx(0.25)
        assert report.dp_pairwise == pytest.approx(0.5)
        assert report.eo == pytest.approx(0.25)
        assert report.eo_pairwise == pytest.approx(0.5)
        assert report.pp_pairwise == pytest.approx(1 / 3)
        assert report.combined == pytest.approx(0.25)
        assert report.flags == ()

    def test_perfect_classifier_has_no_eo_gap(self):
        """Test that yhat = y gives zero equalized-odds disparity."""
        from fairshift.stats.fairness import disparities

        report = disparities(Y, Z, Y)
        assert report.eo == 0.0
        assert report.pp_pairwise == 0.0

    def test_row_order_does_not_matter(self):
        """Test that permuting rows leaves every disparity unchanged."""
        from fairshift.stats.fairness import disparities

        rng = np.random.default_rng(5)
        y = rng.integers(0, 2, size=200)
        z = rng.integers(0, 2, size=200)
        yhat = rng.integers(0, 2, size=200)
        base = disparities(y, z, yhat)
        for _ in range(5):
            order = rng.permutation(200)
            shuffled = disparities(y[order], z[order], yhat[order])
            for name in ("dp", "eo", "pp", "dp_pairwise", "eo_pairwise", "pp_pairwise", "combined"):
                assert getattr(shuffled, name) == pytest.approx(getattr(base, name), abs=1e-12)
            assert shuffled.flags == base.flags

    def test_single_group(self):
        """Test that disparities need both groups."""
        from fairshift.core.errors import SingleGroupError
        from fairshift.stats.fairness import disparities

        with pytest.raises(SingleGroupError):
            disparities([0, 1], [1, 1], [0, 1])

    def test_length_mismatch(self):
        """Test that arrays must have equal length."""
        from fairshift.core.errors import InvalidArgumentError
        from fairshift.stats.fairness import disparities

        with pytest.raises(InvalidArgumentError):
            disparities([0, 1, 1], [0, 1], [0, 1])

    def test_missing_cell_flagged(self):
        """Test that an empty (y, z) cell is flagged, not fatal."""
        from fairshift.stats.fairness import disparities

        report = disparities([1, 1, 0], [1, 0, 1], [1, 0, 0])
        assert "missing-cell:y=0,z=0" in report.flags

    def test_constant_predictions_flag_pp(self):
        """Test that predictive parity flags an unused prediction value."""
        from fairshift.stats.fairness import disparities

        report = disparities(Y, Z, [1] * 8)
        assert report.dp == 0.0
        assert "pp-undefined:yhat=0" in report.flags


class TestBounds:
    """Tests for the pairwise disparity incompatibility bounds."""

    def test_dpeo_bound_holds(self):
        """Test dpeo lhs <= 2 max(dp, eo) on random instances."""
        from fairshift.stats.bounds import dpeo_bound_lhs
        from fairshift.stats.fairness import disparities

        for y, z, yhat in random_instances(200):
            r = disparities(y, z, yhat)
            assert dpeo_bound_lhs(y, z, yhat) <= 2 * max(r.dp_pairwise, r.eo_pairwise) + 1e-9

    def test_ppdp_bound_holds(self):
        """Test ppdp lhs <= max(pp, dp) on random instances."""
        from fairshift.stats.bounds import ppdp_bound_lhs
        from fairshift.stats.fairness import disparities

        for y, z, yhat in random_instances(200, seed=1):
            r = disparities(y, z, yhat)
            assert ppdp_bound_lhs(y, z, yhat) <= max(r.pp_pairwise, r.dp_pairwise) + 1e-9

    def test_eopp_bound_holds(self):
        """Test eopp lhs <= max(eo, pp) on random instances."""
        from fairshift.stats.bounds import eopp_bound_lhs
        from fairshift.stats.fairness import disparities

        for y, z, yhat in random_instances(200, seed=2):
            r = disparities(y, z, yhat)
            assert eopp_bound_lhs(y, z, yhat) <= max(r.eo_pairwise, r.pp_pairwise) + 1e-9

    def test_empty_cell(self):
        """Test that bounds needing every cell reject an empty one."""
        from fairshift.core.errors import EmptyCellError
        from fairshift.stats.bounds import dpeo_bound_lhs

        with pytest.raises(EmptyCellError):
            dpeo_bound_lhs([1, 1, 0], [1, 0, 1], [1, 0, 0])

    def test_ppdp_undefined(self):
        """Test that ppdp needs some prediction value in both groups."""
        from fairshift.core.errors import UndefinedPPError
        from fairshift.stats.bounds import ppdp_bound_lhs

        with pytest.raises(UndefinedPPError):
            ppdp_bound_lhs([1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 0, 0])


class TestEstimator:
    """Tests for the deployment correlation interval."""

    def test_interval_contains_estimate(self):
        """Test that the interval is centered on c_hat with the right width."""
        from fairshift.stats.estimator import estimate

        y = [1] * 60 + [0] * 40 + [1] * 30 + [0] * 70
        z = [1] * 100 + [0] * 100
        shift = estimate(y, z, delta=0.05)
        eps = math.sqrt(2 * math.log(4 / 0.05) / 100)

        assert shift.c_hat == pytest.approx(0.3)
        assert shift.alpha == pytest.approx(0.3 - eps)
        assert shift.beta == pytest.approx(min(1.0, 0.3 + eps))
        assert shift.source == "estimated"
        assert shift.confidence == pytest.approx(0.95)

    def test_interval_clamped(self):
        """Test that small samples clamp the interval to [-1, 1]."""
        from fairshift.stats.estimator import estimate

        shift = estimate([1, 0], [1, 0], delta=0.05)
        assert shift.alpha == -1.0
        assert shift.beta == 1.0

    def test_group_missing(self):
        """Test that a sample with one group is rejected."""
        from fairshift.core.errors import GroupMissingError
        from fairshift.stats.estimator import estimate

        with pytest.raises(GroupMissingError):
            estimate([0, 1], [1, 1])

    @pytest.mark.parametrize("delta", [0.0, 1.0, -0.1])
    def test_invalid_delta(self, delta):
        """Test that delta must lie strictly inside (0, 1)."""
        from fairshift.core.errors import InvalidDeltaError
        from fairshift.stats.estimator import estimate

        with pytest.raises(InvalidDeltaError):
            estimate([0, 1], [0, 1], delta)

    def test_required_samples(self):
        """Test the per-group sample size formula."""
        from fairshift.stats.estimator import required_samples

        assert required_samples(0.1, 0.05) == 876
        assert required_samples(2.0, 0.99) == 1

    def test_given_range(self):
        """Test that a given single point becomes a zero-width range."""
        from fairshift.core.errors import InvalidArgumentError
        from fairshift.stats.estimator import ShiftRange

        shift = ShiftRange.given(0.2)
        assert shift.width == 0.0
        assert shift.contains(0.2)
        with pytest.raises(InvalidArgumentError):
            ShiftRange.given(0.5, 0.1)

    def test_coverage_meets_confidence(self):
        """Test that intervals cover the true c at least 1 - delta of the time."""
        from fairshift.core.types import JointRatios
        from fairshift.stats.estimator import coverage_experiment

        report = coverage_experiment(JointRatios(0.3, 0.2, 0.2, 0.3), m=400, delta=0.1, trials=200, seed=0)
        assert report.group_missing == 0
        assert report.rate >= report.floor

    def test_coverage_workers_match_serial(self):
        """Test that threaded trials give the same result as serial ones."""
        from fairshift.core.types import JointRatios
        from fairshift.stats.estimator import coverage_experiment

        r = JointRatios(0.4, 0.1, 0.1, 0.4)
        serial = coverage_experiment(r, m=50, trials=40, seed=3)
        threaded = coverage_experiment(r, m=50, trials=40, seed=3, workers=4)
        assert serial == threaded
