"""Tests for the ratio problem, grid oracle, repair, and SDP relaxation."""

import numpy as np
import pytest


def make_problem(w, alpha, beta=None, gamma_y=0.1, gamma_z=0.1):
    from fairshift.core.types import JointRatios
    from fairshift.optim import RatioProblem
    from fairshift.stats.estimator import ShiftRange

    return RatioProblem(JointRatios(*w), ShiftRange.given(alpha, beta), gamma_y, gamma_z)


def random_problems(count, seed=0):
    """Random ratio problems with a non-degenerate range above the current c."""
    from fairshift.optim import conditional_difference

    rng = np.random.default_rng(seed)
    for _ in range(count):
        w = rng.dirichlet(np.full(4, 3.0)) * 0.9 + 0.025
        w = w / w.sum()
        c = float(conditional_difference(w))
        alpha = float(np.clip(c + rng.uniform(-0.3, 0.3), -0.9, 0.8))
        yield make_problem(tuple(w), alpha, alpha + 0.1)


class TestProblem:
    """Tests for the problem definition."""

    def test_conditional_difference(self):
        """Test c on a known ratio vector."""
        from fairshift.optim import conditional_difference

        assert conditional_difference([0.4, 0.1, 0.2, 0.3]) == pytest.approx(0.4 / 0.6 - 0.1 / 0.4)

    def test_residuals_of_current_point(self):
        """Test that the current ratios violate only the correlation range."""
        problem = make_problem((0.25, 0.25, 0.25, 0.25), 0.2, 0.3)
        residuals = problem.residuals(problem.current.as_array())

        assert residuals["c_low"] == pytest.approx(0.2)
        assert residuals["c_high"] == 0.0
        assert residuals["y_band"] == 0.0
        assert residuals["simplex"] == pytest.approx(0.0)

    def test_invalid_gamma(self):
        """Test that gammas must lie in [0, 1]."""
        from fairshift.core.errors import InvalidArgumentError

        with pytest.raises(InvalidArgumentError):
            make_problem((0.25, 0.25, 0.25, 0.25), 0.0, gamma_y=1.5)


class TestGridOracle:
    """Tests for exhaustive grid search."""

    def test_already_feasible_returns_current(self):
        """Test that feasible current ratios on the grid are their own optimum."""
        from fairshift.optim import grid_oracle

        solution = grid_oracle(make_problem((0.3, 0.2, 0.2, 0.3), 0.0, 0.5), resolution=100)
        assert solution.objective == pytest.approx(0.0)
        assert solution.method == "grid"

    def test_solution_is_feasible(self):
        """Test that the oracle's answer respects range and bands."""
        from fairshift.optim import grid_oracle

        problem = make_problem((0.35, 0.15, 0.15, 0.35), -0.1, 0.0)
        solution = grid_oracle(problem, resolution=100)

        assert -0.1 - 1e-9 <= solution.achieved_c <= 1e-9
        assert abs(solution.ratios.py - 0.5) <= 0.1 + 1e-9

    def test_infeasible(self):
        """Test that an unreachable range is reported as infeasible."""
        from fairshift.core.errors import InfeasibleError
        from fairshift.optim import grid_oracle

        problem = make_problem((0.35, 0.35, 0.15, 0.15), 0.9, 1.0, gamma_y=0.0, gamma_z=0.0)
        with pytest.raises(InfeasibleError):
            grid_oracle(problem, resolution=100)

    def test_resolution_too_small(self):
        """Test that tiny grids are rejected."""
        from fairshift.core.errors import InvalidArgumentError
        from fairshift.optim import grid_oracle

        with pytest.raises(InvalidArgumentError):
            grid_oracle(make_problem((0.25, 0.25, 0.25, 0.25), 0.0), resolution=5)


class TestRepair:
    """Tests for the closed-form projection."""

    def test_uniform_for_symmetric_instance(self):
        """Test that c = 0 from symmetric ratios repairs to the uniform table."""
        from fairshift.optim import repair

        x = repair(make_problem((0.35, 0.15, 0.15, 0.35), 0.0))
        assert x == pytest.approx([0.25] * 4, abs=1e-9)

    def test_repair_is_feasible_and_near_grid(self):
        """Test feasibility and near-optimality against the grid oracle."""
        from fairshift.core.errors import InfeasibleError
        from fairshift.optim import grid_oracle, repair
        from fairshift.optim.problem import BAND_TOL

        for problem in random_problems(8, seed=4):
            try:
                grid = grid_oracle(problem, resolution=100)
            except InfeasibleError:
                continue
            x = repair(problem)
            residuals = problem.residuals(x)
            assert residuals["c_low"] <= 1e-9 and residuals["c_high"] <= 1e-9
            assert residuals["y_band"] <= BAND_TOL and residuals["z_band"] <= BAND_TOL
            assert problem.objective(x) <= grid.objective + 1e-4

    def test_repair_infeasible(self):
        """Test that repair reports an unreachable range."""
        from fairshift.core.errors import ExtractionFailedError
        from fairshift.optim import repair

        problem = make_problem((0.35, 0.35, 0.15, 0.15), 0.9, 1.0, gamma_y=0.0, gamma_z=0.0)
        with pytest.raises(ExtractionFailedError):
            repair(problem)


class TestSdp:
    """Tests for the lifted SDP relaxation."""

    def test_correlation_form_sign(self):
        """Test that x^T P x >= 0 exactly when c(x) >= gamma."""
        from fairshift.optim import conditional_difference, correlation_form

        rng = np.random.default_rng(0)
        for _ in range(100):
            x = rng.dirichlet(np.ones(4))
            gamma = rng.uniform(-1, 1)
            value = x @ correlation_form(gamma) @ x
            assert (value >= 0) == (conditional_difference(x) >= gamma)

    def test_lifted_objective_matches_distance(self):
        """Test that the lifted objective plus the constant is the squared distance."""
        from fairshift.optim import build_sdp

        instance = build_sdp(make_problem((0.4, 0.1, 0.2, 0.3), 0.0))
        x = np.array([0.25, 0.25, 0.25, 0.25])
        A = instance.lift(x)
        value = np.trace(A[:4, :4] @ instance.P0) + instance.q0 @ A[:4, 4] + instance.constant
        assert value == pytest.approx(instance.problem.objective(x))

    def test_symmetric_instance(self):
        """Test the hand-derived instance: target c = 0 gives the uniform table."""
        from fairshift.optim import optimize_ratios

        solution = optimize_ratios(make_problem((0.35, 0.15, 0.15, 0.35), 0.0))
        assert solution.objective == pytest.approx(0.04, abs=1e-4)
        assert solution.ratios.as_array() == pytest.approx([0.25] * 4, abs=1e-3)
        assert solution.method in ("sdp", "sdp_repaired")

    def test_lower_bound_below_grid(self):
        """Test that the relaxation bound never exceeds a feasible grid objective."""
        from fairshift.core.errors import InfeasibleError
        from fairshift.optim import build_sdp, grid_oracle, solve_sdp

        checked = 0
        for problem in random_problems(12, seed=1):
            try:
                grid = grid_oracle(problem, resolution=100)
            except InfeasibleError:
                continue
            _, lower = solve_sdp(build_sdp(problem))
            assert lower <= grid.objective + 1e-6
            checked += 1
        assert checked >= 6

    def test_extracted_solution_close_to_grid(self):
        """Test that extracted ratios are feasible and nearly as good as the grid."""
        from fairshift.core.errors import InfeasibleError
        from fairshift.optim import grid_oracle, optimize_ratios

        close, total = 0, 0
        for problem in random_problems(12, seed=2):
            try:
                grid = grid_oracle(problem, resolution=100)
            except InfeasibleError:
                continue
            solution = optimize_ratios(problem)
            residuals = solution.feasibility_residuals
            assert residuals["c_low"] <= 1e-3 and residuals["c_high"] <= 1e-3
            total += 1
            if solution.objective <= max(1.05 * grid.objective, grid.objective + 2e-4):
                close += 1
        assert total > 0
        assert close >= 0.8 * total

    def test_infeasible_instance(self):
        """Test that an unreachable range raises InfeasibleError."""
        from fairshift.core.errors import InfeasibleError
        from fairshift.optim import optimize_ratios

        problem = make_problem((0.35, 0.35, 0.15, 0.15), 0.9, 1.0, gamma_y=0.0, gamma_z=0.0)
        with pytest.raises(InfeasibleError):
            optimize_ratios(problem)

    def test_extract_clips_and_renormalizes(self):
        """Test that a slightly negative lifted column still yields valid ratios."""
        from fairshift.optim import extract_solution

        problem = make_problem((0.3, 0.2, 0.2, 0.3), -1.0, 1.0, gamma_y=0.5, gamma_z=0.5)
        A = np.zeros((5, 5))
        A[:4, 4] = [0.5, 0.3, 0.3, -0.01]
        solution = extract_solution(A, problem)

        assert solution.method == "sdp"
        assert sum(solution.ratios) == pytest.approx(1.0)
        assert solution.ratios.w00 == 0.0

    def test_solution_serializes(self):
        """Test that the solution dict carries method, objective, and residuals."""
        from fairshift.optim import grid_oracle

        data = grid_oracle(make_problem((0.3, 0.2, 0.2, 0.3), 0.0, 0.5), resolution=50).to_dict()
        assert set(data) >= {"ratios", "objective", "method", "relaxation_lower_bound", "feasibility_residuals"}

    def test_nonconvergence_with_pinned_marginals_off_grid(self):
        """Test that solver trouble is not mistaken for infeasibility when the grid misses pinned marginals."""
        from fairshift.core.errors import InfeasibleError, SdpNonConvergedError
        from fairshift.optim import build_sdp, grid_oracle, has_feasible_ratios, solve_sdp

        problem = make_problem((0.333, 0.1234, 0.2001, 0.3435), 0.0, 0.2, gamma_y=0.0, gamma_z=0.0)
        with pytest.raises(InfeasibleError):
            grid_oracle(problem, resolution=100)
        assert has_feasible_ratios(problem)

        with pytest.raises(SdpNonConvergedError):
            solve_sdp(build_sdp(problem), max_iters=1)

    def test_nonconvergence_falls_back_to_repair(self):
        """Test that a stalled solver still returns feasible ratios with the marginals kept."""
        from fairshift.optim import conditional_difference, optimize_ratios

        problem = make_problem((0.333, 0.1234, 0.2001, 0.3435), 0.0, 0.2, gamma_y=0.0, gamma_z=0.0)
        solution = optimize_ratios(problem, max_iters=1)
        x = solution.ratios.as_array()

        assert solution.method == "sdp_repaired"
        assert x[0] + x[1] == pytest.approx(problem.py_train, abs=1e-12)
        assert x[0] + x[2] == pytest.approx(problem.pz_train, abs=1e-12)
        assert -1e-9 <= conditional_difference(x) <= 0.2 + 1e-9
