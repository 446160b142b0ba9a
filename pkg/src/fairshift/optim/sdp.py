"""
SDP relaxation - lift the ratio QCQP and solve it with cvxopt.

The ratio vector x = (w11, w10, w01, w00) is lifted to the 5x5 block
A = [[X, x], [x^T, 1]] with A PSD. The correlation-range constraints
alpha <= c(x) <= beta are the quadratic forms x^T P_alpha x >= 0 and
x^T P_beta x <= 0, which become linear in X = x x^T.
"""

import logging
from dataclasses import dataclass
from typing import NoReturn, Optional

import numpy as np
from cvxopt import matrix, solvers

from ..core.config import REPAIR_C_TOL, SDP_FEAS_TOL, SDP_GAP_TOL, SDP_MAX_ITERS
from ..core.errors import (
    ExtractionFailedError,
    InfeasibleError,
    SdpNonConvergedError,
)
from ..core.types import JointRatios
from .oracle import grid_oracle
from .problem import BAND_TOL, RatioProblem, RatioSolution
from .repair import repair

logger = logging.getLogger(__name__)

# Upper-triangle coordinates of the symmetric 5x5 lifted block.
_PAIRS = [(i, j) for i in range(5) for j in range(i, 5)]
_INDEX = {pair: k for k, pair in enumerate(_PAIRS)}

# Residual level at which an "unknown" cvxopt status is still accepted.
_ACCEPT_RESIDUAL = 1e-6


def correlation_form(gamma: float) -> np.ndarray:
    """Symmetric P with x^T P x >= 0 exactly when c(x) >= gamma."""
    return np.array([
        [0.0, -gamma / 2, 0.0, (1 - gamma) / 2],
        [-gamma / 2, 0.0, (-1 - gamma) / 2, 0.0],
        [0.0, (-1 - gamma) / 2, 0.0, -gamma / 2],
        [(1 - gamma) / 2, 0.0, -gamma / 2, 0.0],
    ])


@dataclass(frozen=True, eq=False)
class SdpInstance:
    """Quadratic and linear data of the lifted problem.

    The objective is x^T P0 x + q0^T x, which equals sum((w - x)**2) minus
    the constant sum(w**2).
    """
    problem: RatioProblem
    P0: np.ndarray
    P_alpha: np.ndarray
    P_beta: np.ndarray
    q0: np.ndarray
    q2: np.ndarray
    q3: np.ndarray
    q4: np.ndarray

    @property
    def constant(self) -> float:
        w = self.problem.current.as_array()
        return float(w @ w)

    @staticmethod
    def lift(x: np.ndarray) -> np.ndarray:
        """Rank-one lifted block [[x x^T, x], [x^T, 1]]."""
        v = np.append(np.asarray(x, dtype=float), 1.0)
        return np.outer(v, v)


def build_sdp(problem: RatioProblem) -> SdpInstance:
    """Assemble the lifted problem data."""
    w = problem.current.as_array()
    return SdpInstance(
        problem=problem,
        P0=np.eye(4),
        P_alpha=correlation_form(problem.alpha),
        P_beta=correlation_form(problem.beta),
        q0=-2.0 * w,
        # q2 picks out Pr(z=1) and q3 picks out Pr(y=1)
        q2=np.array([1.0, 0.0, 1.0, 0.0]),
        q3=np.array([1.0, 1.0, 0.0, 0.0]),
        q4=np.ones(4),
    )


def _trace_row(P: np.ndarray) -> np.ndarray:
    """Coefficients of Tr(X P) over the packed upper triangle."""
    row = np.zeros(len(_PAIRS))
    for k, (i, j) in enumerate(_PAIRS):
        if j < 4:
            row[k] = P[i, j] if i == j else 2.0 * P[i, j]
    return row


def _linear_row(q: np.ndarray) -> np.ndarray:
    """Coefficients of q^T x, where x is the last column of the block."""
    row = np.zeros(len(_PAIRS))
    for i in range(4):
        row[_INDEX[(i, 4)]] = q[i]
    return row


def _unpack(v: np.ndarray) -> np.ndarray:
    A = np.zeros((5, 5))
    for k, (i, j) in enumerate(_PAIRS):
        A[i, j] = A[j, i] = v[k]
    return A


def _psd_map() -> np.ndarray:
    """Gs with A = -Gs v, so the cone constraint reads hs - Gs v = A >= 0."""
    G = np.zeros((25, len(_PAIRS)))
    for k, (i, j) in enumerate(_PAIRS):
        G[i * 5 + j, k] = -1.0
        G[j * 5 + i, k] = -1.0
    return G


def _assemble(instance: SdpInstance):
    problem = instance.problem
    c = _trace_row(instance.P0) + _linear_row(instance.q0)

    ineq_rows, ineq_rhs = [], []
    eq_rows = [np.eye(len(_PAIRS))[_INDEX[(4, 4)]], _linear_row(instance.q4)]
    eq_rhs = [1.0, 1.0]

    if problem.pinned_c:
        eq_rows.append(_trace_row(instance.P_alpha))
        eq_rhs.append(0.0)
    else:
        ineq_rows += [-_trace_row(instance.P_alpha), _trace_row(instance.P_beta)]
        ineq_rhs += [0.0, 0.0]

    for q, center, gamma in (
        (instance.q3, problem.py_train, problem.gamma_y),
        (instance.q2, problem.pz_train, problem.gamma_z),
    ):
        if gamma == 0:
            eq_rows.append(_linear_row(q))
            eq_rhs.append(center)
        else:
            ineq_rows += [_linear_row(q), -_linear_row(q)]
            ineq_rhs += [center + gamma, -(center - gamma)]

    for i in range(4):
        unit = np.zeros(4)
        unit[i] = 1.0
        ineq_rows += [-_linear_row(unit), _linear_row(unit)]
        ineq_rhs += [0.0, 1.0]

    return (
        c,
        np.array(ineq_rows),
        np.array(ineq_rhs),
        np.array(eq_rows),
        np.array(eq_rhs),
    )


def solve_sdp(
    instance: SdpInstance,
    max_iters: int = SDP_MAX_ITERS,
    gap_tol: float = SDP_GAP_TOL,
    feas_tol: float = SDP_FEAS_TOL,
) -> tuple[np.ndarray, float]:
    """Solve the relaxation with cvxopt's primal-dual interior-point method.

    Returns:
        Tuple of (A, lower_bound) where A is the 5x5 lifted block and
        lower_bound bounds the ratio objective sum((w - w')**2) from below.

    Raises:
        InfeasibleError: If the solver fails and no feasible ratios exist.
        SdpNonConvergedError: If the solver stops without a usable solution.
    """
    c, Gl, hl, A_eq, b_eq = _assemble(instance)
    options = {
        "show_progress": False,
        "maxiters": int(max_iters),
        "abstol": gap_tol,
        "reltol": gap_tol * 10,
        "feastol": feas_tol,
    }

    try:
        sol = solvers.sdp(
            matrix(c),
            Gl=matrix(Gl),
            hl=matrix(hl),
            Gs=[matrix(_psd_map())],
            hs=[matrix(np.zeros((5, 5)))],
            A=matrix(A_eq),
            b=matrix(b_eq),
            options=options,
        )
    except (ArithmeticError, ValueError) as e:
        _raise_failure(instance, f"solver error: {e}", {})

    status = sol["status"]
    residuals = {
        "status": status,
        "gap": sol.get("gap"),
        "primal_infeasibility": sol.get("primal infeasibility"),
        "dual_infeasibility": sol.get("dual infeasibility"),
        "iterations": sol.get("iterations"),
    }
    logger.debug(f"SDP finished: {residuals}")

    if status != "optimal":
        usable = (
            status == "unknown"
            and sol["x"] is not None
            and _small(residuals["primal_infeasibility"])
            and _small(residuals["gap"])
        )
        if not usable:
            _raise_failure(instance, f"solver status '{status}'", residuals)

    A = _unpack(np.array(sol["x"]).ravel())
    bounds = [sol["primal objective"], sol.get("dual objective")]
    lower = min(b for b in bounds if b is not None) + instance.constant
    return A, float(lower)


def _small(value: Optional[float]) -> bool:
    return value is not None and abs(value) <= _ACCEPT_RESIDUAL


def has_feasible_ratios(problem: RatioProblem) -> bool:
    """Whether any ratios meet the correlation range inside the marginal bands.

    Tries the repair scan first, which keeps gamma = 0 marginals exact even
    when they fall between oracle grid points, then the grid oracle.
    """
    try:
        repair(problem)
        return True
    except ExtractionFailedError:
        pass
    try:
        grid_oracle(problem, resolution=100)
        return True
    except InfeasibleError:
        return False


def _raise_failure(instance: SdpInstance, reason: str, residuals: dict) -> NoReturn:
    """Tell infeasible problems apart from solver trouble."""
    if not has_feasible_ratios(instance.problem):
        raise InfeasibleError(f"{reason}; no feasible ratios exist")
    raise SdpNonConvergedError(f"{reason}; feasible ratios exist", residuals=residuals)


def extract_solution(
    A: np.ndarray,
    problem: RatioProblem,
    lower_bound: Optional[float] = None,
    c_tol: float = REPAIR_C_TOL,
) -> RatioSolution:
    """Read ratios off the last column of the lifted block.

    The column is clipped to [0, 1] and renormalized. If the correlation
    range is missed by more than ``c_tol`` or a marginal band is violated, the
    ratios are repaired and the method becomes "sdp_repaired".

    Raises:
        ExtractionFailedError: If the column is all zero or repair fails.
    """
    x = np.clip(np.asarray(A, dtype=float)[:4, 4], 0.0, 1.0)
    total = x.sum()
    if not total > 0:
        raise ExtractionFailedError("lifted block has an all-zero ratio column")
    x = x / total

    residuals = problem.residuals(x)
    method = "sdp"
    needs_repair = (
        residuals["c_low"] > c_tol
        or residuals["c_high"] > c_tol
        or residuals["y_band"] > BAND_TOL
        or residuals["z_band"] > BAND_TOL
    )
    if needs_repair:
        logger.info(f"Extracted ratios miss constraints {residuals}; repairing")
        x = repair(problem)
        residuals = problem.residuals(x)
        method = "sdp_repaired"

    objective = problem.objective(x)
    if lower_bound is not None:
        residuals["relaxation_gap"] = objective - lower_bound
        if objective > 1.05 * lower_bound + 1e-6:
            logger.warning(
                f"Extracted objective {objective:.6g} exceeds relaxation bound {lower_bound:.6g} by more than 5%"
            )

    return RatioSolution(
        ratios=JointRatios.from_array(x),
        objective=objective,
        method=method,
        feasibility_residuals=residuals,
        relaxation_lower_bound=lower_bound,
    )


def optimize_ratios(
    problem: RatioProblem,
    max_iters: int = SDP_MAX_ITERS,
    gap_tol: float = SDP_GAP_TOL,
) -> RatioSolution:
    """Closest feasible class ratios: SDP relaxation, extraction, repair.

    When the solver does not converge but feasible ratios exist, the repair
    step is used directly.

    Raises:
        InfeasibleError: If no feasible ratios exist.
    """
    instance = build_sdp(problem)
    try:
        try:
            A, lower = solve_sdp(instance, max_iters=max_iters, gap_tol=gap_tol)
        except SdpNonConvergedError as e:
            logger.warning(f"SDP did not converge ({e}); falling back to repair")
            x = repair(problem)
            return RatioSolution(
                ratios=JointRatios.from_array(x),
                objective=problem.objective(x),
                method="sdp_repaired",
                feasibility_residuals=problem.residuals(x),
            )
        solution = extract_solution(A, problem, lower_bound=lower)
    except ExtractionFailedError as e:
        # The relaxation can be feasible when the ratio problem is not
        if not has_feasible_ratios(problem):
            raise InfeasibleError(
                f"no ratios with c in [{problem.alpha}, {problem.beta}] inside the marginal bands"
            ) from e
        raise

    logger.info(
        f"Ratios {solution.ratios.as_array().round(4)} (c={solution.achieved_c:.4f}, "
        f"objective={solution.objective:.3g}, method={solution.method})"
    )
    return solution
