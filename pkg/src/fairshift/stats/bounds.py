"""
Disparity bounds - left-hand sides of the pairwise incompatibility inequalities.

Each function returns a quantity that is provably at most ``2 * eps`` (dpeo) or
``eps`` (ppdp, eopp), where eps is the larger of the two pairwise disparities
involved. Tests compare against ``DisparityReport`` pairwise fields.
"""

import numpy as np

from ..core.errors import EmptyCellError, UndefinedPPError
from .fairness import validate_predictions


def _require_all_cells(y: np.ndarray, z: np.ndarray) -> None:
    for label in (0, 1):
        for g in (0, 1):
            if not ((y == label) & (z == g)).any():
                raise EmptyCellError(f"cell (y={label}, z={g}) is empty")


def _mean(mask: np.ndarray, within: np.ndarray) -> float:
    """Pr(mask | within)."""
    return float(mask[within].mean())


def dpeo_bound_lhs(y, z, yhat) -> float:
    """max over y, z of |Pr(y|z) - Pr(y|z')| * |Pr(yhat=y|y,z) - Pr(yhat=y|y',z)|.

    Bounded by 2 * max(dp_pairwise, eo_pairwise).

    Raises:
        EmptyCellError: If any (y, z) cell is empty.
    """
    y, z, yhat = validate_predictions(y, z, yhat)
    _require_all_cells(y, z)

    best = 0.0
    for label in (0, 1):
        other = 1 - label
        for g in (0, 1):
            in_g, in_other_g = z == g, z == 1 - g
            label_gap = abs(_mean(y == label, in_g) - _mean(y == label, in_other_g))
            hit_same = _mean(yhat == label, (y == label) & in_g)
            hit_other = _mean(yhat == label, (y == other) & in_g)
            best = max(best, label_gap * abs(hit_same - hit_other))
    return best


def ppdp_bound_lhs(y, z, yhat) -> float:
    """max over y, z of |Pr(y=y, yhat=y | z) - Pr(y=y, yhat=y | z')| / denominator.

    The denominator is 2 Pr(y|yhat=y,z) + Pr(yhat=y|z) + Pr(y|yhat=y,z').
    Terms whose precision is undefined are skipped. Bounded by
    max(pp_pairwise, dp_pairwise).

    Raises:
        UndefinedPPError: If no term is defined.
    """
    y, z, yhat = validate_predictions(y, z, yhat)

    terms = []
    for label in (0, 1):
        predicted = yhat == label
        for g in (0, 1):
            in_g, in_other_g = z == g, z == 1 - g
            if not (predicted & in_g).any() or not (predicted & in_other_g).any():
                continue
            joint_g = _mean((y == label) & predicted, in_g)
            joint_other = _mean((y == label) & predicted, in_other_g)
            precision_g = _mean(y == label, predicted & in_g)
            precision_other = _mean(y == label, predicted & in_other_g)
            rate_g = _mean(predicted, in_g)
            denominator = 2 * precision_g + rate_g + precision_other
            terms.append(abs(joint_g - joint_other) / denominator)

    if not terms:
        raise UndefinedPPError("predictive parity undefined for both prediction values")
    return max(terms)


def eopp_bound_lhs(y, z, yhat) -> float:
    """Equalized-odds versus predictive-parity incompatibility term.

    For each y and z, with z' the other group::

        Pr(yhat=y|y,z') / (Pr(yhat=y, z) + Pr(y, z))
            * |Pr(y, z) - Pr(y|z') Pr(yhat=y, z) / Pr(yhat=y|z')|

    Terms with zero denominators are skipped. Bounded by
    max(eo_pairwise, pp_pairwise).

    Raises:
        EmptyCellError: If any (y, z) cell is empty.
    """
    y, z, yhat = validate_predictions(y, z, yhat)
    _require_all_cells(y, z)
    everyone = np.ones_like(y, dtype=bool)

    best = 0.0
    for label in (0, 1):
        predicted = yhat == label
        for g in (0, 1):
            in_g, in_other_g = z == g, z == 1 - g
            rate_other = _mean(predicted, in_other_g)
            if rate_other == 0:
                continue
            joint_pred = _mean(predicted & in_g, everyone)
            joint_label = _mean((y == label) & in_g, everyone)
            hit_other = _mean(predicted, (y == label) & in_other_g)
            label_other = _mean(y == label, in_other_g)
            gap = abs(joint_label - label_other * joint_pred / rate_other)
            best = max(best, hit_other / (joint_pred + joint_label) * gap)
    return best
