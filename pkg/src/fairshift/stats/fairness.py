"""
Fairness statistics - label/group correlation and prediction disparities.
"""

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from ..core.errors import DegenerateMarginalError, InvalidArgumentError, SingleGroupError
from ..core.types import JointRatios


@dataclass(frozen=True)
class CorrelationReport:
    """Correlation between label and group for one set of joint ratios.

    Attributes:
        rho: Pearson correlation of (y, z).
        c: Conditional difference Pr(y=1|z=1) - Pr(y=1|z=0).
        eta_low, eta_high: Range of sqrt(Var y / Var z) when the label and
            group marginals may move by gamma_y and gamma_z.
    """
    rho: float
    c: float
    eta_low: float
    eta_high: float
    py: float
    pz: float

    def to_dict(self) -> dict:
        return asdict(self)


def eta_band(py: float, pz: float, gamma_y: float = 0.0, gamma_z: float = 0.0) -> tuple[float, float]:
    """Bounds on sqrt(Var y / Var z) with marginals allowed to move by gamma.

    Negative numerators are clamped to zero.

    Raises:
        DegenerateMarginalError: If a denominator is not positive.
    """
    num_low = py - gamma_y - (py + gamma_y) ** 2
    num_high = py + gamma_y - (py - gamma_y) ** 2
    den_low = pz + gamma_z - (pz - gamma_z) ** 2
    den_high = pz - gamma_z - (pz + gamma_z) ** 2
    if den_low <= 0 or den_high <= 0:
        raise DegenerateMarginalError(
            f"eta band undefined for pz={pz:.4f}, gamma_z={gamma_z}: denominator not positive"
        )
    return math.sqrt(max(num_low, 0.0) / den_low), math.sqrt(max(num_high, 0.0) / den_high)


def correlation(ratios: JointRatios, gamma_y: float = 0.0, gamma_z: float = 0.0) -> CorrelationReport:
    """Pearson correlation and conditional difference for joint ratios.

    Raises:
        DegenerateMarginalError: If Pr(y=1) or Pr(z=1) is 0 or 1.
    """
    w11, w10, w01, w00 = ratios
    py, pz = ratios.py, ratios.pz
    if not (0.0 < py < 1.0) or not (0.0 < pz < 1.0):
        raise DegenerateMarginalError(f"marginals must lie in (0, 1): Pr(y=1)={py}, Pr(z=1)={pz}")

    cov = w11 * w00 - w10 * w01
    rho = cov / math.sqrt(py * (1 - py) * pz * (1 - pz))
    c = w11 / (w11 + w01) - w10 / (w10 + w00)
    eta_low, eta_high = eta_band(py, pz, gamma_y, gamma_z)
    return CorrelationReport(
        rho=float(min(max(rho, -1.0), 1.0)),
        c=float(c),
        eta_low=eta_low,
        eta_high=eta_high,
        py=py,
        pz=pz,
    )


def correlation_shift(d1: JointRatios, d2: JointRatios) -> float:
    """Absolute difference of the label/group Pearson correlations of two distributions."""
    return abs(correlation(d1).rho - correlation(d2).rho)


def alignment(ratios: JointRatios) -> float:
    """Pr(y=1|z=1) + Pr(y=0|z=0), which always equals 1 + c."""
    pz = ratios.pz
    if not 0.0 < pz < 1.0:
        raise DegenerateMarginalError(f"group marginal must lie in (0, 1), got {pz}")
    direct = ratios.w11 / pz + ratios.w00 / (1 - pz)
    c = ratios.w11 / pz - ratios.w10 / (1 - pz)
    assert abs(direct - (1.0 + c)) <= 1e-12, (direct, c)
    return 1.0 + c


# =============================================================================
# Disparities
# =============================================================================

@dataclass(frozen=True)
class DisparityReport:
    """Disparities of hard predictions.

    ``dp`` and ``eo`` compare each group with the whole population; the
    ``*_pairwise`` fields compare group 1 with group 0. ``pp`` is the
    pairwise predictive-parity gap. ``flags`` lists undefined terms.
    """
    dp: float
    eo: float
    pp: float
    dp_pairwise: float
    eo_pairwise: float
    pp_pairwise: float
    combined: float
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        data = asdict(self)
        data["flags"] = list(self.flags)
        return data


def _binary(values: Sequence[int], name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1 or (arr.size and not np.isin(arr, (0, 1)).all()):
        raise InvalidArgumentError(f"{name} must be a 1-D array of 0/1 values")
    return arr.astype(np.int64)


def validate_predictions(
    y: Sequence[int], z: Sequence[int], yhat: Sequence[int]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coerce and validate label, group, and prediction arrays.

    Raises:
        InvalidArgumentError: On length mismatch or non-binary values.
        SingleGroupError: If only one group is present.
    """
    y, z, yhat = _binary(y, "y"), _binary(z, "z"), _binary(yhat, "yhat")
    if not (y.shape == z.shape == yhat.shape):
        raise InvalidArgumentError(f"length mismatch: y={y.size}, z={z.size}, yhat={yhat.size}")
    if np.unique(z).size < 2:
        raise SingleGroupError("disparities need both groups present")
    return y, z, yhat


def disparities(y: Sequence[int], z: Sequence[int], yhat: Sequence[int]) -> DisparityReport:
    """Demographic parity, equalized odds, and predictive parity gaps.

    Raises:
        SingleGroupError: If only one group is present.
    """
    y, z, yhat = validate_predictions(y, z, yhat)
    flags = []

    overall = yhat.mean()
    rate = {g: yhat[z == g].mean() for g in (0, 1)}
    dp = max(abs(rate[g] - overall) for g in (0, 1))
    dp_pairwise = abs(rate[1] - rate[0])

    eo_terms, eo_pairwise_terms = [], []
    for label in (0, 1):
        in_label = y == label
        if not in_label.any():
            flags.append(f"missing-label:y={label}")
            continue
        base = (yhat[in_label] == label).mean()
        hit = {}
        for g in (0, 1):
            cell = in_label & (z == g)
            if not cell.any():
                flags.append(f"missing-cell:y={label},z={g}")
                continue
            hit[g] = (yhat[cell] == label).mean()
            eo_terms.append(abs(hit[g] - base))
        if len(hit) == 2:
            eo_pairwise_terms.append(abs(hit[1] - hit[0]))

    pp_terms = []
    for label in (0, 1):
        precision = {}
        for g in (0, 1):
            predicted = (yhat == label) & (z == g)
            if predicted.any():
                precision[g] = (y[predicted] == label).mean()
        if len(precision) == 2:
            pp_terms.append(abs(precision[1] - precision[0]))
        else:
            flags.append(f"pp-undefined:yhat={label}")

    eo = max(eo_terms, default=0.0)
    pp_pairwise = max(pp_terms, default=0.0)
    return DisparityReport(
        dp=float(dp),
        eo=float(eo),
        pp=float(pp_pairwise),
        dp_pairwise=float(dp_pairwise),
        eo_pairwise=float(max(eo_pairwise_terms, default=0.0)),
        pp_pairwise=float(pp_pairwise),
        combined=float(max(dp, eo)),
        flags=tuple(flags),
    )
