"""
Classifier frontier - analytic accuracy and disparities of per-class randomized classifiers.

A classifier is described by its positive rate Pr(yhat=1 | y, z) in each of
the four classes; every quantity then follows from the joint ratios.
"""

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..core.errors import DegenerateMarginalError, InvalidArgumentError
from ..core.types import CELLS, JointRatios

METRICS = ("dp", "eo", "combined")


@dataclass(frozen=True)
class FrontierPoint:
    """One classifier: per-class rates (CELLS order) and its exact scores."""
    rates: tuple[float, float, float, float]
    accuracy: float
    dp: float
    eo: float
    combined: float

    def to_dict(self) -> dict:
        data = asdict(self)
        data.update({f"rate_{y}{z}": r for (y, z), r in zip(CELLS, self.rates)})
        del data["rates"]
        return data


def rate_grid(step: float) -> np.ndarray:
    """{0, step, 2 step, ..., 1}, with 1 included even if step does not divide it."""
    if not 0.0 < step <= 0.5:
        raise InvalidArgumentError(f"step must lie in (0, 0.5], got {step}")
    count = round(1.0 / step)
    if abs(count * step - 1.0) < 1e-9:
        return np.linspace(0.0, 1.0, count + 1)
    return np.append(np.arange(0.0, 1.0, step), 1.0)


def evaluate_rates(ratios: JointRatios, rates: np.ndarray) -> dict[str, np.ndarray]:
    """Accuracy, dp, eo and combined for rows of per-class rates (N x 4).

    Disparities compare each group (or class) with the population, as in
    ``disparities``. Classes with zero mass are left out of eo.

    Raises:
        DegenerateMarginalError: If a label or group marginal is 0 or 1.
    """
    w = ratios.as_array()
    py, pz = ratios.py, ratios.pz
    if not (0.0 < py < 1.0) or not (0.0 < pz < 1.0):
        raise DegenerateMarginalError(f"marginals must lie in (0, 1): Pr(y=1)={py}, Pr(z=1)={pz}")
    r = np.atleast_2d(np.asarray(rates, dtype=float))

    overall = r @ w
    group1 = (w[0] * r[:, 0] + w[2] * r[:, 2]) / pz
    group0 = (w[1] * r[:, 1] + w[3] * r[:, 3]) / (1 - pz)
    dp = np.maximum(np.abs(group1 - overall), np.abs(group0 - overall))

    positive_hit = (w[0] * r[:, 0] + w[1] * r[:, 1]) / py
    negative_hit = (w[2] * r[:, 2] + w[3] * r[:, 3]) / (1 - py)
    gaps = [
        np.abs(r[:, 0] - positive_hit),
        np.abs(r[:, 1] - positive_hit),
        np.abs(r[:, 2] - negative_hit),
        np.abs(r[:, 3] - negative_hit),
    ]
    eo = np.max([gap for k, gap in enumerate(gaps) if w[k] > 0], axis=0)

    labels = np.array([y for y, _ in CELLS], dtype=float)
    accuracy = (w * (labels * r + (1 - labels) * (1 - r))).sum(axis=1)
    return {"accuracy": accuracy, "dp": dp, "eo": eo, "combined": np.maximum(dp, eo)}


def frontier(ratios: JointRatios, step: float = 0.1) -> list[FrontierPoint]:
    """All classifiers on the rate grid, in lexicographic rate order."""
    values = rate_grid(step)
    rates = np.array(np.meshgrid(values, values, values, values, indexing="ij")).reshape(4, -1).T
    scores = evaluate_rates(ratios, rates)
    columns = zip(
        rates.tolist(),
        scores["accuracy"].tolist(),
        scores["dp"].tolist(),
        scores["eo"].tolist(),
        scores["combined"].tolist(),
    )
    return [
        FrontierPoint(rates=tuple(r), accuracy=acc, dp=dp, eo=eo, combined=combined)
        for r, acc, dp, eo, combined in columns
    ]


def reevaluate(rates: tuple[float, ...], ratios: JointRatios) -> FrontierPoint:
    """Score one rate classifier under other joint ratios."""
    scores = evaluate_rates(ratios, np.asarray(rates, dtype=float))
    return FrontierPoint(
        rates=tuple(float(v) for v in rates),
        accuracy=float(scores["accuracy"][0]),
        dp=float(scores["dp"][0]),
        eo=float(scores["eo"][0]),
        combined=float(scores["combined"][0]),
    )


def best_accuracy(points: list[FrontierPoint], tau: float, metric: str = "combined") -> Optional[FrontierPoint]:
    """Most accurate point whose ``metric`` is at most ``tau`` (first on ties)."""
    if metric not in METRICS:
        raise InvalidArgumentError(f"metric must be one of {METRICS}, got {metric!r}")
    best = None
    for point in points:
        if getattr(point, metric) <= tau + 1e-12 and (best is None or point.accuracy > best.accuracy):
            best = point
    return best


def sample_classifier(
    ratios: JointRatios, rates: np.ndarray, n: int, seed: int = 0
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Draw (y, z, yhat) for a rate classifier, for Monte-Carlo checks."""
    rng = np.random.default_rng(seed)
    cells = rng.choice(4, size=n, p=ratios.as_array())
    table = np.array(CELLS)
    yhat = (rng.random(n) < np.asarray(rates, dtype=float)[cells]).astype(np.int64)
    return table[cells, 0], table[cells, 1], yhat
