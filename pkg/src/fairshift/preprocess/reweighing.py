"""
Reweighing - weights that make label and group independent.
"""

import numpy as np

from ..core.errors import EmptyClassError, EmptyDatasetError
from ..core.types import CELLS, SampleWeights, TabularDataset


def reweighing_weights(data: TabularDataset) -> SampleWeights:
    """Row weight Pr(y) Pr(z) / Pr(y, z) for the row's class.

    Raises:
        EmptyDatasetError: If the dataset has no rows.
        EmptyClassError: If a (y, z) class has no rows.
    """
    if data.n == 0:
        raise EmptyDatasetError("cannot reweigh an empty dataset")
    counts = data.cell_counts().astype(float)
    joint = counts / data.n
    py = joint[0] + joint[1]
    pz = joint[0] + joint[2]

    per_class = np.zeros(4)
    for k, (y, z) in enumerate(CELLS):
        if counts[k] == 0:
            raise EmptyClassError(f"class (y={y}, z={z}) has no rows to reweigh")
        marginal = (py if y else 1 - py) * (pz if z else 1 - pz)
        per_class[k] = marginal / joint[k]
    return SampleWeights(per_class[data.cells()], meta={"per_class": per_class.tolist()})
