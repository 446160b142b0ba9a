"""Shared fixtures for fairshift tests."""

import numpy as np
import pytest


def make_dataset(counts=(30, 20, 10, 40), p=2, seed=0):
    """Dataset with the given row counts per (y, z) class in CELLS order."""
    from fairshift.core.types import CELLS, TabularDataset

    rng = np.random.default_rng(seed)
    labels, groups = [], []
    for (y, z), count in zip(CELLS, counts):
        labels += [y] * count
        groups += [z] * count
    labels = np.array(labels)
    groups = np.array(groups)
    features = rng.normal(size=(labels.size, p)) + labels[:, None]
    return TabularDataset(features, labels, groups)


@pytest.fixture
def toy_data():
    return make_dataset()


@pytest.fixture
def synthetic_small():
    from fairshift.sim.synthetic import SyntheticSpec, generate_synthetic

    return generate_synthetic(SyntheticSpec(n=600, k=4.0, seed=3))
