"""Tests for dataset types, class ratios, and CSV I/O."""

import numpy as np
import pytest

from conftest import make_dataset


class TestTypes:
    """Tests for the core dataclasses."""

    def test_cell_index_order(self):
        """Test that (y, z) pairs map to the canonical CELLS order."""
        from fairshift.core.types import CELLS, cell_index

        labels = [y for y, _ in CELLS]
        groups = [z for _, z in CELLS]
        assert cell_index(labels, groups).tolist() == [0, 1, 2, 3]

    def test_dataset_rejects_non_binary_labels(self):
        """Test that labels outside {0, 1} are rejected."""
        from fairshift.core.errors import InvalidDatasetError
        from fairshift.core.types import TabularDataset

        with pytest.raises(InvalidDatasetError):
            TabularDataset(np.zeros((3, 1)), [0, 2, 1], [0, 1, 1])

    def test_dataset_rejects_length_mismatch(self):
        """Test that label, group, and feature lengths must agree."""
        from fairshift.core.errors import InvalidDatasetError
        from fairshift.core.types import TabularDataset

        with pytest.raises(InvalidDatasetError):
            TabularDataset(np.zeros((3, 1)), [0, 1], [0, 1, 1])

    def test_dataset_arrays_are_read_only_copies(self):
        """Test that the dataset does not alias its inputs."""
        from fairshift.core.types import TabularDataset

        features = np.zeros((2, 1))
        data = TabularDataset(features, [0, 1], [1, 0])
        features[0, 0] = 5.0

        assert data.features[0, 0] == 0.0
        with pytest.raises(ValueError):
            data.labels[0] = 1

    def test_take_allows_duplicates(self, toy_data):
        """Test that take returns a new dataset with repeated rows."""
        sub = toy_data.take([0, 0, 1])
        assert sub.n == 3
        assert np.array_equal(sub.features[0], sub.features[1])

    def test_joint_ratios_validation(self):
        """Test that ratios must be in [0, 1] and sum to 1."""
        from fairshift.core.errors import InvalidRatiosError
        from fairshift.core.types import JointRatios

        with pytest.raises(InvalidRatiosError):
            JointRatios(0.5, 0.5, 0.1, 0.0)
        with pytest.raises(InvalidRatiosError):
            JointRatios(1.2, -0.2, 0.0, 0.0)

    def test_joint_ratios_marginals(self):
        """Test the Pr(y=1) and Pr(z=1) properties."""
        from fairshift.core.types import JointRatios

        r = JointRatios(0.4, 0.1, 0.2, 0.3)
        assert r.py == pytest.approx(0.5)
        assert r.pz == pytest.approx(0.6)
        assert r.get(0, 1) == pytest.approx(0.2)
        assert JointRatios.from_dict(r.to_dict()) == r

    def test_sample_weights_rejects_negative(self):
        """Test that negative weights are rejected."""
        from fairshift.core.errors import DegenerateWeightsError
        from fairshift.core.types import SampleWeights

        with pytest.raises(DegenerateWeightsError):
            SampleWeights([1.0, -0.5])


class TestRatios:
    """Tests for joint ratios, class weights, and resampling."""

    def test_joint_ratios_of_dataset(self, toy_data):
        """Test empirical ratios match class counts."""
        from fairshift.data.ratios import joint_ratios

        r = joint_ratios(toy_data)
        assert r.as_array().tolist() == pytest.approx([0.3, 0.2, 0.1, 0.4])

    def test_joint_ratios_empty_dataset(self):
        """Test that an empty dataset has no ratios."""
        from fairshift.core.errors import EmptyDatasetError
        from fairshift.data.ratios import joint_ratios

        with pytest.raises(EmptyDatasetError):
            joint_ratios(make_dataset(counts=(0, 0, 0, 0)))

    def test_class_weights_reach_target(self, toy_data):
        """Test that weighted class masses equal the target ratios."""
        from fairshift.core.types import JointRatios
        from fairshift.data.ratios import class_weights

        target = JointRatios(0.25, 0.25, 0.25, 0.25)
        w = class_weights(toy_data, target).weights
        cells = toy_data.cells()
        masses = [w[cells == k].sum() / w.sum() for k in range(4)]

        assert masses == pytest.approx([0.25] * 4)
        assert w.sum() == pytest.approx(toy_data.n)

    def test_class_weights_zero_target(self, toy_data):
        """Test that a class with zero target mass gets zero weight."""
        from fairshift.core.types import JointRatios
        from fairshift.data.ratios import class_weights

        w = class_weights(toy_data, JointRatios(0.5, 0.0, 0.25, 0.25))
        assert w.meta["per_class"][1] == 0.0

    def test_class_weights_empty_class(self):
        """Test that positive target mass on an empty class is an error."""
        from fairshift.core.errors import EmptyClassError
        from fairshift.core.types import JointRatios
        from fairshift.data.ratios import class_weights

        data = make_dataset(counts=(10, 0, 10, 10))
        with pytest.raises(EmptyClassError):
            class_weights(data, JointRatios(0.25, 0.25, 0.25, 0.25))

    def test_weighted_resample_is_deterministic(self, toy_data):
        """Test that equal seeds give identical resamples."""
        from fairshift.data.ratios import weighted_resample

        w = np.linspace(0.1, 1.0, toy_data.n)
        a = weighted_resample(toy_data, w, seed=7)
        b = weighted_resample(toy_data, w, seed=7)
        assert np.array_equal(a.features, b.features)

    def test_weighted_resample_zero_weights(self, toy_data):
        """Test that all-zero weights are rejected."""
        from fairshift.core.errors import DegenerateWeightsError
        from fairshift.data.ratios import weighted_resample

        with pytest.raises(DegenerateWeightsError):
            weighted_resample(toy_data, np.zeros(toy_data.n))

    def test_stratified_resample_matches_target_counts(self, toy_data):
        """Test that stratified draws hit the weighted class counts exactly."""
        from fairshift.core.types import JointRatios
        from fairshift.data.ratios import class_weights, weighted_resample

        target = JointRatios(0.1, 0.4, 0.4, 0.1)
        out = weighted_resample(
            toy_data, class_weights(toy_data, target), size=200, seed=1, stratify=toy_data.cells()
        )
        assert out.cell_counts().tolist() == [20, 80, 80, 20]


class TestCsv:
    """Tests for CSV loading and writing."""

    def test_write_then_load(self, tmp_path, toy_data):
        """Test that a written dataset loads back with identical values."""
        from fairshift.data.io import load_csv, write_csv

        path = write_csv(toy_data, tmp_path / "toy.csv")
        loaded = load_csv(path)

        assert loaded.feature_names == toy_data.feature_names
        assert np.array_equal(loaded.labels, toy_data.labels)
        assert np.array_equal(loaded.groups, toy_data.groups)
        assert np.array_equal(loaded.features, toy_data.features)

    def test_custom_columns_and_text_column_skipped(self, tmp_path):
        """Test custom label/group names and skipping of text columns."""
        from fairshift.data.io import load_csv

        path = tmp_path / "d.csv"
        path.write_text("name,a,label,sex\nx,1.5,1,0\ny,2.5,0,1\n", encoding="utf-8")
        data = load_csv(path, label_column="label", group_column="sex")

        assert data.feature_names == ("a",)
        assert data.labels.tolist() == [1, 0]
        assert data.groups.tolist() == [0, 1]

    def test_missing_file(self, tmp_path):
        """Test that a missing file is a parse error."""
        from fairshift.core.errors import ParseError
        from fairshift.data.io import load_csv

        with pytest.raises(ParseError):
            load_csv(tmp_path / "nope.csv")

    def test_non_binary_label_reports_row(self, tmp_path):
        """Test that a bad label value names its row."""
        from fairshift.core.errors import ParseError
        from fairshift.data.io import load_csv

        path = tmp_path / "d.csv"
        path.write_text("a,y,z\n1,0,1\n2,2,0\n", encoding="utf-8")
        with pytest.raises(ParseError) as info:
            load_csv(path)
        assert info.value.row == 2

    def test_mixed_numeric_column(self, tmp_path):
        """Test that a non-number in a numeric column is rejected."""
        from fairshift.core.errors import ParseError
        from fairshift.data.io import load_csv

        path = tmp_path / "d.csv"
        path.write_text("a,y,z\n1,0,1\nabc,1,0\n3,1,1\n", encoding="utf-8")
        with pytest.raises(ParseError) as info:
            load_csv(path)
        assert info.value.row == 2

    def test_ragged_row(self, tmp_path):
        """Test that a row with extra fields is rejected."""
        from fairshift.core.errors import ParseError
        from fairshift.data.io import load_csv

        path = tmp_path / "d.csv"
        path.write_text("a,y,z\n1,0,1\n2,1,0,9\n", encoding="utf-8")
        with pytest.raises(ParseError):
            load_csv(path)
