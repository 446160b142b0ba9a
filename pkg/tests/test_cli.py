"""Tests for the fairshift command line."""

import json

import pytest


@pytest.fixture
def train_csv(tmp_path):
    from fairshift.cli import main

    path = tmp_path / "train.csv"
    assert main(["gen-synthetic", "--n", "400", "--seed", "1", "--out", str(path)]) == 0
    return path


class TestCommands:
    """Tests for individual subcommands."""

    def test_gen_synthetic_writes_csv(self, train_csv):
        """Test that generated data has a header and one line per row."""
        lines = train_csv.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "x1,x2,y,z"
        assert len(lines) == 401

    def test_estimate_shift_prints_json(self, train_csv, capsys):
        """Test that the interval is printed as JSON."""
        from fairshift.cli import main

        assert main(["estimate-shift", "--data", str(train_csv), "--delta", "0.1"]) == 0
        shift = json.loads(capsys.readouterr().out)
        assert shift["alpha"] <= shift["c_hat"] <= shift["beta"]
        assert shift["confidence"] == pytest.approx(0.9)

    def test_optimize_ratios_grid(self, capsys):
        """Test the grid method on inline ratios."""
        from fairshift.cli import main

        argv = ["optimize-ratios", "--ratios", "[0.3, 0.2, 0.2, 0.3]", "--alpha", "0", "--beta", "0.5",
                "--method", "grid", "--resolution", "50"]
        assert main(argv) == 0
        solution = json.loads(capsys.readouterr().out)
        assert solution["method"] == "grid"
        assert solution["objective"] == pytest.approx(0.0)

    def test_optimize_ratios_needs_input(self):
        """Test that either --ratios or --data is required."""
        from fairshift.cli import main

        with pytest.raises(SystemExit):
            main(["optimize-ratios", "--alpha", "0", "--beta", "0.1"])

    def test_optimize_ratios_infeasible_exits_1(self):
        """Test that an infeasible problem exits with status 1."""
        from fairshift.cli import main

        argv = ["optimize-ratios", "--ratios", "[0.35, 0.35, 0.15, 0.15]", "--alpha", "0.9", "--beta", "1.0",
                "--gamma-y", "0", "--gamma-z", "0"]
        assert main(argv) == 1

    def test_preprocess_writes_sidecar(self, train_csv, tmp_path):
        """Test that pre-processing writes data and a JSON sidecar."""
        from fairshift.cli import main

        out = tmp_path / "pre.csv"
        argv = ["preprocess", "--data", str(train_csv), "--alpha", "0.1", "--beta", "0.2", "--out", str(out)]
        assert main(argv) == 0
        sidecar = json.loads((tmp_path / "pre.csv.json").read_text(encoding="utf-8"))
        assert sidecar["solution"]["method"] in ("sdp", "sdp_repaired")
        assert 0.08 <= sidecar["achieved_c"] <= 0.22

    def test_train_then_eval(self, train_csv, tmp_path, capsys):
        """Test that a trained model can be evaluated."""
        from fairshift.cli import main

        model = tmp_path / "model.json"
        argv = ["train", "--data", str(train_csv), "--method", "fc", "--lambda", "2", "--epochs", "5",
                "--lr", "0.01", "--out", str(model)]
        assert main(argv) == 0
        assert main(["eval", "--data", str(train_csv), "--model", str(model)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert 0.0 <= report["accuracy"] <= 1.0
        assert "dp" in report and "eo" in report

    def test_frontier_csv(self, tmp_path):
        """Test that the frontier is written with one row per classifier."""
        from fairshift.cli import main

        out = tmp_path / "frontier.csv"
        argv = ["frontier", "--ratios", '{"w11": 0.3, "w10": 0.2, "w01": 0.2, "w00": 0.3}',
                "--step", "0.5", "--out", str(out)]
        assert main(argv) == 0
        assert len(out.read_text(encoding="utf-8").splitlines()) == 82

    def test_missing_data_exits_1(self, tmp_path):
        """Test that a missing input file exits with status 1."""
        from fairshift.cli import main

        assert main(["estimate-shift", "--data", str(tmp_path / "nope.csv")]) == 1

    def test_bad_ratios_json_exits_1(self, tmp_path):
        """Test that unreadable ratios exit with status 1."""
        from fairshift.cli import main

        out = tmp_path / "f.csv"
        assert main(["frontier", "--ratios", "[0.3, 0.2", "--out", str(out)]) == 1


class TestExperiments:
    """Tests for config-driven commands."""

    def _config(self, tmp_path, **changes):
        config = {
            "name": "cli",
            "dataset": {"n_train": 300, "n_test": 300},
            "pipelines": ["lr", "ours+lr"],
            "trainers": {"lr": {"epochs": 5, "lr_rate": 0.01}},
            "seeds": [0],
            "output_dir": str(tmp_path / "runs"),
            **changes,
        }
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        return path

    def test_run_writes_reports(self, tmp_path):
        """Test that run writes CSV and JSON reports named after the config."""
        from fairshift.cli import main

        assert main(["run", "--config", str(self._config(tmp_path))]) == 0
        assert (tmp_path / "runs" / "cli.csv").exists()
        assert (tmp_path / "runs" / "cli.json").exists()

    def test_run_with_failed_cell_exits_1(self, tmp_path):
        """Test that any failed cell makes run exit 1."""
        from fairshift.cli import main

        path = self._config(tmp_path, trainers={"lr": {"batch_size": 100000}})
        assert main(["run", "--config", str(path)]) == 1

    def test_pipeline_override(self, tmp_path):
        """Test that --pipelines replaces the config's list."""
        from fairshift.cli import main

        argv = ["run", "--config", str(self._config(tmp_path)), "--pipelines", "rw+lr"]
        assert main(argv) == 0
        csv = (tmp_path / "runs" / "cli.csv").read_text(encoding="utf-8").splitlines()
        assert len(csv) == 2
        assert csv[1].startswith("rw+lr,")

    def test_sweep_c(self, tmp_path):
        """Test that the c sweep writes one row per fraction and pipeline."""
        from fairshift.cli import main

        argv = ["sweep-c", "--config", str(self._config(tmp_path, pipelines=["lr"])), "--fractions", "0.2", "0.6"]
        assert main(argv) == 0
        csv = (tmp_path / "runs" / "cli-sweep-c.csv").read_text(encoding="utf-8").splitlines()
        assert len(csv) == 3

    def test_missing_config_exits_1(self, tmp_path):
        """Test that a missing config file exits with status 1."""
        from fairshift.cli import main

        assert main(["run", "--config", str(tmp_path / "none.json")]) == 1
