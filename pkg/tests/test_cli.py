import json
import subprocess
import sys

import numpy as np
import pytest

from bellsearch import RunTrace, SpsaConfig, save_state_file, werner
from bellsearch.cli import main
from bellsearch.experiments import TRACE_HEADER, read_trace, summarize

SUMMARY_FIELDS = {"config", "finals", "mean", "std", "min", "max",
                  "reference_maximum", "state_max_value", "total_shots",
                  "wall_time_seconds"}


def run_cli(args):
    return main(list(args))


class TestSingle:
    def test_writes_trace_and_summary(self, tmp_path):
        out = tmp_path / "run"
        code = run_cli(["single", "--scenario", "chsh", "--state", "singlet",
                        "--iterations", "10", "--reps", "2", "--seed", "4",
                        "--out", str(out)])
        assert code == 0
        traces = sorted(out.glob("trace_rep*.csv"))
        assert [p.name for p in traces] == ["trace_rep000.csv", "trace_rep001.csv"]
        lines = traces[0].read_text().splitlines()
        assert lines[0] == TRACE_HEADER
        assert len(lines) == 11
        summary = json.loads((out / "summary.json").read_text())
        assert set(summary) == SUMMARY_FIELDS
        assert len(summary["finals"]) == 2
        assert summary["config"]["seed"] == 4

    def test_byte_identical_reruns(self, tmp_path):
        args = ["single", "--iterations", "8", "--reps", "2", "--seed", "3",
                "--noise", "shot:40"]
        run_cli(args + ["--out", str(tmp_path / "a")])
        run_cli(args + ["--out", str(tmp_path / "b")])
        for rep in ("trace_rep000.csv", "trace_rep001.csv"):
            assert (tmp_path / "a" / rep).read_bytes() == (tmp_path / "b" / rep).read_bytes()

    def test_shot_budget_column(self, tmp_path):
        out = tmp_path / "shots"
        run_cli(["single", "--iterations", "6", "--noise", "shot:50", "--out", str(out)])
        rows = read_trace(out / "trace_rep000.csv")
        assert all(row["shots_used"] == 2 * 4 * 50 for row in rows)
        summary = json.loads((out / "summary.json").read_text())
        assert summary["total_shots"] == 6 * 2 * 4 * 50

    def test_state_file_input(self, tmp_path):
        state_path = tmp_path / "mystate.txt"
        save_state_file(state_path, werner(0.8))
        out = tmp_path / "run"
        code = run_cli(["single", "--state", str(state_path), "--iterations", "5",
                        "--out", str(out)])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["state_max_value"] == pytest.approx(2 * np.sqrt(2) * 0.8, abs=1e-9)

    def test_gain_overrides_echoed(self, tmp_path):
        out = tmp_path / "gains"
        run_cli(["single", "--iterations", "3", "--a", "1.5", "--t", "0.2",
                 "--out", str(out)])
        config = json.loads((out / "summary.json").read_text())["config"]
        assert config["a"] == 1.5
        assert config["t"] == 0.2
        assert config["b"] == SpsaConfig().b


class TestValidation:
    def test_fig2_requires_chsh(self, tmp_path, capsys):
        out = tmp_path / "bad"
        code = run_cli(["fig2", "--scenario", "mermin3", "--out", str(out)])
        assert code == 2
        assert "chsh" in capsys.readouterr().err
        assert not (out / "summary.json").exists()

    def test_unknown_state(self, tmp_path, capsys):
        code = run_cli(["single", "--state", "nope", "--out", str(tmp_path / "x")])
        assert code == 2
        assert "preset" in capsys.readouterr().err

    def test_unknown_noise(self, tmp_path, capsys):
        code = run_cli(["single", "--noise", "fuzz:1", "--out", str(tmp_path / "x")])
        assert code == 2
        capsys.readouterr()

    def test_bad_subcommand(self):
        with pytest.raises(SystemExit):
            run_cli(["frobnicate"])


class TestExperiments:
    def test_fig1_chsh_group(self, tmp_path):
        out = tmp_path / "fig1"
        code = run_cli(["fig1", "--scenario", "chsh", "--iterations", "5",
                        "--reps", "2", "--out", str(out)])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert len(summary["groups"]) == 3
        states = {g["state"] for g in summary["groups"]}
        assert "singlet" in states and "werner:0.9" in states
        assert (out / "trace_chsh_singlet_rep000.csv").exists()
        assert (out / "trace_chsh_werner-0.9_rep001.csv").exists()

    def test_fig1_explicit_state(self, tmp_path):
        out = tmp_path / "fig1b"
        code = run_cli(["fig1", "--scenario", "chsh", "--state", "werner:0.5",
                        "--iterations", "4", "--out", str(out)])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert len(summary["groups"]) == 1
        assert summary["groups"][0]["state_max_value"] == pytest.approx(np.sqrt(2), abs=1e-9)

    def test_fig2_sweep(self, tmp_path):
        out = tmp_path / "fig2"
        code = run_cli(["fig2", "--photons", "20,50", "--iterations", "5",
                        "--reps", "2", "--out", str(out)])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert [g["pairs_per_setting"] for g in summary["groups"]] == [20, 50]
        assert summary["groups"][0]["total_shots"] == 2 * 5 * 2 * 4 * 20
        assert (out / "trace_n20_rep001.csv").exists()

    def test_fig3_structure(self, tmp_path):
        out = tmp_path / "fig3"
        code = run_cli(["fig3", "--photons", "50", "--sigmas", "0.1", "--trials", "2",
                        "--tomography-reps", "3", "--iterations", "5", "--out", str(out)])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        group = summary["groups"][0]
        assert group["sigma"] == 0.1
        assert len(group["search"]["finals"]) == 2
        assert len(group["tomography"]["trial_means"]) == 2
        assert group["tomography"]["total_shots"] == 2 * 3 * 9 * summary["config"]["tomography_shots_per_setting"]
        assert (out / "trace_sigma0.1_trial001.csv").exists()

    def test_fig4_runs(self, tmp_path):
        out = tmp_path / "fig4"
        code = run_cli(["fig4", "--reps", "2", "--iterations", "5", "--out", str(out)])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert len(summary["finals"]) == 2
        assert summary["config"]["noise"] == "untrusted"


class TestSummarize:
    def _trace(self, final):
        return RunTrace(config=SpsaConfig(iterations=1), scenario="chsh",
                        records=(), final_theta=np.zeros(8), final_value=final)

    def test_single_trace(self):
        stats = summarize([self._trace(2.8)])
        assert stats["mean"] == 2.8
        assert stats["std"] == 0.0

    def test_population_std(self):
        stats = summarize([self._trace(2.80), self._trace(2.84)])
        assert stats["mean"] == pytest.approx(2.82, abs=1e-12)
        assert stats["std"] == pytest.approx(0.02, abs=1e-12)
        assert stats["min"] == 2.80
        assert stats["max"] == 2.84

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            summarize([])


def test_console_entry_point(tmp_path):
    out = tmp_path / "cli"
    result = subprocess.run(
        [sys.executable, "-c",
         "import sys; from bellsearch.cli import main; sys.exit(main(sys.argv[1:]))",
         "single", "--iterations", "3", "--out", str(out)],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert (out / "summary.json").exists()
