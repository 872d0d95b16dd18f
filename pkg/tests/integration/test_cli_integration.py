"""Integration tests for CLI functionality."""

import json
from pathlib import Path

import pandas as pd
import pytest
from click.testing import CliRunner

from ergobot.cli.main import cli
from ergobot.skeleton_io.timeseries import COLUMNS
from ergobot.utils.logging import setup_logging
from tests.conftest import HIGH_TARGET, LOW_TARGET, WORKPIECE_ORIGIN


def write_json(path: str, data) -> None:
    Path(path).write_text(json.dumps(data))


def scenario_document(**overrides):
    document = {
        "name": "cli",
        "initial_workpiece": {"position": list(WORKPIECE_ORIGIN), "yaw": 0.0},
        "targets": [
            {"index": 1, "local": list(LOW_TARGET)},
            {"index": 2, "local": list(HIGH_TARGET)},
        ],
        "dwell_s": 1.0,
        "mode": "human-only",
        "reset_between_targets": True,
    }
    document.update(overrides)
    return document


class TestCLIIntegration:
    """Integration tests for CLI commands."""

    @pytest.fixture
    def cli_runner(self):
        """Create CLI test runner."""
        yield CliRunner()
        # basicConfig bound logging to the runner's captured stderr
        setup_logging("WARNING")

    def test_cli_help(self, cli_runner):
        """Test CLI help lists the commands."""
        result = cli_runner.invoke(cli, ["--help"])
        assert result.exit_code == 0
        assert "score arm postures" in result.output
        for command in ("score", "calibrate", "synth", "simulate", "experiment", "plot"):
            assert command in result.output

    def test_cli_simulate_help(self, cli_runner):
        """Test CLI simulate command help."""
        result = cli_runner.invoke(cli, ["simulate", "--help"])
        assert result.exit_code == 0
        assert "Run one closed-loop scenario" in result.output

    def test_synth_calibrate_score(self, cli_runner):
        """Test the recording pipeline from postures to a scored trace."""
        with cli_runner.isolated_filesystem():
            # Arrange
            write_json("neutral.json", [{}])
            write_json("work.json", [{}, {"alpha_s": 50.0, "beta_s": 25.0}])

            # Act
            synth = cli_runner.invoke(
                cli, ["synth", "-p", "neutral.json", "-o", "calib.jsonl", "--repeat", "31"]
            )
            calibrate = cli_runner.invoke(
                cli, ["calibrate", "-f", "calib.jsonl", "-o", "calib.json"]
            )
            cli_runner.invoke(cli, ["synth", "-p", "work.json", "-o", "work.jsonl", "--repeat", "3"])
            score = cli_runner.invoke(
                cli, ["score", "-f", "work.jsonl", "--calib", "calib.json", "-o", "trace.csv"]
            )

            # Assert
            assert synth.exit_code == 0, synth.output
            assert "Wrote 31 frames" in synth.output
            assert calibrate.exit_code == 0, calibrate.output
            assert json.loads(Path("calib.json").read_text())["window_frames"] == 31
            assert score.exit_code == 0, score.output
            assert "Scored 6 frames" in score.output
            assert "Max arm score: 3" in score.output
            header = Path("trace.csv").read_text().splitlines()[0]
            assert header == ",".join(COLUMNS)

    def test_score_with_plan(self, cli_runner):
        """Test --plan fills the command columns of a held deviation."""
        with cli_runner.isolated_filesystem():
            # Arrange
            write_json("neutral.json", [{}])
            write_json("work.json", [{"alpha_s": 50.0}])
            cli_runner.invoke(cli, ["synth", "-p", "neutral.json", "-o", "calib.jsonl", "--repeat", "31"])
            cli_runner.invoke(cli, ["calibrate", "-f", "calib.jsonl", "-o", "calib.json"])
            cli_runner.invoke(cli, ["synth", "-p", "work.json", "-o", "work.jsonl", "--repeat", "61"])

            # Act
            result = cli_runner.invoke(
                cli,
                ["score", "-f", "work.jsonl", "--calib", "calib.json", "-o", "trace.csv", "--plan"],
            )

            # Assert
            assert result.exit_code == 0, result.output
            assert "Commands emitted: 1" in result.output
            df = pd.read_csv("trace.csv")
            commanded = df.dropna(subset=["tx", "ty", "tz", "rot_z"])
            assert len(commanded) == 1
            assert commanded["t"].iloc[0] == pytest.approx(1.0)
            assert commanded["cause"].iloc[0] == "UpperArmSagittal"
            assert commanded["ty"].iloc[0] < 0

    def test_score_without_plan_has_no_commands(self, cli_runner):
        """Test plain scoring leaves the command columns empty."""
        with cli_runner.isolated_filesystem():
            write_json("neutral.json", [{}])
            write_json("work.json", [{"alpha_s": 50.0}])
            cli_runner.invoke(cli, ["synth", "-p", "work.json", "-o", "work.jsonl", "--repeat", "61"])
            cli_runner.invoke(cli, ["synth", "-p", "neutral.json", "-o", "calib.jsonl", "--repeat", "31"])
            cli_runner.invoke(cli, ["calibrate", "-f", "calib.jsonl", "-o", "calib.json"])

            result = cli_runner.invoke(
                cli, ["score", "-f", "work.jsonl", "--calib", "calib.json", "-o", "trace.csv"]
            )

            assert result.exit_code == 0, result.output
            assert "Commands emitted" not in result.output
            assert pd.read_csv("trace.csv")["tx"].isna().all()

    def test_score_live(self, cli_runner):
        """Test live mode prints one score line per frame."""
        with cli_runner.isolated_filesystem():
            write_json("neutral.json", [{}])
            cli_runner.invoke(cli, ["synth", "-p", "neutral.json", "-o", "calib.jsonl", "--repeat", "31"])
            cli_runner.invoke(cli, ["calibrate", "-f", "calib.jsonl", "-o", "calib.json"])

            result = cli_runner.invoke(
                cli, ["score", "-f", "calib.jsonl", "--calib", "calib.json", "-o", "t.csv", "--live"]
            )

            assert result.exit_code == 0, result.output
            assert result.output.count("RULA 1") == 31

    def test_score_missing_calibration(self, cli_runner):
        """Test a missing profile exits with status 1."""
        with cli_runner.isolated_filesystem():
            Path("frames.jsonl").write_text("")
            result = cli_runner.invoke(
                cli, ["score", "-f", "frames.jsonl", "--calib", "none.json", "-o", "t.csv"]
            )
            assert result.exit_code == 1
            assert "Cannot read calibration" in result.output

    def test_score_malformed_frames(self, cli_runner):
        """Test parse errors name the offending line."""
        with cli_runner.isolated_filesystem():
            write_json("neutral.json", [{}])
            cli_runner.invoke(cli, ["synth", "-p", "neutral.json", "-o", "calib.jsonl", "--repeat", "31"])
            cli_runner.invoke(cli, ["calibrate", "-f", "calib.jsonl", "-o", "calib.json"])
            Path("bad.jsonl").write_text("[1]\n")

            result = cli_runner.invoke(
                cli, ["score", "-f", "bad.jsonl", "--calib", "calib.json", "-o", "t.csv"]
            )

            assert result.exit_code == 1
            assert "line 1" in result.output

    def test_calibrate_unstable(self, cli_runner):
        """Test a moving calibration window is rejected."""
        with cli_runner.isolated_filesystem():
            write_json("moving.json", [{"alpha_s": float(i)} for i in range(31)])
            cli_runner.invoke(cli, ["synth", "-p", "moving.json", "-o", "m.jsonl"])

            result = cli_runner.invoke(cli, ["calibrate", "-f", "m.jsonl", "-o", "c.json"])

            assert result.exit_code == 1
            assert "calibration unstable" in result.output

    def test_simulate_writes_trace_and_summary(self, cli_runner):
        """Test a scenario run writes its trace and summary."""
        with cli_runner.isolated_filesystem():
            # Arrange
            write_json("scenario.json", scenario_document())

            # Act
            result = cli_runner.invoke(cli, ["simulate", "-s", "scenario.json", "-o", "run.csv"])

            # Assert
            assert result.exit_code == 0, result.output
            summary = json.loads(Path("run.json").read_text())
            assert summary["mode"] == "human-only"
            assert summary["records"] == 60
            assert summary["commands"] == 0
            assert summary["targets"]["1"]["max"] == 3
            assert summary["final_arm_score"] == 1
            assert len(summary["trace_digest"]) == 64

    def test_simulate_mode_override(self, cli_runner):
        """Test the mode can be overridden on the command line."""
        with cli_runner.isolated_filesystem():
            write_json("scenario.json", scenario_document(dwell_s=2.0))

            result = cli_runner.invoke(
                cli,
                ["simulate", "-s", "scenario.json", "-m", "robot-assisted", "-o", "run.csv", "--summary", "s.json"],
            )

            assert result.exit_code == 0, result.output
            summary = json.loads(Path("s.json").read_text())
            assert summary["mode"] == "robot-assisted"
            assert summary["commands"] >= 1
            assert summary["targets"]["1"]["mean"] < 3

    def test_simulate_invalid_scenario(self, cli_runner):
        """Test validation errors name the field."""
        with cli_runner.isolated_filesystem():
            document = scenario_document()
            del document["initial_workpiece"]
            write_json("bad.json", document)

            result = cli_runner.invoke(cli, ["simulate", "-s", "bad.json", "-o", "run.csv"])

            assert result.exit_code == 1
            assert "initial_workpiece" in result.output

    def test_experiment_and_plot(self, cli_runner):
        """Test a short experiment writes its outputs and renders a chart."""
        with cli_runner.isolated_filesystem():
            # Arrange
            spec = {
                "initial_workpiece": {"position": list(WORKPIECE_ORIGIN), "yaw": 0.0},
                "targets": [
                    {"index": 1, "local": list(LOW_TARGET), "face": "bottom"},
                    {"index": 2, "local": list(HIGH_TARGET), "face": "top"},
                ],
                "trials_per_mode": 1,
                "dwell_s": 1.0,
            }
            write_json("spec.json", spec)

            # Act
            result = cli_runner.invoke(
                cli, ["experiment", "--spec", "spec.json", "-o", "out", "--svg", "bars.svg"]
            )
            replot = cli_runner.invoke(cli, ["plot", "-b", "out/bars.csv", "--svg", "again.svg"])

            # Assert
            assert result.exit_code == 0, result.output
            assert Path("out/report.json").exists()
            assert Path("out/traces/human-only-trial1.csv").exists()
            assert Path("out/traces/robot-assisted-trial1.csv").exists()
            assert Path("bars.svg").read_text().lstrip().startswith("<?xml")
            assert replot.exit_code == 0, replot.output
            assert Path("again.svg").read_bytes() == Path("bars.svg").read_bytes()

    def test_plot_missing_bars(self, cli_runner):
        """Test plotting without bar data exits with status 1."""
        with cli_runner.isolated_filesystem():
            result = cli_runner.invoke(cli, ["plot", "-b", "none.csv", "--svg", "x.svg"])
            assert result.exit_code == 1
            assert "Bar data not found" in result.output

    def test_invalid_config_file(self, cli_runner):
        """Test a broken configuration stops the CLI."""
        with cli_runner.isolated_filesystem():
            Path("bad.yaml").write_text("planner:\n  gain: 2.0\n")
            result = cli_runner.invoke(cli, ["-c", "bad.yaml", "plot", "-b", "x", "--svg", "y"])
            assert result.exit_code == 1
            assert "gain must lie in" in result.output

    def test_metrics_written_on_exit(self, cli_runner):
        """Test Prometheus metrics are dumped after the command."""
        with cli_runner.isolated_filesystem():
            write_json("scenario.json", scenario_document())

            result = cli_runner.invoke(
                cli, ["--metrics-out", "m.prom", "simulate", "-s", "scenario.json", "-o", "run.csv"]
            )

            assert result.exit_code == 0, result.output
            text = Path("m.prom").read_text()
            assert 'ergobot_frames_scored_total{source="simulation"} 60.0' in text
