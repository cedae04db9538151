import csv
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from brownian_polymer import CheckResult, Command, Importance, Verdict, build_experiment_config
from brownian_polymer._polymer_cli import _polymer_cli
from brownian_polymer.models import EULER_GAMMA
from brownian_polymer.utils import get_worker_count


def _read_table(file_path: Path, delimiter: str = ",") -> list[dict]:
    with open(file=file_path, mode="r", newline="") as file:
        return list(csv.DictReader(file, delimiter=delimiter))


@pytest.fixture
def runner():
    return CliRunner()


def test_free_energy_at_zero(runner, tmp_path: Path):
    out = tmp_path / "free_energy.csv"
    result = runner.invoke(_polymer_cli, ["free-energy", "--beta", "0:0:1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    (row,) = _read_table(out)
    assert row == dict(beta="0.0", value="1.0", maximizer_a="", branch="small_beta_series")


def test_free_energy_range_rows(runner, tmp_path: Path):
    out = tmp_path / "free_energy.tsv"
    result = runner.invoke(_polymer_cli, ["free-energy", "--beta", "0:2:0.5", "--format", "tsv", "--out", str(out)])
    assert result.exit_code == 0, result.output
    rows = _read_table(out, delimiter="\t")
    assert [row["beta"] for row in rows] == ["0.0", "0.5", "1.0", "1.5", "2.0"]
    assert all(row["branch"] == "exact" for row in rows[1:])


def test_rate_function_quantity(runner, tmp_path: Path):
    out = tmp_path / "lambda.csv"
    result = runner.invoke(_polymer_cli, ["free-energy", "--quantity", "lambda", "--x", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    (row,) = _read_table(out)
    assert row["quantity"] == "lambda"
    assert math.isclose(float(row["value"]), EULER_GAMMA, abs_tol=1e-14)


@pytest.mark.parametrize(
    "arguments",
    [
        ["free-energy", "--beta", "1:0:1"],
        ["free-energy"],
        ["free-energy", "--beta", "1", "--quantity", "kac"],
        ["polymer", "--beta", "1", "--n", "2", "--replicas", "1"],
        ["polymer", "--beta", "1", "--n", "2.5"],
        ["queue", "--m", "1", "--horizon", "5", "--replicas", "2"],
        ["queue", "--m", "-1"],
        ["nonexistent-command"],
    ],
)
def test_usage_errors_exit_with_one(runner, arguments):
    result = runner.invoke(_polymer_cli, arguments)
    assert result.exit_code == 1, result.output


def test_polymer_run_is_deterministic(runner, tmp_path: Path):
    arguments = ["polymer", "--beta", "1", "--n", "2", "--dt", "0.1", "--replicas", "3", "--seed", "5"]
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert runner.invoke(_polymer_cli, arguments + ["--out", str(first)]).exit_code == 0
    assert runner.invoke(_polymer_cli, arguments + ["--out", str(second), "--n-jobs", "1"]).exit_code == 0
    assert first.read_bytes() == second.read_bytes()

    (row,) = _read_table(first)
    assert (row["beta"], row["n"], row["dt"], row["replicas"], row["seed"]) == ("1.0", "2", "0.1", "3", "5")


def test_config_file_merges_with_flags(runner, tmp_path: Path):
    config_path = tmp_path / "lpp.yaml"
    config_path.write_text("command: lpp\nn: 2\ndt: 0.1\nreplicas: 3\nseed: 7\n")
    out = tmp_path / "lpp.csv"
    result = runner.invoke(_polymer_cli, ["lpp", "--config", str(config_path), "--replicas", "4", "--out", str(out)])
    assert result.exit_code == 0, result.output
    (row,) = _read_table(out)
    assert (row["n"], row["dt"], row["replicas"], row["seed"]) == ("2", "0.1", "4", "7")


def test_config_file_for_another_command(runner, tmp_path: Path):
    config_path = tmp_path / "polymer.yaml"
    config_path.write_text("command: polymer\nn: 2\n")
    result = runner.invoke(_polymer_cli, ["lpp", "--config", str(config_path)])
    assert result.exit_code == 1


def test_validate_specialfn(runner, tmp_path: Path):
    out = tmp_path / "checks.csv"
    result = runner.invoke(_polymer_cli, ["validate", "--suite", "specialfn", "--out", str(out)])
    assert result.exit_code == 0, result.output
    rows = _read_table(out)
    assert len(rows) == 5
    assert {row["verdict"] for row in rows} == {"PASS"}
    assert (tmp_path / "checks.report.txt").exists()


def test_validate_failure_exits_with_two(runner, monkeypatch):
    def failing_suite(**kwargs):
        yield CheckResult(
            detail="forced",
            verdict=Verdict.FAIL,
            importance=Importance.EXACT,
            check_function_name="forced",
            suite="rmt",
        )

    monkeypatch.setattr("brownian_polymer._experiments.validate_suite", failing_suite)
    result = runner.invoke(_polymer_cli, ["validate", "--suite", "rmt"])
    assert result.exit_code == 2


def test_version(runner):
    result = runner.invoke(_polymer_cli, ["--version"])
    assert result.exit_code == 0


def test_build_experiment_config():
    config = build_experiment_config(
        Command.QUEUE, dict(m="0.5,1", n="1:3:1", replicas=4, seed=9, ignore=None, format="tsv")
    )
    assert config.m == (0.5, 1.0)
    assert config.n == (1, 2, 3)
    assert (config.replicas, config.seed, config.quantity) == (4, 9, "queue")
    assert config.format.delimiter == "\t"


def test_build_experiment_config_rejects_unknown_options():
    with pytest.raises(ValueError, match="Unknown option"):
        build_experiment_config(Command.LPP, dict(n=2, temperature=3))


def test_build_experiment_config_check_config_keyword():
    config = build_experiment_config(Command.VALIDATE, dict(check_config="quick", ignore="a,b"))
    assert "SKIP" in config.check_config
    assert config.ignore == ["a", "b"]


def test_build_experiment_config_leaves_worker_count_to_environment(monkeypatch):
    monkeypatch.setenv("POLYMER_THREADS", "0")
    assert build_experiment_config(Command.LPP, dict(n="4", dt=0.1, replicas=2)).n_jobs is None
    assert build_experiment_config(Command.LPP, dict(n="4", dt=0.1, replicas=2, n_jobs=3)).n_jobs == 3


def test_polymer_threads_caps_explicit_n_jobs(runner, monkeypatch, tmp_path: Path):
    resolved = []

    def recording_worker_count(n_jobs=None):
        resolved.append((n_jobs, get_worker_count(n_jobs)))
        return resolved[-1][1]

    monkeypatch.setattr("brownian_polymer._replicas.get_worker_count", recording_worker_count)
    monkeypatch.setenv("POLYMER_THREADS", "1")
    arguments = ["lpp", "--n", "2", "--dt", "0.1", "--replicas", "3", "--n-jobs", "0", "--out", str(tmp_path / "a.csv")]
    assert runner.invoke(_polymer_cli, arguments).exit_code == 0
    assert resolved == [(0, 1)]
