"""Testes da interface de linha de comando."""

from __future__ import annotations

import csv
import json

import pytest

from src.core.types import ExitCode
from src.features.reporting import write_repertoire
from src.models.archives import SuccessArchive
from src.views.cli import CONFIG_FILE, LOG_FILE, METRICS_FILE, REPERTOIRE_FILE, main


@pytest.fixture
def grasp_repertoire(tmp_path, grasp_individual, grasp_env_config):
    """Repertório com um único sucesso reproduzível."""
    path = tmp_path / "grasp" / REPERTOIRE_FILE
    write_repertoire(SuccessArchive([grasp_individual]), path, grasp_env_config)
    return path


@pytest.mark.usefixtures("reset_services")
class TestRunCommand:
    """Testes do comando `run`."""

    def test_writes_artifacts(self, tmp_path, tiny_settings, capsys) -> None:
        out = tmp_path / "run"
        code = main(["run", "--config", str(tiny_settings), "--strategy", "ns", "--seed", "3", "--out", str(out)])

        assert code == ExitCode.OK
        for name in (REPERTOIRE_FILE, METRICS_FILE, CONFIG_FILE, LOG_FILE):
            assert (out / name).exists()

        line = capsys.readouterr().out.strip().splitlines()[-1]
        assert line.startswith("command=run strategy=ns seed=3 ")
        snapshot = json.loads((out / CONFIG_FILE).read_text(encoding="utf-8"))
        assert snapshot["run"]["budget"] == 15

    def test_budget_override(self, tmp_path, tiny_settings) -> None:
        out = tmp_path / "run"
        assert main(["run", "--config", str(tiny_settings), "--strategy", "random", "--budget", "9", "--out", str(out)]) == 0

        with open(out / METRICS_FILE, encoding="utf-8") as f:
            rows = list(csv.DictReader(line for line in f if not line.startswith("#")))
        assert [row["rollouts"] for row in rows] == ["9"]

    def test_missing_config_file(self, tmp_path, capsys) -> None:
        code = main(["run", "--config", str(tmp_path / "absent.json"), "--out", str(tmp_path / "run")])
        assert code == ExitCode.CONFIG_ERROR
        assert "absent.json" in capsys.readouterr().err

    def test_invalid_values_listed(self, tmp_path, capsys) -> None:
        settings = tmp_path / "bad.json"
        settings.write_text(json.dumps({"algorithm": {"k": 0}}), encoding="utf-8")

        code = main(["run", "--config", str(settings), "--out", str(tmp_path / "run")])

        assert code == ExitCode.CONFIG_ERROR
        assert "k ≥ 1" in capsys.readouterr().err
        assert not (tmp_path / "run" / REPERTOIRE_FILE).exists()

    @pytest.mark.parametrize("argv", [
        ["run"],
        ["frobnicate"],
        ["run", "--out", "x", "--strategy", "bogus"],
        [],
    ])
    def test_usage_errors(self, argv) -> None:
        assert main(argv) == ExitCode.USAGE


@pytest.mark.usefixtures("reset_services")
class TestBatchCommand:
    """Testes do comando `batch`."""

    def test_two_strategies_one_seed(self, tmp_path, tiny_settings) -> None:
        out = tmp_path / "batch"
        code = main([
            "batch", "--config", str(tiny_settings),
            "--strategies", "e2r", "ns", "--seeds", "1", "--out", str(out),
        ])

        assert code == ExitCode.OK
        assert (out / "e2r-seed1" / REPERTOIRE_FILE).exists()
        assert (out / "ns-seed1" / METRICS_FILE).exists()
        runs = (out / "runs.csv").read_text(encoding="utf-8").splitlines()
        assert len(runs) == 3
        final = (out / "final.csv").read_text(encoding="utf-8").splitlines()
        assert [row.split(",")[0] for row in final[1:]] == ["e2r", "ns"]
        assert (out / "summary.csv").exists()


@pytest.mark.usefixtures("reset_services")
class TestReplayCommand:
    """Testes do comando `replay`."""

    def test_verify_success(self, tmp_path, grasp_repertoire, capsys) -> None:
        out = tmp_path / "replay"
        code = main(["replay", str(grasp_repertoire), "--verify", "--out", str(out)])

        assert code == ExitCode.OK
        assert (out / "trace.csv").exists()
        line = capsys.readouterr().out.strip().splitlines()[-1]
        assert "uid=1000 success=1 stored_success=1 t_close=70 t_touch=76" in line

    def test_svg_frames(self, qapp, tmp_path, grasp_repertoire) -> None:
        out = tmp_path / "replay"
        code = main(["replay", str(grasp_repertoire), "--uid", "1000", "--svg", "--frame-stride", "100", "--out", str(out)])

        assert code == ExitCode.OK
        assert len(list((out / "frames").glob("*.svg"))) == 4

    def test_verify_detects_mismatch(self, tmp_path, grasp_individual, grasp_env_config, idle_genome) -> None:
        path = tmp_path / REPERTOIRE_FILE
        write_repertoire(SuccessArchive([grasp_individual.copy(genome=idle_genome)]), path, grasp_env_config)

        assert main(["replay", str(path), "--verify", "--out", str(tmp_path / "r")]) == ExitCode.VERIFICATION_FAILED
        assert main(["replay", str(path), "--out", str(tmp_path / "r")]) == ExitCode.OK

    def test_index_out_of_range(self, grasp_repertoire, capsys) -> None:
        assert main(["replay", str(grasp_repertoire), "--index", "5"]) == ExitCode.USAGE
        assert "valid: 0..0" in capsys.readouterr().err

    def test_unknown_uid(self, grasp_repertoire) -> None:
        assert main(["replay", str(grasp_repertoire), "--uid", "7"]) == ExitCode.USAGE

    def test_environment_mismatch(self, grasp_repertoire, tiny_settings) -> None:
        code = main(["replay", str(grasp_repertoire), "--config", str(tiny_settings)])
        assert code == ExitCode.INCOMPATIBLE_ARTIFACT

    def test_missing_repertoire(self, tmp_path) -> None:
        assert main(["replay", str(tmp_path / "none.jsonl")]) == ExitCode.IO_ERROR


@pytest.mark.usefixtures("reset_services")
class TestMetricsCommand:
    """Testes do comando `metrics`."""

    def test_writes_coverage(self, grasp_repertoire, capsys) -> None:
        assert main(["metrics", str(grasp_repertoire)]) == ExitCode.OK

        with open(grasp_repertoire.parent / "coverage.csv", encoding="utf-8") as f:
            row = next(csv.DictReader(f))
        assert row["entries"] == "1"
        assert row["replayed_successes"] == "1"
        assert float(row["grasp_coverage"]) == pytest.approx(1 / 25)
        assert "command=metrics" in capsys.readouterr().out

    def test_svg_overlay(self, qapp, tmp_path, grasp_repertoire) -> None:
        svg = tmp_path / "overlay.svg"
        assert main(["metrics", str(grasp_repertoire), "--svg", str(svg)]) == ExitCode.OK
        assert svg.exists()

    def test_environment_mismatch(self, grasp_repertoire, tiny_settings) -> None:
        code = main(["metrics", str(grasp_repertoire), "--config", str(tiny_settings)])
        assert code == ExitCode.INCOMPATIBLE_ARTIFACT
