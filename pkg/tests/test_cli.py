import json
import math

import numpy as np
import pytest

from ringflow.cli import main
from ringflow.manifest import sha256_of


def run(args):
    return main(args)


class TestEigenCommand:
    def test_reference_value(self, tmp_path, capsys):
        code = run(
            [
                "eigen",
                "--alpha-over-pi", "0.3703965",
                "--beta", "0",
                "--n", "800",
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 0
        printed = capsys.readouterr().out
        assert printed.startswith("lambda_min = -0.11681560946")
        record = json.loads((tmp_path / "eigen.json").read_text())
        assert record["lambda_min"] == pytest.approx(-0.11681560946083251, abs=1e-9)

    def test_alpha_flags_exclusive(self, tmp_path):
        code = run(
            [
                "eigen",
                "--alpha", "1.0",
                "--alpha-over-pi", "0.5",
                "--n", "10",
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 2

    def test_missing_alpha(self, tmp_path):
        assert run(["eigen", "--n", "10", "--outdir", str(tmp_path)]) == 2

    def test_invalid_n(self, tmp_path):
        assert run(["eigen", "--alpha", "1.0", "--n", "0", "--outdir", str(tmp_path)]) == 2


class TestSweepCommand:
    def test_zeros_and_determinism(self, tmp_path):
        args = [
            "sweep",
            "--beta", "0",
            "--alpha-over-pi-min", "1",
            "--alpha-over-pi-max", "3",
            "--steps", "3",
            "--schedule", "50,60,70,80",
        ]
        assert run(args + ["--outdir", str(tmp_path / "a")]) == 0
        assert run(args + ["--outdir", str(tmp_path / "b")]) == 0
        first = (tmp_path / "a" / "sweep.csv").read_bytes()
        second = (tmp_path / "b" / "sweep.csv").read_bytes()
        assert first == second
        for line in first.decode().splitlines()[1:]:
            p = float(line.split(",")[2])
            assert abs(p) <= 1e-10

    def test_manifest_digests(self, tmp_path):
        run(
            [
                "sweep",
                "--beta", "0",
                "--alpha-over-pi-min", "1",
                "--alpha-over-pi-max", "2",
                "--steps", "2",
                "--schedule", "50 60 70 80",
                "--outdir", str(tmp_path),
            ]
        )
        manifest = json.loads((tmp_path / "sweep.manifest.json").read_text())
        assert manifest["command"] == "sweep"
        for output in manifest["outputs"]:
            assert sha256_of(output["path"]) == output["sha256"]


class TestExtrapolateCommand:
    def test_record_fields(self, tmp_path):
        code = run(
            [
                "extrapolate",
                "--alpha-over-pi", "1",
                "--schedule", "50,60,70,80",
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 0
        record = json.loads((tmp_path / "extrapolation.json").read_text())
        assert set(record) >= {"alpha", "beta", "schedule", "lambdas", "a0", "a1", "a2", "residual"}
        assert abs(record["p_estimate"]) < 1e-12


class TestTwomodeCommand:
    def test_curve_csv(self, tmp_path):
        code = run(
            [
                "twomode",
                "--m1", "0",
                "--m2", "1",
                "--steps", "20",
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 0
        lines = (tmp_path / "twomode_curve.csv").read_text().splitlines()
        assert lines[0] == "alpha_over_pi,beta,p_min"
        assert len(lines) == 1 + 20 * 5  # five beta values

    def test_global_optimum(self, tmp_path):
        code = run(["twomode", "--global", "--outdir", str(tmp_path)])
        assert code == 0
        record = json.loads((tmp_path / "twomode_global.json").read_text())
        assert record["p_min"] == pytest.approx(-0.101727, abs=1e-5)


class TestStateAndCurrentCommands:
    def test_state_and_current_roundtrip(self, tmp_path):
        code = run(
            [
                "state",
                "--alpha-over-pi", "0.3703965",
                "--n", "300",
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 0
        report = json.loads((tmp_path / "state_report.json").read_text())
        assert report["coefficient_decay_below_c0_over_m2"] is True

        code = run(
            [
                "current",
                "--state-file", str(tmp_path / "state.csv"),
                "--samples", "101",
                "--tau-min", "-0.5",
                "--tau-max", "0.5",
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 0
        lines = (tmp_path / "current.csv").read_text().splitlines()
        assert len(lines) == 2 + 101

    def test_byte_identical_repeat(self, tmp_path):
        args = [
            "current",
            "--alpha-over-pi", "0.37",
            "--n", "50",
            "--samples", "33",
        ]
        run(args + ["--outdir", str(tmp_path / "a")])
        run(args + ["--outdir", str(tmp_path / "b")])
        assert (tmp_path / "a" / "current.csv").read_bytes() == (
            tmp_path / "b" / "current.csv"
        ).read_bytes()


class TestLinelimitCommand:
    def test_nystrom_route(self, tmp_path):
        code = run(
            [
                "linelimit",
                "--u-max", "10",
                "--n-points", "400",
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 0
        record = json.loads((tmp_path / "linelimit.json").read_text())
        assert record["route"] == "nystrom"

    def test_ring_route(self, tmp_path):
        code = run(
            [
                "linelimit",
                "--ring-route",
                "--alpha", "1e-3",
                "--n", "1000",
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 0
        record = json.loads((tmp_path / "linelimit.json").read_text())
        assert record["lambda_min"] == pytest.approx(-0.0384517, abs=1e-3)


class TestConfigPrecedence:
    def test_config_supplies_defaults_flags_win(self, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("n = 20\nbeta = -0.25\n")
        code = run(
            [
                "eigen",
                "--alpha", "1.0",
                "--beta", "0",
                "--config", str(config),
                "--outdir", str(tmp_path),
            ]
        )
        assert code == 0
        record = json.loads((tmp_path / "eigen.json").read_text())
        assert record["n_trunc"] == 20  # from config
        assert record["beta"] == 0.0  # flag beats config


class TestVerifyCommand:
    def test_exit_zero(self, capsys):
        assert run(["verify"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
