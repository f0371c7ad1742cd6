"""
End-to-end tests of the command line: documents, exit codes and determinism
"""

import io
import json

import numpy as np
import pytest

from main import main
from src.cli import run_command
from src.config import ConfigManager
from src.errors import EXIT_CONFIG, EXIT_OK, EXIT_VERIFICATION, VerificationFailure

DISK_FIRST_EIGENVALUE = -6.283185962946785

SMALL_SIM = ["sim.steps=1616", "sim.burn_in=16", "sim.paths=4", "cutoff=3"]


def run(tmp_path, command, *overrides, name="out.json", extra=()):
    path = tmp_path / name
    argv = [command, "--output", str(path), "--log-level", "WARNING", *extra]
    for item in overrides:
        argv += ["--set", item]
    code = main(argv)
    return code, path


def load(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestSpectrum:
    def test_sphere_degree_one(self, tmp_path):
        code, path = run(tmp_path, "spectrum", "geometry=sphere", "L=1")
        assert code == EXIT_OK
        doc = load(path)
        assert doc["eigenvalues"] == pytest.approx([-0.5, -2.5, -2.5, -2.5], abs=1e-14)
        assert doc["mode_count"] == 4

    def test_oscillator_line(self, tmp_path):
        code, path = run(tmp_path, "spectrum", "geometry=oscillator", "d=1", "gamma=1", "cutoff=3")
        assert code == EXIT_OK
        assert load(path)["eigenvalues"] == pytest.approx([-1.5, -2.5, -3.5], abs=1e-14)

    def test_disk_first_mode(self, tmp_path):
        code, path = run(tmp_path, "spectrum")
        doc = load(path)
        assert code == EXIT_OK
        assert doc["eigenvalues"][0] == pytest.approx(DISK_FIRST_EIGENVALUE, abs=1e-12)
        assert doc["gamma_eff"] == pytest.approx(-DISK_FIRST_EIGENVALUE, abs=1e-12)
        assert doc["config"]["geometry"] == "disk"
        assert "output.path" not in doc["config"]

    def test_csv_format(self, tmp_path):
        code, path = run(tmp_path, "spectrum", "geometry=sphere", "L=1", "output.format=csv", name="s.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert code == EXIT_OK
        assert lines[0] == "field,row,col,value"
        assert "eigenvalues,0,,-0.5" in lines


class TestSolve:
    def test_white_noise_is_diagonal(self, tmp_path):
        code, path = run(tmp_path, "solve", "noise.sigma2=2")
        assert code == EXIT_OK
        doc = load(path)
        P = np.array(doc["P"])
        lam = np.array(doc["eigenvalues"])
        np.testing.assert_allclose(np.diag(P), 1.0 / np.abs(lam), rtol=1e-14)
        assert np.count_nonzero(P - np.diag(np.diag(P))) == 0
        assert doc["residual_rel"] <= 1e-12
        assert doc["psd"]["is_psd"]
        assert doc["block_structure"]["P"]["block_diagonal"]
        assert doc["bounds"]["improved"] <= doc["bounds"]["coarse"]
        assert "gram_defect" not in doc

    def test_gaussian_kernel_on_disk(self, tmp_path):
        code, path = run(
            tmp_path,
            "solve",
            "noise.kind=kernel-gaussian",
            "noise.lengthscale=0.5",
            "quad.radial=24",
            "quad.angular=48",
            "output.field_points=5",
        )
        assert code == EXIT_OK
        doc = load(path)
        assert doc["block_structure"]["Q"]["block_diagonal"]
        assert doc["block_structure"]["P"]["block_diagonal"]
        assert doc["gram_defect"] < 1e-8
        assert len(doc["variance_profile"]["variance"]) == 5
        assert all(v >= 0.0 for v in doc["variance_profile"]["variance"])

    def test_kernel_solve_thread_count_does_not_change_bytes(self, tmp_path):
        args = ("noise.kind=kernel-gaussian", "quad.radial=24", "quad.angular=48")
        code_one, one = run(tmp_path, "solve", *args, name="one.json", extra=["--threads", "1"])
        code_many, many = run(tmp_path, "solve", *args, name="many.json", extra=["--threads", "8"])
        assert code_one == code_many == EXIT_OK
        assert one.read_bytes() == many.read_bytes()

    def test_oscillator_has_no_block_report(self, tmp_path):
        code, path = run(tmp_path, "solve", "geometry=oscillator", "cutoff=4")
        assert code == EXIT_OK
        assert "block_structure" not in load(path)


class TestExitCodes:
    def test_invalid_value(self, tmp_path):
        code, path = run(tmp_path, "solve", "alpha=-1")
        assert code == EXIT_CONFIG
        assert not path.exists()

    def test_unknown_key(self, tmp_path):
        assert run(tmp_path, "solve", "noise.sigma=1")[0] == EXIT_CONFIG

    def test_bad_thread_count(self, tmp_path):
        assert run(tmp_path, "spectrum", extra=["--threads", "0"])[0] == EXIT_CONFIG

    def test_missing_config_file(self, tmp_path):
        assert main(["spectrum", "--config", str(tmp_path / "none.conf")]) == EXIT_CONFIG

    def test_reference_not_above_cutoff(self, tmp_path):
        code, _ = run(tmp_path, "verify", "verify.reference_cutoff=8", "verify.sweep=4")
        assert code == EXIT_CONFIG

    def test_failed_comparison_still_writes_report(self, tmp_path):
        code, path = run(tmp_path, "simulate", *SMALL_SIM, "sim.max_diag_rel_error=1e-9")
        assert code == EXIT_VERIFICATION
        doc = load(path)
        assert doc["passed"] is False
        assert doc["comparison"]["max_diag_rel_error"] > 1e-9


class TestVerify:
    def test_small_reference_passes(self, tmp_path):
        code, path = run(
            tmp_path,
            "verify",
            "verify.reference_cutoff=60",
            "verify.sweep=5,10,20,40",
            "verify.samples=200",
        )
        doc = load(path)
        assert code == EXIT_OK, doc["failures"]
        assert doc["passed"] and doc["failures"] == []
        assert [row["N"] for row in doc["truncation"]] == [5, 10, 20, 40]
        assert all(row["ok"] for row in doc["truncation"])
        assert doc["rate_fit"]["slope_vs_lambda"] == pytest.approx(-1.0, abs=1e-9)
        assert doc["oracles"]["dim"] == 8
        assert doc["samples"]["integral"]["violations"] == 0

    @pytest.mark.slow
    def test_default_reference(self, tmp_path):
        code, path = run(tmp_path, "verify")
        doc = load(path)
        assert code == EXIT_OK, doc["failures"]
        assert doc["reference_cutoff"] == 200


class TestSimulate:
    def test_thread_count_does_not_change_bytes(self, tmp_path):
        args = (*SMALL_SIM, "sim.max_diag_rel_error=none")
        code_one, one = run(tmp_path, "simulate", *args, name="one.json", extra=["--threads", "1"])
        code_many, many = run(tmp_path, "simulate", *args, name="many.json", extra=["--threads", "8"])
        assert code_one == code_many
        assert one.read_bytes() == many.read_bytes()

    def test_seed_flag_changes_estimate(self, tmp_path):
        args = (*SMALL_SIM, "sim.max_diag_rel_error=none")
        _, a = run(tmp_path, "simulate", *args, name="a.json", extra=["--seed", "1"])
        _, b = run(tmp_path, "simulate", *args, name="b.json", extra=["--seed", "2"])
        assert load(a)["seed"] == 1
        assert load(a)["P_hat"] != load(b)["P_hat"]

    def test_diagnostics_file(self, tmp_path):
        run(tmp_path, "simulate", *SMALL_SIM, "sim.max_diag_rel_error=none", "sim.diagnostics=true",
            name="sim.json")
        lines = (tmp_path / "sim.diagnostics.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "path,batch,trace"
        assert len(lines) == 1 + 4 * 16
        assert "_diagnostics" not in load(tmp_path / "sim.json")

    def test_euler_reports_bias(self, tmp_path):
        _, path = run(tmp_path, "simulate", *SMALL_SIM, "sim.method=euler", "sim.dt=0.05",
                      "sim.max_diag_rel_error=none")
        doc = load(path)
        assert doc["method"] == "euler"
        assert doc["dt_bias"] > 0.0
        assert "P_spectral" in doc

    @pytest.mark.slow
    def test_defaults_pass(self, tmp_path):
        code, path = run(tmp_path, "simulate")
        doc = load(path)
        assert code == EXIT_OK, doc["comparison"]
        assert doc["comparison"]["fraction_within"] >= 0.99


class TestRunCommand:
    def test_writes_to_stream(self):
        config = ConfigManager().load(None, ["geometry=sphere", "L=1"])
        stream = io.StringIO()
        document = run_command("spectrum", config, stream=stream)
        assert json.loads(stream.getvalue())["eigenvalues"] == document["eigenvalues"]

    def test_failure_carries_report(self, tmp_path):
        config = ConfigManager().load(
            None, [*SMALL_SIM, "sim.max_diag_rel_error=1e-9", f"output.path={tmp_path / 'x.json'}"]
        )
        with pytest.raises(VerificationFailure) as info:
            run_command("simulate", config)
        assert info.value.report["passed"] is False
