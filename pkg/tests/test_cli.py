"""End-to-end tests of the qlink command line."""

import csv
import io
import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from qlink.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
REFERENCE = str(CONFIGS / "reference.toml")
SMALL_MC = ["--set", "mc.n_trajectories=2000", "--set", "mc.gamma_t=[0.5, 2.0]",
            "--set", "mc.n_th=[0.0, 610.3]", "--set", "mc.initial_photons=[0.0, 1e4]"]


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env, catch_exceptions=False)


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestLinkBudget:
    def test_reference_scenario(self):
        r = run("link-budget", REFERENCE)
        assert r.exit_code == 0, r.stderr
        out = json.loads(r.stdout)["outputs"]
        assert out["Ns"] == pytest.approx(35.0, rel=1e-9)
        assert out["Nn"] == pytest.approx(6.3e-3, rel=1e-9)
        assert out["n_th"] == pytest.approx(610.3, abs=0.5)

    def test_record_echoes_inputs(self):
        doc = json.loads(run("link-budget", REFERENCE).stdout)
        assert doc["schema_version"] == "1"
        assert doc["inputs"]["signal"]["input_photons"] == 32e4
        assert doc["provenance"]["attenuation_model"] == "textbook"
        assert "aluminium (calibrated)" in doc["provenance"]["conductivity_model"]

    def test_zero_length(self):
        r = run("link-budget", REFERENCE, "--set", "waveguide.length=0", "--format", "csv")
        assert r.exit_code == 3
        (row,) = rows(r.stdout)
        assert float(row["Mn"]) == 0.0
        assert row["snr_db"] == "inf"
        assert row["status"] == "eta_out_of_range"

    def test_below_cutoff(self):
        r = run("link-budget", REFERENCE, "--set", "signal.frequency=2e9")
        assert r.exit_code == 3
        assert "cutoff 2.998 GHz" in r.stderr

    def test_unknown_key(self):
        r = run("link-budget", REFERENCE, "--set", "waveguide.widht=0.05")
        assert r.exit_code == 2
        assert "waveguide.widht" in r.stderr

    def test_output_file(self, tmp_path):
        out = tmp_path / "budget.csv"
        r = run("link-budget", REFERENCE, "--format", "csv", "-o", str(out))
        assert r.exit_code == 0
        assert out.read_bytes().startswith(b"Ms,Mn,snr_db,eta,Ns,Nn,")
        assert "Ns=35" in r.stdout


class TestSweep:
    def test_csv_columns(self):
        r = run("sweep", REFERENCE, "--format", "csv")
        assert r.exit_code == 0
        assert r.stdout.splitlines()[0] == "var,Ms,Mn,snr_db,eta,Ns,Nn,status"
        table = rows(r.stdout)
        assert len(table) == 51
        assert float(table[0]["Mn"]) == 0.0

    def test_log_frequency_sweep(self):
        r = run("sweep", REFERENCE, "--format", "csv", "--set", 'sweep.variable="frequency"',
                "--set", "sweep.start=1e9", "--set", "sweep.stop=1e11",
                "--set", 'sweep.spacing="log"', "--set", "sweep.n_points=21")
        assert r.exit_code == 0
        table = rows(r.stdout)
        values = [float(t["var"]) for t in table]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert table[0]["status"] == "evanescent"

    def test_json_rows(self):
        doc = json.loads(run("sweep", REFERENCE).stdout)
        assert doc["outputs"]["variable"] == "length"
        assert len(doc["outputs"]["rows"]) == 51

    def test_needs_sweep_section(self, tmp_path):
        text = Path(REFERENCE).read_text().split("[sweep]")[0]
        path = tmp_path / "nosweep.toml"
        path.write_text(text)
        assert run("sweep", str(path)).exit_code == 2


class TestDesignAntenna:
    def test_consistent_with_link_budget(self):
        d = json.loads(run("design-antenna", REFERENCE).stdout)["outputs"]
        assert d["status"] == "ok"
        assert d["Ns"] == pytest.approx(35.0, rel=1e-9)
        lb = run("link-budget", REFERENCE, "--set", f"antenna.width={d['width']!r}",
                 "--set", f"antenna.height={d['height']!r}")
        out = json.loads(lb.stdout)["outputs"]
        assert out["eta"] == pytest.approx(d["eta"], rel=1e-12)
        assert out["Ns"] == pytest.approx(d["Ns"], rel=1e-12)
        assert out["Nn"] == pytest.approx(d["Nn"], rel=1e-12)

    def test_cooling(self):
        d = json.loads(run("design-antenna", REFERENCE, "--cooling", "78").stdout)
        assert d["outputs"]["max_length"] >= 25.0
        assert "x5 at <= 78 K" in d["provenance"]["conductivity_model"]

    def test_infeasible(self):
        r = run("design-antenna", REFERENCE, "--set", "constraint.min_signal_photons=1e4",
                "--format", "csv")
        assert r.exit_code == 4
        (row,) = rows(r.stdout)
        assert row["status"] == "infeasible"
        assert "input photons" in row["reason"]


class TestMcVerify:
    def test_small_grid_passes(self, tmp_path):
        conv = tmp_path / "conv.csv"
        r = run("mc-verify", "--format", "csv", "--convergence", str(conv), *SMALL_MC)
        assert r.exit_code == 0, r.stderr
        assert "PASS" in r.stderr
        assert len(rows(r.stdout)) == 16
        table = rows(conv.read_text())
        assert [int(t["n_trajectories"]) for t in table] == [100, 1000, 10000]

    def test_no_decay_row_is_exact(self):
        r = run("mc-verify", "--format", "csv", "--set", "mc.gamma_t=[0.0]",
                "--set", "mc.n_trajectories=200")
        assert r.exit_code == 0
        assert all(float(t["abs_error"]) == 0.0 for t in rows(r.stdout))

    def test_coarse_steps(self):
        r = run("mc-verify", "--set", "mc.n_steps=2", "--set", "mc.n_trajectories=10")
        assert r.exit_code == 3
        assert "n_steps >=" in r.stderr

    def test_biased_integrator_fails(self):
        # Gamma*dt = 0.1 biases the Euler-Maruyama thermal mean by about 5%
        r = run("mc-verify", "--set", "mc.gamma_t=[5.0]", "--set", "mc.n_th=[610.3]",
                "--set", "mc.initial_photons=[0.0]", "--set", "mc.euler_step_decay=0.1")
        assert r.exit_code == 5
        assert "FAIL" in r.stderr

    @pytest.mark.slow
    def test_default_grid(self):
        r = run("mc-verify", "--format", "csv")
        assert r.exit_code == 0, r.stderr
        assert len(rows(r.stdout)) == 72


class TestDeterminism:
    @pytest.mark.parametrize(
        "args",
        [
            ("link-budget", REFERENCE),
            ("sweep", REFERENCE, "--format", "csv"),
            ("design-antenna", REFERENCE, "--cooling", "78"),
            ("mc-verify", *SMALL_MC),
        ],
    )
    def test_thread_count_and_repeat(self, args):
        first = run(*args, env={"QLINK_THREADS": "1"}).stdout_bytes
        second = run(*args, env={"QLINK_THREADS": "4"}).stdout_bytes
        third = run(*args).stdout_bytes
        assert first == second == third
