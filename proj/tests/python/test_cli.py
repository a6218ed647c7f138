import os
import subprocess

import pytest

CLI = os.environ.get("SPDE_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="SPDE_CLI not set")


def run_cli(args, cwd):
    return subprocess.run([CLI] + args, cwd=cwd, capture_output=True, text=True)


def test_simulate_is_byte_identical_across_reruns(tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("J = 31\ntau = 0.0078125\nT = 0.25\n")
    for d in ("a", "b"):
        r = run_cli(["simulate", "--config", str(cfg), "--seed", "1",
                     "--out", str(tmp_path / d)], tmp_path)
        assert r.returncode == 0, r.stderr
    for name in ("modified_path.csv", "standard_path.csv", "quadratic_variation.csv",
                 "simulate_summary.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_unknown_config_key_rejected(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("J = 8\nfrobnicate = 3\n")
    r = run_cli(["simulate", "--config", str(cfg)], tmp_path)
    assert r.returncode != 0
    assert "unknown key" in r.stderr


def test_time_grid_consistency_enforced(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("J = 8\ntau = 0.1\nN = 7\nT = 1.0\n")
    r = run_cli(["simulate", "--config", str(cfg)], tmp_path)
    assert r.returncode != 0
    assert "T = N*tau" in r.stderr


def test_gaussian_diag_reports_j_star(tmp_path):
    r = run_cli(["gaussian-diag", "--out", str(tmp_path / "g")], tmp_path)
    assert r.returncode == 0, r.stderr
    assert "J* =" in r.stdout
    csv = (tmp_path / "g" / "hellinger_vs_J.csv").read_text()
    assert csv.startswith("# command = gaussian-diag")
    assert "J,H_modified_vs_nu,H_standard_vs_nu" in csv


def test_weak_order_det(tmp_path):
    r = run_cli(["weak-order", "--out", str(tmp_path / "w"), "--seed", "2"], tmp_path)
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "w" / "weak_order_det.csv").exists()
    assert (tmp_path / "w" / "weak_order_summary.json").exists()
