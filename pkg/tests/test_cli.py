import json
import os
import subprocess
import sys

import pytest


def run_cli(args, env=None):
    full_env = {**os.environ, **(env or {})}
    return subprocess.run(
        [sys.executable, "-m", "phasecraft.cli", *args],
        capture_output=True,
        text=True,
        env=full_env,
    )


def test_reruns_are_byte_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        proc = run_cli(["fig3", "--T", "0.9", "--phi-grid", "0:6.28:40", "--out", str(p)])
        assert proc.returncode == 0, proc.stderr
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_csv_schema_and_metadata(tmp_path):
    out = tmp_path / "c.csv"
    run_cli(["fig3", "--state", "noon:N=2", "--phi-grid", "0:6.28:10", "--out", str(out)])
    lines = out.read_text().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    assert any("command: fig3" in l for l in comments)
    assert any("tail_tolerance" in l for l in comments)
    assert any("generator" in l for l in comments)
    header = next(l for l in lines if not l.startswith("#"))
    assert header.split(",")[:6] == ["phi", "sensitivity", "snl", "label", "T", "n_av"]


def test_infinite_sensitivity_uses_inf_token(tmp_path):
    out = tmp_path / "d.csv"
    # phi = 0 is a stationary point of the parity signal, so under loss the
    # estimator carries no information there
    run_cli(["parity", "--state", "noon:N=2", "--T", "0.9",
             "--phi", "0", "--out", str(out)])
    body = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert body[1].split(",")[1] == "inf"


def test_json_mirrors_csv_records(tmp_path):
    out = tmp_path / "e.json"
    run_cli(["qfi", "--state", "noon:N=2", "--state", "qooq:N=8,nav=2",
             "--format", "json", "--out", str(out)])
    data = json.loads(out.read_text())
    assert data["metadata"]["command"] == "qfi"
    assert len(data["rows"]) == 2
    assert data["rows"][0]["f_q"] == pytest.approx(4.0)
    assert data["rows"][1]["f_q"] == pytest.approx(10.0)


def test_partial_failure_exit_code(tmp_path):
    out = tmp_path / "f.csv"
    proc = run_cli(["qfi", "--state", "noon:N=2", "--state", "qooq:N=1,nav=2",
                    "--out", str(out)])
    assert proc.returncode == 2
    assert "error" in out.read_text()


def test_usage_error_exit_code():
    assert run_cli(["generate", "--scheme", "bogus"]).returncode == 2
    assert run_cli(["frobnicate"]).returncode == 2


def test_tail_tolerance_env_var(tmp_path):
    out = tmp_path / "g.csv"
    run_cli(["qfi", "--state", "soos:nav=2", "--out", str(out)],
            env={"PHASECRAFT_TAIL_TOL": "1e-9"})
    assert "# tail_tolerance: 1e-09" in out.read_text()


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"count": 7, "seed": 11, "T": 0.8}))
    out = tmp_path / "h.csv"
    proc = run_cli(["sample", "--config", str(cfg), "--seed", "42", "--out", str(out)])
    assert proc.returncode == 0, proc.stderr
    text = out.read_text()
    assert '"count": 7' in text
    assert '"seed": 42' in text  # explicit flag wins over the config file
    assert '"T": 0.8' in text


def test_jobs_flag_does_not_change_output(tmp_path):
    a, b = tmp_path / "i.csv", tmp_path / "j.csv"
    run_cli(["sample", "--count", "12", "--seed", "4", "--out", str(a)])
    run_cli(["sample", "--count", "12", "--seed", "4", "--jobs", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_generate_reports_fidelity(tmp_path):
    out = tmp_path / "k.json"
    proc = run_cli(["generate", "--scheme", "qooq", "--N", "3", "--out", str(out)])
    assert proc.returncode == 0, proc.stderr
    row = json.loads(out.read_text())["rows"][0]
    assert row["fidelity"] == pytest.approx(1.0, abs=1e-9)
    assert "(1,0)" in row["output_support"] or "(1, 0)" in row["output_support"]


def test_fig4_optimize_table(tmp_path):
    out = tmp_path / "l.csv"
    proc = run_cli(["fig4", "--mode", "optimize", "--T-list", "0.9",
                    "--nav-list", "2.0", "--phi-eval", "1.0", "--out", str(out)])
    assert proc.returncode == 0, proc.stderr
    body = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert body[0] == "T,n_av,best_n_list,best_sensitivity"
    assert body[1].split(",")[2] in ("8", "9", "8;9")
