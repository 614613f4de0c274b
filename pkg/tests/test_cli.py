import json
import subprocess
import sys

import pytest

CNF = """c x1 or x2
p cnf 2 1
1 2 0
"""

SCRIPT = {
    "steps": [
        {"oracle": "sigma", "point": [2]},
        {"oracle": "q", "point": [2, 3]},
        {
            "if": {"step": 0, "equals": 1},
            "then": {"oracle": "sigma", "point": [2, 0]},
            "else": {"oracle": "t1", "point": [0, 2]},
        },
    ]
}


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "zkpcp.cli", *argv],
        capture_output=True,
        text=True,
    )
    records = [json.loads(line) for line in proc.stdout.splitlines() if line]
    return proc.returncode, records


@pytest.fixture()
def cnf_file(tmp_path):
    path = tmp_path / "ex.cnf"
    path.write_text(CNF)
    return str(path)


@pytest.fixture()
def script_file(tmp_path):
    path = tmp_path / "qs.json"
    path.write_text(json.dumps(SCRIPT))
    return str(path)


def test_prove_verify_roundtrip(cnf_file, tmp_path):
    out = str(tmp_path / "p.bin")
    code, recs = run_cli(
        "prove", "--cnf", cnf_file, "--count", "3", "--seed", "7", "--out", out
    )
    assert code == 0 and recs[-1]["record"] == "prove"
    code, recs = run_cli(
        "verify", "--cnf", cnf_file, "--count", "3", "--proof", out, "--seed", "9"
    )
    assert code == 0
    assert recs[-1]["accepts"] == 1


def test_verify_wrong_count_rejects(cnf_file, tmp_path):
    out = str(tmp_path / "p.bin")
    run_cli("prove", "--cnf", cnf_file, "--count", "3", "--seed", "7", "--out", out)
    code, recs = run_cli(
        "verify",
        "--cnf", cnf_file, "--count", "2", "--proof", out,
        "--seed", "1", "--trials", "5",
    )
    assert code == 1
    assert recs[-1]["accepts"] == 0


def test_dishonest_shift_rejected_in_most_trials(cnf_file, tmp_path):
    out = str(tmp_path / "cheat.bin")
    code, _ = run_cli(
        "prove", "--cnf", cnf_file, "--count", "2", "--seed", "3",
        "--out", out, "--dishonest-shift",
    )
    assert code == 0
    code, recs = run_cli(
        "verify", "--cnf", cnf_file, "--count", "2", "--proof", out,
        "--seed", "4", "--trials", "20",
    )
    assert code == 1
    assert recs[-1]["accepts"] <= 10


def test_simulate_deterministic_given_seed(script_file):
    args = [
        "simulate", "--script", script_file,
        "--field", "5", "--m", "2", "--degree", "3", "--seed", "11",
    ]
    code1, recs1 = run_cli(*args)
    code2, recs2 = run_cli(*args)
    assert code1 == code2 == 0
    assert recs1 == recs2
    views = [r for r in recs1 if r["record"] == "view"]
    assert len(views) == 3


def test_audit_zk_battery_passes_and_negative_control_fails():
    base = [
        "audit-zk", "--field", "3", "--m", "2", "--degree", "3",
        "--h-set", "0,1", "--battery", "4", "--seed", "2",
    ]
    code, recs = run_cli(*base)
    assert code == 0
    assert all(r["pass"] for r in recs if r["record"] == "audit-script")
    code, recs = run_cli(*base, "--negative-control")
    assert code == 1
    assert any(not r["pass"] for r in recs if r["record"] == "audit-script")


def test_locate_and_detect_records():
    code, recs = run_cli(
        "locate", "--code", "rm", "--field", "5", "--m", "2",
        "--degree", "2", "--h-set", "0,1", "--points", "[[0,0]]",
    )
    assert code == 0
    assert recs[0]["R"] == [[0, 0]]
    code, recs = run_cli(
        "locate", "--code", "antisym", "--field", "5", "--m", "2",
        "--h-set", "0,1", "--points", "[[]]",
    )
    assert code == 0
    assert [[]] == recs[0]["R"] or [] in recs[0]["R"]
    code, recs = run_cli(
        "detect", "--field", "5", "--m", "1", "--degree", "1",
        "--points", "[[0],[1],[2]]",
    )
    assert code == 0
    assert recs[0]["rows"] == [[1, 3, 1]]


def test_malformed_inputs_exit_nonzero(tmp_path):
    bad = tmp_path / "bad.cnf"
    bad.write_text("1 2 0\n")
    code, recs = run_cli(
        "prove", "--cnf", str(bad), "--count", "1", "--out", str(tmp_path / "x.bin")
    )
    assert code == 2
    assert recs[-1]["record"] == "error"
