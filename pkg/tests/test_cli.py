import csv
import io
import json
from fractions import Fraction

import pytest

from permcode.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pmax_table_n3(capsys):
    code, out, _ = run_cli(capsys, ["pmax", "--n", "3", "--d", "2"])
    assert code == 0
    assert "p_quantum = 5/6 (0.833333333333)" in out
    assert "p_classical = 1/2 (0.5)" in out
    assert "dim_w = 5" in out


def test_pmax_table_n4_d2(capsys):
    code, out, _ = run_cli(capsys, ["pmax", "--n", "4", "--d", "2"])
    assert code == 0
    assert "p_quantum = 1/2 (0.5)" in out
    assert "info_bound = 2/3" in out


def test_pmax_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, ["pmax", "--n", "5", "--d", "3", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["meta"]["command"] == "pmax"
    row = payload["rows"][0]
    num, den = row["p_quantum_exact"].split("/")
    assert float(row["p_quantum"]) == pytest.approx(float(Fraction(int(num), int(den))))


def test_pmax_deterministic(capsys):
    args = ["pmax", "--n", "20", "--d", "7", "--method", "plancherel", "--seed", "9"]
    _, first, _ = run_cli(capsys, args)
    _, second, _ = run_cli(capsys, args)
    assert first == second and "+/-" in first


def test_pmax_rejects_bad_instance(capsys):
    code, _, err = run_cli(capsys, ["pmax", "--n", "0", "--d", "2"])
    assert code == 1 and "error" in err


def test_pmax_usage_error(capsys):
    code, _, err = run_cli(capsys, ["pmax", "--n", "3"])
    assert code == 1 and "error" in err


def test_cap_flag_and_env(capsys, monkeypatch):
    code, _, err = run_cli(capsys, ["pmax", "--n", "10", "--d", "5", "--method", "exact", "--cap", "9"])
    assert code == 1 and "cap" in err
    monkeypatch.setenv("PERMCODE_CAP", "9")
    code, _, err = run_cli(capsys, ["pmax", "--n", "10", "--d", "5", "--method", "exact"])
    assert code == 1
    monkeypatch.setenv("PERMCODE_CAP", "banana")
    code, _, err = run_cli(capsys, ["pmax", "--n", "3", "--d", "2"])
    assert code == 1 and "PERMCODE_CAP" in err


def test_classical_command(capsys):
    code, out, _ = run_cli(capsys, ["classical", "--n", "6", "--d", "3"])
    assert code == 0
    assert "p_classical = 1/8 (0.125)" in out


def test_sweep_csv_schema(capsys):
    code, out, _ = run_cli(
        capsys, ["sweep", "--r", "0.5", "--n-list", "4,6,8", "--format", "csv"]
    )
    assert code == 0
    body = "\n".join(line for line in out.splitlines() if not line.startswith("#"))
    rows = list(csv.DictReader(io.StringIO(body)))
    assert [r["n"] for r in rows] == ["4", "6", "8"]
    assert set(rows[0].keys()) == {
        "n", "d", "r", "method", "p_quantum", "p_quantum_exact", "stderr",
        "p_classical", "p_classical_exact", "info_bound", "info_bound_exact",
        "ratio_to_bound",
    }
    for r in rows:
        num, den = (r["p_quantum_exact"].split("/") + ["1"])[:2]
        assert f"{float(Fraction(int(num), int(den))):.12g}" == r["p_quantum"]


def test_sweep_mc_rows_have_stderr(capsys):
    code, out, _ = run_cli(
        capsys,
        ["sweep", "--r", "0.5", "--n-list", "8", "--cap", "5",
         "--samples", "500", "--seed", "1", "--format", "csv"],
    )
    assert code == 0
    body = "\n".join(line for line in out.splitlines() if not line.startswith("#"))
    row = next(csv.DictReader(io.StringIO(body)))
    assert row["method"] == "plancherel-mc"
    assert row["stderr"] != "" and row["p_quantum_exact"] == ""


def test_sample_deterministic_and_valid(capsys):
    args = ["sample", "--measure", "plancherel", "--n", "5", "--count", "200", "--seed", "3"]
    _, first, _ = run_cli(capsys, args)
    _, second, _ = run_cli(capsys, args)
    assert first == second
    total = sum(
        int(line.split(": ")[1].split(" ")[0])
        for line in first.splitlines()
        if not line.startswith("#")
    )
    assert total == 200


def test_sample_schur_weyl_d1(capsys):
    code, out, _ = run_cli(
        capsys,
        ["sample", "--measure", "schur-weyl", "--n", "4", "--d", "1", "--count", "50"],
    )
    assert code == 0
    data_lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert data_lines == ["4: 50 (1)"]


def test_verify_all_json(capsys):
    code, out, _ = run_cli(capsys, ["verify", "--suite", "all"])
    assert code == 0
    payload = json.loads(out)
    assert payload["meta"]["suite"] == "all"
    assert len(payload["rows"]) >= 8
    assert all(c["pass"] for c in payload["rows"])
    names = {c["check_name"] for c in payload["rows"]}
    assert {"overlap-one-fifth", "povm-completeness", "symmetrized-covariance"} <= names


def test_verify_single_suite(capsys):
    code, out, _ = run_cli(capsys, ["verify", "--suite", "classical", "--seed", "4"])
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 2


def test_bounds_command(capsys):
    code, out, _ = run_cli(
        capsys,
        ["bounds", "--kerov-n", "20", "--kerov-row-n", "16", "--kerov-row-d", "4",
         "--erdos-n", "100"],
    )
    assert code == 0
    assert "violations=0" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(
        capsys, ["pmax", "--n", "3", "--d", "2", "--format", "json", "--output", str(target)]
    )
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())
    assert payload["rows"][0]["p_quantum_exact"] == "5/6"
