import json
import subprocess
import sys

import pytest

from quadchar import cli


def run_cli(*argv) -> int:
    return cli.main(list(argv))


def test_psi_prints_bare_count(capsys):
    assert run_cli("psi", "--x", "100", "--y", "5") == 0
    assert capsys.readouterr().out.strip() == "34"


def test_psi_accepts_scientific_notation(capsys):
    assert run_cli("psi", "--x", "1e2", "--y", "5") == 0
    assert capsys.readouterr().out.strip() == "34"


def test_delta_max_json_contract(tmp_path, capsys):
    out = tmp_path / "out.json"
    assert run_cli("delta-max", "--X", "10", "--x", "5", "--json", str(out)) == 0
    payload = json.loads(out.read_text())
    assert payload["d_star"] == 13
    assert payload["S_star"] == 1
    assert payload["X_lo"] == 10.0 and payload["X_hi"] == 20.0
    assert payload["scanned"] == 3
    capsys.readouterr()


def test_delta_max_csv(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert run_cli("delta-max", "--X", "10", "--x", "5", "--csv", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "X_lo,X_hi,x,d_star,S_star,scanned,absolute"
    assert lines[1].split(",")[3] == "13"
    capsys.readouterr()


def test_resonate_csv_header_and_holds(tmp_path, capsys):
    out = tmp_path / "r.csv"
    rc = run_cli(
        "resonate", "--variant", "short", "--X", "1e4", "--x", "50",
        "--alpha", "0.01", "--delta", "0.005", "--csv", str(out),
    )
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "variant,X,x,M1,M2,ratio,observed_max,holds"
    assert lines[1].startswith("short,10000.0,50.0,")
    assert lines[1].endswith(",True")
    capsys.readouterr()


def test_resonate_json_payload(tmp_path, capsys):
    out = tmp_path / "r.json"
    rc = run_cli(
        "resonate", "--variant", "long", "--X", "2000", "--x", "4",
        "--squared", "--json", str(out),
    )
    assert rc == 0
    payload = json.loads(out.read_text())
    for key in ("variant", "X", "x", "params", "M1", "M2", "ratio",
                "observed_max", "squared", "holds", "scanned", "theorem",
                "predicted_shape"):
        assert key in payload
    assert payload["variant"] == "long"
    assert payload["squared"] is True
    assert payload["holds"] is True
    assert payload["theorem"] == "1.3"
    assert payload["params"]["N"] >= 1
    capsys.readouterr()


def test_mean_value_csv_schema(tmp_path, capsys):
    out = tmp_path / "mv.csv"
    assert run_cli("mean-value", "--n", "4", "--X", "1e4", "--csv", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,X,exact_sum,main_term,residual,uncond_envelope,grh_envelope"
    capsys.readouterr()


def test_gcd_sum_set_file(tmp_path, capsys):
    setfile = tmp_path / "m.txt"
    setfile.write_text("2\n3\n")
    out = tmp_path / "g.json"
    assert run_cli("gcd-sum", "--set-file", str(setfile), "--json", str(out)) == 0
    payload = json.loads(out.read_text())
    assert payload["N"] == 2
    assert abs(payload["gcd_sum"] - (2 + 2 / 6**0.5)) < 1e-12
    assert payload["reference"] is None
    capsys.readouterr()


def test_gcd_sum_build_and_export(tmp_path, capsys):
    out_set = tmp_path / "set.txt"
    assert run_cli("gcd-sum", "--N", "40", "--out-set", str(out_set)) == 0
    rows = [int(v) for v in out_set.read_text().split()]
    assert len(rows) == 40
    capsys.readouterr()


def test_exit_code_empty_window(capsys):
    assert run_cli("delta-max", "--X", "2", "--x", "5", "--hi", "4") == 3
    err = capsys.readouterr().err
    assert "error:" in err and err.count("\n") == 1


def test_exit_code_precondition(capsys):
    assert run_cli("resonate", "--variant", "short", "--X", "10", "--x", "50") == 2
    assert run_cli("mean-value", "--n", "0", "--X", "100") == 2
    assert run_cli("psi", "--x", "0.5", "--y", "3") == 2
    capsys.readouterr()


def test_verify_subcommand_passes(capsys):
    assert run_cli("verify", "meanvalue") == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_no_partial_output_on_failure(tmp_path, capsys):
    out = tmp_path / "never.json"
    assert run_cli("delta-max", "--X", "2", "--x", "5", "--hi", "4", "--json", str(out)) == 3
    assert not out.exists()
    capsys.readouterr()


def test_identical_runs_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["resonate", "--variant", "short", "--X", "3000", "--x", "25",
            "--alpha", "0.02", "--delta", "0.01", "--threads", "2"]
    assert run_cli(*args, "--json", str(a)) == 0
    assert run_cli(*args, "--json", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_thread_counts_agree_numerically(tmp_path, capsys):
    payloads = []
    for t in ("1", "4", "8"):
        path = tmp_path / f"t{t}.json"
        assert run_cli(
            "resonate", "--variant", "short", "--X", "3000", "--x", "25",
            "--alpha", "0.02", "--delta", "0.01", "--threads", t,
            "--json", str(path),
        ) == 0
        payloads.append(json.loads(path.read_text()))
    base = payloads[0]
    for other in payloads[1:]:
        assert other["observed_max"] == base["observed_max"]
        for key in ("M1", "M2", "ratio"):
            assert abs(other[key] - base[key]) <= 1e-9 * abs(base[key])
    capsys.readouterr()


def test_console_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "quadchar.cli", "psi", "--x", "100", "--y", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "34"


def test_seed_flag_reserved(capsys):
    assert run_cli("--seed", "7", "psi", "--x", "10", "--y", "10") == 0
    assert capsys.readouterr().out.strip() == "10"
