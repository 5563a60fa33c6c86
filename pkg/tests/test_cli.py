import json
import subprocess
import sys

import pytest

from lnqec.cli import main

LIAR_CODE = "# column 3 repeats column 0, so d is really 2\n2 4 1\n1 0 0 1\n0 1 0 0\n0 0 1 0\nd 3\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_codes_text(capsys):
    code, out, _ = run(capsys, "codes")
    assert code == 0
    assert "mds4_2_q     [4,2,3]_4  MDS" in out
    assert "hamming7_b   [7,4,3]_2\n" in out


def test_codes_json_flag_before_or_after_subcommand(capsys):
    _, before, _ = run(capsys, "--json", "codes")
    _, after, _ = run(capsys, "codes", "--json")
    assert before == after
    doc = json.loads(before)
    assert doc["schema"] == "lnqec.codes/1"
    assert {c["name"]: c["mds"] for c in doc["codes"]}["hamming7_b"] is False


def test_build_prints_all_matrices(capsys):
    code, out, _ = run(capsys, "build", "--code", "catalog:rep3_b")
    assert code == 0
    for title in ("H:", "H_Q:", "H_Z:", "H_X:", "H_Zp:", "H_Xp:"):
        assert f"\n{title}\n" in out
    _, out, _ = run(capsys, "build", "--code", "catalog:rep3_b", "--json")
    doc = json.loads(out)
    assert doc["matrices"]["H_Zp"] == [["1"], ["1"], ["0"], ["0"]]
    assert doc["n_phys"] == 5


def test_build_dual(capsys):
    _, out, _ = run(capsys, "build", "--variant", "dual", "--json")
    doc = json.loads(out)
    assert doc["variant"] == "dual" and doc["ancilla_basis"] == "Z"


def test_verify_hamming_passes(capsys):
    code, out, _ = run(capsys, "verify", "--code", "catalog:hamming7_b")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "ALL PASS"
    for suite in ("syndrome_paths", "distinct_syndromes", "correction", "propagation", "end_to_end", "negative_control"):
        assert any(line.startswith(f"PASS {suite} ") for line in lines), suite


def test_verify_reports_counterexample(tmp_path, capsys):
    path = tmp_path / "liar.code"
    path.write_text(LIAR_CODE)
    code, out, _ = run(capsys, "verify", "--code", str(path))
    assert code == 1
    assert "FAIL distinct_syndromes" in out and "counterexample" in out and "share syndrome" in out
    assert out.splitlines()[-1] == "VERIFICATION FAILED"


def test_usage_errors(capsys):
    assert run(capsys, "build", "--code", "catalog:mds4_2_q", "--variant", "q2")[0] == 2
    assert run(capsys, "build", "--code", "catalog:nope")[0] == 2
    assert run(capsys, "build", "--bogus")[0] == 2
    assert run(capsys, "simulate")[0] == 2
    assert run(capsys, "table", "--t", "5")[0] == 2
    code, _, err = run(capsys, "build", "--code", "/no/such/file")
    assert code == 2 and "cannot load code" in err
    assert run(capsys)[0] == 2


def test_table_file_round_trip(tmp_path, capsys):
    out_path = tmp_path / "mds4.tbl"
    code, out, err = run(capsys, "table", "--out", str(out_path))
    assert code == 0 and "13 syndromes" in out and "wrote 13 entries" in err
    base = ["simulate", "--adversarial", "1", "--trials", "500", "--json"]
    _, built, _ = run(capsys, *base)
    _, loaded, _ = run(capsys, *base, "--table", str(out_path))
    assert built == loaded
    code, _, err = run(capsys, *base, "--code", "catalog:rep3_b", "--table", str(out_path))
    assert code == 2 and "different scheme" in err


def test_simulate_adversarial_example(capsys):
    code, out, _ = run(
        capsys, "simulate", "--code", "catalog:mds4_2_q", "--variant", "q4",
        "--adversarial", "1", "--trials", "100000", "--seed", "7",
    )
    assert code == 0
    assert "failures=0/100000" in out


def test_simulate_json_is_reproducible(capsys):
    argv = ["simulate", "--p-data", "0.01", "--p-anc", "0.01", "--trials", "9000", "--seed", "3", "--json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    threaded = run(capsys, *argv, "--workers", "4")[1]
    assert first == second == threaded
    doc = json.loads(first)
    assert doc["p"] == {"anc": 0.01, "data": 0.01} and doc["trials"] == 9000


def test_params_mds4(capsys):
    code, out, _ = run(capsys, "params", "--code", "catalog:mds4_2_q")
    assert code == 0
    assert out.splitlines()[0] == "[[2,2,≥3;4]] slack=0 (saturates)"


def test_params_hamming_json(capsys):
    _, out, _ = run(capsys, "params", "--code", "catalog:hamming7_b", "--json")
    doc = json.loads(out)
    assert doc["ea"] == {"n": 4, "k": 4, "d_min": 3, "c": 6}
    assert doc["singleton_slack"] == 2 and doc["singleton_applicable"] is True


def test_params_rep3_flags_hypothesis(capsys):
    _, out, _ = run(capsys, "params", "--code", "catalog:rep3_b")
    assert "[[1,1,≥3;4]]" in out and "does not hold" in out


def test_params_declared_distance(tmp_path, capsys):
    path = tmp_path / "mds.code"
    path.write_text("4 4 2\n1 0 W w\n0 1 w W\nd 3\n")
    _, out, _ = run(capsys, "params", "--code", str(path))
    assert "declared" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lnqec", "codes", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == "lnqec.codes/1"


@pytest.mark.parametrize("variant", ["q2", "dual"])
def test_table_variants(capsys, variant):
    code, out, _ = run(capsys, "table", "--code", "catalog:hamming7_b", "--variant", variant, "--json")
    assert code == 0
    assert json.loads(out)["entries"] == 64
