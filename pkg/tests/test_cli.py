import json
import subprocess
import sys
from pathlib import Path

import pytest

from resistcert.cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("argv,code", [
    (["certify", "dicke", "--family", "n-4", "--N", "7", "--a2", "1", "--b2", "1"], 0),
    (["certify", "dicke", "--family", "n-3", "--N", "8", "--a2", "33/112", "--b2", "1"], 0),
    (["certify", "dicke", "--family", "n-5", "--N", "13", "--b2", "1"], 0),
    (["certify", "dicke", "--family", "n-4", "--N", "7", "--a2", "1", "--b2", "1", "--m", "2"], 1),
    (["certify", "code", "--builtin", "ca10-7-3-3"], 0),
    (["certify", "code", "--builtin", "ca10-7-3-3", "--m", "3"], 1),
    (["verify-array", "--builtin", "ca10-7-3-3", "--k", "3"], 0),
    (["verify-array", "--builtin", "ca10-7-3-3", "--k", "2"], 1),
    (["param-range", "--family", "n-3", "--N", "7"], 0),
    (["param-range", "--family", "n-5", "--N", "13"], 0),
    (["search-code", "--N", "5", "--q", "3", "--d", "4", "--r", "6"], 0),
    (["search-code", "--N", "4", "--q", "2", "--d", "3", "--r", "3"], 1),
    # usage and input errors
    (["certify", "dicke", "--family", "n-3", "--N", "6", "--a2", "1", "--b2", "1"], 3),
    (["certify", "dicke", "--family", "n-3", "--N", "7", "--a2", "1/7", "--b2", "1"], 3),
    (["certify", "dicke", "--family", "n-4", "--N", "7", "--a2", "0.5", "--b2", "1"], 3),
    (["certify", "dicke", "--family", "n-4", "--N", "7", "--b2", "1"], 3),
    (["certify", "dicke", "--family", "n-9", "--N", "7", "--b2", "1"], 3),
    (["certify", "code", "--q", "3"], 3),
    (["certify", "code", "--builtin", "ca10-7-3-3", "--coeffs", "1,2"], 3),
    (["search-code", "--N", "20", "--q", "4", "--d", "3", "--r", "5"], 3),
    (["frobnicate"], 3),
    ([], 3),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code


def run(argv):
    """Exit status whether ``main`` returns it or argparse raises it."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


def _exits(argv):
    with pytest.raises(SystemExit) as err:
        main(argv)
    return err.value.code


def test_parse_errors_exit_with_usage_code():
    assert _exits(["frobnicate"]) == 3
    assert _exits(["certify", "dicke", "--family", "n-4"]) == 3


def test_inconclusive_exit_code(tmp_path, capsys):
    path = tmp_path / "parity.txt"
    path.write_text("000\n011\n101\n110\n")
    assert main(["certify", "code", "--file", str(path), "--q", "2", "--m", "1"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["outcome"] == "INCONCLUSIVE" and doc["claim"]["preconditions_enforced"] is False


def test_out_file_and_replay_round_trip(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["certify", "code", "--builtin", "ca10-7-3-3", "--workers", "3",
                 "--out", str(out)]) == 0
    summary = capsys.readouterr().out
    assert summary.startswith("CERTIFIED") and "m=2" in summary
    assert out.read_text() == (GOLDEN / "code_builtin_m2_certified.json").read_text()
    assert main(["replay", str(out)]) == 0
    assert "byte-identical=True" in capsys.readouterr().out


@pytest.mark.parametrize("name", ["dicke_n4_N7_m3_certified.json", "dicke_n4_N7_m2_refuted.json",
                                  "dicke_N5_gap_m2_inconclusive.json",
                                  "code_repetition_m1_refuted.json"])
def test_replay_goldens(name, capsys):
    assert main(["replay", str(GOLDEN / name)]) == 0


def test_replay_detects_edits(tmp_path, capsys):
    doc = json.loads((GOLDEN / "dicke_n4_N7_m3_certified.json").read_text())
    doc["outcome"] = "REFUTED"
    path = tmp_path / "edited.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    assert main(["replay", str(path)]) == 1


def test_cli_dicke_output_matches_golden(capsys):
    main(["certify", "dicke", "--family", "n-4", "--N", "7", "--a2", "1", "--b2", "1"])
    assert capsys.readouterr().out == (GOLDEN / "dicke_n4_N7_m3_certified.json").read_text()


def test_param_range_reports_both_bounds(capsys):
    main(["param-range", "--family", "n-3", "--N", "7"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["closed_form_bound_a2_over_b2"] == "3/7"
    assert doc["exact_psd_boundary_a2_over_b2"] == "1/7"


def test_verify_array_failure_names_columns(capsys):
    main(["verify-array", "--builtin", "ca10-7-3-3", "--k", "4"])
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc["critical_array"] is False and len(doc["columns"]) == 3
    assert "fail" in captured.err


def test_tables_subcommand(tmp_path, capsys):
    out = tmp_path / "t1.json"
    assert main(["tables", "--which", "I", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["summary"]["CERTIFIED"] == 7


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "resistcert", "param-range", "--family", "n-4",
                           "--N", "7"], capture_output=True, text=True)
    assert proc.returncode == 0 and "a2 > 0" in proc.stdout
