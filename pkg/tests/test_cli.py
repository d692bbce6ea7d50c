import json
import subprocess
import sys

import pytest

from clustertilt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_fixture(capsys):
    code, out, _ = run(capsys, "parse", "sec3_C")
    assert code == 0
    assert out.startswith("algebra C\nvertices 1 2 3 4\n")


def test_parse_empty_file_exits_2(capsys, tmp_path):
    f = tmp_path / "empty.bq"
    f.write_text("")
    code, out, err = run(capsys, "parse", str(f))
    assert code == 2 and out == ""
    msg = json.loads(err)
    assert msg["type"] == "DSLError" and msg["line"] == 1


def test_missing_file_exits_2(capsys):
    assert run(capsys, "basis", "no_such_file.bq")[0] == 2


def test_bad_flag_exits_2(capsys):
    assert run(capsys, "knit", "sec3_C", "--steps", "0")[0] == 2
    assert run(capsys, "parse", "sec3_C", "--field", "fp:4")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_computation_error_exits_1(capsys):
    code, _, err = run(capsys, "relext", "sec3_B")
    assert code == 1
    assert json.loads(err)["error"] == "computation"


def test_relext_prints_six_relations(capsys):
    code, out, _ = run(capsys, "relext", "sec3_C", "--compare", "sec3_B")
    assert code == 0
    rel = out.split("relations\n")[1].split("\n\n")[0].strip().splitlines()
    assert len(rel) == 6
    assert "# isomorphic to sec3_B: yes" in out


def test_relext_json(capsys):
    code, out, _ = run(capsys, "relext", "sec3_C", "--format", "json")
    data = json.loads(out)
    assert data["dimension"] == 16 and data["bimodule_dimension"] == 8
    assert len(data["new_arrows"]) == 2


def test_basis_over_fp(capsys):
    code, out, _ = run(capsys, "basis", "sec3_C", "--field", "fp:5")
    assert code == 0 and "dimension 8 over fp:5" in out


def test_knit_dot(capsys):
    code, out, _ = run(capsys, "knit", "sec3_C", "--mode", "postprojective", "--format", "dot")
    assert code == 0 and out.startswith("digraph C {")


def test_tube_text(capsys):
    code, out, _ = run(capsys, "tube", "sec5_B", "--root", "3", "--c1", "sec5_C1", "--c2", "sec5_C2")
    assert code == 0
    assert "rank 4" in out
    assert "mesh 0 -> (1,1,1,0,1) -> (2,1,2,1,2) -> (1,0,1,1,1) -> 0" in out
    assert "on mouth: True" in out


def test_tube_unknown_vertex(capsys):
    assert run(capsys, "tube", "sec5_B", "--root", "9")[0] == 2


def test_slices_and_reflect(capsys):
    code, out, _ = run(capsys, "slices", "sec3_B", "--seeds", "1,4")
    assert code == 0 and out.startswith("19 local slices")
    code, out, _ = run(capsys, "reflect", "sec3_B", "--seeds", "1,4", "--vertex", "1")
    assert code == 0 and "reflected:" in out


def test_partitions_sec3(capsys):
    code, out, _ = run(capsys, "partitions", "sec3_B")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("I = ")]
    assert len(lines) == 4
    assert sum(l.endswith("  tilted") for l in lines) == 2


def test_out_directory(capsys, tmp_path):
    code, out, _ = run(capsys, "basis", "sec3_C", "--format", "json", "--out", str(tmp_path))
    assert code == 0
    path = tmp_path / "sec3_C.basis.json"
    assert out.strip() == str(path)
    assert json.loads(path.read_text())["dimension"] == 8


def test_fixtures_subset(capsys):
    code, out, _ = run(capsys, "fixtures", "sec3", "remark3")
    assert code == 0
    assert out.splitlines() == ["PASS sec3", "PASS remark3"]
    assert run(capsys, "fixtures", "bogus")[0] == 2


@pytest.mark.parametrize("argv", [
    ["knit", "sec3_B", "--steps", "3", "--format", "json"],
    ["partitions", "sec3_B", "--format", "json"],
])
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_console_script_partitions_e7():
    res = subprocess.run([sys.executable, "-m", "clustertilt.cli", "partitions", "e7tilde"],
                         capture_output=True, text=True, timeout=300)
    assert res.returncode == 0
    rows = [l for l in res.stdout.splitlines() if l.startswith("I = ")]
    assert len(rows) == 8
    assert sum(l.endswith("  tilted") for l in rows) == 2
