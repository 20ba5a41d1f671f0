import json
import os
import subprocess
import sys

import pytest

from treecohom.cli import main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_betti_path3(capsys):
    code, out, _ = run(capsys, "betti", "--builtin", "path:3", "--method", "both")
    assert code == 0 and out.strip() == "1 3 5 6 5 3 1"


def test_betti_json(capsys):
    code, out, _ = run(capsys, "betti", "--builtin", "a:1,2", "--json")
    assert code == 0 and json.loads(out)["betti"] == [1, 3, 6, 6, 3, 1]


def test_betti_file(capsys, tmp_path):
    f = tmp_path / "p.tree"
    f.write_text("nodes 2\nedge 1 2 1\n")
    code, out, _ = run(capsys, "betti", str(f), "--per-weight")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1 2 2 1"
    assert "p=1 weight=[-1, 1, 0] dim=1" in lines


def test_betti_l1(capsys):
    code, out, _ = run(capsys, "betti", "--builtin", "multi:2", "--algebra", "l1")
    assert code == 0 and out.split() == ["1", "2", "1", "0", "0", "0", "0"]


def test_missing_file(capsys):
    code, _, err = run(capsys, "betti", "missing.tree")
    assert code == 2 and "no such file" in err


def test_bad_diagram(capsys, tmp_path):
    f = tmp_path / "bad.tree"
    f.write_text("nodes 3\nedge 1 2 1\n")
    code, _, err = run(capsys, "betti", str(f))
    assert code == 2 and "error" in err


def test_source_required(capsys):
    assert run(capsys, "betti")[0] == 2
    assert run(capsys, "betti", "x.tree", "--builtin", "path:2")[0] == 2


def test_cap(capsys):
    code, _, err = run(capsys, "betti", "--builtin", "figure1")
    assert code == 2 and "--force" in err


def test_verify_three(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "path:2", "--checks", "euler,totalrank,b2")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == ["PASS", "PASS", "PASS"]


def test_verify_solvable(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "multi:3", "--checks", "solvable", "--json")
    doc = json.loads(out)
    assert code == 0 and doc[0]["pass"] and doc[0]["witness"]["betti"] == [1, 2, 1]


def test_verify_closedform(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "a:1,1", "--checks", "closedform", "--json")
    assert code == 0 and json.loads(out)[0]["witness"]["counts"] == [1, 2, 2, 1]


def test_verify_failure_exit(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "instar:2", "--checks", "b2")
    assert code == 1 and out.startswith("FAIL b2")


def test_verify_errors(capsys):
    assert run(capsys, "verify", "--builtin", "path:2", "--checks", "nonsense")[0] == 2
    assert run(capsys, "verify", "--builtin", "figure1", "--checks", "anm", "--force")[0] == 2
    assert run(capsys, "verify", "--builtin", "path:1", "--checks", "b2")[0] == 2


def test_verify_anm(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "a:2,1", "--checks", "anm,vandermonde")
    assert code == 0 and out.count("PASS") == 2


def test_tableaux(capsys):
    assert run(capsys, "tableaux", "--m", "2", "--n", "1", "--degree", "2")[1].strip() == \
        "count=4 (enum) count=4 (hook)"
    assert run(capsys, "tableaux", "--m", "1", "--n", "1", "--degree", "0")[1].startswith("count=1 ")
    code, out, _ = run(capsys, "tableaux", "--m", "1", "--n", "1", "--degree", "2", "--json", "--list")
    doc = json.loads(out)
    assert code == 0 and doc["enum"] == doc["hook"] == 1 and len(doc["tableaux"]) == 1
    assert run(capsys, "tableaux", "--m", "0", "--n", "1", "--degree", "1")[0] == 2


def test_dump(capsys):
    code, out, _ = run(capsys, "dump", "--builtin", "path:2")
    assert code == 0 and "[d1, x1*d2] = d2" in out
    code, out, _ = run(capsys, "dump", "--builtin", "path:2", "--json")
    assert len(json.loads(out)["basis"]) == 3


def test_usage_exit():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "treecohom", "betti", "--builtin", "path:3", "--json"]
    env = dict(os.environ, TREECOHOM_BACKEND="numpy")
    a = subprocess.run(cmd, capture_output=True, cwd=ROOT, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, cwd=ROOT, check=True, env=env).stdout
    assert a == b and a
