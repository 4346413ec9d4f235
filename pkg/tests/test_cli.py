import json
import math

import pytest

from abctrees.cli import dumps, run


@pytest.fixture
def k15(tmp_path):
    path = tmp_path / "k15.txt"
    path.write_text("# K_{1,5}\n0 1\n0 2\n0 3\n0 4\n0 5\n")
    return path


def test_abc(k15, capsys):
    assert run(["abc", str(k15)]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(math.sqrt(20), abs=1e-14)


def test_abc_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n1 2\n2 0\n")
    assert run(["abc", str(bad)]) == 3
    assert "line 3" in capsys.readouterr().err
    assert run(["abc", str(tmp_path / "missing.txt")]) == 3


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["search"]) == 2
    assert run(["search", "10", "--bogus"]) == 2
    assert run(["verify", "nope"]) == 2


def test_search_1030(capsys):
    assert run(["search", "1030"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["family"] == "RootOnly"
    assert rec["parameters"]["d_R"] == 103 and rec["parameters"]["k_R"] == 10
    assert rec["order"] == 1134 and rec["unique"]
    assert set(rec) >= {"t", "abc", "family", "parameters", "order", "unique"}


def test_search_caps(capsys):
    assert run(["search", "1200", "--kcap", "10"]) == 0
    assert json.loads(capsys.readouterr().out)["cap_touched"]


def test_search_deterministic(capsys):
    run(["search", "777"])
    first = capsys.readouterr().out
    run(["search", "777"])
    assert capsys.readouterr().out == first


def test_tree_build_then_abc(tmp_path, capsys):
    out = tmp_path / "t.txt"
    assert run(["tree", "build", "1207", "--out", str(out)]) == 0
    assert out.read_text().startswith("# t=1207")
    run(["search", "1207"])
    expected = json.loads(capsys.readouterr().out)["abc"]
    run(["abc", str(out)])
    assert abs(float(capsys.readouterr().out) - expected) <= 1e-12


def test_scan_csv(tmp_path, capsys):
    path = tmp_path / "scan.csv"
    assert run(["--threads", "1", "scan", "1190", "1196", "--csv", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "t,abc,family,d_R,d_M,l,k_R,s_R,k_M,s_M,order,unique"
    assert len(lines) == 8
    err = capsys.readouterr().err
    assert "change at t=1195" in err


def test_scan_cap_touch_exit(capsys):
    assert run(["--threads", "1", "scan", "1200", "1201", "--kcap", "10"]) == 1


def test_oracle(tmp_path, capsys):
    assert run(["--threads", "1", "oracle", "6", "--emit-trees", str(tmp_path)]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["trees_considered"] == 7
    assert res["min_abc"] == pytest.approx(math.sqrt(30), abs=1e-14)
    assert len(list(tmp_path.glob("*.txt"))) == 1
    assert run(["oracle", "11"]) == 3


def test_table1(tmp_path, capsys):
    assert run(["table1"]) == 0
    assert "0.98472395" in capsys.readouterr().out
    path = tmp_path / "t.csv"
    assert run(["table1", "--csv", str(path)]) == 0
    assert path.read_text().splitlines()[0] == "k,c_120,diff_120,c_inf,diff_inf"


def test_verify(capsys):
    assert run(["verify", "noRandM2"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["passed"] and rep["name"] == "noRandM2"


def test_dumps_uses_17_digits():
    assert dumps({"x": 0.1, "y": [1, None, True]}) == (
        '{\n  "x": 0.10000000000000001,\n  "y": [\n    1,\n    null,\n    true\n  ]\n}')
