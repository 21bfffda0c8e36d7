import io
import json
import subprocess
import sys

import pytest

from parcat.cli import run
from parcat.polynomials import SparsePoly
from parcat.tableaux import Tableau


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["map", "--name", "core", "--n", "9", "--r", "3,8", "--tuple", "7,9,6;5,5,9,8,9;9"], "4,5,6;4,5,7,8,9;9"),
        (["count", "--what", "cnr", "--n", "3", "--r", "1,2"], "5"),
        (["rowsum", "--shape", "1,1,0", "--bounds", "3,3;3"], "x1*x2 + x1*x3 + x2*x3"),
        (["map", "--name", "rank", "--tuple", "2,4,6;1,5,7,8,9;3"], "2,4,6;5,6,7,8,9;9"),
        (["map", "--name", "pi", "--tuple", "2,4,6;4,5,6,7,9;9"], "2,4,6;1,3,5,7,9;8"),
        (["map", "--name", "floor", "--tuple", "3,4,6;4,5,6,8,9;9"], "3,4,6;6,6,6,8,9;9"),
        (["map", "--name", "ceiling", "--tuple", "3,4,5;4,5,6,8,9;9"], "5,5,5;6,6,6,9,9;9"),
        (["map", "--name", "platform", "--tuple", "7,9,6;5,5,9,8,9;9"], "6,6,6;5,5,9,9,9;9"),
        (["map", "--name", "project", "--tuple", "3,1,2", "--r", "1"], "3;1,2"),
        (["map", "--name", "lift", "--tuple", "2,3,6;1,4,5,8,9;7"], "2,3,6,5,4,1,8,9,7"),
        (["critical", "--tuple", "2,4,6;4,5,6,7,9;9"], "3:6,2:4,1:2;8:9,7:7;9:9"),
        (["critical", "--list", "3:6;8:9,5:5;9:9", "--n", "9", "--r", "3,8", "--fill", "increasing"], "4,5,6;4,5,7,8,9;9"),
        (["count", "--what", "total", "--n", "3"], "12"),
        (["count", "--what", "family", "--family", "UG", "--n", "3", "--r", "1,2"], "5"),
        (["scan", "--shape", "2,1,0", "--tableau", "1,3/2"], "2 2\n3"),
        (["key", "--shape", "2,1,1,0", "--perm", "4;1,2;3"], "1 4\n2\n4"),
        (["tableaux", "--shape", "1,1,0", "--bounds", "2,3;3", "--count"], "3"),
    ],
)
def test_text_output(argv, expected):
    code, out, err = call(*argv)
    assert (code, err) == (0, "")
    assert out.strip() == expected


def test_classify_lists_labels_in_fixed_order():
    code, out, _ = call("classify", "--tuple", "2,4,6;4,5,6,7,9;9")
    assert code == 0
    assert out.split()[:3] == ["upper", "r_increasing", "gapless"]


def test_gvdet_reports_applicability():
    code, out, _ = call("gvdet", "--shape", "1,1,0", "--bounds", "3,2;3")
    assert code == 0
    assert out.splitlines() == ["x1*x2 - x3^2", "nonpermutable: false"]
    code, out, _ = call("--format", "json", "gvdet", "--shape", "1,1,0", "--bounds", "2,3;3")
    data = json.loads(out)
    assert data["nonpermutable"] is True
    assert str(SparsePoly.from_json(data["polynomial"])) == "x1*x2 + x1*x3 + x2*x3"


def test_demazure_both_methods_agree():
    code, out, _ = call("demazure", "--shape", "2,1,1,0", "--perm", "4;1,2;3", "--method", "both")
    assert code == 0
    _, dd, _ = call("demazure", "--shape", "2,1,1,0", "--perm", "4;1,2;3", "--method", "dd")
    assert out == dd


def test_demazure_mismatch_exits_three(monkeypatch):
    import parcat.cli as cli

    monkeypatch.setattr(cli, "key_poly_dd", lambda alpha: SparsePoly.zero(len(alpha)))
    code, out, err = call("demazure", "--shape", "1,1,0", "--perm", "1,3;2", "--method", "both")
    assert code == 3 and "disagree" in err and "tableau:" in out


def test_json_outputs_round_trip():
    _, out, _ = call("--format", "json", "scan", "--shape", "2,1,0", "--tableau", "1,3/2")
    assert Tableau.from_json(out).columns == ((2, 3), (2,))
    _, out, _ = call("--format", "json", "tableaux", "--shape", "1,1,0")
    data = json.loads(out)
    assert data["count"] == 3 and len(data["tableaux"]) == 3
    _, out, _ = call("--format", "json", "rowsum", "--shape", "1,1,0", "--bounds", "3,3;3")
    assert SparsePoly.from_json(json.loads(out)["polynomial"]).coefficient_sum() == 3


def test_tableau_json_input():
    payload = json.dumps({"n": 3, "shape": [2, 1, 0], "columns": [[1, 3], [2]]})
    code, out, _ = call("scan", "--tableau", payload)
    assert code == 0 and out.strip() == "2 2\n3"


def test_file_payload(tmp_path):
    path = tmp_path / "beta.txt"
    path.write_text("3,3;3\n")
    code, out, _ = call("rowsum", "--shape", "1,1,0", "--bounds", f"@{path}")
    assert code == 0 and out.strip() == "x1*x2 + x1*x3 + x2*x3"


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["map", "--name", "core", "--tuple", "1,1,3"], "entry 2"),
        (["map", "--name", "pi", "--tuple", "2,4,6;4,6,7,8,9;9"], "gapless"),
        (["key", "--shape", "1,1,0", "--perm", "1;2;3"], "expected R"),
        (["scan", "--tableau", "1,3/2"], "--shape"),
        (["rowsum", "--shape", "1,1,0", "--bounds", "@/nonexistent/file"], "cannot read"),
        (["verify", "--theorem", "T420", "--box", "three"], "RxC"),
    ],
)
def test_domain_errors_exit_one(argv, fragment):
    code, out, err = call(*argv)
    assert code == 1 and out == ""
    assert fragment in err


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["map", "--name", "sideways", "--tuple", "1"], ["--format", "xml", "count", "--n", "2"]],
)
def test_usage_errors_exit_two(argv):
    code, _, err = call(*argv)
    assert code == 2 and "usage" in err


def test_verify_pass_and_fail(monkeypatch):
    code, out, _ = call("verify", "--theorem", "T420", "--max-n", "3", "--box", "2x2")
    assert code == 0 and out.startswith("T420: PASS")

    import parcat.census as census

    def broken(shape):
        tally = census._Tally()
        tally.check(False, shape=str(shape), claim="forced")
        return tally

    monkeypatch.setitem(census._PER_SHAPE, "T420", broken)
    code, out, err = call("--format", "json", "verify", "--theorem", "T420", "--max-n", "2", "--box", "1x1")
    assert code == 3
    report = json.loads(out)
    assert report["failures"] and report["failures"][0]["claim"] == "forced"


def test_output_is_deterministic():
    argv = ["verify", "--theorem", "T721", "--max-n", "3", "--box", "2x2"]
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "parcat", "count", "--what", "cnr", "--n", "4", "--r", "1,2,3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "14"
