import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from qg.cli import run
from qg.constructors import fixture_text


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def tbl(tmp_path):
    def write(name, text=None):
        p = tmp_path / f"{name}.tbl"
        p.write_text(text if text is not None else fixture_text(name))
        return str(p)
    return write


FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def test_analyze_z9_is_medial():
    code, out, _ = _run("analyze", str(FIXTURES / "z9.tbl"))
    assert code == 0
    assert "medial: true" in out and "leftF: true" in out


def test_analyze_json(tbl):
    code, out, _ = _run("analyze", tbl("d8-group"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["command"] == "analyze"
    rep = data["results"][0]
    assert rep["order"] == 8 and rep["loop"]["group"]
    assert rep["localMaps"]["e"]["image"] == [0]


def test_analyze_several_files(tbl):
    code, out, _ = _run("analyze", tbl("z3-minus"), tbl("z7-minus"))
    assert code == 0 and out.count("== ") == 2


def test_non_latin_table_is_reported(tbl):
    code, out, err = _run("analyze", tbl("bad", "3\n0 1 2\n1 1 0\n2 0 1\n"))
    assert code == 1 and out == ""
    assert "row 1 repeats entry 1" in err


def test_malformed_table_is_a_parse_error(tbl):
    code, _, err = _run("analyze", tbl("bad", "2\n0 1\n"))
    assert code == 2 and "error" in err


def test_missing_file(tmp_path):
    code, _, err = _run("analyze", str(tmp_path / "nope.tbl"))
    assert code == 2 and "cannot read" in err


def test_decompose_needs_class(tbl):
    code, _, err = _run("decompose", tbl("z4-x-plus-3y"))
    assert code == 2 and "--class" in err


def test_decompose_json(tbl):
    code, out, _ = _run("decompose", tbl("z4-x-plus-3y"), "--class", "leftE", "--format", "json")
    rep = json.loads(out)["results"][0]
    assert code == 0 and rep["m"] == 2 and rep["chain"] == [[0, 1, 2, 3], [0, 2], [0]]


def test_decompose_text_nested(tbl):
    code, out, _ = _run("decompose", tbl("z6-minus"), "--class", "F")
    assert code == 0 and "inner decomposition of B:" in out


def test_decompose_outside_class(tbl):
    code, _, err = _run("decompose", tbl("d8-leftF"), "--class", "right-F")
    assert code == 1 and "NotInClass" in err


def test_unknown_class(tbl):
    code, _, _ = _run("decompose", tbl("z3-minus"), "--class", "middle")
    assert code == 2


def test_congruences(tbl):
    code, out, _ = _run("congruences", tbl("z6-minus"), "--format", "json")
    rep = json.loads(out)["results"][0]
    assert code == 0 and not rep["simple"]
    assert [[0, 3], [1, 4], [2, 5]] in rep["congruences"]


def test_congruences_text(tbl):
    code, out, _ = _run("congruences", tbl("z7-minus"))
    assert code == 0 and "simple: true" in out


def test_autotopisms(tbl):
    code, out, _ = _run("autotopisms", tbl("z3-minus"), "--format", "json")
    rep = json.loads(out)["results"][0]
    assert code == 0 and rep["autotopisms"] == 18


def test_autotopism_bound(tbl):
    code, _, err = _run("autotopisms", tbl("d8-group"), "--max-order", "6")
    assert code == 1 and "OrderBoundExceeded" in err


def test_search_count():
    code, out, _ = _run("search", "--order", "4", "--require", "leftF")
    assert code == 0
    assert out.splitlines() == ["# order 4, mode count, count 120", "120"]


def test_search_enumerate_prints_loadable_tables():
    from qg.core import load_quasigroup

    code, out, _ = _run("search", "--order", "3", "--require", "idempotent,leftDistributive",
                        "--mode", "enumerate")
    assert code == 0
    body = out.split("# table 1\n", 1)[1]
    assert load_quasigroup(body).mul == ((0, 2, 1), (2, 1, 0), (1, 0, 2))


def test_search_json_modes():
    code, out, _ = _run("search", "--order", "3", "--mode", "first-witness", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["mode"] == "first_witness" and len(rep["tables"]) == 1


def test_search_needs_order():
    assert _run("search")[0] == 2


def test_search_bound():
    code, _, err = _run("search", "--order", "6")
    assert code == 1 and "OrderBoundExceeded" in err


def test_max_order_from_environment(monkeypatch):
    monkeypatch.setenv("QG_MAX_ORDER", "2")
    assert _run("search", "--order", "3")[0] == 1
    monkeypatch.setenv("QG_MAX_ORDER", "many")
    assert _run("search", "--order", "3")[0] == 2


def test_unknown_flag():
    assert _run("search", "--order", "3", "--require", "rightG")[0] == 2


def test_no_command():
    assert _run()[0] == 2


def test_paper_verify():
    code, out, _ = _run("paper-verify")
    assert code == 0
    assert out.rstrip().endswith("0 failed")


def test_paper_verify_json():
    code, out, _ = _run("paper-verify", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["failed"] == 0 and rep["passed"] == len(rep["checks"])


def test_module_entry_point(tbl):
    proc = subprocess.run([sys.executable, "-m", "qg.cli", "congruences", tbl("z3-minus")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "congruences: 2" in proc.stdout
