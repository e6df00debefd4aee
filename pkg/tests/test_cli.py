import json

import pytest

from stratachow.cli import main

from conftest import DATA

LINE = str(DATA / "line.chow")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, text):
    path = tmp_path / "input.chow"
    path.write_text(text)
    return str(path)


SMALL = "ring r\n  var x : 1\n  var y : 1\nideal i in r\n  rel x^2 + x*y\n  rel y^2\nideal e in r\n"


def test_gb(capsys, tmp_path):
    code, out, _ = run(capsys, "--in", write(tmp_path, SMALL), "gb", "--ideal", "i")
    assert code == 0
    assert "y^2" in out and "x^2 + x*y" in out


def test_gb_of_empty_ideal(capsys, tmp_path):
    code, out, _ = run(capsys, "--in", write(tmp_path, SMALL), "--json", "gb", "--ideal", "e")
    assert code == 0
    assert json.loads(out)["basis"] == []


def test_reduce(capsys, tmp_path):
    code, out, _ = run(capsys, "--in", write(tmp_path, SMALL), "reduce", "--ideal", "i", "--poly", "x^3 + y^3")
    assert code == 0
    assert "normal_form: 0" in out


def test_member_json_flag_after_subcommand(capsys, tmp_path):
    code, out, _ = run(capsys, "--in", write(tmp_path, SMALL), "member", "--ideal", "i", "--poly", "x^2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["member_over_Q"] is False
    assert payload["remainder"] != "0"


def test_member_expectation_mismatch_exits_one(capsys, tmp_path):
    path = write(tmp_path, SMALL)
    code, _, _ = run(capsys, "--in", path, "member", "--ideal", "i", "--poly", "x^2", "--expect", "true")
    assert code == 1
    code, _, _ = run(capsys, "--in", path, "member", "--ideal", "i", "--poly", "x^2", "--expect", "false")
    assert code == 0


def test_member_catalog_class(capsys):
    code, out, _ = run(capsys, "member", "--class", "open.z2", "--ideal", "open.p012", "--expect", "false")
    assert code == 0
    assert "member_over_Q: false" in out


def test_ideal_eq(capsys):
    code, out, _ = run(capsys, "--in", LINE, "ideal-eq", "line.expected", "line.expected", "--assert")
    assert code == 0


def test_ideal_eq_assert_fails(capsys, tmp_path):
    code, _, _ = run(capsys, "--in", write(tmp_path, SMALL), "ideal-eq", "i", "e", "--assert")
    assert code == 1


def test_kernel(capsys):
    code, out, _ = run(capsys, "--in", LINE, "--json", "kernel", "--map", "restrict.origin")
    assert code == 0
    assert json.loads(out)["kernel"] in (["a - z"], ["-a + z"])


def test_nzd(capsys):
    code, out, _ = run(capsys, "nzd", "--ideal", "hyper.relations", "--poly", "(2*xi1-lambda1)/3", "--assert")
    assert code == 0


def test_glue_toy_file(capsys):
    code, out, _ = run(capsys, "--in", LINE, "glue", "line", "--compare", "line.expected")
    assert code == 0
    assert "true" in out


def test_reconstruct_printed_data_fails(capsys):
    code, _, err = run(capsys, "reconstruct", "delta1c_as_printed")
    assert code == 1


def test_reconstruct(capsys):
    code, out, _ = run(capsys, "reconstruct", "A3_1")
    assert code == 0


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "relation-audit")
    assert code == 0
    assert "PASS" in out


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2
    assert "stratachow: error:" in err


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert "hyperelliptic.c9" in out


def test_unknown_ideal_is_input_error(capsys):
    code, _, err = run(capsys, "gb", "--ideal", "no.such.ideal")
    assert code == 2


def test_inhomogeneous_file_reports_line(capsys, tmp_path):
    bad = write(tmp_path, "ring r\n  var x : 1\nideal i in r\n  rel x + x^2\n")
    code, _, err = run(capsys, "--in", bad, "gb", "--ideal", "i")
    assert code == 2
    assert "line 4" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "--in", str(tmp_path / "absent.chow"), "catalog", "list")
    assert code == 2


def test_elimination_order_option(capsys, tmp_path):
    text = "ring r\n  var t : 1\n  var x : 1\n  var y : 1\nideal i in r\n  rel x - t\n  rel y - t\n"
    code, out, _ = run(capsys, "--in", write(tmp_path, text), "gb", "--ideal", "i", "--order", "elim:t|x,y")
    assert code == 0
    assert "x - y" in out
