import json

import pytest

from grasscp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "[x1,x2]", "x1=e{1}", "x2=e{2}", "--m", "2")
    assert code == 0 and out.strip() == "2*e{1,2}"
    code, out, _ = run(capsys, "--unital", "--m", "2", "eval", "x1*x2", "x1=1 + e{1}", "x2=1 + e{2}")
    assert out.strip() == "1 + e{1} + e{2} + e{1,2}"


def test_eval_missing_assignment(capsys):
    code, _, err = run(capsys, "eval", "x1*x2", "x1=e{1}", "--m", "2")
    assert code == 2 and "x2" in err


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "x2*x1")
    assert code == 0 and out.strip() == "x1*x2 - [x1,x2]"
    code, out, _ = run(capsys, "nf", "x2*x1", "--format", "machine")
    assert json.loads(out)["normal_form"] == "x1*x2 - [x1,x2]"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "[x1,x2]", "--m", "4")
    assert code == 0 and "verdict: central" in out
    code, out, _ = run(capsys, "classify", "x1 o x2", "--m", "3", "--nonunital", "--format", "machine")
    assert json.loads(out)["verdict"] == "central"
    code, out, _ = run(capsys, "classify", "x1^3", "--m", "5", "--nonunital", "--char", "3")
    assert "verdict: identity" in out


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "x2", "x1")
    assert code == 0 and "greater" in out and "condition 3" in out
    code, _, _ = run(capsys, "compare", "x1 + x2", "x1")
    assert code == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "cp", "--m", "4", "--unital")
    assert code == 0 and "[x1,x2]" in out
    code, out, _ = run(capsys, "catalog", "t-ideal", "--m", "9", "--nonunital", "--char", "3", "--format", "machine")
    assert "w_1" in [e["label"] for e in json.loads(out)["elements"]]


def test_member(capsys):
    code, out, _ = run(capsys, "member", "[x2,x1]", "--gens", "[x1,x2]", "--m", "3", "--nonunital")
    assert code == 0 and "member" in out
    code, out, _ = run(capsys, "member", "x1*x2", "--gens", "[x1,x2]", "--m", "3", "--nonunital", "--max-degree", "2")
    assert "not-found-within-bound" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "circle-expansion", "--n", "4")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "verify", "handy")
    assert code == 0 and sum(l.startswith("PASS") for l in out.splitlines()) == 10
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2 and "unknown check" in err


def test_usage_errors(capsys):
    assert run(capsys, "nf", "x1 + ")[0] == 2
    assert run(capsys, "classify", "x1")[0] == 2  # --m missing
    assert run(capsys)[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_char_two(capsys):
    code, _, err = run(capsys, "nf", "x1", "--char", "2")
    assert code == 3 and "out of scope" in err
