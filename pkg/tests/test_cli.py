"""End-to-end CLI behavior: exit codes, JSON reports, value parsing."""

import json
from pathlib import Path

import pytest

from bratteli.cli import main, parse_value
from bratteli.diagram import load_diagram
from bratteli.errors import ValueExprError
from bratteli.exactmath import NumberField, Polynomial, isolate_real_roots

DATA = Path(__file__).parent / "data"
EX1 = str(DATA / "example1.json")
N4 = str(DATA / "example3_n4.json")
N5 = str(DATA / "example3_n5.json")
WITNESS = str(DATA / "p_witness.json")
FIB = str(DATA / "fibonacci.json")


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# Value expressions
# ---------------------------------------------------------------------------


def golden_field():
    p = Polynomial([1, -3, 1])
    return NumberField(p, isolate_real_roots(p)[-1])


def test_parse_value_forms():
    f = golden_field()
    lam = f.lam()
    assert parse_value("1/3", f) == f.rational(1) / 3
    assert parse_value("2 - l", f) == f.rational(2) - lam
    assert parse_value("1/4*l^2 + 1/2", f) == lam * lam / 4 + f.rational(1) / 2
    assert parse_value("l^3", f) == lam**3
    assert parse_value("-2/5 + l", f) == lam - f.rational(2) / 5
    assert parse_value("0", f) == f.zero()


@pytest.mark.parametrize("bad", ["", "1//3", "l*2", "x + 1", "1/0", "2 +", "3 4", "^2"])
def test_parse_value_rejects(bad):
    with pytest.raises(ValueExprError):
        parse_value(bad, golden_field())


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def test_analyze_human(capsys):
    assert main(["analyze", EX1]) == 0
    out = capsys.readouterr().out
    assert "2 ergodic measures" in out
    assert "t^2 - 3*t + 1" in out
    assert "good" in out


def test_analyze_json_report(capsys):
    code, rep = run_json(capsys, "analyze", EX1)
    assert code == 0
    assert rep["size"] == 3 and len(rep["classes"]) == 2
    golden, rational = rep["measures"]
    assert golden["lambda"]["minpoly"] == "t^2 - 3*t + 1"
    assert golden["lambda"]["integer"] is None
    assert [e["coeffs"] for e in golden["x"]] == [["3", "-1"], ["-2", "1"]]
    assert golden["goodness"]["good"] is True
    assert golden["quotient_witness"]["prime"] == 2
    assert rational["lambda"]["integer"] == 3
    assert rational["rational"]["q"] == 4
    assert rational["rational"]["bernoulli_type"] is False
    assert rational["quotient_witness"]["prime"] == 5
    assert rational["quotient_witness"]["member"]["member"] is False


def test_analyze_is_deterministic(capsys):
    main(["analyze", EX1, "--json"])
    first = capsys.readouterr().out
    main(["analyze", EX1, "--json"])
    assert capsys.readouterr().out == first


def test_analyze_single_vertex(tmp_path, capsys):
    f = tmp_path / "one.json"
    f.write_text('{"incidence": [[2]]}')
    code, rep = run_json(capsys, "analyze", str(f))
    assert code == 0
    assert len(rep["measures"]) == 1
    m = rep["measures"][0]
    assert m["lambda"]["integer"] == 2 and m["goodness"]["good"] is True


def test_analyze_invalid_file(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"incidence": [[1, -2], [1, 1]]}')
    assert main(["analyze", str(f)]) == 2
    assert "negative" in capsys.readouterr().err


def test_analyze_missing_file(capsys):
    assert main(["analyze", "no-such-file.json"]) == 2
    assert "error" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# member / good
# ---------------------------------------------------------------------------


def test_member_yes(capsys):
    code, rep = run_json(capsys, "member", EX1, "--class", "1", "--value", "1/3")
    assert code == 0
    assert rep["member"] is True and rep["exponent"] == 1 and rep["coords"] == [4]


def test_member_no(capsys):
    code, rep = run_json(capsys, "member", EX1, "--class", "1", "--value", "1/5")
    assert code == 0
    assert rep["member"] is False and rep["reason"] == "orbit-cycled"


def test_member_irrational_value(capsys):
    code, rep = run_json(capsys, "member", EX1, "--class", "0", "--value", "3 - l")
    assert code == 0
    assert rep["member"] is True and rep["exponent"] == 0


def test_member_human(capsys):
    assert main(["member", EX1, "--class", "1", "--value", "1/3"]) == 0
    out = capsys.readouterr().out
    assert "is in" in out and "[4]" in out


def test_member_bad_expr(capsys):
    assert main(["member", EX1, "--class", "1", "--value", "1//3"]) == 2


def test_member_unknown_class(capsys):
    assert main(["member", EX1, "--class", "7", "--value", "1/3"]) == 2
    assert "unknown class" in capsys.readouterr().err


def test_not_distinguished_class(tmp_path, capsys):
    f = tmp_path / "dominated.json"
    f.write_text('{"incidence": [[3, 0], [1, 2]]}')
    assert main(["good", str(f), "--class", "1"]) == 2
    assert "not distinguished" in capsys.readouterr().err


def test_good_negative_certificate(capsys):
    code, rep = run_json(capsys, "good", N4, "--class", "1")
    assert code == 0
    assert rep["good"] is False and rep["residual"] == 3 and rep["witness_vertex"] == 1


def test_good_positive(capsys):
    code, rep = run_json(capsys, "good", N5, "--class", "1")
    assert code == 0
    assert rep["good"] is True and rep["R"] == 1


# ---------------------------------------------------------------------------
# enumerate / equal
# ---------------------------------------------------------------------------


def test_enumerate_level_two(capsys):
    code, rep = run_json(capsys, "enumerate", EX1, "--class", "1", "--level", "2")
    assert code == 0
    assert rep["count"] == 13
    assert rep["values"][0]["expr"] == "0"
    assert rep["values"][-1]["expr"] == "1"


def test_enumerate_budget(capsys):
    assert main(["enumerate", EX1, "--class", "1", "--level", "6",
                 "--enum-budget", "5"]) == 3
    assert "budget" in capsys.readouterr().err.lower()


def test_equal_rational_pair(capsys):
    code, rep = run_json(capsys, "equal", N4, WITNESS,
                         "--class-a", "1", "--class-b", "0")
    assert code == 0
    assert rep["equal"] is True and rep["case"] == "rational"


def test_equal_same_root_pair(capsys):
    code, rep = run_json(capsys, "equal", EX1, FIB, "--class-a", "0", "--class-b", "0")
    assert code == 0
    assert rep["equal"] is True and rep["case"] == "same-root"


def test_equal_mixed_pair(capsys):
    code, rep = run_json(capsys, "equal", EX1, EX1, "--class-a", "0", "--class-b", "1")
    assert code == 0
    assert rep["equal"] is False and rep["case"] == "mixed"


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def test_construct_rational_json(capsys):
    code, rep = run_json(capsys, "construct", "rational", "--q", "4", "--lam", "3")
    assert code == 0
    assert rep["diagram"]["incidence"] == [
        [2, 0, 0, 1],
        [1, 2, 0, 0],
        [0, 1, 2, 0],
        [0, 0, 1, 2],
    ]
    assert rep["verification"]["minimal_components"] == 1
    assert rep["verification"]["goodness"]["good"] is True


def test_construct_rational_size_limit(capsys):
    assert main(["construct", "rational", "--q", "4", "--lam", "3", "--extra", "4"]) == 3


def test_construct_extend_json(capsys):
    code, rep = run_json(capsys, "construct", "extend", FIB, "--class", "0")
    assert code == 0
    assert rep["diagram"]["incidence"] == [[2, 0, 0], [1, 1, 1], [1, 1, 2]]
    assert rep["detail"] == {"M": 1, "R": 1, "N": 0, "c": 2, "u": [1, 1]}
    assert rep["psi_power"] == 1
    # The new feeder vertex is the lone source class; the "+1" lives in the
    # proper count (a simple diagram has no proper minimal components).
    assert rep["verification"]["minimal_components"] == 1
    assert rep["verification"]["proper_minimal_components"] == 1


def test_construct_extend_budget(capsys):
    assert main(["construct", "extend", FIB, "--class", "0", "--max-r", "0"]) == 3


def test_construct_extend_rational_rejected(capsys):
    assert main(["construct", "extend", EX1, "--class", "1"]) == 2
    assert "irrational" in capsys.readouterr().err


def test_construct_simplify_json(capsys):
    code, rep = run_json(capsys, "construct", "simplify", N4, "--class", "1")
    assert code == 0
    assert rep["diagram"]["incidence"] == [[2, 3, 0], [1, 3, 1], [1, 0, 4]]
    assert rep["psi_power"] == 1


def test_construct_out_files(tmp_path, capsys):
    out = tmp_path / "new.json"
    code = main(["construct", "extend", FIB, "--class", "0", "--out", str(out)])
    assert code == 0
    d = load_diagram(out)
    assert d.adjacency == ((2, 1, 1), (0, 1, 1), (0, 1, 2))
    sidecar = tmp_path / "new.verify.json"
    verify = json.loads(sidecar.read_text())
    assert verify["psi_power"] == 1
    assert verify["verification"]["goodness"]["good"] is True
