import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import polys, signatures
from starred.ambient import AmbientPoly
from starred.cli import main
from starred.core import HRational, Signature
from starred.reduced import ReducedPoly, Y, Z
from starred.serialize import DocumentError, dumps, from_document, loads, to_document, validate_report

S11, S12 = Signature(1, 1), Signature(1, 2)


def write(tmp_path, name, poly):
    p = tmp_path / name
    p.write_text(dumps(poly))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- serialization ---------------------------------------------------------------


@given(st.data())
def test_document_round_trip(data):
    sig = data.draw(signatures(max_n=3))
    ambient = data.draw(st.booleans())
    f = data.draw(polys(sig, ambient=ambient))
    assert from_document(to_document(f)) == f
    assert loads(dumps(f)) == f
    assert dumps(loads(dumps(f))) == dumps(f)


def test_symbolic_round_trip():
    h = HRational.hbar()
    f = Z(S12, (1,), (1,), (1 - h) / (1 - 2 * h)) + Z(S12, (0,), (0,), h * h)
    doc = to_document(f)
    assert doc["coeff_mode"] == "hbar_rational"
    assert from_document(doc) == f


@pytest.mark.parametrize(
    "doc",
    [
        {"n": 1, "s": 3, "basis": "fundamental", "coeff_mode": "gaussian", "terms": []},
        {"n": 1, "s": 1, "basis": "fundamental", "coeff_mode": "gaussian",
         "terms": [{"P": [1, 0], "Q": [0], "re": "1", "im": "0"}]},
        {"n": 1, "s": 1, "basis": "ambient", "coeff_mode": "gaussian",
         "terms": [{"P": [1], "Q": [0], "re": "1", "im": "0"}]},
        {"n": 1, "s": 1, "basis": "fundamental", "coeff_mode": "gaussian",
         "terms": [{"P": [1], "Q": [0], "re": "x", "im": "0"}]},
        {"n": 1, "s": 1, "basis": "weird", "coeff_mode": "gaussian", "terms": []},
    ],
)
def test_invalid_documents(doc):
    with pytest.raises(DocumentError):
        from_document(doc)


# -- star ------------------------------------------------------------------------


def test_defect_script(tmp_path, capsys):
    E = [(1, 0), (0, 1)]
    files = []
    for i in E:
        for j in E:
            files.append(write(tmp_path, f"a{i}{j}.json", Y(S12, j, i)))
            files.append(write(tmp_path, f"b{i}{j}.json", Y(S12, i, j)))
    code, out, _ = run(capsys, "star", *files, "--json")
    assert code == 0
    assert from_document(json.loads(out)) == ReducedPoly.constant(S12, 1 + HRational.hbar())
    code, out, _ = run(capsys, "star", *files, "--hbar", "-2")
    assert code == 0 and out.strip() == "-Z[[0],[0]]"


def test_unit_star_is_byte_identical(tmp_path, capsys):
    f = Z(S12, (2,), (1,), "3/2-i") + Z(S12, (0,), (3,), 5)
    one = write(tmp_path, "one.json", ReducedPoly.constant(S12))
    ff = write(tmp_path, "f.json", f)
    run(capsys, "star", one, ff, "--json", "--hbar", "-1/2")
    code, out, _ = run(capsys, "star", one, ff, "--json", "--hbar", "-1/2")
    assert code == 0
    assert json.dumps(json.loads(out), sort_keys=True) == json.dumps(to_document(f), sort_keys=True)


def test_exit_codes(tmp_path, capsys):
    a = write(tmp_path, "a.json", Z(S12, (1,), (0,)))
    b = write(tmp_path, "b.json", Z(S12, (0,), (1,)))
    c = write(tmp_path, "c.json", Z(S11, (0,), (1,)))
    amb = write(tmp_path, "amb.json", AmbientPoly.constant(S12))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "star", a, b, "--hbar", "1/3")[0] == 3
    assert run(capsys, "star", a, b, "--hbar", "1")[0] == 3
    assert run(capsys, "star", a, c)[0] == 4
    assert run(capsys, "star", a, amb)[0] == 4
    assert run(capsys, "star", a, str(bad))[0] == 2
    assert run(capsys, "star", a)[0] == 2
    assert run(capsys, "star", a, b, "--hbar", "abc")[0] == 2
    assert run(capsys, "star", a, str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert run(capsys, "star", a, b, "--hbar", "2/3")[0] == 0


def test_bracket_and_pointwise(tmp_path, capsys):
    a = write(tmp_path, "a.json", Z(S12, (0,), (1,)))
    b = write(tmp_path, "b.json", Z(S12, (1,), (0,)))
    code, out, _ = run(capsys, "bracket", a, b, "--json")
    assert from_document(json.loads(out)) == ReducedPoly.constant(S12, "-i") + Z(S12, (1,), (1,), "2i")
    code, out, _ = run(capsys, "pointwise", a, b, "--json")
    assert from_document(json.loads(out)) == Z(S12, (1,), (1,)) - Z(S12, (2,), (2,))


def test_misc_examples(tmp_path, capsys):
    y = write(tmp_path, "y.json", AmbientPoly.monomial(S12, (1, 1), (1, 1)))
    code, out, _ = run(capsys, "to-fundamental", y, "--json")
    assert code == 0 and from_document(json.loads(out)) == Z(S12, (1,), (1,)) - Z(S12, (2,), (2,))

    z = write(tmp_path, "z.json", Z(S11, (1,), (1,)))
    code, out, _ = run(capsys, "wick-rotate", z, "--json")
    doc = json.loads(out)
    assert doc["s"] == 2 and from_document(doc) == Z(S12, (1,), (1,), -1)

    code, out, _ = run(capsys, "eval", z, "--point", "0.5")
    assert code == 0 and float(out) == pytest.approx(1 / 3, abs=1e-14)
    assert run(capsys, "eval", z, "--point", "1,0")[0] == 2

    code, out, _ = run(capsys, "seminorm", write(tmp_path, "s.json", Z(S12, (2,), (1,))), "--r", "3")
    assert out.strip() == "27"

    p = write(tmp_path, "p.json", Z(S12, (2,), (1,), 2) + Z(S12, (0,), (1,), "-i"))
    code, out, _ = run(capsys, "coeffs-contour", p, "--json", "--threshold", "1e-6")
    rows = {(tuple(r["P"]), tuple(r["Q"])): complex(r["re"], r["im"]) for r in json.loads(out)}
    assert set(rows) == {((2,), (1,)), ((0,), (1,))}
    assert abs(rows[((2,), (1,))] - 2) < 1e-8 and abs(rows[((0,), (1,))] + 1j) < 1e-8
    assert run(capsys, "coeffs-contour", p, "--radius", "2")[0] == 2


def test_stdin_input(tmp_path):
    doc = dumps(Z(S11, (1,), (1,)))
    res = subprocess.run(
        [sys.executable, "-m", "starred", "eval", "--point", "0.5"],
        input=doc, capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and float(res.stdout) == pytest.approx(1 / 3)


# -- verify -----------------------------------------------------------------------


def test_verify_falling_rising(capsys):
    code, out, _ = run(capsys, "verify", "falling-rising", "--k", "5", "--order", "10", "--json")
    report = json.loads(out)
    validate_report(report)
    assert code == 0 and report["passed"] and not report["failures"]


def test_verify_positivity_witness(capsys):
    code, out, _ = run(capsys, "verify", "positivity", "--n", "1", "--s", "2", "--hbar", "-2", "--json")
    report = json.loads(out)
    validate_report(report)
    assert code == 0
    witness = [note for note in report["notes"] if isinstance(note, dict) and "witness" in note]
    assert witness and witness[0]["value"] == "-1" and witness[0]["expected_negative"]


def test_verify_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "verify", "jacobi", "--n", "1", "--s", "1", "--cases", "5", "--seed", "9", "--json")
        rep = json.loads(out)
        rep.pop("wall_time")
        outs.append(rep)
    assert outs[0] == outs[1]
