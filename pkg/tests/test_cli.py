import dataclasses
import io
import json

import pytest

import axialreg.cli as cli
from axialreg.cli import EXIT_CERT, EXIT_INPUT, EXIT_OK, RunConfig, main, run

from conftest import IDEALS


def call(command, name, **kw):
    out, err = io.StringIO(), io.StringIO()
    path = name if name == "-" else str(IDEALS / name)
    code = run(RunConfig(command, path, **kw), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_gb_listing():
    code, out, _ = call("gb", "ci.ideal")
    assert code == EXIT_OK
    assert out.splitlines()[1:4] == ["  x^2 - y^2", "  x*y", "  y^3"]
    assert "initial ideal: (x^2, x*y, y^3)" in out


def test_gb_json():
    code, out, _ = call("gb", "ci.ideal", output="json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["basis"] == ["x^2 - y^2", "x*y", "y^3"]
    assert doc["initial"] == [[2, 0], [1, 1], [0, 3]]


@pytest.mark.parametrize("command", ["gb", "gin", "annihilators", "betti", "invariants"])
def test_verify_passes(command):
    code, _, err = call(command, "ci.ideal", verify=True)
    assert code == EXIT_OK
    assert "verified:" in err


def test_annihilator_table_text():
    _, out, _ = call("annihilators", "ci.ideal")
    rows = out.splitlines()
    assert rows[2].split() == ["1:", "1", "1[c]"]
    assert rows[3].split() == ["2:", "1[ec]", "."]


def test_linear_form_has_single_mark(tmp_path):
    f = tmp_path / "lin.ideal"
    f.write_text("field Q\nvars x1 x2\ngens x1\n")
    out = io.StringIO()
    assert run(RunConfig("annihilators", str(f)), out=out, err=io.StringIO()) == EXIT_OK
    assert out.getvalue().count("[ec]") == 1
    assert "[e]" not in out.getvalue() and "[c]" not in out.getvalue()


def test_unit_ideal_renders_no_entries(tmp_path):
    f = tmp_path / "unit.ideal"
    f.write_text("field Q\nvars x y\ngens 1\n")
    out = io.StringIO()
    assert run(RunConfig("annihilators", str(f)), out=out, err=io.StringIO()) == EXIT_OK
    assert "no entries" in out.getvalue()


def test_invariants_text_for_strongly_stable_example():
    code, out, _ = call("invariants", "stable6.ideal")
    assert code == EXIT_OK
    assert "[ec]" in out and "[c]" in out


def test_invariants_json_roundtrip_and_determinism():
    a = call("invariants", "stable6.ideal", output="json")
    b = call("invariants", "stable6.ideal", output="json")
    assert a == b
    json.loads(a[1])


def test_gin_json_is_stable_across_runs():
    assert call("gin", "ci.ideal", output="json", seed=7) == call("gin", "ci.ideal", output="json", seed=7)
    doc = json.loads(call("gin", "ci.ideal", output="json")[1])
    assert doc["certified"] is True


def test_small_field_warns_but_succeeds():
    code, out, err = call("invariants", "charp.ideal")
    assert code == EXIT_OK
    assert "warning:" in err


def test_betti_needs_strongly_stable_gin():
    code, _, err = call("betti", "charp.ideal")
    assert code == EXIT_INPUT
    assert "strongly stable" in err


def test_betti_table():
    code, out, _ = call("betti", "ci.ideal")
    assert code == EXIT_OK
    assert [r.split() for r in out.splitlines()[1:]] == [["0:", "1", ".", "."], ["1:", ".", "2", "1"], ["2:", ".", "1", "1"]]


def test_powers_text_and_json():
    code, out, _ = call("powers", "sq.ideal", invariant="sreg:2", n_max=4)
    assert code == EXIT_OK
    assert "fit: 2*n + 0 from n=1 (stabilized)" in out
    doc = json.loads(call("powers", "sq.ideal", invariant="sreg:2", n_max=4, output="json")[1])
    assert doc["points"] == [[1, 2], [2, 4], [3, 6], [4, 8]]


def test_powers_with_infinite_values():
    code, out, _ = call("powers", "sq.ideal", invariant="axial:2", n_max=2)
    assert code == EXIT_OK
    assert "inf" in out and "no linear fit" in out


def test_powers_bad_selector():
    assert call("powers", "sq.ideal", invariant="sreg:5", n_max=2)[0] == EXIT_INPUT
    assert call("powers", "sq.ideal", invariant="bogus", n_max=2)[0] == EXIT_INPUT


def test_input_errors(tmp_path, monkeypatch):
    assert call("gb", "missing.ideal")[0] == EXIT_INPUT
    monkeypatch.setattr("sys.stdin", io.StringIO("field Q\nvars x y\ngens x^2 + y\n"))
    code, _, err = call("gin", "-")
    assert code == EXIT_INPUT and "error:" in err
    f = tmp_path / "zero.ideal"
    f.write_text("field Q\nvars x y\ngens 0\n")
    assert run(RunConfig("gin", str(f)), out=io.StringIO(), err=io.StringIO()) == EXIT_INPUT


def test_uncertified_gin_exits_2(monkeypatch):
    real = cli.gin_rev

    def failing(*args, **kw):
        return dataclasses.replace(real(*args, **kw), certified=False, diagnostics=("draws disagree",))

    monkeypatch.setattr(cli, "gin_rev", failing)
    code, _, err = call("gin", "ci.ideal")
    assert code == EXIT_CERT and "could not be certified" in err


def test_uncertified_power_exits_2(monkeypatch):
    import axialreg.asymptotics as asym

    real = asym.gin_rev
    monkeypatch.setattr(asym, "gin_rev", lambda *a, **k: dataclasses.replace(real(*a, **k), certified=False))
    code, out, _ = call("powers", "sq.ideal", n_max=3, output="json")
    assert code == EXIT_CERT
    assert json.loads(out)["truncated"] is True


def test_verification_failure_exits_2(monkeypatch):
    def broken(*args, **kw):
        v = cli.Verification()
        v.expect("hilbert", {"i": 0}, [1], [2])
        return v

    monkeypatch.setattr(cli, "verify_gin", broken)
    code, _, err = call("gin", "ci.ideal", verify=True)
    assert code == EXIT_CERT and "verification failed" in err


def test_main_parses_arguments(capsys):
    assert main(["gb", str(IDEALS / "ci.ideal")]) == EXIT_OK
    assert main(["gin", str(IDEALS / "ci.ideal"), "--trials", "1"]) == EXIT_INPUT
    capsys.readouterr()
    assert main(["powers", str(IDEALS / "sq.ideal"), "--n-max", "2", "--invariant", "regularity", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["points"] == [[1, 2], [2, 4]]
