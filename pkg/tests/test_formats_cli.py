import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from doctapprox.cli import main
from doctapprox.formats import (
    ParseError,
    detect_format,
    emit_adoct,
    emit_lgr,
    emit_psi,
    parse_adoct,
    parse_lgr,
    parse_psi,
    parse_vertex_list,
)
from doctapprox.instances import PsiInstance
from doctapprox.perm import LabeledDigraph

FIXTURES = Path(__file__).parent / "fixtures"
TRIANGLE = FIXTURES / "triangle.lgr"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_comments(text):
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    return "\n".join(ln for ln in lines if ln) + "\n"


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*")), ids=lambda p: p.name)
def test_fixture_round_trip(path):
    text = path.read_text()
    if path.suffix == ".lgr":
        D = parse_lgr(text)
        assert parse_lgr(emit_lgr(D)) == D
        assert emit_lgr(parse_lgr(emit_lgr(D))) == emit_lgr(D)
    else:
        inst = parse_adoct(text)
        assert emit_adoct(inst) == strip_comments(text)
        assert parse_adoct(emit_adoct(inst)) == inst


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3).flatmap(lambda ell: st.tuples(
    st.just(ell),
    st.integers(1, 5),
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.permutations(list(range(ell)))), max_size=8),
)))
def test_lgr_round_trip_property(data):
    ell, n, raw = data
    arcs = tuple((u % n, v % n, tuple(p)) for u, v, p in raw)
    D = LabeledDigraph(n, ell, arcs)
    assert set(parse_lgr(emit_lgr(D)).arcs) == set(D.arcs)


def test_psi_round_trip():
    inst = PsiInstance(2, {(0, 1)}, {0: 0, 1: 1, 5: 1}, {(0, 5)})
    assert parse_psi(emit_psi(inst)) == inst
    assert detect_format(emit_psi(inst)) == "psi"


def test_permutation_row_checks():
    ok = "lgr 1\nell 2\nnodes 2\narc 0 1 2 1\n"
    assert parse_lgr(ok).arcs == ((0, 1, (1, 0)),)
    with pytest.raises(ParseError, match="line 4: permutation row 2 2"):
        parse_lgr("lgr 1\nell 2\nnodes 2\narc 0 1 2 2\n")


@pytest.mark.parametrize(
    "text, needle",
    [
        ("lgr 2\nell 1\nnodes 1\n", "line 1: malformed header"),
        ("lgr 1\nell 1\nnodes 2\narc 0 5 1\n", "line 4: vertex id 5 out of range"),
        ("lgr 1\nell 1\nnodes 2\nedge 0 1\n", "line 4: unknown record"),
        ("lgr 1\nell 1\nnodes x\n", "line 3: expected integers"),
        ("adoct 1\nnodes 2\nbudget 1\nnode 0 0\n", "line 4: weight 0 of vertex 0 outside [1,3]"),
        ("adoct 1\nnodes 2\nbudget 1\nnode 0 4\n", "line 4: weight 4"),
        ("adoct 1\nnodes 2\nbudget 1\narc 0 1 2\n", "line 4: arc label 2"),
        ("psi 1\ngnodes 1\nhedge 0 1\n", "line 3: host vertex 0 used before"),
    ],
)
def test_distinct_diagnostics(text, needle):
    with pytest.raises(ParseError) as err:
        (parse_lgr if text.startswith("lgr") else parse_adoct if text.startswith("adoct") else parse_psi)(text)
    assert needle in str(err.value)


def test_vertex_list():
    assert parse_vertex_list("1, 4 7\n# note\n2") == {1, 2, 4, 7}


def test_cli_solve_doct_triangle(capsys):
    code, out, _ = run(capsys, "solve-doct", str(TRIANGLE), "--k", "1", "--mode", "exhaustive", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "Cover" and rep["cover_size"] <= 2
    assert rep["format_version"] == 1


def test_cli_no_within_budget(capsys):
    code, out, _ = run(capsys, "solve-cwc", str(TRIANGLE), "--k", "0", "--mode", "exhaustive")
    assert code == 1 and "verdict: NoWithinBudget" in out


def test_cli_solve_restricted(capsys):
    code, out, _ = run(capsys, "solve-restricted", str(TRIANGLE), "--k", "1", "--mode", "exhaustive", "--anchor", "0")
    assert code == 0 and "cover_size: 1" in out


def test_cli_oracle_mode_needs_solution(capsys):
    code, _, err = run(capsys, "solve-cwc", str(TRIANGLE), "--k", "1", "--mode", "oracle")
    assert code == 2 and "oracle" in err


def test_cli_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.lgr"
    bad.write_text("lgr 1\nell 2\nnodes 2\narc 0 1 2 2\n")
    code, _, err = run(capsys, "solve-cwc", str(bad), "--k", "1", "--mode", "exhaustive")
    assert code == 2 and "line 4" in err


def test_cli_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve-cwc", str(TRIANGLE), "--k", "1"])
    assert exc.value.code == 2


def test_cli_deterministic_reports(capsys):
    args = ("solve-cwc", str(TRIANGLE), "--k", "1", "--mode", "randomized", "--seed", "4", "--json")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second


def test_cli_gen_brute_pipeline():
    gen = subprocess.run(
        [sys.executable, "-m", "doctapprox", "gen", "clock", "--variant", "forward", "--n", "3", "--k", "100"],
        check=True, capture_output=True, text=True,
    )
    brute = subprocess.run(
        [sys.executable, "-m", "doctapprox", "brute", "--max-weight", "40"],
        input=gen.stdout, capture_output=True, text=True,
    )
    assert brute.returncode == 0 and "min_weight: 30" in brute.stdout


def test_cli_witness_and_verify(capsys, tmp_path, monkeypatch):
    psi = tmp_path / "k2.psi"
    psi.write_text("psi 1\ngnodes 2\ngedge 0 1\nhnode 0 0\nhnode 1 0\nhnode 2 1\nhnode 3 1\nhedge 1 3\n")
    inst_out, cover_out = tmp_path / "k2.adoct", tmp_path / "k2.cover"
    code, out, _ = run(
        capsys, "witness-direction1", str(psi), "--instance-out", str(inst_out), "--cover-out", str(cover_out)
    )
    assert code == 0 and "weight: 121" in out
    code, out, _ = run(capsys, "verify-cover", str(inst_out), "--cover-file", str(cover_out))
    assert code == 0 and "verdict: PASS" in out
    code, out, _ = run(capsys, "verify-cover", str(inst_out), "--cover", "0")
    assert code == 1 and "verdict: FAIL" in out


def test_cli_reduce_commands(capsys):
    code, out, _ = run(capsys, "reduce", "doct-to-arc", str(TRIANGLE))
    assert code == 0 and parse_lgr(out).vertex_count == 9
    code, out, _ = run(capsys, "reduce", "arc-to-doct", str(TRIANGLE), "--k", "1")
    assert code == 0 and parse_lgr(out).vertex_count == 12
    code, _, _ = run(capsys, "reduce", "arc-to-doct", str(TRIANGLE))
    assert code == 2


def test_cli_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(TRIANGLE.read_text()))
    code, out, _ = run(capsys, "brute")
    assert code == 0 and "min_weight: 1" in out
