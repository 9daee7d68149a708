"""Command line behavior: output formats, exit codes, JSON golden files,
batch and stdin plumbing.  Everything runs in-process through main()
except one subprocess smoke test at the end.
"""

import io
import json
import os
import subprocess
import sys

import pytest

from tropmono.cli import main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(argv, capsys):
    rc = main(argv)
    out, err = capsys.readouterr()
    return rc, out, err


# -- factor ---------------------------------------------------------------------

def test_factor_m3_x_letter(capsys):
    rc, out, err = run(["factor", "--monoid", "m3", "-inf 0 5; 0 -inf 0; 0 0 -inf"], capsys)
    assert rc == 0
    assert out == "X(5)\nverified: true\n"


def test_factor_ut_identity_is_empty_word(capsys):
    rc, out, _ = run(["factor", "--monoid", "ut", "0 -inf; -inf 0"], capsys)
    assert rc == 0
    assert out == "ε\nverified: true\n"


def test_factor_m2_dense(capsys):
    rc, out, _ = run(["factor", "--monoid", "m2", "2 5; 1 9"], capsys)
    assert rc == 0
    lines = out.splitlines()
    assert lines[-1] == "verified: true"
    assert set(lines[0].split()) <= {"A", "B", "C", "D"}


def test_factor_bad_token_exits_2(capsys):
    rc, out, err = run(["factor", "--monoid", "m3", "-inf 0 zzz; 0 -inf 0; 0 0 -inf"], capsys)
    assert rc == 2
    assert "error:" in err


def test_factor_membership_violation_exits_3(capsys):
    rc, out, err = run(["factor", "--monoid", "ut", "0 -inf; 5 0"], capsys)
    assert rc == 3
    assert "not upper triangular" in err


def test_factor_gl_rejects_non_invertible(capsys):
    rc, _, err = run(["factor", "--monoid", "gl", "0 0; -inf 0"], capsys)
    assert rc == 3


def test_factor_simplify_flag(capsys):
    rc, out, _ = run(
        ["factor", "--monoid", "u", "--simplify", "0 3 1; -inf 0 -4; -inf -inf 0"], capsys
    )
    assert rc == 0
    assert out.splitlines()[0] == "E(1,3,1) E(2,3,-4) E(1,2,3)"


def test_factor_batch(tmp_path, capsys):
    f = tmp_path / "batch.txt"
    f.write_text("-inf 0 5; 0 -inf 0; 0 0 -inf\n-inf 0 2; 0 -inf 0; 0 0 -inf\n")
    rc, out, _ = run(["factor", "--monoid", "m3", "--batch", str(f)], capsys)
    assert rc == 0
    assert out == "X(5)\nverified: true\nX(2)\nverified: true\n"


def test_factor_batch_json_is_an_array(tmp_path, capsys):
    f = tmp_path / "batch.txt"
    f.write_text("-inf 0 5; 0 -inf 0; 0 0 -inf\n-inf 0 2; 0 -inf 0; 0 0 -inf\n")
    rc, out, _ = run(["factor", "--monoid", "m3", "--batch", str(f), "--json"], capsys)
    assert rc == 0
    payload = json.loads(out)
    assert isinstance(payload, list) and len(payload) == 2
    assert payload[0]["word"] == "X(5)" and payload[1]["word"] == "X(2)"


def test_factor_from_file_with_row_lines(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("-inf 0 5\n0 -inf 0\n0 0 -inf\n")
    rc, out, _ = run(["factor", "--monoid", "m3", "--file", str(f)], capsys)
    assert rc == 0
    assert out.splitlines()[0] == "X(5)"


def test_factor_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("-inf 0 5; 0 -inf 0; 0 0 -inf\n"))
    rc, out, _ = run(["factor", "--monoid", "m3"], capsys)
    assert rc == 0
    assert out.splitlines()[0] == "X(5)"


def test_empty_stdin_exits_2(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(""))
    rc, _, err = run(["factor", "--monoid", "m3"], capsys)
    assert rc == 2


# -- eval / verify -----------------------------------------------------------------

def test_eval_word(capsys):
    rc, out, _ = run(["eval", "--monoid", "u", "-n", "3", "E(1,3,1) E(2,3,-4) E(1,2,3)"], capsys)
    assert rc == 0
    assert out == "0 3 1; -inf 0 -4; -inf -inf 0\n"


def test_eval_epsilon(capsys):
    rc, out, _ = run(["eval", "--monoid", "m3", "ε"], capsys)
    assert rc == 0
    assert out == "0 -inf -inf; -inf 0 -inf; -inf -inf 0\n"


def test_eval_foreign_letter_exits_3(capsys):
    rc, _, err = run(["eval", "--monoid", "u", "-n", "3", "X(5)"], capsys)
    assert rc == 3
    assert "outside the" in err


def test_eval_needs_dimension(capsys):
    rc, _, err = run(["eval", "--monoid", "ut", "Ai(1,1)"], capsys)
    assert rc == 2
    assert "needs an explicit -n" in err


def test_verify_true_false(capsys):
    rc, out, _ = run(
        ["verify", "--monoid", "m3", "X(5)", "-inf 0 5; 0 -inf 0; 0 0 -inf"], capsys
    )
    assert rc == 0 and out == "verified: true\n"
    rc, out, _ = run(
        ["verify", "--monoid", "m3", "X(5)", "-inf 0 4; 0 -inf 0; 0 0 -inf"], capsys
    )
    assert rc == 1 and out == "verified: false\n"


# -- gens / closure / rank / irredundant ----------------------------------------------

def test_gens_ut(capsys):
    rc, out, _ = run(["gens", "--monoid", "ut", "-n", "2"], capsys)
    assert rc == 0
    assert out.splitlines() == [
        "Ai(1,1)",
        "Ai(2,1)",
        "NEG_I",
        "E(1,2,0)",
        "Ai(1,-inf)",
        "Ai(2,-inf)",
        "letters: 6, symbolic: false",
    ]


def test_closure_report(capsys):
    rc, out, _ = run(["closure", "--monoid", "m2", "-n", "2"], capsys)
    assert rc == 0
    assert out == "elements: 16, closed: true\n"


def test_closure_cap_reported_distinctly(capsys):
    rc, out, _ = run(["closure", "--monoid", "m2", "-n", "2", "--cap", "5"], capsys)
    assert rc == 0
    assert "closed: false" in out and "cap 5 reached" in out


def test_closure_from_gens_file(tmp_path, capsys):
    f = tmp_path / "gens.txt"
    f.write_text("1 1; 0 1\n0 0; 0 1\n1 0; 0 0\n")
    rc, out, _ = run(["closure", "--gens-file", str(f)], capsys)
    assert rc == 0
    assert out.startswith("elements:")


def test_closure_jclasses(capsys):
    rc, out, _ = run(["closure", "--monoid", "m2", "-n", "2", "--jclasses"], capsys)
    assert rc == 0
    assert out == "elements: 16, closed: true\njclasses: 4\n"


def test_rank_plain(capsys):
    rc, out, _ = run(["rank", "--monoid", "m2", "-n", "2", "-k", "2"], capsys)
    assert rc == 0
    assert out == "elements: 16\nfound: false\n"
    rc, out, _ = run(["rank", "--monoid", "m2", "-n", "2", "-k", "3"], capsys)
    assert rc == 0
    assert out.splitlines()[1].startswith("found: true, subset:")


def test_irredundant_plain(capsys):
    rc, out, _ = run(["irredundant", "--monoid", "m2", "-n", "2"], capsys)
    assert rc == 0
    assert out.splitlines() == [
        "gen 0: necessary",
        "gen 1: redundant",
        "gen 2: necessary",
        "gen 3: necessary",
    ]


# -- certificates ---------------------------------------------------------------------

def test_certify_prime_x0(capsys):
    rc, out, _ = run(["certify-prime", "0 1 1; 1 0 1; 1 1 0"], capsys)
    assert rc == 0
    assert out == "prime: true\n"


def test_certify_prime_zero_2x2(capsys):
    rc, out, _ = run(["certify-prime", "0 0; 0 0"], capsys)
    assert rc == 0
    assert out == "prime: false\n"


def test_certify_prime_rejects_units(capsys):
    rc, _, err = run(["certify-prime", "1 0; 0 1"], capsys)
    assert rc == 2
    assert "unit" in err


def test_jrel_x(capsys):
    rc, out, _ = run(["jrel-x", "3", "-3"], capsys)
    assert rc == 0 and out == "related: true\n"
    rc, out, _ = run(["jrel-x", "3", "4"], capsys)
    assert rc == 0 and out == "related: false\n"


def test_regular_verdicts(capsys):
    rc, out, _ = run(["regular", "-inf 0 0; 0 -inf 0; 0 0 -inf"], capsys)
    assert rc == 0 and out == "regular: false\n"
    rc, out, _ = run(["regular", "0 0; 0 -inf"], capsys)
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "regular: true"
    assert lines[1].startswith("witness: ")
    assert lines[2] in ("variant: exact", "variant: clamped")


# -- golden JSON ------------------------------------------------------------------------

GOLDEN_CASES = {
    "factor_m3_x5.json": ["factor", "--monoid", "m3", "-inf 0 5; 0 -inf 0; 0 0 -inf", "--json"],
    "factor_ut_identity.json": ["factor", "--monoid", "ut", "0 -inf; -inf 0", "--json"],
    "factor_m2_dense.json": ["factor", "--monoid", "m2", "2 5; 1 9", "--json"],
    "closure_m2_jclasses.json": ["closure", "--monoid", "m2", "-n", "2", "--jclasses", "--json"],
    "regular_e12.json": ["regular", "0 0 -inf; -inf 0 -inf; -inf -inf 0", "--json"],
    "regular_x0.json": ["regular", "-inf 0 0; 0 -inf 0; 0 0 -inf", "--json"],
    "jrel_x_3_m3.json": ["jrel-x", "3", "-3", "--json"],
    "rank_m2_k3.json": ["rank", "--monoid", "m2", "-n", "2", "-k", "3", "--json"],
    "gens_m3.json": ["gens", "--monoid", "m3", "--json"],
    "eval_u_word.json": ["eval", "--monoid", "u", "-n", "3", "E(1,3,1) E(2,3,-4) E(1,2,3)", "--json"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_json_matches_golden(name, capsys):
    rc, out, _ = run(GOLDEN_CASES[name], capsys)
    assert rc == 0
    with open(os.path.join(GOLDEN, name), "r", encoding="utf-8") as fh:
        assert out == fh.read()
    json.loads(out)  # stays parseable, not just byte-stable


# -- subprocess smoke ---------------------------------------------------------------------

def test_subprocess_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tropmono.cli", "factor", "--monoid", "m3",
         "-inf 0 5; 0 -inf 0; 0 0 -inf"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "X(5)\nverified: true\n"
