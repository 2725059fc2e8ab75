"""End-to-end tests for the command-line interface."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from linlog.cli import main
from linlog.encodings import church, library, mult_cut, plain_body
from linlog.formula import Var
from linlog.proof import proof_eq
from linlog.rewrite import is_cut_free
from linlog.sexpr import parse_proof, print_proof

A = Var("A")


@pytest.fixture
def church2_file(tmp_path):
    f = tmp_path / "church2.llp"
    f.write_text(print_proof(church(2, A)) + "\n")
    return str(f)


@pytest.fixture
def mult2x2_file(tmp_path):
    f = tmp_path / "mult2x2.llp"
    f.write_text(print_proof(mult_cut(2, 2, A)) + "\n")
    return str(f)


def test_check_prints_the_conclusion_as_json(church2_file, capsys):
    assert main(["check", church2_file]) == 0
    out = capsys.readouterr().out
    assert json.loads(out) == "⊢ !(A -o A) -o (A -o A)"


def test_check_rejects_an_invalid_proof(tmp_path, capsys):
    f = tmp_path / "bad.llp"
    f.write_text("(cut 0 (ax A) (ax B))\n")
    assert main(["check", str(f)]) == 1
    err = capsys.readouterr()
    assert err.out == ""
    assert "invalid proof" in err.err


def test_check_reports_parse_errors(tmp_path, capsys):
    f = tmp_path / "trunc.llp"
    f.write_text("(ax A")
    assert main(["check", str(f)]) == 1
    assert "found end of input" in capsys.readouterr().err


def test_check_reports_missing_files(tmp_path, capsys):
    assert main(["check", str(tmp_path / "nowhere.llp")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_normalize_emits_a_cut_free_proof(mult2x2_file, capsys):
    assert main(["normalize", mult2x2_file]) == 0
    out = capsys.readouterr().out
    result = parse_proof(out)
    assert is_cut_free(result)
    assert proof_eq(parse_proof(print_proof(result)), result)


def test_normalize_trace_streams_step_objects(mult2x2_file, capsys):
    assert main(["normalize", mult2x2_file, "--trace"]) == 0
    lines = capsys.readouterr().out.splitlines()
    steps = []
    while lines and lines[0].startswith("{"):
        steps.append(json.loads(lines.pop(0)))
    assert [s["rule"] for s in steps[:2]] == ["lolli-r-commute", "lolli-l-principal"]
    for prev, nxt in zip(steps, steps[1:]):
        assert prev["sizes"][1] == nxt["sizes"][0]
    assert set(steps[0]) == {"rule", "path", "sizes"}
    # what remains is the proof itself
    assert is_cut_free(parse_proof("\n".join(lines)))


def test_normalize_budget_exhaustion_is_a_domain_error(mult2x2_file, capsys):
    assert main(["normalize", mult2x2_file, "--max-steps", "3"]) == 1
    err = capsys.readouterr()
    assert err.out == ""
    assert "budget" in err.err


def test_nl_evaluates_a_numeral_at_a_matrix_point(church2_file, capsys):
    code = main(
        ["nl", church2_file, "--assign", "A=2", "--point", "[[1/1,1/1],[0/1,1/1]]"]
    )
    assert code == 0
    assert json.loads(capsys.readouterr().out) == "[[1/1,2/1],[0/1,1/1]]"


def test_tangent_evaluates_the_product_rule(church2_file, capsys):
    code = main(
        [
            "tangent",
            church2_file,
            "--assign",
            "A=2",
            "--point",
            "[[1/1,1/1],[0/1,1/1]]",
            "--direction",
            "[[0/1,0/1],[1/1,0/1]]",
        ]
    )
    assert code == 0
    # να + αν at the chosen α, ν
    assert json.loads(capsys.readouterr().out) == "[[1/1,0/1],[2/1,1/1]]"


def test_denote_prints_an_exact_matrix(tmp_path, capsys):
    f = tmp_path / "comp2.llp"
    f.write_text(print_proof(plain_body(2, A)) + "\n")
    assert main(["denote", str(f), "--assign", "A=1"]) == 0
    assert json.loads(capsys.readouterr().out) == "[[1/1]]"


def test_denote_refuses_infinite_spaces(mult2x2_file, capsys):
    assert main(["denote", mult2x2_file, "--assign", "A=1"]) == 1
    assert "finite" in capsys.readouterr().err


def test_encode_round_trips_through_the_parser(capsys):
    assert main(["encode", "church-2"]) == 0
    out = capsys.readouterr().out
    assert proof_eq(parse_proof(out), church(2, A))


def test_encode_knows_every_library_entry(capsys):
    for name in library():
        assert main(["encode", name]) == 0
    capsys.readouterr()


def test_encode_rejects_unknown_names(capsys):
    assert main(["encode", "nothere"]) == 1
    assert "available:" in capsys.readouterr().err


def test_bad_assignment_is_a_usage_error(church2_file, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", church2_file, "--assign", "A=zero"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_output_is_byte_deterministic(mult2x2_file):
    runs = [
        subprocess.run(
            [sys.executable, "-m", "linlog.cli", "normalize", mult2x2_file, "--trace"],
            capture_output=True,
            check=True,
        )
        for _ in range(2)
    ]
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stderr == b""
