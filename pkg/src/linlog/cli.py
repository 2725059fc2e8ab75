"""Command-line surface: check, normalize, denote, nl, tangent, encode.

Machine output (JSON values or a proof s-expression) goes to stdout;
every diagnostic goes to stderr.  Exit codes: 0 on success, 1 on a
domain error (unparseable or invalid input, failed evaluation, budget
exhaustion), 2 on a usage error.  Identical inputs and flags produce
byte-identical output: the rewrite strategy is fixed and every
pseudorandom choice hangs off an explicit seed flag.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .encodings import library
from .formula import format_sequent
from .proof import Proof, ProofError, validate
from .rewrite import DEFAULT_MAX_STEPS, normalize
from .semantics import (
    SemanticsError,
    den_matrix,
    nl,
    tangent,
    value_literal,
)
from .sexpr import (
    CoordsLit,
    ParseError,
    format_fraction,
    parse_proof,
    parse_value_literal,
    print_proof,
    step_json,
)


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="linlog",
        description="Proof checking, cut elimination, and exact denotations "
        "for intuitionistic linear logic.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_file: bool = True) -> None:
        if with_file:
            p.add_argument("file", help="proof file (.llp s-expression)")
        p.add_argument(
            "--assign",
            action="append",
            default=[],
            metavar="VAR=DIM",
            help="assign a dimension to a base-type variable (repeatable)",
        )
        p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS, metavar="N")
        p.add_argument("--probe-depth", type=int, default=2, metavar="D")
        p.add_argument("--seed", type=int, default=0, metavar="S")

    common(sub.add_parser("check", help="validate a proof and print its conclusion"))

    p_norm = sub.add_parser("normalize", help="run cut elimination to a normal form")
    common(p_norm)
    p_norm.add_argument(
        "--trace",
        action="store_true",
        help="stream one JSON object per rewrite step before the output proof",
    )

    common(sub.add_parser("denote", help="print the denotation as an exact matrix"))

    p_nl = sub.add_parser("nl", help="evaluate the nonlinear denotation at a point")
    common(p_nl)
    p_nl.add_argument("--point", required=True, help='e.g. "[[1/1,1/1],[0/1,1/1]]"')

    p_tan = sub.add_parser("tangent", help="evaluate the differential at a point")
    common(p_tan)
    p_tan.add_argument("--point", required=True, help="base point matrix")
    p_tan.add_argument("--direction", required=True, help="tangent direction matrix")

    p_enc = sub.add_parser("encode", help="print a library encoding as a proof")
    p_enc.add_argument("name", help="encoding name, e.g. church-2, add, mult-2")
    return top


def _parse_assignment(pairs: list[str]) -> dict[str, int]:
    asg: dict[str, int] = {}
    for item in pairs:
        name, eq, dim = item.partition("=")
        if not eq or not name or not dim.isdigit() or int(dim) <= 0:
            raise UsageError(f"bad --assign (want VAR=DIM with DIM >= 1): {item!r}")
        asg[name] = int(dim)
    return asg


def _load_proof(path: str) -> Proof:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SystemExit(_domain_error(f"cannot read {path}: {e.strerror}"))
    p = parse_proof(text)
    problems = validate(p)
    if problems:
        where, msg = problems[0]
        raise SystemExit(_domain_error(f"invalid proof at node {list(where)}: {msg}"))
    return p


def _domain_error(msg: str) -> int:
    print(f"linlog: {msg}", file=sys.stderr)
    return 1


def _parse_point(text: str) -> object:
    try:
        lit = parse_value_literal(text)
    except (ValueError, ParseError) as e:
        raise UsageError(f"bad point literal {text!r}: {e}") from None
    if not isinstance(lit, CoordsLit):
        raise UsageError(f"expected a vector or matrix of rationals: {text!r}")
    return lit.rows


def _cmd_check(args: argparse.Namespace) -> int:
    p = _load_proof(args.file)
    print(json.dumps(format_sequent(p.conclusion), ensure_ascii=False))
    return 0


def _cmd_normalize(args: argparse.Namespace) -> int:
    p = _load_proof(args.file)
    res = normalize(p, max_steps=args.max_steps)
    if args.trace:
        for s in res.trace.steps:
            print(json.dumps(step_json(s.rule_id, s.path, s.size_before, s.size_after)))
    if res.exhausted:
        return _domain_error(
            f"normalization ran out of budget after {args.max_steps} steps"
        )
    print(print_proof(res.proof))
    return 0


def _cmd_denote(args: argparse.Namespace, asg: dict[str, int]) -> int:
    p = _load_proof(args.file)
    rows = den_matrix(p, asg)
    text = "[" + ",".join(
        "[" + ",".join(format_fraction(c) for c in row) + "]" for row in rows
    ) + "]"
    print(json.dumps(text))
    return 0


def _cmd_nl(args: argparse.Namespace, asg: dict[str, int]) -> int:
    p = _load_proof(args.file)
    point = _parse_point(args.point)
    print(json.dumps(value_literal(nl(p, point, asg))))
    return 0


def _cmd_tangent(args: argparse.Namespace, asg: dict[str, int]) -> int:
    p = _load_proof(args.file)
    base = _parse_point(args.point)
    direction = _parse_point(args.direction)
    print(json.dumps(value_literal(tangent(p, base, direction, asg))))
    return 0


def _cmd_encode(args: argparse.Namespace) -> int:
    lib = library()
    if args.name not in lib:
        return _domain_error(
            f"unknown encoding {args.name!r}; available: {', '.join(sorted(lib))}"
        )
    print(print_proof(lib[args.name]))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "encode":
            return _cmd_encode(args)
        asg = _parse_assignment(args.assign)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "normalize":
            return _cmd_normalize(args)
        if args.command == "denote":
            return _cmd_denote(args, asg)
        if args.command == "nl":
            return _cmd_nl(args, asg)
        if args.command == "tangent":
            return _cmd_tangent(args, asg)
        raise AssertionError(f"unroutable command {args.command}")
    except UsageError as e:
        parser.error(str(e))  # exits 2
        return 2
    except SystemExit as e:
        code = e.code
        return code if isinstance(code, int) else 1
    except (ParseError, ProofError, SemanticsError) as e:
        return _domain_error(str(e))


if __name__ == "__main__":
    sys.exit(main())
