"""Text formats: formula grammar, proof s-expressions, JSON interchange.

Formula grammar (whitespace-insensitive, ``;`` comments to end of line)::

    formula := tensor | tensor -o formula        -o is right associative
    tensor  := unary | tensor * unary            *  is left associative
    unary   := ! unary | atom
    atom    := ident | 1 | ( formula ) | ( all ident . formula )

Proof grammar: s-expressions with one keyword per deduction rule::

    (ax F)       (ex I P)       (cut I P P)    (tensor-r P P)
    (tensor-l I P)  (lolli-r P)  (lolli-l I P P)  (prom P)
    (der I P)    (ctr I P)      (weak I F P)   (one-l I P)
    (one-r)      (all-r X P)    (all-l I F W P)

where ``I`` is a context index, ``F`` a formula, ``W`` a witness
formula and ``X`` an identifier.  ``weak`` spells out the inserted
formula and ``all-l`` spells out both the quantified formula and the
witness, since neither is recoverable from the premise alone.

`parse_proof` never runs the rule checker: the tree comes back as
written, with best-effort cached conclusions where a schema does not
fit, and the caller decides what that means (see ``proof.validate``).
All spans are byte offsets into the input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .formula import (
    Bang,
    Forall,
    Formula,
    Lolli,
    One,
    Sequent,
    Tensor,
    Var,
    format_formula,
)
from .proof import (
    Proof,
    ProofError,
    RULE_KEYWORDS,
    mk_axiom,
    mk_ctr,
    mk_cut,
    mk_der,
    mk_exchange,
    mk_forall_l,
    mk_forall_r,
    mk_lolli_l,
    mk_lolli_r,
    mk_one_l,
    mk_one_r,
    mk_prom,
    mk_tensor_l,
    mk_tensor_r,
    mk_weak,
)
from . import proof as _proof


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} (bytes {span.start}..{span.end})")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str  # "(", ")", "!", "*", ".", "-o", "kw", "ident", "num", "eof"
    text: str
    span: SourceSpan


_HYPHEN_KEYWORDS = ("tensor-r", "tensor-l", "lolli-r", "lolli-l", "one-r", "one-l", "all-r", "all-l")

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>;[^\n]*)
      | (?P<kw>(?:%s)(?![A-Za-z0-9_'\-]))
      | (?P<lolli>-o)
      | (?P<num>[0-9]+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
      | (?P<punct>[()!*.])
    """
    % "|".join(_HYPHEN_KEYWORDS),
    re.VERBOSE,
)


def _tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1)
            )
        span = SourceSpan(m.start(), m.end())
        if m.lastgroup == "punct":
            out.append(Token(m.group(), m.group(), span))
        elif m.lastgroup == "lolli":
            out.append(Token("-o", "-o", span))
        elif m.lastgroup in ("kw", "num", "ident"):
            out.append(Token(m.lastgroup, m.group(), span))
        pos = m.end()
    out.append(Token("eof", "", SourceSpan(len(text), len(text))))
    return out


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else f"'{tok.text}'"


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.advance()
        if tok.kind != kind:
            raise ParseError(
                f"expected {what or kind!r}, found {_describe(tok)}", tok.span
            )
        return tok

    def expect_eof(self) -> None:
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input {_describe(tok)}", tok.span)

    # -- formulas ----------------------------------------------------------

    def formula(self) -> Formula:
        left = self.tensor()
        if self.peek().kind == "-o":
            self.advance()
            return Lolli(left, self.formula())
        return left

    def tensor(self) -> Formula:
        left = self.unary()
        while self.peek().kind == "*":
            self.advance()
            left = Tensor(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.peek().kind == "!":
            self.advance()
            return Bang(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.advance()
        if tok.kind == "num":
            if tok.text == "1":
                return One()
            raise ParseError("the only numeric formula is the unit 1", tok.span)
        if tok.kind == "ident":
            if tok.text == "all":
                raise ParseError("'all' is reserved; write (all x. A)", tok.span)
            return Var(tok.text)
        if tok.kind == "(":
            if self.peek().kind == "ident" and self.peek().text == "all":
                self.advance()
                name = self.expect("ident", "a binder name")
                if name.text == "all":
                    raise ParseError("'all' cannot be a binder name", name.span)
                self.expect(".", "'.'")
                body = self.formula()
                self.expect(")", "')'")
                return Forall(name.text, body)
            inner = self.formula()
            self.expect(")", "')'")
            return inner
        raise ParseError(f"expected a formula, found {_describe(tok)}", tok.span)

    # -- proofs ------------------------------------------------------------

    def index(self) -> int:
        tok = self.expect("num", "a context index")
        return int(tok.text)

    def proof(self) -> Proof:
        self.expect("(", "a proof '('")
        tok = self.advance()
        if tok.kind not in ("kw", "ident"):
            raise ParseError(f"expected a rule keyword, found {_describe(tok)}", tok.span)
        kw = tok.text
        if kw == "ax":
            node = mk_axiom(self.formula())  # total
        elif kw == "ex":
            i, p = self.index(), self.proof()
            node = _lenient(lambda: mk_exchange(p, i), _proof.Exchange(i), (p,), _keep)
        elif kw == "cut":
            i, l, r = self.index(), self.proof(), self.proof()
            node = _lenient(lambda: mk_cut(l, r, i), _proof.Cut(i), (l, r), _keep_right)
        elif kw == "tensor-r":
            l, r = self.proof(), self.proof()
            node = mk_tensor_r(l, r)  # total
        elif kw == "tensor-l":
            i, p = self.index(), self.proof()
            node = _lenient(lambda: mk_tensor_l(p, i), _proof.TensorL(i), (p,), _keep)
        elif kw == "lolli-r":
            p = self.proof()
            node = _lenient(lambda: mk_lolli_r(p), _proof.LolliR(), (p,), _keep)
        elif kw == "lolli-l":
            i, l, r = self.index(), self.proof(), self.proof()
            node = _lenient(
                lambda: mk_lolli_l(l, r, i), _proof.LolliL(i), (l, r), _keep_right
            )
        elif kw == "prom":
            p = self.proof()
            node = _lenient(
                lambda: mk_prom(p),
                _proof.Promotion(),
                (p,),
                lambda ps: Sequent(ps[0].conclusion.context, Bang(ps[0].conclusion.conclusion)),
            )
        elif kw == "der":
            i, p = self.index(), self.proof()
            node = _lenient(lambda: mk_der(p, i), _proof.Dereliction(i), (p,), _keep)
        elif kw == "ctr":
            i, p = self.index(), self.proof()
            node = _lenient(lambda: mk_ctr(p, i), _proof.Contraction(i), (p,), _keep)
        elif kw == "weak":
            i, f, p = self.index(), self.formula(), self.proof()
            node = _lenient(
                lambda: mk_weak(p, i, f), _proof.Weakening(i), (p,), _insert_fb(i, f)
            )
        elif kw == "one-l":
            i, p = self.index(), self.proof()
            node = _lenient(lambda: mk_one_l(p, i), _proof.OneL(i), (p,), _keep)
        elif kw == "one-r":
            node = mk_one_r()
        elif kw == "all-r":
            name = self.expect("ident", "a binder name")
            p = self.proof()
            node = _lenient(
                lambda: mk_forall_r(p, name.text),
                _proof.ForallR(),
                (p,),
                lambda ps: Sequent(
                    ps[0].conclusion.context,
                    Forall(name.text, ps[0].conclusion.conclusion),
                ),
            )
        elif kw == "all-l":
            i = self.index()
            quantified = self.formula()
            witness = self.formula()
            p = self.proof()
            node = _lenient(
                lambda: mk_forall_l(p, i, quantified, witness),
                _proof.ForallL(i, witness),
                (p,),
                _replace_fb(i, quantified),
            )
        else:
            raise ParseError(f"unknown rule keyword '{kw}'", tok.span)
        self.expect(")", "')'")
        return node


# Lenient fallbacks: when a rule application does not fit its schema we
# still hand back a tree — with a best-effort conclusion — so that
# validate can point at the offending node instead of parsing dying.


def _lenient(build, rule, premises, fallback):
    try:
        return build()
    except ProofError:
        return Proof(rule, premises, fallback(premises))


def _keep(premises):
    return premises[0].conclusion


def _keep_right(premises):
    return premises[1].conclusion


def _insert_fb(at, f):
    def fb(premises):
        ctx = premises[0].conclusion.context
        ins = min(max(at, 0), len(ctx))
        return Sequent(ctx[:ins] + (f,) + ctx[ins:], premises[0].conclusion.conclusion)

    return fb


def _replace_fb(at, f):
    def fb(premises):
        ctx = premises[0].conclusion.context
        if 0 <= at < len(ctx):
            new_ctx = ctx[:at] + (f,) + ctx[at + 1 :]
        else:
            new_ctx = ctx + (f,)
        return Sequent(new_ctx, premises[0].conclusion.conclusion)

    return fb


# ---------------------------------------------------------------------------
# Entry points


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    out = parser.formula()
    parser.expect_eof()
    return out


def parse_proof(text: str) -> Proof:
    parser = _Parser(text)
    out = parser.proof()
    parser.expect_eof()
    return out


def print_formula(a: Formula) -> str:
    return format_formula(a)


_WIDTH = 72


def _node_args(p: Proof) -> list[str]:
    rule = p.rule
    if isinstance(rule, _proof.Axiom):
        return [format_formula(p.conclusion.conclusion)]
    if isinstance(rule, (_proof.Exchange, _proof.Cut, _proof.TensorL, _proof.LolliL,
                         _proof.Dereliction, _proof.Contraction, _proof.OneL)):
        return [str(rule.at)]
    if isinstance(rule, _proof.Weakening):
        ctx = p.conclusion.context
        if 0 <= rule.at < len(ctx):
            f = ctx[rule.at]
        elif ctx:  # lenient tree: formula was clamped into range
            f = ctx[min(max(rule.at, 0), len(ctx) - 1)]
        else:
            f = One()
        return [str(rule.at), format_formula(f)]
    if isinstance(rule, _proof.ForallR):
        f = p.conclusion.conclusion
        binder = f.binder if isinstance(f, Forall) else "_"
        return [binder]
    if isinstance(rule, _proof.ForallL):
        ctx = p.conclusion.context
        q = ctx[rule.at] if 0 <= rule.at < len(ctx) else One()
        return [str(rule.at), format_formula(q), format_formula(rule.witness)]
    return []


def _inline(p: Proof) -> str:
    parts = [RULE_KEYWORDS[type(p.rule)], *_node_args(p), *map(_inline, p.premises)]
    return "(" + " ".join(parts) + ")"


def _pp(p: Proof, indent: int) -> str:
    inline = _inline(p)
    if not p.premises or indent + len(inline) <= _WIDTH:
        return inline
    head = "(" + " ".join([RULE_KEYWORDS[type(p.rule)], *_node_args(p)])
    pad = " " * (indent + 2)
    lines = [head] + [pad + _pp(q, indent + 2) for q in p.premises]
    return "\n".join(lines) + ")"


def print_proof(p: Proof) -> str:
    """Canonical text for a proof; `parse_proof` is its inverse."""
    return _pp(p, 0)


# ---------------------------------------------------------------------------
# Rational and value literals, JSON interchange


def format_fraction(q: Fraction) -> str:
    """Exact ``p/q`` rendering, denominator always spelled out."""
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or a bare integer."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"bad rational literal {text!r}: {err}") from None


class _ValueLexer:
    """Shared scanner for the small value-literal language used by the
    command line: coordinate lists ``[1/2, 3]``, matrices ``[[..],[..]]``,
    kets ``ket(P; v1, v2)``, sums with ``+`` and rational scaling with
    ``*``."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise ValueError(
                f"expected {ch!r} at offset {self.pos} in value literal {self.text!r}"
            )
        self.pos += 1

    def rational(self) -> Fraction:
        self.skip_ws()
        m = re.match(r"-?[0-9]+(?:/[0-9]+)?", self.text[self.pos :])
        if m is None:
            raise ValueError(
                f"expected a rational at offset {self.pos} in {self.text!r}"
            )
        self.pos += m.end()
        return Fraction(m.group())


@dataclass(frozen=True)
class CoordsLit:
    """A vector ``[a, b, …]`` or matrix ``[[…], […]]`` of exact rationals."""

    rows: tuple
    is_matrix: bool


@dataclass(frozen=True)
class KetLit:
    base: CoordsLit
    args: tuple[CoordsLit, ...]


@dataclass(frozen=True)
class ScalarLit:
    value: Fraction


@dataclass(frozen=True)
class ScaledLit:
    coeff: Fraction
    value: "ValueLit"


@dataclass(frozen=True)
class SumLit:
    terms: tuple["ValueLit", ...]


ValueLit = CoordsLit | KetLit | ScalarLit | ScaledLit | SumLit


def parse_value_literal(text: str) -> ValueLit:
    lexer = _ValueLexer(text)
    out = _value_sum(lexer)
    lexer.skip_ws()
    if lexer.pos != len(lexer.text):
        raise ValueError(f"trailing input in value literal {text!r}")
    return out


def _value_sum(lexer: _ValueLexer) -> ValueLit:
    terms = [_value_term(lexer)]
    while lexer.peek() == "+":
        lexer.eat("+")
        terms.append(_value_term(lexer))
    return terms[0] if len(terms) == 1 else SumLit(tuple(terms))


def _value_term(lexer: _ValueLexer) -> ValueLit:
    ch = lexer.peek()
    if ch == "[":
        return _coords(lexer)
    if ch == "k" and lexer.text[lexer.pos :].lstrip().startswith("ket"):
        lexer.skip_ws()
        lexer.pos += 3
        lexer.eat("(")
        base = _coords(lexer)
        args = []
        while lexer.peek() == ";":
            lexer.eat(";")
            args.append(_coords(lexer))
            while lexer.peek() == ",":
                lexer.eat(",")
                args.append(_coords(lexer))
        lexer.eat(")")
        return KetLit(base, tuple(args))
    coeff = lexer.rational()
    if lexer.peek() == "*":
        lexer.eat("*")
        return ScaledLit(coeff, _value_term(lexer))
    return ScalarLit(coeff)


def _coords(lexer: _ValueLexer) -> CoordsLit:
    lexer.eat("[")
    if lexer.peek() == "[":
        rows = []
        rows.append(_row(lexer))
        while lexer.peek() == ",":
            lexer.eat(",")
            rows.append(_row(lexer))
        lexer.eat("]")
        return CoordsLit(tuple(rows), True)
    entries = [lexer.rational()]
    while lexer.peek() == ",":
        lexer.eat(",")
        entries.append(lexer.rational())
    lexer.eat("]")
    return CoordsLit(tuple(entries), False)


def _row(lexer: _ValueLexer) -> tuple[Fraction, ...]:
    lexer.eat("[")
    entries = [lexer.rational()]
    while lexer.peek() == ",":
        lexer.eat(",")
        entries.append(lexer.rational())
    lexer.eat("]")
    return tuple(entries)


def step_json(rule_id: str, path: tuple[int, ...], size_before: int, size_after: int) -> dict:
    """One trace step in the interchange shape."""
    return {"rule": rule_id, "path": list(path), "sizes": [size_before, size_after]}
