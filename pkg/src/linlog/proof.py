"""Proof trees and the deduction-rule checker.

A proof is a rooted tree of rule applications.  Each node caches its
conclusion sequent; :func:`validate` recomputes every conclusion
bottom-up from the rule schemas and reports the nodes whose cache does
not match.  The ``mk_*`` constructors are the strict face of the same
schemas: they raise :class:`ProofError` instead of building an invalid
node, so a tree assembled purely from constructors always validates.

Hypothesis positions are explicit.  Every rule that touches the context
carries the index ``at`` of the formula it touches, counting from zero
at the left end.  For the two-premise rules ``cut`` and ``lolli_l`` the
index locates the consumed formula in the *right* premise's context,
mirroring how the rules are written::

    Γ ⊢ A    Δ′, A, Δ ⊢ B                Γ ⊢ A    Δ′, B, Δ ⊢ C
    ---------------------- cut          -------------------------- lolli_l
        Δ′, Γ, Δ ⊢ B                     Δ′, Γ, A -o B, Δ ⊢ C

with ``at`` = the position of A (resp. B) in the right premise, i.e.
the length of Δ′.  In the ``lolli_l`` conclusion the new implication
therefore sits at position ``at + len(Γ)``.

Comparisons of formulas inside schemas are alpha-equality throughout,
so validity is stable under renaming of bound type variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .formula import (
    Bang,
    Forall,
    Formula,
    Lolli,
    One,
    Sequent,
    Tensor,
    Var,
    alpha_eq,
    alpha_eq_under,
    format_formula,
    format_sequent,
    free_vars,
    fresh_name,
    sequent_alpha_eq,
    sequent_free_vars,
    substitute,
)


class ProofError(Exception):
    """A rule application that does not fit its schema."""


# ---------------------------------------------------------------------------
# Rule tags


@dataclass(frozen=True)
class Axiom:
    pass


@dataclass(frozen=True)
class Exchange:
    at: int


@dataclass(frozen=True)
class Cut:
    at: int


@dataclass(frozen=True)
class TensorR:
    pass


@dataclass(frozen=True)
class TensorL:
    at: int


@dataclass(frozen=True)
class LolliR:
    pass


@dataclass(frozen=True)
class LolliL:
    at: int


@dataclass(frozen=True)
class Promotion:
    pass


@dataclass(frozen=True)
class Dereliction:
    at: int


@dataclass(frozen=True)
class Contraction:
    at: int


@dataclass(frozen=True)
class Weakening:
    at: int


@dataclass(frozen=True)
class OneL:
    at: int


@dataclass(frozen=True)
class OneR:
    pass


@dataclass(frozen=True)
class ForallR:
    pass


@dataclass(frozen=True)
class ForallL:
    at: int
    witness: Formula


RuleTag = (
    Axiom
    | Exchange
    | Cut
    | TensorR
    | TensorL
    | LolliR
    | LolliL
    | Promotion
    | Dereliction
    | Contraction
    | Weakening
    | OneL
    | OneR
    | ForallR
    | ForallL
)

RULE_KEYWORDS: dict[type, str] = {
    Axiom: "ax",
    Exchange: "ex",
    Cut: "cut",
    TensorR: "tensor-r",
    TensorL: "tensor-l",
    LolliR: "lolli-r",
    LolliL: "lolli-l",
    Promotion: "prom",
    Dereliction: "der",
    Contraction: "ctr",
    Weakening: "weak",
    OneL: "one-l",
    OneR: "one-r",
    ForallR: "all-r",
    ForallL: "all-l",
}

_TWO_PREMISE = (Cut, TensorR, LolliL)
_ZERO_PREMISE = (Axiom, OneR)


def rule_arity(rule: RuleTag) -> int:
    if isinstance(rule, _ZERO_PREMISE):
        return 0
    if isinstance(rule, _TWO_PREMISE):
        return 2
    return 1


# ---------------------------------------------------------------------------
# Proof nodes


@dataclass(frozen=True, repr=False, eq=False)
class Proof:
    """One rule application; ``conclusion`` is cached and revalidated."""

    rule: RuleTag
    premises: tuple[Proof, ...]
    conclusion: Sequent
    size: int = field(init=False, compare=False)
    cut_count: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", 1 + sum(p.size for p in self.premises))
        object.__setattr__(
            self,
            "cut_count",
            (1 if isinstance(self.rule, Cut) else 0)
            + sum(p.cut_count for p in self.premises),
        )
        # premise hashes are already cached, so this is O(1) amortized
        object.__setattr__(
            self, "_hash", hash((self.rule, self.premises, self.conclusion))
        )

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Proof):
            return NotImplemented
        if self._hash != other._hash:  # type: ignore[attr-defined]
            return False
        return (
            self.rule == other.rule
            and self.premises == other.premises
            and self.conclusion == other.conclusion
        )

    def __repr__(self) -> str:
        kw = RULE_KEYWORDS[type(self.rule)]
        return f"<{kw} proof of {format_sequent(self.conclusion)}; {self.size} nodes>"


def conclusion(p: Proof) -> Sequent:
    """The root sequent of a validated proof."""
    return p.conclusion


# ---------------------------------------------------------------------------
# Rule schemas

def _rule_conclusion(
    rule: RuleTag,
    premises: tuple[Sequent, ...],
    *,
    axiom_formula: Formula | None = None,
    weakened: Formula | None = None,
    binder: str | None = None,
    quantified: Formula | None = None,
) -> Sequent:
    """Apply ``rule`` to premise sequents, raising ProofError on misuse.

    The keyword arguments supply the data that lives in the conclusion
    rather than in the premises (the axiom's formula, the weakened
    formula, the quantifier binder, the quantified formula).
    """
    want = rule_arity(rule)
    if len(premises) != want:
        raise ProofError(
            f"{RULE_KEYWORDS[type(rule)]} takes {want} premise(s), got {len(premises)}"
        )

    if isinstance(rule, Axiom):
        if axiom_formula is None:
            raise ProofError("axiom needs its formula")
        return Sequent((axiom_formula,), axiom_formula)

    if isinstance(rule, OneR):
        return Sequent((), One())

    if isinstance(rule, Exchange):
        (s,) = premises
        ctx = s.context
        if not 0 <= rule.at <= len(ctx) - 2:
            raise ProofError(
                f"exchange at {rule.at} needs adjacent formulas; context has {len(ctx)}"
            )
        swapped = (
            ctx[: rule.at] + (ctx[rule.at + 1], ctx[rule.at]) + ctx[rule.at + 2 :]
        )
        return Sequent(swapped, s.conclusion)

    if isinstance(rule, Cut):
        left, right = premises
        ctx = right.context
        if not 0 <= rule.at < len(ctx):
            raise ProofError(
                f"cut at {rule.at} outside right context of length {len(ctx)}"
            )
        if not alpha_eq(ctx[rule.at], left.conclusion):
            raise ProofError(
                f"cut formula mismatch: left proves {format_formula(left.conclusion)}, "
                f"right expects {format_formula(ctx[rule.at])} at {rule.at}"
            )
        return Sequent(
            ctx[: rule.at] + left.context + ctx[rule.at + 1 :], right.conclusion
        )

    if isinstance(rule, TensorR):
        left, right = premises
        return Sequent(
            left.context + right.context, Tensor(left.conclusion, right.conclusion)
        )

    if isinstance(rule, TensorL):
        (s,) = premises
        ctx = s.context
        if not 0 <= rule.at <= len(ctx) - 2:
            raise ProofError(
                f"tensor-l at {rule.at} needs two adjacent formulas; context has {len(ctx)}"
            )
        merged = Tensor(ctx[rule.at], ctx[rule.at + 1])
        return Sequent(
            ctx[: rule.at] + (merged,) + ctx[rule.at + 2 :], s.conclusion
        )

    if isinstance(rule, LolliR):
        (s,) = premises
        if not s.context:
            raise ProofError("lolli-r needs a leading hypothesis to abstract")
        return Sequent(s.context[1:], Lolli(s.context[0], s.conclusion))

    if isinstance(rule, LolliL):
        left, right = premises
        ctx = right.context
        if not 0 <= rule.at < len(ctx):
            raise ProofError(
                f"lolli-l at {rule.at} outside right context of length {len(ctx)}"
            )
        principal = Lolli(left.conclusion, ctx[rule.at])
        return Sequent(
            ctx[: rule.at] + left.context + (principal,) + ctx[rule.at + 1 :],
            right.conclusion,
        )

    if isinstance(rule, Promotion):
        (s,) = premises
        for i, f in enumerate(s.context):
            if not isinstance(f, Bang):
                raise ProofError(
                    f"promotion premise hypothesis {i} is {format_formula(f)}, not banged"
                )
        return Sequent(s.context, Bang(s.conclusion))

    if isinstance(rule, Dereliction):
        (s,) = premises
        ctx = s.context
        if not 0 <= rule.at < len(ctx):
            raise ProofError(
                f"dereliction at {rule.at} outside context of length {len(ctx)}"
            )
        return Sequent(
            ctx[: rule.at] + (Bang(ctx[rule.at]),) + ctx[rule.at + 1 :], s.conclusion
        )

    if isinstance(rule, Contraction):
        (s,) = premises
        ctx = s.context
        if not 0 <= rule.at <= len(ctx) - 2:
            raise ProofError(
                f"contraction at {rule.at} needs two adjacent copies; context has {len(ctx)}"
            )
        a, b = ctx[rule.at], ctx[rule.at + 1]
        if not isinstance(a, Bang):
            raise ProofError(f"contraction of {format_formula(a)}: not banged")
        if not alpha_eq(a, b):
            raise ProofError(
                f"contraction needs equal copies, got {format_formula(a)} and {format_formula(b)}"
            )
        return Sequent(ctx[: rule.at + 1] + ctx[rule.at + 2 :], s.conclusion)

    if isinstance(rule, Weakening):
        (s,) = premises
        if weakened is None:
            raise ProofError("weakening needs the formula to insert")
        if not isinstance(weakened, Bang):
            raise ProofError(
                f"weakening of {format_formula(weakened)}: not banged"
            )
        ctx = s.context
        if not 0 <= rule.at <= len(ctx):
            raise ProofError(
                f"weakening at {rule.at} outside insertion range 0..{len(ctx)}"
            )
        return Sequent(
            ctx[: rule.at] + (weakened,) + ctx[rule.at :], s.conclusion
        )

    if isinstance(rule, OneL):
        (s,) = premises
        ctx = s.context
        if not 0 <= rule.at <= len(ctx):
            raise ProofError(
                f"one-l at {rule.at} outside insertion range 0..{len(ctx)}"
            )
        return Sequent(ctx[: rule.at] + (One(),) + ctx[rule.at :], s.conclusion)

    if isinstance(rule, ForallR):
        (s,) = premises
        if binder is None:
            raise ProofError("all-r needs its binder")
        for i, f in enumerate(s.context):
            if binder in free_vars(f):
                raise ProofError(
                    f"all-r binder {binder} occurs free in hypothesis {i} "
                    f"({format_formula(f)})"
                )
        return Sequent(s.context, Forall(binder, s.conclusion))

    if isinstance(rule, ForallL):
        (s,) = premises
        if quantified is None:
            raise ProofError("all-l needs the quantified formula")
        if not isinstance(quantified, Forall):
            raise ProofError(
                f"all-l principal formula {format_formula(quantified)} is not quantified"
            )
        ctx = s.context
        if not 0 <= rule.at < len(ctx):
            raise ProofError(
                f"all-l at {rule.at} outside context of length {len(ctx)}"
            )
        expected = substitute(quantified.body, quantified.binder, rule.witness)
        if not alpha_eq(ctx[rule.at], expected):
            raise ProofError(
                f"all-l instance mismatch: premise has {format_formula(ctx[rule.at])}, "
                f"expected {format_formula(expected)}"
            )
        return Sequent(
            ctx[: rule.at] + (quantified,) + ctx[rule.at + 1 :], s.conclusion
        )

    raise ProofError(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# Strict constructors


def _premise_sequents(premises: tuple[Proof, ...]) -> tuple[Sequent, ...]:
    return tuple(p.conclusion for p in premises)


def mk_axiom(a: Formula) -> Proof:
    rule = Axiom()
    return Proof(rule, (), _rule_conclusion(rule, (), axiom_formula=a))


def mk_exchange(p: Proof, at: int) -> Proof:
    rule = Exchange(at)
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,)))


def mk_cut(left: Proof, right: Proof, at: int) -> Proof:
    rule = Cut(at)
    return Proof(
        rule, (left, right), _rule_conclusion(rule, (left.conclusion, right.conclusion))
    )


def mk_tensor_r(left: Proof, right: Proof) -> Proof:
    rule = TensorR()
    return Proof(
        rule, (left, right), _rule_conclusion(rule, (left.conclusion, right.conclusion))
    )


def mk_tensor_l(p: Proof, at: int) -> Proof:
    rule = TensorL(at)
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,)))


def mk_lolli_r(p: Proof) -> Proof:
    rule = LolliR()
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,)))


def mk_lolli_l(left: Proof, right: Proof, at: int) -> Proof:
    rule = LolliL(at)
    return Proof(
        rule, (left, right), _rule_conclusion(rule, (left.conclusion, right.conclusion))
    )


def mk_prom(p: Proof) -> Proof:
    rule = Promotion()
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,)))


def mk_der(p: Proof, at: int) -> Proof:
    rule = Dereliction(at)
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,)))


def mk_ctr(p: Proof, at: int) -> Proof:
    rule = Contraction(at)
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,)))


def mk_weak(p: Proof, at: int, banged: Formula) -> Proof:
    rule = Weakening(at)
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,), weakened=banged))


def mk_one_l(p: Proof, at: int) -> Proof:
    rule = OneL(at)
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,)))


def mk_one_r() -> Proof:
    rule = OneR()
    return Proof(rule, (), _rule_conclusion(rule, ()))


def mk_forall_r(p: Proof, binder: str) -> Proof:
    rule = ForallR()
    return Proof(rule, (p,), _rule_conclusion(rule, (p.conclusion,), binder=binder))


def mk_forall_l(p: Proof, at: int, quantified: Formula, witness: Formula) -> Proof:
    rule = ForallL(at, witness)
    return Proof(
        rule, (p,), _rule_conclusion(rule, (p.conclusion,), quantified=quantified)
    )


# ---------------------------------------------------------------------------
# Validation


def _node_violation(p: Proof) -> str | None:
    """The schema complaint for this node alone, or None if it fits."""
    rule = p.rule
    hints: dict = {}
    if isinstance(rule, Axiom):
        hints["axiom_formula"] = p.conclusion.conclusion
    elif isinstance(rule, Weakening):
        ctx = p.conclusion.context
        if not 0 <= rule.at < len(ctx):
            return f"weakening index {rule.at} outside conclusion context of length {len(ctx)}"
        hints["weakened"] = ctx[rule.at]
    elif isinstance(rule, ForallR):
        f = p.conclusion.conclusion
        if not isinstance(f, Forall):
            return "all-r conclusion is not a quantified formula"
        hints["binder"] = f.binder
    elif isinstance(rule, ForallL):
        ctx = p.conclusion.context
        if not 0 <= rule.at < len(ctx):
            return f"all-l index {rule.at} outside conclusion context of length {len(ctx)}"
        hints["quantified"] = ctx[rule.at]
    try:
        expected = _rule_conclusion(rule, _premise_sequents(p.premises), **hints)
    except ProofError as err:
        return str(err)
    if not sequent_alpha_eq(expected, p.conclusion):
        return (
            f"cached conclusion {format_sequent(p.conclusion)} differs from "
            f"rule result {format_sequent(expected)}"
        )
    return None


def validate(p: Proof) -> list[tuple[tuple[int, ...], str]]:
    """All schema violations as (path-from-root, message); empty means ok."""
    out: list[tuple[tuple[int, ...], str]] = []
    for path, node in preorder(p):
        msg = _node_violation(node)
        if msg is not None:
            out.append((path, msg))
    return out


# ---------------------------------------------------------------------------
# Tree plumbing


def preorder(p: Proof) -> Iterator[tuple[tuple[int, ...], Proof]]:
    """Yield (path, node) pairs, node before its premises."""
    stack: list[tuple[tuple[int, ...], Proof]] = [((), p)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for i in range(len(node.premises) - 1, -1, -1):
            stack.append((path + (i,), node.premises[i]))


def get_at(p: Proof, path: tuple[int, ...]) -> Proof:
    for i in path:
        p = p.premises[i]
    return p


def replace_at(p: Proof, path: tuple[int, ...], sub: Proof) -> Proof:
    """Splice ``sub`` in at ``path``, keeping every ancestor's cached
    conclusion (callers must only splice conclusion-preserving subtrees)."""
    if not path:
        return sub
    i = path[0]
    prems = list(p.premises)
    prems[i] = replace_at(prems[i], path[1:], sub)
    return Proof(p.rule, tuple(prems), p.conclusion)


def proof_eq(p: Proof, q: Proof) -> bool:
    """Structural equality up to renaming of bound type variables.

    A quantifier-right node binds its variable across the whole subtree
    above it (the generic variable occurs free in premise sequents), so
    the comparison threads binding environments through the tree rather
    than comparing node conclusions in isolation.
    """
    return _proof_alpha(p, q, {}, {}, 0)


def _proof_alpha(p, q, envp, envq, depth):
    if type(p.rule) is not type(q.rule) or len(p.premises) != len(q.premises):
        return False
    if isinstance(p.rule, ForallL):
        if p.rule.at != q.rule.at or not alpha_eq_under(
            p.rule.witness, q.rule.witness, envp, envq, depth
        ):
            return False
    elif p.rule != q.rule:
        return False
    if not _sequent_alpha_under(p.conclusion, q.conclusion, envp, envq, depth):
        return False
    if isinstance(p.rule, ForallR):
        bp = p.conclusion.conclusion.binder
        bq = q.conclusion.conclusion.binder
        return _proof_alpha(
            p.premises[0],
            q.premises[0],
            {**envp, bp: depth},
            {**envq, bq: depth},
            depth + 1,
        )
    return all(
        _proof_alpha(a, b, envp, envq, depth)
        for a, b in zip(p.premises, q.premises)
    )


def _sequent_alpha_under(s, t, envs, envt, depth):
    return (
        len(s.context) == len(t.context)
        and all(
            alpha_eq_under(a, b, envs, envt, depth)
            for a, b in zip(s.context, t.context)
        )
        and alpha_eq_under(s.conclusion, t.conclusion, envs, envt, depth)
    )


def free_vars_proof(p: Proof) -> frozenset[str]:
    """Type variables occurring free anywhere in the tree."""
    out = sequent_free_vars(p.conclusion)
    for _, node in preorder(p):
        out |= sequent_free_vars(node.conclusion)
        if isinstance(node.rule, ForallL):
            out |= free_vars(node.rule.witness)
    return out


# ---------------------------------------------------------------------------
# Substitution into proofs


def subst_proof(p: Proof, x: str, b: Formula) -> Proof:
    """Substitute ``b`` for the type variable ``x`` throughout a proof.

    Rebuilds the tree through the strict constructors, so the result
    validates whenever ``p`` does.  Quantifier nodes that bind ``x``
    shadow the substitution; binders that would capture a free variable
    of ``b`` are renamed first.
    """
    rule = p.rule
    prems = p.premises
    if isinstance(rule, Axiom):
        return mk_axiom(substitute(p.conclusion.conclusion, x, b))
    if isinstance(rule, Exchange):
        return mk_exchange(subst_proof(prems[0], x, b), rule.at)
    if isinstance(rule, Cut):
        return mk_cut(subst_proof(prems[0], x, b), subst_proof(prems[1], x, b), rule.at)
    if isinstance(rule, TensorR):
        return mk_tensor_r(subst_proof(prems[0], x, b), subst_proof(prems[1], x, b))
    if isinstance(rule, TensorL):
        return mk_tensor_l(subst_proof(prems[0], x, b), rule.at)
    if isinstance(rule, LolliR):
        return mk_lolli_r(subst_proof(prems[0], x, b))
    if isinstance(rule, LolliL):
        return mk_lolli_l(
            subst_proof(prems[0], x, b), subst_proof(prems[1], x, b), rule.at
        )
    if isinstance(rule, Promotion):
        return mk_prom(subst_proof(prems[0], x, b))
    if isinstance(rule, Dereliction):
        return mk_der(subst_proof(prems[0], x, b), rule.at)
    if isinstance(rule, Contraction):
        return mk_ctr(subst_proof(prems[0], x, b), rule.at)
    if isinstance(rule, Weakening):
        inserted = substitute(p.conclusion.context[rule.at], x, b)
        return mk_weak(subst_proof(prems[0], x, b), rule.at, inserted)
    if isinstance(rule, OneL):
        return mk_one_l(subst_proof(prems[0], x, b), rule.at)
    if isinstance(rule, OneR):
        return p
    if isinstance(rule, ForallR):
        binder = p.conclusion.conclusion.binder
        if binder == x:
            return p
        if binder in free_vars(b):
            avoid = free_vars_proof(p) | free_vars(b) | {x}
            fresh = fresh_name(binder, avoid)
            renamed = mk_forall_r(subst_proof(prems[0], binder, Var(fresh)), fresh)
            return subst_proof(renamed, x, b)
        return mk_forall_r(subst_proof(prems[0], x, b), binder)
    if isinstance(rule, ForallL):
        quantified = p.conclusion.context[rule.at]
        return mk_forall_l(
            subst_proof(prems[0], x, b),
            rule.at,
            substitute(quantified, x, b),
            substitute(rule.witness, x, b),
        )
    raise ProofError(f"unknown rule {rule!r}")
