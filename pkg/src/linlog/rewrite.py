"""Cut-elimination: local rewrite catalog, strategy, traces.

Every rewrite acts at one cut node and preserves that node's conclusion
sequent.  Writing L : Γ ⊢ A and R : Δ′, A, Δ ⊢ B for the premises (the
cut's ``at`` is |Δ′|), the catalog's priority at a selected node is:

1. either premise is an axiom — the cut evaporates;
2. L ends in an exchange or a left rule — the cut slides into L's
   premise (these dissolve application chains fed to a cut);
3. L ends in the right-introduction of the cut formula and R consumes
   it at position ``at`` — a principal step (⊗, ⊸, 1, ∀, and the four
   !-cases against promotion: dereliction opens the box, contraction
   duplicates it, weakening discards it, promotion absorbs it);
4. otherwise the cut slides into R's final rule (commuting step).

Cases 2 and 3 never overlap (a left-ending L is not a right-intro);
choosing left-commutes before right-commutes is this engine's pinned
order.  The strategy is leftmost-innermost: the first cut in preorder
whose subtrees are cut-free.  With that strategy no cut ever meets
another cut, so the catalog needs no cut-past-cut rules.

After each step the kernel re-validates the whole proof and checks the
conclusion is unchanged — a guard against catalog bugs, not a proof
obligation for callers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Var, free_vars, fresh_name, sequent_alpha_eq
from .proof import (
    Axiom,
    Contraction,
    Cut,
    Dereliction,
    Exchange,
    ForallL,
    ForallR,
    LolliL,
    LolliR,
    OneL,
    OneR,
    Promotion,
    Proof,
    TensorL,
    TensorR,
    Weakening,
    free_vars_proof,
    get_at,
    mk_ctr,
    mk_cut,
    mk_der,
    mk_exchange,
    mk_forall_l,
    mk_forall_r,
    mk_lolli_l,
    mk_lolli_r,
    mk_one_l,
    mk_prom,
    mk_tensor_l,
    mk_tensor_r,
    mk_weak,
    replace_at,
    subst_proof,
    validate,
)

DEFAULT_MAX_STEPS = 100000


class RewriteError(Exception):
    """An internal engine failure (a rewrite broke validity or the
    conclusion) — this is a bug guard, not a user-facing condition."""


@dataclass(frozen=True)
class StepInfo:
    rule_id: str
    path: tuple[int, ...]
    size_before: int
    size_after: int


@dataclass(frozen=True)
class Trace:
    steps: tuple[StepInfo, ...]
    terminal: Proof


@dataclass(frozen=True)
class NormalizeResult:
    proof: Proof
    trace: Trace
    exhausted: bool


def is_cut_free(p: Proof) -> bool:
    return p.cut_count == 0


# ---------------------------------------------------------------------------
# The catalog: reduce one cut node

_LEFTISH = (Exchange, Dereliction, Contraction, Weakening, OneL, TensorL, ForallL, LolliL)


def reduce_cut(node: Proof) -> tuple[str, Proof]:
    """One reduction of a cut node whose premises are cut-free.

    Returns (rule id, replacement subtree with the identical conclusion).
    """
    if not isinstance(node.rule, Cut):
        raise RewriteError("reduce_cut called on a non-cut node")
    left, right = node.premises
    at = node.rule.at
    ng = len(left.conclusion.context)

    if isinstance(left.rule, Axiom):
        return "ax-left", right
    if isinstance(right.rule, Axiom):
        return "ax-right", left

    if isinstance(left.rule, _LEFTISH):
        return _commute_left(node, left, right, at)

    principal = _principal(node, left, right, at, ng)
    if principal is not None:
        return principal

    return _commute_right(node, left, right, at, ng)


def _commute_left(node: Proof, left: Proof, right: Proof, at: int) -> tuple[str, Proof]:
    r = left.rule
    if isinstance(r, Exchange):
        inner = mk_cut(left.premises[0], right, at)
        return "ex-commute-left", mk_exchange(inner, at + r.at)
    if isinstance(r, Dereliction):
        inner = mk_cut(left.premises[0], right, at)
        return "der-commute-left", mk_der(inner, at + r.at)
    if isinstance(r, Contraction):
        inner = mk_cut(left.premises[0], right, at)
        return "ctr-commute-left", mk_ctr(inner, at + r.at)
    if isinstance(r, Weakening):
        inner = mk_cut(left.premises[0], right, at)
        banged = left.conclusion.context[r.at]
        return "weak-commute-left", mk_weak(inner, at + r.at, banged)
    if isinstance(r, OneL):
        inner = mk_cut(left.premises[0], right, at)
        return "one-l-commute-left", mk_one_l(inner, at + r.at)
    if isinstance(r, TensorL):
        inner = mk_cut(left.premises[0], right, at)
        return "tensor-l-commute-left", mk_tensor_l(inner, at + r.at)
    if isinstance(r, ForallL):
        inner = mk_cut(left.premises[0], right, at)
        quantified = left.conclusion.context[r.at]
        return "forall-l-commute-left", mk_forall_l(inner, at + r.at, quantified, r.witness)
    if isinstance(r, LolliL):
        sub_l, sub_r = left.premises
        inner = mk_cut(sub_r, right, at)
        return "lolli-l-commute-left", mk_lolli_l(sub_l, inner, at + r.at)
    raise RewriteError(f"unhandled left rule {r!r}")


def _principal(
    node: Proof, left: Proof, right: Proof, at: int, ng: int
) -> tuple[str, Proof] | None:
    lr, rr = left.rule, right.rule
    if isinstance(lr, TensorR) and isinstance(rr, TensorL) and rr.at == at:
        l1, l2 = left.premises
        n1 = len(l1.conclusion.context)
        inner = mk_cut(l1, right.premises[0], at)
        return "tensor-principal", mk_cut(l2, inner, at + n1)
    if isinstance(lr, LolliR) and isinstance(rr, LolliL):
        r1, r2 = right.premises
        if rr.at + len(r1.conclusion.context) == at:
            first = mk_cut(r1, left.premises[0], 0)
            return "lolli-l-principal", mk_cut(first, r2, rr.at)
    if isinstance(lr, Promotion):
        if isinstance(rr, Dereliction) and rr.at == at:
            return "prom-der", mk_cut(left.premises[0], right.premises[0], at)
        if isinstance(rr, Contraction) and rr.at == at:
            return "prom-ctr", _prom_ctr(left, right, at, ng)
        if isinstance(rr, Weakening) and rr.at == at:
            cur = right.premises[0]
            for f in reversed(left.conclusion.context):
                cur = mk_weak(cur, at, f)
            return "prom-weak", cur
        if isinstance(rr, Promotion):
            return "prom-prom", mk_prom(mk_cut(left, right.premises[0], at))
    if isinstance(lr, OneR) and isinstance(rr, OneL) and rr.at == at:
        return "one-principal", right.premises[0]
    if isinstance(lr, ForallR) and isinstance(rr, ForallL) and rr.at == at:
        binder = left.conclusion.conclusion.binder
        instantiated = subst_proof(left.premises[0], binder, rr.witness)
        return "forall-principal", mk_cut(instantiated, right.premises[0], at)
    return None


def _prom_ctr(left: Proof, right: Proof, at: int, ng: int) -> Proof:
    """Duplicate the promotion box, then interleave and contract the two
    copies of its (all-banged) context, pairwise."""
    inner = mk_cut(left, right.premises[0], at + 1)
    cur = mk_cut(left, inner, at)
    # context now reads Δ′ + Γ + Γ + Δ; interleave to Θ₁Θ₁…Θ_gΘ_g
    for i in range(ng):
        q = at + ng + i  # current slot of the second copy of Θ_{i+1}
        for pos in range(q - 1, at + 2 * i, -1):
            cur = mk_exchange(cur, pos)
    for i in range(ng - 1, -1, -1):
        cur = mk_ctr(cur, at + 2 * i)
    return cur


def _commute_right(
    node: Proof, left: Proof, right: Proof, at: int, ng: int
) -> tuple[str, Proof]:
    r = right.rule
    shift = ng - 1  # context growth when the cut replaces one slot by Γ

    if isinstance(r, Exchange):
        j = r.at
        if at == j:
            inner = mk_cut(left, right.premises[0], j + 1)
            cur = inner
            for pos in range(j, j + ng):
                cur = mk_exchange(cur, pos)
            return "ex-commute", cur
        if at == j + 1:
            inner = mk_cut(left, right.premises[0], j)
            cur = inner
            for pos in range(j + ng - 1, j - 1, -1):
                cur = mk_exchange(cur, pos)
            return "ex-commute", cur
        inner = mk_cut(left, right.premises[0], at)
        return "ex-commute", mk_exchange(inner, j + shift if at < j else j)
    if isinstance(r, Dereliction):
        j = r.at
        inner = mk_cut(left, right.premises[0], at)
        return "der-commute", mk_der(inner, j + shift if at < j else j)
    if isinstance(r, Contraction):
        j = r.at
        inner = mk_cut(left, right.premises[0], at if at < j else at + 1)
        return "ctr-commute", mk_ctr(inner, j + shift if at < j else j)
    if isinstance(r, Weakening):
        j = r.at
        inner = mk_cut(left, right.premises[0], at if at < j else at - 1)
        banged = right.conclusion.context[j]
        return "weak-commute", mk_weak(inner, j + shift if at < j else j, banged)
    if isinstance(r, OneL):
        j = r.at
        inner = mk_cut(left, right.premises[0], at if at < j else at - 1)
        return "one-l-commute", mk_one_l(inner, j + shift if at < j else j)
    if isinstance(r, TensorL):
        j = r.at
        inner = mk_cut(left, right.premises[0], at if at < j else at + 1)
        return "tensor-l-commute", mk_tensor_l(inner, j + shift if at < j else j)
    if isinstance(r, ForallL):
        j = r.at
        inner = mk_cut(left, right.premises[0], at)
        quantified = right.conclusion.context[j]
        return "forall-l-commute", mk_forall_l(
            inner, j + shift if at < j else j, quantified, r.witness
        )
    if isinstance(r, LolliR):
        inner = mk_cut(left, right.premises[0], at + 1)
        return "lolli-r-commute", mk_lolli_r(inner)
    if isinstance(r, TensorR):
        r1, r2 = right.premises
        n1 = len(r1.conclusion.context)
        if at < n1:
            return "tensor-r-commute", mk_tensor_r(mk_cut(left, r1, at), r2)
        return "tensor-r-commute", mk_tensor_r(r1, mk_cut(left, r2, at - n1))
    if isinstance(r, LolliL):
        r1, r2 = right.premises
        j = r.at
        ns = len(r1.conclusion.context)
        if at < j:
            inner = mk_cut(left, r2, at)
            return "lolli-l-commute", mk_lolli_l(r1, inner, j + shift)
        if at < j + ns:
            inner = mk_cut(left, r1, at - j)
            return "lolli-l-commute", mk_lolli_l(inner, r2, j)
        if at == j + ns:
            raise RewriteError("cut formula is the implication but the left premise is not its abstraction")
        inner = mk_cut(left, r2, at - ns)
        return "lolli-l-commute", mk_lolli_l(r1, inner, j)
    if isinstance(r, ForallR):
        binder = right.conclusion.conclusion.binder
        premise = right.premises[0]
        gamma_fv: set[str] = set()
        for f in left.conclusion.context:
            gamma_fv |= free_vars(f)
        if binder in gamma_fv:
            fresh = fresh_name(binder, gamma_fv | free_vars_proof(left) | free_vars_proof(right))
            premise = subst_proof(premise, binder, Var(fresh))
            binder = fresh
        inner = mk_cut(left, premise, at)
        return "forall-r-commute", mk_forall_r(inner, binder)
    raise RewriteError(f"no rule applies to cut against {type(r).__name__}")


# ---------------------------------------------------------------------------
# Strategy and the step loop


def find_redex(p: Proof) -> tuple[int, ...] | None:
    """Path of the leftmost-innermost cut: first in preorder whose own
    subtrees are cut-free."""
    stack: list[tuple[Proof, tuple[int, ...]]] = [(p, ())]
    while stack:
        node, path = stack.pop()
        if node.cut_count == 0:
            continue
        if isinstance(node.rule, Cut) and node.cut_count == 1:
            return path
        for i in range(len(node.premises) - 1, -1, -1):
            stack.append((node.premises[i], path + (i,)))
    return None


def apply_rule_at(p: Proof, path: tuple[int, ...]) -> tuple[Proof, StepInfo]:
    """Reduce the cut at ``path`` and splice the result back, with the
    kernel guard (validity + conclusion preservation) applied."""
    node = get_at(p, path)
    rule_id, replacement = reduce_cut(node)
    if replacement.conclusion != node.conclusion and not sequent_alpha_eq(
        replacement.conclusion, node.conclusion
    ):
        raise RewriteError(f"{rule_id} changed the conclusion at {path}")
    out = replace_at(p, path, replacement)
    bad = validate(out)
    if bad:
        raise RewriteError(f"{rule_id} at {path} broke validity: {bad[:3]}")
    return out, StepInfo(rule_id, path, p.size, out.size)


def step(p: Proof) -> tuple[Proof, StepInfo] | None:
    """One strategy step; None when the proof is already cut-free."""
    path = find_redex(p)
    if path is None:
        return None
    return apply_rule_at(p, path)


def normalize(p: Proof, max_steps: int = DEFAULT_MAX_STEPS) -> NormalizeResult:
    """Run the strategy to a cut-free proof or to budget exhaustion."""
    steps: list[StepInfo] = []
    cur = p
    for _ in range(max_steps):
        nxt = step(cur)
        if nxt is None:
            return NormalizeResult(cur, Trace(tuple(steps), cur), False)
        cur, info = nxt
        steps.append(info)
    if find_redex(cur) is None:
        return NormalizeResult(cur, Trace(tuple(steps), cur), False)
    return NormalizeResult(cur, Trace(tuple(steps), cur), True)


def replay(p: Proof, trace: Trace) -> Proof:
    """Re-apply a trace step by step; the result must equal the recorded
    terminal exactly."""
    cur = p
    for info in trace.steps:
        cur, got = apply_rule_at(cur, info.path)
        if got.rule_id != info.rule_id:
            raise RewriteError(
                f"replay diverged at {info.path}: {got.rule_id} != {info.rule_id}"
            )
    if cur != trace.terminal:
        raise RewriteError("replay did not reproduce the terminal proof")
    return cur


# ---------------------------------------------------------------------------
# Exchange canonicalization


def exchange_normalize(p: Proof) -> Proof:
    """Collapse exchange chains to a canonical word (dropping identity
    permutations), bottom-up.  Cut-elimination's golden normal forms
    carry no exchanges at all, so structural comparisons are made after
    this pass."""
    premises = tuple(exchange_normalize(q) for q in p.premises)
    node = _rebuild(p, premises)
    if not isinstance(node.rule, Exchange):
        return node
    swaps: list[int] = []
    cur = node
    while isinstance(cur.rule, Exchange):
        swaps.append(cur.rule.at)
        cur = cur.premises[0]
    n = len(cur.conclusion.context)
    perm = list(range(n))
    for j in reversed(swaps):
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
    word = _canonical_word(perm)
    out = cur
    for k in word:
        out = mk_exchange(out, k)
    return out


def _canonical_word(perm: list[int]) -> list[int]:
    """A fixed adjacent-swap word realizing the permutation: select each
    target element in turn and bubble it left into place."""
    work = list(range(len(perm)))
    word: list[int] = []
    for i, want in enumerate(perm):
        j = work.index(want)
        for k in range(j - 1, i - 1, -1):
            work[k], work[k + 1] = work[k + 1], work[k]
            word.append(k)
    return word


def _rebuild(p: Proof, premises: tuple[Proof, ...]) -> Proof:
    if premises == p.premises:
        return p
    return Proof(p.rule, premises, p.conclusion)
