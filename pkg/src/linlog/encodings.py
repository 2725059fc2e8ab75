"""Library of named proofs: Church numerals and their arithmetic.

Writing E for A ⊸ A, the numeral n proves int_A = !E ⊸ E.  Its body is
a chain of n ⊸L applications of an axiom (iterate the borrowed
endomorphism n times), with the !E hypotheses shared out by a balanced
tree of contractions and opened by derelictions: n = 0 weakens, n = 1
derelicts without contracting, and n ≥ 2 uses a halving split (⌈n/2⌉ /
⌊n/2⌋) with one contraction at the root of the split.  This balanced
shape is the one the engine's own doubling dynamics reproduce, so
2 × 2 = 4 closes structurally and not merely semantically.

Arithmetic on numerals: `add` contracts a shared !E between two
numerals, `mult` feeds a boxed numeral body to the other numeral,
`rec` iterates a boxed step proof over a base proof, `exp` is rec with
multiplication as the step.  The second-order layer quantifies the
base type: `church2` generalizes a numeral over its type variable,
`exp2` instantiates at int and regeneralizes, and `hypexp` feeds a
boxed exp2 to a numeral at type int — iterated exponentiation whose
normal forms grow as E(0) = 1, E(n+1) = 2^{E(n)}.
"""

from __future__ import annotations

from .formula import INT, Bang, Formula, Lolli, Var, endo, int_type
from .proof import (
    Proof,
    mk_axiom,
    mk_ctr,
    mk_cut,
    mk_der,
    mk_exchange,
    mk_forall_l,
    mk_forall_r,
    mk_lolli_l,
    mk_lolli_r,
    mk_prom,
    mk_weak,
)


def _iterate_chain(n: int, a: Formula) -> Proof:
    """a, E, …, E ⊢ a — apply n copies of the endomorphism in turn."""
    p = mk_axiom(a)
    for _ in range(n):
        p = mk_lolli_l(mk_axiom(a), p, 0)
    return p


def plain_body(n: int, a: Formula) -> Proof:
    """E, …, E ⊢ E (n hypotheses): the n-fold composition map."""
    return mk_lolli_r(_iterate_chain(n, a))


def _spine(n: int) -> list[tuple[str, int]]:
    """Top-down contraction/dereliction operations taking the premise
    !E, …, !E ⊢ E (n slots) to !E ⊢ E by halving."""
    if n == 1:
        return [("der", 0)]
    half = [(op, at + 1) for op, at in _spine((n + 1) // 2)]
    return [("ctr", 0)] + half + _spine(n // 2)


def church_body(n: int, a: Formula) -> Proof:
    """!E ⊢ E: the body of the numeral n (compose n copies of one
    shared endomorphism)."""
    if n < 0:
        raise ValueError("numerals count uses, so n must be ≥ 0")
    e = endo(a)
    if n == 0:
        return mk_weak(mk_lolli_r(mk_axiom(a)), 0, Bang(e))
    p = plain_body(n, a)
    for op, at in reversed(_spine(n)):
        p = mk_der(p, at) if op == "der" else mk_ctr(p, at)
    return p


def church(n: int, a: Formula) -> Proof:
    """⊢ int_a: the Church numeral n."""
    return mk_lolli_r(church_body(n, a))


def comp(a: Formula) -> Proof:
    """E, E ⊢ E sending α ⊗ β to β ∘ α."""
    return plain_body(2, a)


def add(a: Formula) -> Proof:
    """int_a, int_a ⊢ int_a: contract one shared !E through both."""
    e = endo(a)
    inner = mk_lolli_l(mk_axiom(Bang(e)), comp(a), 0)
    inner = mk_exchange(inner, 1)
    outer = mk_lolli_l(mk_axiom(Bang(e)), inner, 1)
    return mk_lolli_r(mk_ctr(outer, 0))


def mult(m: int, a: Formula) -> Proof:
    """int_a ⊢ int_a: multiply a numeral by m (box the body of m and
    feed it to the input numeral)."""
    return mk_lolli_r(mk_lolli_l(mk_prom(church_body(m, a)), mk_axiom(endo(a)), 0))


def rec(beta: Proof, beta_prime: Proof, a: Formula) -> Proof:
    """int_a ⊢ a: apply the n-th power of a boxed step to a base.

    ``beta`` proves ⊢ a, ``beta_prime`` proves ⊢ a ⊸ a.
    """
    inner = mk_lolli_l(beta, mk_axiom(a), 0)
    return mk_lolli_l(mk_prom(beta_prime), inner, 0)


def exp(m: int, a: Formula) -> Proof:
    """int_{int_a} ⊢ int_a: n ↦ mⁿ as iterated multiplication by m."""
    return rec(church(1, a), mk_lolli_r(mult(m, a)), int_type(a))


def church2(n: int) -> Proof:
    """⊢ int: the type-generalized numeral n."""
    x = _fresh_base()
    return mk_forall_r(church(n, x), x.name)


def exp2(m: int) -> Proof:
    """int ⊢ int: exponentiation m^(−) uniformly in the base type."""
    x = _fresh_base()
    instantiated = mk_forall_l(exp(m, x), 0, INT, int_type(x))
    return mk_forall_r(instantiated, x.name)


def hypexp() -> Proof:
    """int ⊢ int: feed a boxed exp2(2) to the input numeral at type
    int, computing n ↦ E(n) with E(0) = 1, E(n+1) = 2^{E(n)}."""
    step = mk_prom(mk_lolli_r(exp2(2)))
    inner = mk_lolli_l(church2(1), mk_axiom(INT), 0)
    body = mk_lolli_l(step, inner, 0)
    return mk_forall_l(body, 0, INT, INT)


def _fresh_base() -> Var:
    return Var("x")


# ---------------------------------------------------------------------------
# The cuts the engine is asked to run


def add_cut(m: int, n: int, a: Formula) -> Proof:
    """⊢ int_a: m and n fed to the addition proof."""
    half = mk_cut(church(n, a), add(a), 1)
    return mk_cut(church(m, a), half, 0)


def mult_cut(m: int, n: int, a: Formula) -> Proof:
    """⊢ int_a: n fed to multiplication-by-m."""
    return mk_cut(church(n, a), mult(m, a), 0)


def exp_cut(m: int, n: int, a: Formula) -> Proof:
    """⊢ int_a: the numeral n at type int_a fed to exponentiation
    base m, normalizing to the numeral m^n."""
    return mk_cut(church(n, int_type(a)), exp(m, a), 0)


def hypexp_cut(n: int) -> Proof:
    """⊢ int: the generalized numeral n fed to the tower map."""
    return mk_cut(church2(n), hypexp(), 0)


def library(a: Formula = Var("A")) -> dict[str, Proof]:
    """One representative instance of every encoding, keyed by name."""
    out: dict[str, Proof] = {}
    for n in range(5):
        out[f"church-{n}"] = church(n, a)
    out["church-body-2"] = church_body(2, a)
    out["comp"] = comp(a)
    out["add"] = add(a)
    out["mult-2"] = mult(2, a)
    out["rec-example"] = rec(church(1, a), mk_lolli_r(mult(2, a)), int_type(a))
    out["exp-2"] = exp(2, a)
    for n in range(3):
        out[f"church2-{n}"] = church2(n)
    out["exp2-2"] = exp2(2)
    out["hypexp"] = hypexp()
    return out
