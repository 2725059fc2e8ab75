"""Cut-elimination engine tests: catalog cases, strategy, traces."""

from __future__ import annotations

from fractions import Fraction

import pytest

from linlog.encodings import (
    add_cut,
    church,
    church2,
    church_body,
    comp,
    hypexp_cut,
    library,
    mult_cut,
    plain_body,
)
from linlog.formula import Bang, One, Sequent, Var, endo
from linlog.proof import (
    mk_axiom,
    mk_cut,
    mk_exchange,
    mk_lolli_r,
    mk_one_l,
    mk_one_r,
    mk_prom,
    mk_tensor_l,
    mk_tensor_r,
    mk_weak,
    validate,
)
from linlog.rewrite import (
    RewriteError,
    exchange_normalize,
    find_redex,
    is_cut_free,
    normalize,
    replay,
    step,
)
from linlog.semantics import den_matrix

A = Var("A")
B = Var("B")
ASG = {"A": 2, "B": 2}


def test_axiom_cut_identities_across_library():
    for name, p in library().items():
        res = normalize(mk_cut(p, mk_axiom(p.conclusion.conclusion), 0))
        assert res.proof == p, f"cut against a right axiom did not vanish for {name}"
        assert len(res.trace.steps) == 1
        assert res.trace.steps[0].rule_id == "ax-right"
        if p.conclusion.context:
            res2 = normalize(mk_cut(mk_axiom(p.conclusion.context[0]), p, 0))
            assert res2.proof == p, f"cut against a left axiom did not vanish for {name}"
            assert res2.trace.steps[0].rule_id == "ax-left"


def test_two_times_two_golden_trace():
    res = normalize(mult_cut(2, 2, A))
    assert not res.exhausted
    assert is_cut_free(res.proof)
    assert validate(res.proof) == []
    ids = [s.rule_id for s in res.trace.steps]
    assert ids[:4] == ["lolli-r-commute", "lolli-l-principal", "prom-ctr", "prom-der"]
    assert len(res.trace.steps) == 27  # regression pin for the fixed strategy
    assert exchange_normalize(res.proof) == church(4, A)


def test_multiplication_by_one_gives_the_other_numeral():
    res = normalize(mult_cut(2, 1, A))
    assert exchange_normalize(res.proof) == church(2, A)


def test_addition_of_two_and_two():
    res = normalize(add_cut(2, 2, A))
    assert is_cut_free(res.proof)
    assert exchange_normalize(res.proof) == church(4, A)


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 2), (2, 4)])
def test_hyperexponential_tower(n, expected):
    res = normalize(hypexp_cut(n))
    assert not res.exhausted
    assert exchange_normalize(res.proof) == church2(expected)


def test_step_is_none_on_cut_free_proofs():
    assert step(church(3, A)) is None
    assert find_redex(comp(A)) is None


def test_innermost_cut_is_selected_first():
    inner = mk_cut(church(2, A), mk_axiom(church(2, A).conclusion.conclusion), 0)
    outer = mk_cut(inner, mk_axiom(inner.conclusion.conclusion), 0)
    assert find_redex(outer) == (0,)


def test_every_step_preserves_conclusion_and_validity():
    p = mult_cut(2, 3, A)
    want = p.conclusion
    seen = 0
    while True:
        nxt = step(p)
        if nxt is None:
            break
        p, info = nxt
        seen += 1
        assert p.conclusion == want
        assert validate(p) == []
    assert seen > 10 and is_cut_free(p)


def test_denotation_preserved_on_finite_cuts():
    # composition proof cut against an axiom chain, all spaces finite
    left = plain_body(2, A)  # E,E ⊢ E
    right = mk_one_l(mk_axiom(endo(A)), 0)  # 1,E ⊢ E
    p = mk_cut(left, right, 1)
    before = den_matrix(p, ASG)
    res = normalize(p)
    assert den_matrix(res.proof, ASG) == before


def test_tensor_principal_case():
    left = mk_tensor_r(mk_axiom(A), mk_axiom(B))
    right = mk_tensor_l(mk_tensor_r(mk_axiom(A), mk_axiom(B)), 0)
    p = mk_cut(left, right, 0)
    res = normalize(p)
    assert res.trace.steps[0].rule_id == "tensor-principal"
    assert den_matrix(res.proof, ASG) == den_matrix(p, ASG)


def test_one_principal_case():
    p = mk_cut(mk_one_r(), mk_one_l(mk_axiom(A), 0), 0)
    res = normalize(p)
    assert res.trace.steps[0].rule_id == "one-principal"
    assert res.proof == mk_axiom(A)


def test_promotion_weakening_case():
    left = mk_prom(mk_one_r())  # ⊢ !1
    right = mk_weak(mk_axiom(A), 0, Bang(One()))  # !1, A ⊢ A
    res = normalize(mk_cut(left, right, 0))
    assert res.trace.steps[0].rule_id == "prom-weak"
    assert res.proof == mk_axiom(A)


def test_promotion_promotion_case():
    left = mk_prom(mk_one_r())  # ⊢ !1
    right = mk_prom(mk_weak(mk_one_r(), 0, Bang(One())))  # !1 ⊢ !1
    p = mk_cut(left, right, 0)
    res = normalize(p)
    assert [s.rule_id for s in res.trace.steps] == ["prom-prom", "prom-weak"]
    assert res.proof == mk_prom(mk_one_r())
    assert res.proof.conclusion == p.conclusion


def test_exchange_commute_case():
    left = mk_lolli_r(mk_axiom(A))  # ⊢ A ⊸ A after abstracting the axiom
    right = mk_exchange(comp(A), 0)  # E,E ⊢ E with a swap on top
    p = mk_cut(left, right, 0)
    before = den_matrix(p, ASG)
    res = normalize(p)
    assert "ex-commute" in {s.rule_id for s in res.trace.steps}
    assert den_matrix(res.proof, ASG) == before


def test_budget_exhaustion_reports_partial_trace():
    res = normalize(mult_cut(2, 2, A), max_steps=3)
    assert res.exhausted
    assert len(res.trace.steps) == 3
    assert not is_cut_free(res.proof)
    assert validate(res.proof) == []
    assert res.trace.terminal == res.proof


def test_replay_reproduces_the_terminal():
    p = mult_cut(2, 2, A)
    res = normalize(p)
    assert replay(p, res.trace) == res.proof


def test_replay_rejects_a_foreign_trace():
    res = normalize(mult_cut(2, 1, A))
    with pytest.raises(RewriteError):
        replay(add_cut(1, 1, A), res.trace)


def test_exchange_normalize_cancels_double_swaps():
    c = comp(A)
    assert exchange_normalize(mk_exchange(mk_exchange(c, 0), 0)) == c


def test_exchange_normalize_keeps_numerals_untouched():
    assert exchange_normalize(church(2, A)) == church(2, A)
    assert exchange_normalize(church(5, A)) == church(5, A)


def test_exchange_normalize_gives_one_word_per_permutation():
    base = plain_body(3, A)  # E,E,E ⊢ E
    # the same permutation spelled as two different braid words
    w1 = mk_exchange(mk_exchange(mk_exchange(base, 0), 1), 0)
    w2 = mk_exchange(mk_exchange(mk_exchange(base, 1), 0), 1)
    n1, n2 = exchange_normalize(w1), exchange_normalize(w2)
    assert n1 == n2
    assert n1.conclusion == w1.conclusion


def test_step_counts_are_recorded_per_step():
    p = mult_cut(2, 1, A)
    res = normalize(p)
    sizes = [(s.size_before, s.size_after) for s in res.trace.steps]
    assert sizes[0][0] == p.size
    for (b, a), s in zip(sizes, res.trace.steps):
        assert b > 0 and a > 0 and s.path == tuple(s.path)
    assert sizes[-1][1] == res.proof.size
