"""Evaluation of proofs on explicit values, against hand matrix oracles."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from linlog.coalgebra import (
    BangSp,
    BaseSp,
    HomSp,
    TensorSp,
    UnitSp,
    Vect,
    bang_add,
    bang_scale,
    dereliction,
    ket,
    space_dim,
    tensor_from_terms,
    vacuum,
)
from linlog.encodings import church, church_body, comp
from linlog.formula import Bang, Lolli, One, Tensor, Var, endo, int_type
from linlog.proof import (
    mk_axiom,
    mk_ctr,
    mk_cut,
    mk_der,
    mk_exchange,
    mk_lolli_l,
    mk_lolli_r,
    mk_one_l,
    mk_one_r,
    mk_prom,
    mk_tensor_l,
    mk_tensor_r,
    mk_weak,
)
from linlog.semantics import (
    BangVal,
    Matrix,
    Pair,
    Scalar,
    SemanticsError,
    UnsupportedSpace,
    Vector,
    apply_hom,
    den_apply,
    den_formula,
    den_matrix,
    flatten,
    force,
    matrix,
    nl,
    probe_equal,
    tangent,
    value_literal,
    values_agree,
)

A = Var("A")
ASG = {"A": 2}
E_SPACE = HomSp(BaseSp("A", 2), BaseSp("A", 2))


def _matmul(a, b):
    """Independent exact matrix product oracle."""
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]


def _rand_mat(rng, n=2):
    return [[Fraction(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(n)] for _ in range(n)]


def _mat_value(rows):
    return matrix(E_SPACE, rows)


def _as_rows(v):
    m = force(v, E_SPACE)
    assert isinstance(m, Matrix)
    return [list(r) for r in m.rows]


def _mat_vect(rows):
    return Vect(E_SPACE, tuple(c for row in rows for c in row))


# ---------------------------------------------------------------------------
# Spaces


def test_den_formula_shapes():
    assert den_formula(int_type(A), ASG) == HomSp(
        BangSp(E_SPACE), E_SPACE
    )
    assert den_formula(One(), {}) == UnitSp()
    sp = den_formula(Tensor(Var("B"), Var("B")), {"B": 3})
    assert sp == TensorSp(BaseSp("B", 3), BaseSp("B", 3))
    assert space_dim(sp) == 9


def test_den_formula_requires_assignment_and_first_order():
    with pytest.raises(SemanticsError):
        den_formula(Var("Z"), {})
    from linlog.formula import Forall

    with pytest.raises(UnsupportedSpace):
        den_formula(Forall("x", Var("x")), {})


# ---------------------------------------------------------------------------
# Plain structural rules as matrices


def test_axiom_is_the_identity_matrix():
    assert den_matrix(mk_axiom(A), ASG) == [
        [Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(1)],
    ]


def test_exchange_is_the_swap_of_tensor_factors():
    B = Var("B")
    p = mk_exchange(mk_tensor_r(mk_axiom(B), mk_axiom(A)), 0)
    got = den_matrix(p, {"A": 2, "B": 2})
    # oracle: e_i ⊗ e_j ↦ column at flat index i*2+j must be e_j ⊗ e_i
    expected = [[Fraction(0)] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            expected[j * 2 + i][i * 2 + j] = Fraction(1)
    assert got == expected


def test_composition_at_dimension_one_is_multiplication():
    assert den_matrix(comp(A), {"A": 1}) == [[Fraction(1)]]


def test_units_scale_and_unit_proof_is_one():
    p = mk_one_l(mk_axiom(A), 0)
    got = den_apply(p, Pair(tensor_from_terms(
        (UnitSp(), BaseSp("A", 2)),
        {(0, 1): Fraction(3)},
    )), ASG)
    assert force(got, BaseSp("A", 2)) == Vector(Vect(BaseSp("A", 2), (Fraction(0), Fraction(3))))
    assert den_apply(mk_one_r(), Scalar(Fraction(2)), ASG) == Scalar(Fraction(2))


def test_tensor_left_then_right_is_identity():
    B = Var("B")
    asg = {"A": 2, "B": 2}
    p = mk_tensor_l(mk_tensor_r(mk_axiom(A), mk_axiom(B)), 0)
    n = 4
    assert den_matrix(p, asg) == [
        [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)
    ]


# ---------------------------------------------------------------------------
# The numeral body on kets


def test_two_body_on_vacuum_is_the_square():
    alpha = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
    got = den_apply(church_body(2, A), BangVal(vacuum(_mat_vect(alpha))), ASG)
    assert _as_rows(got) == [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(1)]]
    assert _as_rows(got) == _matmul(alpha, alpha)


def test_two_body_ket_table_on_random_triples():
    rng = random.Random(5)
    for _ in range(8):
        al, nu, mu = (_rand_mat(rng) for _ in range(3))
        base = _mat_vect(al)
        body = church_body(2, A)
        assert _as_rows(den_apply(body, BangVal(vacuum(base)), ASG)) == _matmul(al, al)
        one = den_apply(body, BangVal(ket(base, [_mat_vect(nu)])), ASG)
        assert _as_rows(one) == [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(_matmul(nu, al), _matmul(al, nu))
        ]
        two = den_apply(body, BangVal(ket(base, [_mat_vect(nu), _mat_vect(mu)])), ASG)
        assert _as_rows(two) == [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(_matmul(nu, mu), _matmul(mu, nu))
        ]


def test_two_separate_bangs_compose_one_use_each():
    e = endo(A)
    p = mk_der(mk_der(comp(A), 1), 0)  # !E, !E ⊢ E
    rng = random.Random(9)
    al, mu = _rand_mat(rng), _rand_mat(rng)
    va, vm = _mat_vect(al), _mat_vect(mu)
    spaces = (BangSp(E_SPACE), BangSp(E_SPACE))

    def pair_of(x, y):
        acc = {}
        for kx, cx in x.terms:
            for ky, cy in y.terms:
                acc[(kx, ky)] = acc.get((kx, ky), Fraction(0)) + cx * cy
        return Pair(tensor_from_terms(spaces, acc))

    got = den_apply(p, pair_of(vacuum(va), ket(vm, [vm])), ASG)
    assert _as_rows(got) == _matmul(mu, al)
    # s, t > 1 dies under dereliction
    long = den_apply(p, pair_of(ket(va, [va, va]), ket(vm, [vm])), ASG)
    assert _as_rows(long) == [[Fraction(0)] * 2 for _ in range(2)]


# ---------------------------------------------------------------------------
# Promotion, linearity, cut


def test_dereliction_cancels_promotion():
    rng = random.Random(13)
    boxed = mk_prom(church_body(2, A))
    for _ in range(6):
        base = _mat_vect(_rand_mat(rng))
        x = ket(base, [_mat_vect(_rand_mat(rng))])
        out = den_apply(boxed, BangVal(x), ASG)
        assert isinstance(out, BangVal)
        inner = den_apply(church_body(2, A), BangVal(x), ASG)
        assert dereliction(out.elem) == Vect(E_SPACE, flatten(inner, E_SPACE))


def test_den_apply_is_linear_in_the_input():
    rng = random.Random(17)
    body = church_body(3, A)
    for _ in range(5):
        x = ket(_mat_vect(_rand_mat(rng)), [_mat_vect(_rand_mat(rng))])
        y = ket(_mat_vect(_rand_mat(rng)), [])
        a, b = Fraction(2), Fraction(-1, 2)
        mixed = bang_add(bang_scale(a, x), bang_scale(b, y))
        lhs = _as_rows(den_apply(body, BangVal(mixed), ASG))
        rx = _as_rows(den_apply(body, BangVal(x), ASG))
        ry = _as_rows(den_apply(body, BangVal(y), ASG))
        assert lhs == [
            [a * p + b * q for p, q in zip(rp, rq)] for rp, rq in zip(rx, ry)
        ]


def test_cut_composes_denotations():
    # comp cut into the first hom slot of an application chain
    e = endo(A)
    ll1 = mk_lolli_l(mk_axiom(A), mk_axiom(A), 0)  # A, E ⊢ A
    p = mk_cut(comp(A), ll1, 1)  # A, E, E ⊢ A
    asg = ASG
    spaces = (BaseSp("A", 2), E_SPACE, E_SPACE)
    dims = [2, 4, 4]
    import itertools

    for combo in itertools.product(*[range(d) for d in dims]):
        inp = Pair(tensor_from_terms(tuple(spaces), {combo: Fraction(1)}))
        got = den_apply(p, inp, asg)
        # oracle: α then β applied to the vector, i.e. (β∘α)(v)
        v = [Fraction(1 if i == combo[0] else 0) for i in range(2)]
        al = [[Fraction(0)] * 2 for _ in range(2)]
        al[combo[1] // 2][combo[1] % 2] = Fraction(1)
        be = [[Fraction(0)] * 2 for _ in range(2)]
        be[combo[2] // 2][combo[2] % 2] = Fraction(1)
        prod = _matmul(be, al)
        want = [sum((prod[i][j] * v[j] for j in range(2)), Fraction(0)) for i in range(2)]
        assert force(got, BaseSp("A", 2)) == Vector(Vect(BaseSp("A", 2), tuple(want)))


# ---------------------------------------------------------------------------
# nl / tangent entry points


def test_nl_shapes_agree_for_body_and_curried_numeral():
    rng = random.Random(21)
    for _ in range(5):
        al = _rand_mat(rng)
        r1 = nl(church_body(2, A), _mat_value(al), ASG)
        r2 = nl(church(2, A), _mat_value(al), ASG)
        assert _as_rows(r1) == _as_rows(r2) == _matmul(al, al)


def test_nl_rejects_other_shapes():
    with pytest.raises(SemanticsError):
        nl(mk_axiom(A), Scalar(Fraction(1)), ASG)


def test_tangent_of_identity_numeral_is_identity():
    rng = random.Random(23)
    al, nu = _rand_mat(rng), _rand_mat(rng)
    got = tangent(church_body(1, A), _mat_value(al), _mat_value(nu), ASG)
    assert _as_rows(got) == nu


def test_suspended_values_compare_by_probes():
    two = den_apply(church(2, A), Scalar(Fraction(1)), ASG)
    other = den_apply(church(2, A), Scalar(Fraction(1)), ASG)
    sp = den_formula(int_type(A), ASG)
    assert values_agree(two, other, sp)
    three = den_apply(church(3, A), Scalar(Fraction(1)), ASG)
    assert not values_agree(two, three, sp)
    assert probe_equal(church(2, A), church(2, A), ASG)
    assert not probe_equal(church(2, A), church(3, A), ASG)


# ---------------------------------------------------------------------------
# Errors and limits


def test_infinite_spaces_are_refused_honestly():
    with pytest.raises(UnsupportedSpace):
        den_matrix(church(2, A), ASG)
    with pytest.raises(UnsupportedSpace):
        den_apply(mk_prom(church(2, A)), Scalar(Fraction(1)), ASG)
    from linlog.encodings import church2

    with pytest.raises(UnsupportedSpace):
        den_apply(church2(2), Scalar(Fraction(1)), {"A": 2})


# ---------------------------------------------------------------------------
# Rendering


def test_value_literals_render_and_reparse():
    from linlog.sexpr import parse_value_literal

    assert value_literal(Scalar(Fraction(3, 2))) == "3/2"
    m = matrix(E_SPACE, [[1, 2], [0, 1]])
    assert value_literal(m) == "[[1/1,2/1],[0/1,1/1]]"
    lit = parse_value_literal(value_literal(m))
    assert lit.rows == ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1)))
    v = BangVal(ket(Vect(BaseSp("A", 2), (Fraction(1), Fraction(0))), []))
    assert value_literal(v) == "ket([1/1,0/1])"
    parse_value_literal(value_literal(BangVal(
        bang_scale(Fraction(2), ket(
            Vect(BaseSp("A", 2), (Fraction(1), Fraction(2))),
            [Vect(BaseSp("A", 2), (Fraction(0), Fraction(1)))],
        ))
    )))
