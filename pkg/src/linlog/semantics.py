"""Evaluation of proofs in finite-dimensional vector-space semantics.

A formula denotes a space: variables get chosen finite dimensions, `1`
the ground field, `*` a tensor product, `-o` a hom space, `!` the
cofree coalgebra from `coalgebra`.  A proof of A₁, …, A_g ⊢ C denotes a
linear map ⟦A₁⟧ ⊗ … ⊗ ⟦A_g⟧ → ⟦C⟧; `den_apply` evaluates that map on
one explicit element, exactly.

Values are carried as `SemValue`:

  Scalar     element of the ground field
  Vector     element of a finite base/tensor space (explicit coords)
  Matrix     element of a finite hom space (rows indexed by codomain)
  Bang       element of !V, V finite (canonical ket combination)
  Pair       element of a product of context slots (sum of pure terms)
  Suspended  element of a hom space, as an unapplied abstraction node
             with its captured environment; applied lazily, and
             materialized to a Matrix whenever the hom space is finite

The evaluator keeps the context as a tuple of per-slot values and
restores multilinearity by branching: contraction branches over the
coproduct's terms, tensor-left over coordinates, and a `Pair` input
over its pure terms.  Everything is `fractions.Fraction`; there are no
tolerances anywhere.

Limits, enforced honestly with `UnsupportedSpace`: quantified formulas
denote nothing here (second-order proofs are syntax/rewriting only),
and no ket may be based in an infinite space, so promotion requires a
finite boxed space.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .coalgebra import (
    BangElem,
    BangSp,
    BaseSp,
    HomSp,
    Space,
    TensorSp,
    UnitSp,
    Vect,
    bang_from_terms,
    coproduct,
    counit,
    dereliction,
    is_finite,
    ket,
    lift,
    merge,
    space_dim,
    space_label,
    split,
    tensor_from_terms,
    TensorElem,
    vacuum,
    zero_bang,
)
from .formula import Bang as BangF
from .formula import Forall, Formula, Lolli, One, Sequent, Tensor, Var
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
)
from .sexpr import format_fraction


class SemanticsError(Exception):
    pass


class UnsupportedSpace(SemanticsError):
    """Raised when evaluation would need an infinite-dimensional basis
    (a ket based in an infinite space, a second-order formula, …)."""


# ---------------------------------------------------------------------------
# Spaces of formulas


def den_formula(a: Formula, asg: Mapping[str, int]) -> Space:
    """The space of a formula under a dimension assignment."""
    return _den_formula(a, tuple(sorted(asg.items())))


@lru_cache(maxsize=None)
def _den_formula(a: Formula, asg: tuple[tuple[str, int], ...]) -> Space:
    if isinstance(a, Var):
        for name, dim in asg:
            if name == a.name:
                return BaseSp(a.name, dim)
        raise SemanticsError(f"no dimension assigned to variable {a.name}")
    if isinstance(a, One):
        return UnitSp()
    if isinstance(a, Tensor):
        return TensorSp(_den_formula(a.left, asg), _den_formula(a.right, asg))
    if isinstance(a, Lolli):
        return HomSp(_den_formula(a.ante, asg), _den_formula(a.cons, asg))
    if isinstance(a, BangF):
        return BangSp(_den_formula(a.body, asg))
    if isinstance(a, Forall):
        raise UnsupportedSpace("quantified formulas have no finite denotation")
    raise TypeError(f"not a formula: {a!r}")


# ---------------------------------------------------------------------------
# Values


@dataclass(frozen=True)
class Scalar:
    value: Fraction


@dataclass(frozen=True)
class Vector:
    vec: Vect


@dataclass(frozen=True)
class Matrix:
    space: HomSp
    rows: tuple[tuple[Fraction, ...], ...]  # rows[i][j]: cod index i, dom index j


@dataclass(frozen=True)
class BangVal:
    elem: BangElem


@dataclass(frozen=True)
class Pair:
    elem: TensorElem


@dataclass(frozen=True)
class Suspended:
    node: Proof  # a validated abstraction (⊸R) node
    env: tuple["SemValue", ...]


SemValue = Scalar | Vector | Matrix | BangVal | Pair | Suspended


def matrix(space: HomSp, rows: Sequence[Sequence]) -> Matrix:
    return Matrix(space, tuple(tuple(Fraction(c) for c in row) for row in rows))


def _require_finite(space: Space, what: str) -> int:
    d = space_dim(space)
    if d is None:
        raise UnsupportedSpace(f"{what} needs a finite space, got {space_label(space)}")
    return d


def basis_value(space: Space, k: int) -> SemValue:
    d = _require_finite(space, "basis enumeration")
    if not 0 <= k < d:
        raise ValueError(f"basis index {k} out of range for dimension {d}")
    if isinstance(space, UnitSp):
        return Scalar(Fraction(1))
    if isinstance(space, HomSp):
        dd = space_dim(space.dom)
        i, j = divmod(k, dd)
        rows = tuple(
            tuple(Fraction(1 if (r, c) == (i, j) else 0) for c in range(dd))
            for r in range(space_dim(space.cod))
        )
        return Matrix(space, rows)
    coords = tuple(Fraction(1 if i == k else 0) for i in range(d))
    return Vector(Vect(space, coords))


def zero_value(space: Space) -> SemValue:
    if isinstance(space, BangSp):
        return BangVal(zero_bang(space.inner))
    d = _require_finite(space, "zero value")
    if isinstance(space, UnitSp):
        return Scalar(Fraction(0))
    if isinstance(space, HomSp):
        dd = space_dim(space.dom)
        return Matrix(space, tuple((Fraction(0),) * dd for _ in range(d // dd)))
    return Vector(Vect(space, (Fraction(0),) * d))


def flatten(v: SemValue, space: Space) -> tuple[Fraction, ...]:
    """Coordinates of a value over the standard basis of a finite space."""
    if type(v) is Vector:  # hot path; coordinates are already flat
        return v.vec.coords
    if type(v) is Matrix:
        return tuple(c for row in v.rows for c in row)
    v = force(v, space)
    if isinstance(v, Scalar):
        return (v.value,)
    if isinstance(v, Vector):
        return v.vec.coords
    if isinstance(v, Matrix):
        return tuple(c for row in v.rows for c in row)
    raise UnsupportedSpace(f"no coordinates over {space_label(space)}")


def unflatten(coords: Sequence[Fraction], space: Space) -> SemValue:
    if isinstance(space, UnitSp):
        return Scalar(coords[0])
    if isinstance(space, HomSp):
        dd = space_dim(space.dom)
        rows = tuple(
            tuple(coords[i * dd : (i + 1) * dd]) for i in range(space_dim(space.cod))
        )
        return Matrix(space, rows)
    return Vector(Vect(space, tuple(coords)))


def force(v: SemValue, space: Space) -> SemValue:
    """Canonical representative of a value in its space: Scalar for the
    unit, Vector for base/tensor, Matrix for finite homs, Bang for !V.
    Materializes Suspended abstractions when the hom space is finite."""
    if isinstance(v, Suspended):
        if not isinstance(space, HomSp):
            raise SemanticsError("abstraction value in a non-hom space")
        dd = _require_finite(space.dom, "materializing an abstraction")
        dc = _require_finite(space.cod, "materializing an abstraction")
        cols = []
        for j in range(dd):
            img = apply_hom(v, basis_value(space.dom, j))
            cols.append(flatten(img, space.cod))
        rows = tuple(tuple(cols[j][i] for j in range(dd)) for i in range(dc))
        return Matrix(space, rows)
    if isinstance(v, BangVal):
        if not isinstance(space, BangSp):
            raise SemanticsError("bang value in a non-bang space")
        return v
    if isinstance(v, Scalar) and not isinstance(space, UnitSp):
        d = _require_finite(space, "coercing a scalar")
        if d == 1:
            return unflatten((v.value,), space)
        raise SemanticsError("scalar value in a higher-dimensional space")
    if isinstance(v, Vector) and isinstance(space, HomSp):
        return unflatten(v.vec.coords, space)
    if isinstance(v, Vector) and isinstance(space, UnitSp):
        return Scalar(v.vec.coords[0])
    if isinstance(v, Matrix) and not isinstance(space, HomSp):
        return unflatten(tuple(c for row in v.rows for c in row), space)
    if isinstance(v, Pair):
        raise SemanticsError("context tuples cannot be coerced to one slot")
    return v


def vadd(a: SemValue, b: SemValue, space: Space) -> SemValue:
    a, b = force(a, space), force(b, space)
    if isinstance(a, Scalar):
        return Scalar(a.value + b.value)
    if isinstance(a, Vector):
        return Vector(Vect(a.vec.space, tuple(x + y for x, y in zip(a.vec.coords, b.vec.coords))))
    if isinstance(a, Matrix):
        return Matrix(
            a.space,
            tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)),
        )
    if isinstance(a, BangVal):
        acc = dict(a.elem.terms)
        for k, c in b.elem.terms:
            acc[k] = acc.get(k, Fraction(0)) + c
        return BangVal(bang_from_terms(a.elem.space, acc))
    raise SemanticsError(f"cannot add values of kind {type(a).__name__}")


def vscale(c: Fraction, v: SemValue, space: Space) -> SemValue:
    v = force(v, space)
    if isinstance(v, Scalar):
        return Scalar(c * v.value)
    if isinstance(v, Vector):
        return Vector(Vect(v.vec.space, tuple(c * x for x in v.vec.coords)))
    if isinstance(v, Matrix):
        return Matrix(v.space, tuple(tuple(c * x for x in row) for row in v.rows))
    if isinstance(v, BangVal):
        if c == 0:
            return BangVal(zero_bang(v.elem.space))
        return BangVal(BangElem(v.elem.space, tuple((k, c * x) for k, x in v.elem.terms)))
    raise SemanticsError(f"cannot scale values of kind {type(v).__name__}")


def _dot(row: tuple[Fraction, ...], x: tuple[Fraction, ...]) -> Fraction:
    # running integer numerator/denominator; one normalization at the end
    num, den = 0, 1
    for r, c in zip(row, x):
        rn = r.numerator * c.numerator
        if rn == 0:
            continue
        rd = r.denominator * c.denominator
        num = num * rd + rn * den
        den *= rd
    return Fraction(num, den)


def apply_hom(psi: SemValue, a: SemValue) -> SemValue:
    """Evaluation v ⊗ ψ ↦ ψ(v) of a hom-space value on an argument."""
    if isinstance(psi, Suspended):
        return _den_env(psi.node.premises[0], (a,) + psi.env, psi.asg)  # type: ignore[attr-defined]
    if isinstance(psi, Matrix):
        x = flatten(a, psi.space.dom)
        coords = tuple(_dot(row, x) for row in psi.rows)
        return unflatten(coords, psi.space.cod)
    if isinstance(psi, Vector) and isinstance(psi.vec.space, HomSp):
        return apply_hom(unflatten(psi.vec.coords, psi.vec.space), a)
    raise SemanticsError(f"cannot apply a {type(psi).__name__} as a hom value")


# Suspended captures the assignment alongside the environment; kept out
# of the dataclass signature so value equality ignores it is *not* an
# option — two closures under different assignments are different.
# Simplest is to stash it as a third field at construction time.


def _suspend(node: Proof, env: tuple[SemValue, ...], asg: Mapping[str, int]) -> Suspended:
    s = Suspended(node, env)
    object.__setattr__(s, "asg", asg)
    return s


# ---------------------------------------------------------------------------
# The evaluator


def _ctx_spaces(seq: Sequent, asg: Mapping[str, int]) -> list[Space]:
    return [den_formula(f, asg) for f in seq.context]


def _desc_to_value(desc, space: Space) -> SemValue:
    if isinstance(space, BangSp):
        return BangVal(BangElem(space.inner, ((desc, Fraction(1)),)))
    return basis_value(space, desc)


def den_apply(p: Proof, input: SemValue, asg: Mapping[str, int]) -> SemValue:
    """Evaluate ⟦p⟧ on one element of ⟦context⟧.

    For an empty context pass a Scalar; for a single hypothesis, the
    bare value; for several, a Pair whose terms span the slots.
    """
    ctx = p.conclusion.context
    branches: list[tuple[Fraction, tuple[SemValue, ...]]]
    if len(ctx) == 0:
        c = input.value if isinstance(input, Scalar) else None
        if c is None:
            raise SemanticsError("empty context takes a Scalar input")
        branches = [(c, ())]
    elif isinstance(input, Pair):
        spaces = _ctx_spaces(p.conclusion, asg)
        if len(input.elem.factors) != len(ctx):
            raise SemanticsError("input arity does not match the context")
        branches = [
            (c, tuple(_desc_to_value(d, s) for d, s in zip(key, spaces)))
            for key, c in input.elem.terms
        ]
    elif len(ctx) == 1:
        branches = [(Fraction(1), (input,))]
    else:
        raise SemanticsError("multi-hypothesis contexts take a Pair input")
    out: SemValue | None = None
    for c, env in branches:
        r = _den_env(p, env, asg)
        r = r if c == 1 else vscale(c, r, den_formula(p.conclusion.conclusion, asg))
        out = r if out is None else vadd(out, r, den_formula(p.conclusion.conclusion, asg))
    if out is None:
        return zero_value(den_formula(p.conclusion.conclusion, asg))
    return out


def _den_env(p: Proof, env: tuple[SemValue, ...], asg: Mapping[str, int]) -> SemValue:
    rule = p.rule
    # ordered with the rules hot in normal-form evaluation first
    if isinstance(rule, Axiom):
        return env[0]
    if isinstance(rule, LolliL):
        left, right = p.premises
        at = rule.at
        n = len(left.conclusion.context)
        a = _den_env(left, env[at : at + n], asg)
        b = apply_hom(env[at + n], a)
        # a zero slot forces a zero result (slot-wise multilinearity)
        if isinstance(b, Vector) and not any(b.vec.coords):
            return zero_value(den_formula(p.conclusion.conclusion, asg))
        return _den_env(right, env[:at] + (b,) + env[at + n + 1 :], asg)
    if isinstance(rule, Dereliction):
        at = rule.at
        v = env[at]
        if not isinstance(v, BangVal):
            raise SemanticsError("dereliction expects a bang value")
        w = dereliction(v.elem)
        if not any(w.coords):
            return zero_value(den_formula(p.conclusion.conclusion, asg))
        slot = den_formula(p.premises[0].conclusion.context[at], asg)
        env2 = env[:at] + (unflatten(w.coords, slot),) + env[at + 1 :]
        return _den_env(p.premises[0], env2, asg)
    if isinstance(rule, Contraction):
        at = rule.at
        v = env[at]
        if not isinstance(v, BangVal):
            raise SemanticsError("contraction expects a bang value")
        cspace = den_formula(p.conclusion.conclusion, asg)
        out: SemValue | None = None
        for (kl, kr), c in coproduct(v.elem).terms:
            env2 = (
                env[:at]
                + (
                    BangVal(BangElem(v.elem.space, ((kl, Fraction(1)),))),
                    BangVal(BangElem(v.elem.space, ((kr, Fraction(1)),))),
                )
                + env[at + 1 :]
            )
            r = _den_env(p.premises[0], env2, asg)
            if c != 1:
                r = vscale(c, r, cspace)
            out = r if out is None else vadd(out, r, cspace)
        return out if out is not None else zero_value(cspace)
    if isinstance(rule, Exchange):
        at = rule.at
        swapped = env[:at] + (env[at + 1], env[at]) + env[at + 2 :]
        return _den_env(p.premises[0], swapped, asg)
    if isinstance(rule, Cut):
        left, right = p.premises
        at = rule.at
        n = len(left.conclusion.context)
        a = _den_env(left, env[at : at + n], asg)
        return _den_env(right, env[:at] + (a,) + env[at + n :], asg)
    if isinstance(rule, TensorR):
        left, right = p.premises
        n = len(left.conclusion.context)
        space = den_formula(p.conclusion.conclusion, asg)
        _require_finite(space, "a tensor-pairing value")
        xa = flatten(_den_env(left, env[:n], asg), space.left)
        xb = flatten(_den_env(right, env[n:], asg), space.right)
        coords = tuple(a * b for a in xa for b in xb)
        return unflatten(coords, space)
    if isinstance(rule, TensorL):
        at = rule.at
        f = p.conclusion.context[at]
        space = den_formula(f, asg)
        _require_finite(space, "splitting a tensor hypothesis")
        coords = flatten(env[at], space)
        db = space_dim(space.right)
        out: SemValue | None = None
        cspace = den_formula(p.conclusion.conclusion, asg)
        for idx, c in enumerate(coords):
            if c == 0:
                continue
            i, j = divmod(idx, db)
            env2 = (
                env[:at]
                + (basis_value(space.left, i), basis_value(space.right, j))
                + env[at + 1 :]
            )
            r = vscale(c, _den_env(p.premises[0], env2, asg), cspace)
            out = r if out is None else vadd(out, r, cspace)
        return out if out is not None else zero_value(cspace)
    if isinstance(rule, LolliR):
        return _suspend(p, env, asg)
    if isinstance(rule, Promotion):
        inner = den_formula(p.premises[0].conclusion.conclusion, asg)
        _require_finite(inner, "boxing a proof")
        elems = []
        for v in env:
            if not isinstance(v, BangVal):
                raise SemanticsError("promotion hypotheses must carry bang values")
            elems.append(v.elem)
        merged = merge(elems)

        def phi(x: BangElem) -> Vect:
            total = (Fraction(0),) * space_dim(inner)
            for key, c in x.terms:
                single = BangElem(x.space, ((key, Fraction(1)),))
                parts = split(single)
                sub = tuple(BangVal(e) for e in parts)
                img = flatten(_den_env(p.premises[0], sub, asg), inner)
                total = tuple(t + c * y for t, y in zip(total, img))
            return Vect(inner, total)

        return BangVal(lift(phi, merged, out_space=inner))
    if isinstance(rule, Weakening):
        at = rule.at
        v = env[at]
        if not isinstance(v, BangVal):
            raise SemanticsError("weakening expects a bang value")
        c = counit(v.elem)
        r = _den_env(p.premises[0], env[:at] + env[at + 1 :], asg)
        if c == 1:
            return r
        return vscale(c, r, den_formula(p.conclusion.conclusion, asg))
    if isinstance(rule, OneL):
        at = rule.at
        v = force(env[at], UnitSp())
        r = _den_env(p.premises[0], env[:at] + env[at + 1 :], asg)
        if v.value == 1:
            return r
        return vscale(v.value, r, den_formula(p.conclusion.conclusion, asg))
    if isinstance(rule, OneR):
        return Scalar(Fraction(1))
    if isinstance(rule, (ForallR, ForallL)):
        raise UnsupportedSpace("second-order proofs have no finite denotation")
    raise TypeError(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# Derived entry points


def den_matrix(p: Proof, asg: Mapping[str, int]) -> list[list[Fraction]]:
    """⟦p⟧ as an exact matrix over the standard bases (finite spaces only).

    Rows index the conclusion's basis; columns index the context's
    product basis, first hypothesis slowest.
    """
    spaces = _ctx_spaces(p.conclusion, asg)
    dims = [_require_finite(s, "materializing a denotation") for s in spaces]
    cspace = den_formula(p.conclusion.conclusion, asg)
    dc = _require_finite(cspace, "materializing a denotation")
    cols = []
    for combo in itertools.product(*[range(d) for d in dims]):
        env = tuple(basis_value(s, k) for s, k in zip(spaces, combo))
        cols.append(flatten(_den_env(p, env, asg), cspace))
    return [[cols[j][i] for j in range(len(cols))] for i in range(dc)]


def _bang_hypothesis_space(p: Proof, asg: Mapping[str, int]) -> tuple[Space, bool]:
    """The !-hypothesis space of a proof shaped !B ⊢ C or ⊢ !B ⊸ C.

    Returns (⟦B⟧, curried?).
    """
    seq = p.conclusion
    if len(seq.context) == 1 and isinstance(seq.context[0], BangF):
        return den_formula(seq.context[0].body, asg), False
    if (
        len(seq.context) == 0
        and isinstance(seq.conclusion, Lolli)
        and isinstance(seq.conclusion.ante, BangF)
    ):
        return den_formula(seq.conclusion.ante.body, asg), True
    raise SemanticsError("expected a proof of !B ⊢ C or of ⊢ !B -o C")


def _apply_bang(p: Proof, x: BangElem, asg: Mapping[str, int], curried: bool) -> SemValue:
    if curried:
        h = den_apply(p, Scalar(Fraction(1)), asg)
        out = apply_hom(h, BangVal(x))
        space = den_formula(p.conclusion.conclusion.cons, asg)
    else:
        out = den_apply(p, BangVal(x), asg)
        space = den_formula(p.conclusion.conclusion, asg)
    return force(out, space)


def _point_coords(point: object, space: Space) -> tuple[Fraction, ...]:
    """Coordinates of a point given either as a semantic value or as a
    raw rational / sequence / matrix of rationals."""
    if isinstance(point, (Scalar, Vector, Matrix, BangVal, Pair, Suspended)):
        return flatten(point, space)
    if isinstance(point, (int, Fraction)):
        coords: tuple[Fraction, ...] = (Fraction(point),)
    else:
        flat: list[Fraction] = []
        for row in point:  # type: ignore[union-attr]
            if isinstance(row, (int, Fraction)):
                flat.append(Fraction(row))
            else:
                flat.extend(Fraction(x) for x in row)
        coords = tuple(flat)
    if len(coords) != _require_finite(space, "a point"):
        raise SemanticsError(
            f"point has {len(coords)} coordinates but {space_label(space)} "
            f"has dimension {space_dim(space)}"
        )
    return coords


def nl(p: Proof, point: object, asg: Mapping[str, int]) -> SemValue:
    """The nonlinear denotation: evaluate ⟦p⟧ on the vacuum at a point."""
    space, curried = _bang_hypothesis_space(p, asg)
    base = Vect(space, _point_coords(point, space))
    return _apply_bang(p, vacuum(base), asg, curried)


def tangent(rho: Proof, base: object, q: object, asg: Mapping[str, int]) -> SemValue:
    """The differential of the nonlinear denotation at ``base`` in the
    direction ``q``: evaluate ⟦rho⟧ on the one-argument ket |q⟩_base."""
    space, curried = _bang_hypothesis_space(rho, asg)
    b = Vect(space, _point_coords(base, space))
    v = Vect(space, _point_coords(q, space))
    return _apply_bang(rho, ket(b, [v]), asg, curried)


# ---------------------------------------------------------------------------
# Probes


def standard_probes(
    space: Space, depth: int = 2, seed: int = 0, points: int = 5
) -> list[BangElem]:
    """Deterministic probe kets over !space: for each of ``points``
    seeded rational base points, every ket of at most ``depth`` standard
    basis arguments (with repetition, order-free)."""
    d = _require_finite(space, "probing")
    rng = random.Random(seed)
    out = []
    for _ in range(points):
        base = Vect(space, tuple(Fraction(rng.randint(-3, 3)) for _ in range(d)))
        for s in range(depth + 1):
            for args in itertools.combinations_with_replacement(range(d), s):
                out.append(BangElem(space, (((base.coords, args), Fraction(1)),)))
    return out


def probe_inputs(
    p: Proof, asg: Mapping[str, int], depth: int = 2, seed: int = 0, points: int = 5
) -> list[SemValue]:
    """The standard probe set for ⟦context⟧: full standard bases on
    finite slots, `standard_probes` kets on bang slots, combined
    slot-wise into Pair inputs."""
    spaces = _ctx_spaces(p.conclusion, asg)
    if not spaces:
        return [Scalar(Fraction(1))]
    per_slot: list[list] = []
    for s in spaces:
        if isinstance(s, BangSp):
            per_slot.append([e.terms[0][0] for e in standard_probes(s.inner, depth, seed, points)])
        else:
            per_slot.append(list(range(_require_finite(s, "probing"))))
    values = []
    for combo in itertools.product(*per_slot):
        if len(spaces) == 1:
            values.append(_desc_to_value(combo[0], spaces[0]))
        else:
            values.append(Pair(tensor_from_terms(tuple(spaces), {combo: Fraction(1)})))
    return values


def values_agree(
    a: SemValue,
    b: SemValue,
    space: Space,
    depth: int = 2,
    seed: int = 0,
    points: int = 5,
) -> bool:
    """Exact equality of two values; elements of an infinite hom space
    are compared by applying both to the standard probe kets."""
    if is_finite(space):
        return force(a, space) == force(b, space)
    if isinstance(space, BangSp):
        return force(a, space) == force(b, space)
    if isinstance(space, HomSp) and isinstance(space.dom, BangSp):
        for e in standard_probes(space.dom.inner, depth, seed, points):
            ra = apply_hom(a, BangVal(e))
            rb = apply_hom(b, BangVal(e))
            if not values_agree(ra, rb, space.cod, depth, seed, points):
                return False
        return True
    raise UnsupportedSpace(f"cannot compare values over {space_label(space)}")


def probe_equal(
    p: Proof,
    q: Proof,
    asg: Mapping[str, int],
    depth: int = 2,
    seed: int = 0,
    points: int = 5,
) -> bool:
    """Exact agreement of two proofs' denotations on the standard probe
    set (conclusions must match; contexts must already agree)."""
    if p.conclusion != q.conclusion:
        return False
    cspace = den_formula(p.conclusion.conclusion, asg)
    for v in probe_inputs(p, asg, depth, seed, points):
        a = den_apply(p, v, asg)
        b = den_apply(q, v, asg)
        if not values_agree(a, b, cspace, depth, seed, points):
            return False
    return True


# ---------------------------------------------------------------------------
# Rendering (the value-literal syntax accepted back by the parser)


def value_literal(v: SemValue) -> str:
    if isinstance(v, Scalar):
        return format_fraction(v.value)
    if isinstance(v, Vector):
        return "[" + ",".join(format_fraction(c) for c in v.vec.coords) + "]"
    if isinstance(v, Matrix):
        return (
            "["
            + ",".join(
                "[" + ",".join(format_fraction(c) for c in row) + "]" for row in v.rows
            )
            + "]"
        )
    if isinstance(v, BangVal):
        if not v.elem.terms:
            return "0/1"
        parts = []
        for (base, args), c in v.elem.terms:
            ket_s = (
                "ket(["
                + ",".join(format_fraction(x) for x in base)
                + "]"
                + (
                    "; "
                    + ", ".join(
                        "["
                        + ",".join(
                            format_fraction(Fraction(1 if i == a else 0))
                            for i in range(len(base))
                        )
                        + "]"
                        for a in args
                    )
                    if args
                    else ""
                )
                + ")"
            )
            parts.append(ket_s if c == 1 else f"{format_fraction(c)} * {ket_s}")
        return " + ".join(parts)
    raise SemanticsError(f"no literal rendering for {type(v).__name__}")
