import random

import pytest
from hypothesis import given, strategies as st

import oracle
from mctx.context import (
    Context1,
    ContextWord,
    CtxParSplit,
    CtxSeqSplit,
    CtxUnit,
    cartesian_canonical,
    ctx_compose,
    ctx_fill,
    ctx_identity,
    dinat_slide,
    fill,
    fill_equal,
    fills_agree,
    normalize_from_duosplice,
    par_unitor_left,
    par_unitor_left_alt,
    par_unitor_right,
    par_unitor_right_alt,
    seq_unitor_right,
    separating_fill,
    slide_out,
)
from mctx.duosplice import ParUnit, element_fill
from mctx.errors import FactorizationError, TypeMismatch
from mctx.laws import Fuzz
from mctx.splice import Splice
from mctx.theory import FREE, FinFn, FinStoch, I

from conftest import BOOL

B, BB = ("B",), ("B", "B")
NOT = BOOL.morphism(B, B, [1, 0])
AND = BOOL.morphism(BB, B, [0, 0, 0, 1])


def fuzz(seed, kind="finfn", carrier=2):
    fz = Fuzz(random.Random(seed), kind, carrier)
    fz.fresh()
    return fz


def test_copy_and_filled_with_not_is_constant_zero():
    c = Context1(BOOL.copy(B), AND, B, I)
    assert c.holes == ((B, B),)
    assert fill(c, NOT).table == (0, 0)


def test_identity_context():
    c = ctx_identity(BOOL, B, BB)
    assert c.layers[0].residuals == (I, I)
    h = BOOL.morphism(B, BB, [1, 2])
    assert fill(c, h) == h


@given(st.integers(0, 10_000))
def test_compose_with_identity_is_identity(seed):
    fz = fuzz(seed)
    c = fz.context1()
    a, b = c.outer
    x, y = c.holes[0]
    left = ctx_compose(ctx_identity(fz.t, a, b), c)
    right = ctx_compose(c, ctx_identity(fz.t, x, y))
    assert left == c
    assert right == c


@given(st.integers(0, 10_000))
def test_compose_associative(seed):
    fz = fuzz(seed)
    c = fz.context1()
    d = fz.context1(outer=c.holes[0])
    e = fz.context1(outer=d.holes[0])
    lhs = ctx_compose(ctx_compose(c, d), e)
    rhs = ctx_compose(c, ctx_compose(d, e))
    assert lhs == rhs
    h = fz.mor(*e.holes[0])
    assert fill(lhs, h) == fill(c, fill(d, fill(e, h)))


def test_compose_residual_formula():
    t = FinFn.of(A=2, M=2, N=3, P=2, Q=2, X=2)
    f = t.morphism("A", "M*X*N", [0, 11])
    g = t.morphism("M*X*N", "A", [i % 2 for i in range(12)])
    f2 = t.morphism("X", "P*X*Q", [0, 7])
    g2 = t.morphism("P*X*Q", "X", [i % 2 for i in range(8)])
    c = ctx_compose(Context1(f, g, ("M",), ("N",)), Context1(f2, g2, ("P",), ("Q",)))
    assert c.layers[0].residuals == (("M", "P"), ("Q", "N"))
    assert c.morphisms[0] == f >> (t.identity(("M",)) @ f2 @ t.identity(("N",)))
    assert c.morphisms[1] == (t.identity(("M",)) @ g2 @ t.identity(("N",))) >> g


def test_multi_layer_filler_needs_a_lone_hole():
    fz = fuzz(1)
    p = fz.ctxpar()
    s = fz.seqsplit(outer=p.holes[0])
    with pytest.raises(TypeMismatch):
        ctx_fill(p, 1, s)


@pytest.mark.parametrize("op", sorted(oracle.instances(fuzz(0))))
def test_operation_against_pointwise_oracle(op):
    fz = fuzz(7)
    for _ in range(8):
        fz.fresh()
        result, nested = oracle.instances(fz)[op]()
        bad, total = oracle.discrepancies(result, nested, fz.t.carrier(result.outer[0]))
        assert bad == 0 and total > 0


def test_oracle_detects_a_wrong_word():
    for seed in range(20):
        fz = fuzz(seed)
        result, nested = oracle.instances(fz)["laxator_left"]()
        if result.arity < 4:
            continue
        swapped = lambda fs, n=nested: n([fs[0], fs[2], fs[1], fs[3]])
        if oracle.discrepancies(result, swapped, fz.t.carrier(result.outer[0]))[0]:
            return
    pytest.fail("swapping hole order was never detected")


def test_par_unitor_forms_agree():
    for seed in range(30):
        fz = fuzz(seed)
        p = fz.ctxpar()
        u, v = fz.mor(*p.holes[0]), fz.mor(*p.holes[1])
        k1, k0 = fz.mor(*p.holes[1]), fz.mor(*p.holes[0])
        assert fill(par_unitor_left(p, u), k1) == fill(par_unitor_left_alt(p, u), k1)
        assert fill(par_unitor_right(p, v), k0) == fill(par_unitor_right_alt(p, v), k0)


def test_seq_unitor_right_with_identity():
    f = BOOL.morphism(B, B, [1, 0])
    s = CtxSeqSplit(f, BOOL.identity(B), BOOL.identity(B))
    r = seq_unitor_right(s, BOOL.identity(B))
    assert r.arity == 1
    assert fill(r, NOT) == f >> NOT


def test_normalize_splice_and_unit():
    f, g = NOT, BOOL.identity(B)
    c = normalize_from_duosplice(Splice(f, g))
    assert c.layers[0].residuals == (I, I) and c.morphisms == (f, g)
    a0, a1 = BOOL.morphism(B, I, [0, 0]), BOOL.morphism(I, B, [1])
    u = normalize_from_duosplice(ParUnit(a0, a1))
    assert u.arity == 0 and u.morphisms == (a0 >> a1,)


@given(st.integers(0, 10_000))
def test_normalize_preserves_fills(seed):
    fz = fuzz(seed)
    e = fz.rng.choice([
        lambda: fz.splice([fz.hole(), fz.hole()]),
        lambda: fz.parsplit([fz.hole(), fz.hole()]),
        lambda: fz.parunit(),
    ])()
    c = normalize_from_duosplice(e)
    hs = fz.fillers(c.holes)
    assert fill(c, *hs) == element_fill(e, hs)
    assert normalize_from_duosplice(c) is c


def test_slide_examples():
    t = FinFn.of(A=2, M=2, X=2)
    f = t.morphism("A", "M*X", [1, 2])
    g = t.morphism("M*X", "A", [0, 1, 1, 0])
    m = t.morphism("M", "M", [1, 1])
    n = t.identity(I)
    left, right = slide_out(f, g, m, n)
    assert dinat_slide(left, m, n, "forward", factor=f) == right
    assert dinat_slide(right, m, n, "backward", factor=g) == left
    ident = t.identity(("M",))
    same = Context1(f, g, ("M",), I)
    assert dinat_slide(same, ident, n, "forward", factor=f) == same


def test_slide_requires_a_factorization():
    t = FinFn.of(A=2, M=2, X=2)
    f = t.morphism("A", "M*X", [1, 2])
    g = t.morphism("M*X", "A", [0, 1, 1, 0])
    c = Context1(f, g, ("M",), I)
    wrong = t.morphism("A", "M*X", [3, 3])
    with pytest.raises(FactorizationError):
        dinat_slide(c, t.morphism("M", "M", [0, 0]), t.identity(I), "forward", factor=wrong)


def test_slide_on_free_terms_is_structural():
    f = FREE.generator("f", "A", "M*X")
    g = FREE.generator("g", "M2*Y", "B")
    m = FREE.generator("m", "M", "M2")
    left, right = slide_out(f, g, m, FREE.identity(I))
    assert dinat_slide(left, m, FREE.identity(I), "forward", factor=f) == right


@given(st.integers(0, 10_000))
def test_slide_is_fill_equal(seed):
    fz = fuzz(seed)
    a, b = fz.hole()
    x, y = fz.hole()
    M, N, M2, N2 = (fz.obj() for _ in range(4))
    f, g = fz.mor(a, M + x + N), fz.mor(M2 + y + N2, b)
    m, n = fz.mor(M, M2), fz.mor(N, N2)
    left, right = slide_out(f, g, m, n)
    assert fill_equal(left, right)
    assert fills_agree(left, right)
    h = fz.mor(x, y)
    assert fill(left, h) == fill(right, h)


def test_distinct_constant_fills_are_separated():
    zero, one = BOOL.morphism(B, B, [0, 0]), BOOL.morphism(B, B, [1, 1])
    c1 = Context1(zero, BOOL.identity(B))
    c2 = Context1(one, BOOL.identity(B))
    assert not fill_equal(c1, c2)
    sep = separating_fill(c1, c2)
    assert sep is not None and fill(c1, *sep) != fill(c2, *sep)


def test_canonical_form_of_copy_and():
    c = Context1(BOOL.copy(B), AND, B, I)
    get, rest = cartesian_canonical(c)
    assert get.table == (0, 1)
    # history A, then Y, then A again: value AND(a, y) ignoring the right copy
    assert rest.dom == ("B", "B", "B")
    assert rest.table == (0, 0, 0, 0, 0, 0, 1, 1)


def test_stochastic_equality_falls_back_to_probes():
    t = FinStoch.of(B=2)
    c1 = Context1(t.identity(B), t.identity(B))
    c2 = Context1(t.identity(B), t.morphism(B, B, [[0, 1], [1, 0]]))
    assert fill_equal(c1, c1)
    assert not fill_equal(c1, c2)


def test_context_type_errors():
    with pytest.raises(TypeMismatch):
        Context1(BOOL.copy(B), AND, ("B", "B", "B"), I)
    with pytest.raises(TypeMismatch):
        fill(Context1(NOT, NOT), AND)
    c = Context1(NOT, NOT)
    with pytest.raises(TypeMismatch):
        fill_equal(c, Context1(BOOL.copy(B), AND))


def test_shapes():
    assert CtxUnit(NOT).shape == "unit"
    assert Context1(NOT, NOT).shape == "context"
    assert CtxSeqSplit(NOT, NOT, NOT).shape == "seq"
    assert CtxParSplit(BOOL.copy(B), AND, ((B, B), (B, B))).shape == "par"
    assert isinstance(ctx_identity(BOOL, B, B), ContextWord)
