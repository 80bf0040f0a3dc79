import itertools
import random

import pytest
from hypothesis import given, strategies as st

from mctx.context import fill_equal
from mctx.errors import NotCartesian, TypeMismatch
from mctx.laws import Fuzz
from mctx.lens import (
    CartesianLens,
    Get,
    Lens,
    Lens1,
    LensSeqSplit,
    Send,
    denote,
    from_getput,
    get,
    identity_lens,
    lens_close,
    lens_compose,
    lens_equal,
    lens_fill,
    lens_par_left_unitor,
    lens_par_right_unitor,
    lens_par_split,
    lens_separating_fill,
    lens_symmetry,
    lens_tensor,
    lens_unit,
    par_fuse,
    par_lens,
    send,
    sym_normalize,
    to_getput,
)
from mctx.splice import Splice
from mctx.theory import FinFn, FinStoch, I

T2 = FinFn.of(A=2, M=2, X=2, Y=2, B=2)
A, M, X, Y, Bo = ("A",), ("M",), ("X",), ("Y",), ("B",)


def fuzz(seed, kind="finfn"):
    fz = Fuzz(random.Random(seed), kind, 2)
    fz.fresh()
    return fz


def rand_lens(fz, hole=None, outer=None, residual=None):
    a, b = outer or fz.hole()
    x, y = hole or fz.hole()
    m = fz.obj() if residual is None else residual
    return Lens1(fz.mor(a, m + x), fz.mor(m + y, b), m)


# -- the quotient over cartesian theories -------------------------------------------


def all_lenses():
    for f in T2.enumerate_hom(A, M + X):
        for g in T2.enumerate_hom(M + Y, Bo):
            yield Lens1(f, g, M)


def getput_by_hand(l):
    """get(a) is the X part of f(a); put(a, y) feeds f's M part and y to g."""
    f, g = l.morphisms
    get_ = tuple(f.table[a] % 2 for a in range(2))
    put = tuple(g.table[(f.table[a] // 2) * 2 + y] for a in range(2) for y in range(2))
    return get_, put


def test_exactly_64_classes_by_brute_force():
    lenses = list(all_lenses())
    assert len(lenses) == 256
    reps: list[Lens] = []
    classes: list[list[int]] = []
    for i, l in enumerate(lenses):
        for k, r in enumerate(reps):
            if lens_equal(l, r):
                classes[k].append(i)
                break
        else:
            reps.append(l)
            classes.append([i])
    assert len(classes) == 4 * 16
    # the partition is the one induced by the hand-computed get/put pair
    by_hand = {}
    for i, l in enumerate(lenses):
        by_hand.setdefault(getput_by_hand(l), []).append(i)
    assert sorted(map(tuple, classes)) == sorted(map(tuple, by_hand.values()))


def test_observational_agreement_is_coarser():
    """Closing with every hole filler identifies more lenses than the quotient."""
    fillers = list(T2.enumerate_hom(X, Y))
    keys = {tuple(lens_close(l, h).table for h in fillers) for l in all_lenses()}
    assert len(keys) == 36 < 64


def test_getput_roundtrip_stays_in_class():
    for l in itertools.islice(all_lenses(), 0, 256, 7):
        c = to_getput(l)
        back = from_getput(c)
        assert lens_equal(back, l)
        assert to_getput(back) == c


def test_getput_of_identity_lens():
    c = to_getput(identity_lens(T2, A, A))
    assert c.get == T2.identity(A)
    # put: A ⊗ A → A keeps the returned value
    assert c.put.table == (0, 1, 0, 1)


def test_getput_requires_cartesian():
    t = FinStoch.of(A=2)
    with pytest.raises(NotCartesian):
        to_getput(Lens1(t.identity(A), t.identity(A)))


def test_cartesian_lens_typing():
    with pytest.raises(TypeMismatch):
        CartesianLens(T2.identity(A), T2.identity(Y))


def test_slid_pair_equal_and_distinct_gets_unequal():
    f = T2.morphism(A, M + X, [1, 2])
    g = T2.morphism(M + Y, Bo, [0, 1, 1, 0])
    m = T2.morphism(M, M, [1, 0])
    left = Lens1(f >> (m @ T2.identity(X)), g, M)
    right = Lens1(f, (m @ T2.identity(Y)) >> g, M)
    assert lens_equal(left, right)
    other = Lens1(T2.morphism(A, M + X, [0, 2]), g, M)
    assert not lens_equal(left, other)
    assert lens_separating_fill(left, other) is not None


@given(st.integers(0, 10_000))
def test_lens_equal_matches_context_equality(seed):
    fz = fuzz(seed)
    l1 = rand_lens(fz)
    if fz.rng.random() < 0.5:
        m = l1.residuals[0]
        n = fz.mor(m, m)
        t = fz.t
        x, y = l1.holes[0]
        l2 = Lens1(l1[0] >> t.whisker(I, n, x), l1[1], m)
        l1 = Lens1(l1[0], t.whisker(I, n, y) >> l1[1], m)
    else:
        l2 = rand_lens(fz, l1.holes[0], l1.outer, l1.residuals[0])
    assert lens_equal(l1, l2) == fill_equal(l1.as_context(), l2.as_context())


# -- composition and tensor -----------------------------------------------------------


@given(st.integers(0, 10_000))
def test_identity_lens_is_a_unit(seed):
    fz = fuzz(seed)
    l = rand_lens(fz)
    (a, b), ((x, y),) = l.outer, l.holes
    assert lens_equal(lens_compose(identity_lens(fz.t, a, b), l), l)
    assert lens_equal(lens_compose(l, identity_lens(fz.t, x, y)), l)


def test_compose_formula():
    f1 = T2.morphism(A, M + X, [1, 2])
    g1 = T2.morphism(M + Y, Bo, [0, 1, 1, 0])
    t = FinFn.of(A=2, M=2, X=2, Y=2, B=2, P=2)
    f2 = t.morphism(X, ("P",) + X, [3, 0])
    g2 = t.morphism(("P",) + Y, Y, [0, 0, 1, 1])
    f1, g1 = (t.morphism(m.dom, m.cod, m.table) for m in (f1, g1))
    l = lens_compose(Lens1(f1, g1, M), Lens1(f2, g2, ("P",)))
    assert l.residuals == (("M", "P"),)
    assert l[0] == f1 >> (t.identity(M) @ f2)
    assert l[1] == (t.identity(M) @ g2) >> g1


@given(st.integers(0, 10_000))
def test_fill_then_compose(seed):
    fz = fuzz(seed)
    outer = rand_lens(fz)
    inner = rand_lens(fz, outer=outer.holes[0])
    h = fz.mor(*inner.holes[0])
    assert lens_close(lens_compose(outer, inner), h) == lens_close(outer, lens_close(inner, h))


@given(st.integers(0, 10_000))
def test_tensor_fill_oracle(seed):
    fz = fuzz(seed)
    l1, l2 = rand_lens(fz), rand_lens(fz)
    h, k = fz.mor(*l1.holes[0]), fz.mor(*l2.holes[0])
    assert lens_close(lens_tensor(l1, l2), h @ k) == lens_close(l1, h) @ lens_close(l2, k)


def test_tensor_with_unit_lens():
    f = T2.morphism(A, M + X, [1, 2])
    g = T2.morphism(M + Y, Bo, [0, 1, 1, 0])
    l = Lens1(f, g, M)
    assert lens_tensor(l, identity_lens(T2, I, I)) == l
    assert lens_tensor(identity_lens(T2, I, I), l) == l


@given(st.integers(0, 10_000))
def test_multi_stage_tensor(seed):
    fz = fuzz(seed)
    t = fz.t

    def two_stage():
        a, b = fz.hole()
        (x1, y1), (x2, y2) = fz.hole(), fz.hole()
        m1, m2 = fz.obj(), fz.obj()
        return LensSeqSplit(fz.mor(a, m1 + x1), fz.mor(m1 + y1, m2 + x2), fz.mor(m2 + y2, b), m1, m2)

    l1, l2 = two_stage(), two_stage()
    hs = [fz.mor(*h) for h in l1.holes]
    ks = [fz.mor(*h) for h in l2.holes]
    fused = lens_tensor(l1, l2)
    assert fused.holes == tuple((x + x2, y + y2) for (x, y), (x2, y2) in zip(l1.holes, l2.holes))
    assert lens_close(fused, *(h @ k for h, k in zip(hs, ks))) == t.tensor(lens_close(l1, *hs), lens_close(l2, *ks))


def test_parallel_bookkeeping_is_identity_on_data():
    f = T2.morphism(A, M + X + Y, [1, 6])
    g = T2.morphism(M + Y + X, Bo, [0, 1, 1, 0, 1, 1, 0, 0])
    l = Lens1(f, g, M)
    p = par_lens(l, (X, Y))
    assert p.holes == ((X, Y), (Y, X))
    assert par_fuse(p) is l
    assert par_fuse(lens_symmetry(lens_symmetry(p))) == l


@given(st.integers(0, 10_000))
def test_symmetry_and_unitors_by_filling(seed):
    fz = fuzz(seed)
    l1, l2 = rand_lens(fz), rand_lens(fz)
    p = lens_par_split(l1, l2)
    h, k = fz.mor(*p.holes[0]), fz.mor(*p.holes[1])
    t = fz.t
    s = lens_symmetry(p)
    assert lens_close(par_fuse(s), k @ h) == lens_close(par_fuse(p), h @ k)
    assert lens_close(lens_par_left_unitor(p, h), k) == lens_close(par_fuse(p), h @ k)
    assert lens_close(lens_par_right_unitor(p, k), h) == lens_close(par_fuse(p), h @ k)
    assert t.equal(lens_close(par_fuse(p), h @ k), lens_close(l1, h) @ lens_close(l2, k))


def test_fill_stage_with_morphism():
    f = T2.morphism(A, M + X, [1, 2])
    g = T2.morphism(M + Y, Bo, [0, 1, 1, 0])
    h = T2.morphism(X, Y, [1, 0])
    closed = lens_fill(Lens1(f, g, M), 1, h)
    assert closed.stages == 0
    assert closed[0] == f >> (T2.identity(M) @ h) >> g


# -- polarized embeddings ---------------------------------------------------------------


def test_polarized_objects():
    assert Send(("A", "B")).hole == denote([Send(A), Send(("B",))])
    assert denote([Send(A), Get(("B",))]) == (A, ("B",))
    assert str(Send(A)) == "!A" and str(Get(A)) == "?A"


def test_send_identity_is_identity_shaped():
    assert send(T2.identity(A)) == identity_lens(T2, A, I)
    assert get(T2.identity(A)) == identity_lens(T2, I, A)


@given(st.integers(0, 10_000))
def test_send_get_functorial(seed):
    fz = fuzz(seed)
    a, b, c = fz.obj(), fz.obj(), fz.obj()
    f, g = fz.mor(a, b), fz.mor(b, c)
    k = fz.mor(*fz.hole())
    assert send(f >> g) == lens_compose(send(f), send(g))
    assert get(f >> g) == lens_compose(get(g), get(f))
    assert lens_equal(send(f @ k), lens_tensor(send(f), send(k)))
    assert lens_equal(get(f @ k), lens_tensor(get(f), get(k)))


# -- normalization -----------------------------------------------------------------------


def test_sym_normalize_splice():
    f, g = T2.morphism(A, X, [1, 0]), T2.morphism(Y, Bo, [0, 0])
    l = sym_normalize(Splice(f, g))
    assert l == Lens1(f, g)
    assert sym_normalize(l) is l


@given(st.integers(0, 10_000))
def test_sym_normalize_preserves_fills(seed):
    fz = fuzz(seed)
    c = fz.rng.choice([fz.context1, fz.seqsplit, fz.ctxpar])()
    hs = fz.fillers(c.holes)
    from mctx.context import fill

    lens = sym_normalize(c)
    fused = [fz.t.tensor(*hs)] if c.shape == "par" else hs
    assert lens_close(lens, *fused) == fill(c, *hs)


def test_unit_lens_and_errors():
    u = lens_unit(T2.identity(A))
    assert u.stages == 0 and u.holes == ()
    with pytest.raises(TypeMismatch):
        Lens((T2.identity(A), T2.identity(A)), (M,))
    with pytest.raises(TypeMismatch):
        lens_tensor(u, Lens1(T2.identity(A), T2.identity(A)))
