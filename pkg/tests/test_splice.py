import random

import pytest
from hypothesis import given, strategies as st

from mctx.errors import TypeMismatch
from mctx.splice import (
    Splice,
    SpliceTree,
    fill_all,
    identity_splice,
    splice_alpha,
    splice_alpha_inv,
    splice_fill,
    splice_lambda,
    splice_rho,
    splices_equal,
)
from mctx.theory import FinFn

from conftest import BOOL, random_map

B, BB = ("B",), ("B", "B")
T = FinFn.of(A=2, B=2, C=3)


def rand_splice(rng, holes, outer):
    ends = [outer[0]] + [y for _, y in holes]
    starts = [x for x, _ in holes] + [outer[1]]
    return Splice(*(random_map(rng, T, d, c) for d, c in zip(ends, starts)))


def rand_obj(rng):
    return tuple(rng.choice("ABC") for _ in range(rng.randint(0, 2)))


def rand_hole(rng):
    return rand_obj(rng), rand_obj(rng)


def test_fill_fuses_boundaries():
    f, g, h = (BOOL.morphism(B, B, t) for t in ([1, 0], [0, 0], [0, 1]))
    u, v = BOOL.morphism(B, B, [1, 1]), BOOL.morphism(B, B, [1, 0])
    c = Splice(f, g, h)
    d = Splice(u, v)
    assert splice_fill(c, 1, d) == Splice(f >> u, v >> g, h)


def test_fill_with_identity_splice_is_noop(rng):
    c = rand_splice(rng, [(("A",), B), (B, ("C",))], (("C",), ("A",)))
    for i in (1, 2):
        x, y = c.holes[i - 1]
        # identity splice only fits where the hole is square; use a 1-hole splice of identities instead
        ident = Splice(T.identity(x), T.identity(y))
        assert splice_fill(c, i, ident) == c


def test_identity_splice_fills_to_filler():
    h = BOOL.morphism(B, B, [1, 0])
    assert fill_all(identity_splice(BOOL, B, B), [h]) == h


def test_and_not_tables_two_ways():
    copy, AND, NOT = BOOL.copy(B), BOOL.morphism(BB, B, [0, 0, 0, 1]), BOOL.morphism(B, B, [1, 0])
    c = Splice(copy, AND)  # hole (B⊗B, B⊗B)
    inner = Splice(NOT @ BOOL.identity(B), BOOL.identity(BB))
    h = BOOL.morphism(BB, BB, [3, 0, 0, 3])
    fused = fill_all(splice_fill(c, 1, inner), [h])
    assert fused == copy >> (NOT @ BOOL.identity(B)) >> h >> AND
    # a ↦ (¬a, a) ↦ h ↦ AND: h sends (1,0) and (0,1) to (0,0), so the result is constant 0
    assert fused.table == (0, 0)


@given(st.integers(0, 10_000))
def test_fill_commutes_with_closing(seed):
    rng = random.Random(seed)
    c = rand_splice(rng, [rand_hole(rng), rand_hole(rng)], rand_hole(rng))
    i = rng.choice([1, 2])
    d = rand_splice(rng, [rand_hole(rng)], c.holes[i - 1])
    hs = [random_map(rng, T, *h) for h in splice_fill(c, i, d).holes]
    filled = fill_all(splice_fill(c, i, d), hs)
    inner_closed = fill_all(d, [hs[i - 1]])
    outer = [hs[0], inner_closed] if i == 2 else [inner_closed, hs[1]]
    assert filled == fill_all(c, outer)


@given(st.integers(0, 10_000))
def test_alpha_preserves_flattening(seed):
    rng = random.Random(seed)
    g = rand_splice(rng, [rand_hole(rng), rand_hole(rng)], rand_hole(rng))
    f = rand_splice(rng, [rand_hole(rng), g.outer], rand_hole(rng))
    h, k = splice_alpha(f, g)
    assert splice_fill(f, 2, g) == splice_fill(h, 1, k)
    assert k.outer == h.holes[0]
    f2, g2 = splice_alpha_inv(h, k)
    assert splice_fill(f2, 2, g2) == splice_fill(f, 2, g)


def test_alpha_flattening_is_the_quadruple():
    f0, f1, f2 = (BOOL.morphism(B, B, t) for t in ([1, 0], [0, 0], [1, 1]))
    g0, g1, g2 = (BOOL.morphism(B, B, t) for t in ([0, 1], [1, 0], [0, 0]))
    flat = splice_fill(Splice(f0, f1, f2), 2, Splice(g0, g1, g2))
    assert flat == Splice(f0, f1 >> g0, g1, g2 >> f2)


def test_alpha_with_identity_inner_split():
    f = Splice(*(BOOL.morphism(B, B, t) for t in ([1, 0], [0, 1], [1, 1])))
    g = Splice(BOOL.identity(B), BOOL.identity(B), BOOL.identity(B))
    h, k = splice_alpha(f, g)
    assert splice_fill(h, 1, k) == Splice(f[0], f[1], BOOL.identity(B), f[2])


def test_unitors():
    f0, f1, f2 = (BOOL.morphism(B, B, t) for t in ([1, 0], [0, 1], [1, 1]))
    u = BOOL.morphism(B, B, [0, 0])
    s = Splice(f0, f1, f2)
    assert splice_lambda(s, u) == Splice(f0 >> u >> f1, f2)
    assert splice_rho(s, BOOL.identity(B)) == Splice(f0, f1 >> f2)


@given(st.integers(0, 10_000))
def test_pentagon(seed):
    rng = random.Random(seed)
    c = rand_splice(rng, [rand_hole(rng), rand_hole(rng)], rand_hole(rng))
    b = rand_splice(rng, [rand_hole(rng), c.outer], rand_hole(rng))
    a = rand_splice(rng, [rand_hole(rng), b.outer], rand_hole(rng))
    h, k = splice_alpha(a, b)
    h2, k2 = splice_alpha(h, c)
    route_a = SpliceTree(h2, (SpliceTree(k2, (k, None)), None)).flatten()
    bh, bk = splice_alpha(b, c)
    h3, k3 = splice_alpha(a, bh)
    k4, bk4 = splice_alpha(k3, bk)
    route_b = SpliceTree(h3, (SpliceTree(k4, (bk4, None)), None)).flatten()
    assert splices_equal(route_a, route_b)


@given(st.integers(0, 10_000))
def test_triangle(seed):
    rng = random.Random(seed)
    hole = rand_hole(rng)
    b = rand_splice(rng, [hole, rand_hole(rng)], rand_hole(rng))
    a = rand_splice(rng, [rand_hole(rng), b.outer], rand_hole(rng))
    u = random_map(rng, T, *hole)
    h, k = splice_alpha(a, b)
    assert splice_fill(a, 2, splice_lambda(b, u)) == splice_fill(h, 1, splice_rho(k, u))


def test_type_errors():
    s = Splice(BOOL.identity(B), BOOL.identity(B))
    with pytest.raises(TypeMismatch):
        splice_fill(s, 1, BOOL.copy(B))
    with pytest.raises(IndexError):
        splice_fill(s, 2, BOOL.identity(B))
    with pytest.raises(TypeMismatch):
        splice_alpha(s, s)
    with pytest.raises(TypeMismatch):
        Splice(BOOL.identity(B), FinFn.of(B=3).identity(B))
