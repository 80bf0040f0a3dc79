"""Monoidal contexts: morphisms with holes flanked by two-sided residuals.

Every value is a :class:`ContextWord`, an alternating list of morphisms and
*layers*.  A layer is the cut between two consecutive morphisms; it carries
residual wires ``R0 .. Rk`` and holes ``(X1,Y1) .. (Xk,Yk)`` laid out as
``R0 ⊗ X1 ⊗ R1 ⊗ ... ⊗ Xk ⊗ Rk`` on the way in and with ``Y`` in place of
``X`` on the way out.  The familiar shapes are special cases:

=================  =========================================
shape              layers
=================  =========================================
unit               none (a plain morphism ``A → B``)
context            one layer with one hole
parallel split     one layer with two holes
sequential split   two layers with one hole each
=================  =========================================

Values are representatives; the quotient by sliding morphisms along
residual wires is decided separately by :func:`fill_equal`.  Because
objects are strict, residuals equal to ``I`` are simply empty tuples and
vanish on their own.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .duosplice import ParSplit, ParUnit
from .errors import EnumerationTooLarge, FactorizationError, TypeMismatch, UndecidedEquality
from .splice import Hole, Splice
from .theory import ENUMERATION_BUDGET, FinFn, FinFnMorphism, I, Morphism, Obj, Theory, require_cartesian, show


def _cat(*objs: Obj) -> Obj:
    return tuple(a for o in objs for a in o)


def _strip(whole: Obj, left: Obj, right: Obj, what: str) -> Obj:
    """``whole`` with the prefix ``left`` and suffix ``right`` removed."""
    if whole[: len(left)] != left or len(whole) < len(left) + len(right):
        raise TypeMismatch(f"{what}: {show(whole)} does not start with {show(left)}")
    middle = whole[len(left): len(whole) - len(right)]
    if _cat(left, middle, right) != whole:
        raise TypeMismatch(f"{what}: {show(whole)} does not end with {show(right)}")
    return middle


@dataclass(frozen=True)
class Layer:
    residuals: tuple[Obj, ...]
    holes: tuple[Hole, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "residuals", tuple(tuple(r) for r in self.residuals))
        object.__setattr__(self, "holes", tuple((tuple(x), tuple(y)) for x, y in self.holes))
        if len(self.residuals) != len(self.holes) + 1:
            raise TypeMismatch("a layer with k holes needs k+1 residuals")
        if not self.holes:
            raise TypeMismatch("a layer needs at least one hole")

    def blocks(self, side: int) -> list[Obj]:
        """``[R0, X1, R1, ...]`` for side 0, ``[R0, Y1, R1, ...]`` for side 1."""
        out = [self.residuals[0]]
        for hole, r in zip(self.holes, self.residuals[1:]):
            out += [hole[side], r]
        return out

    @property
    def opening(self) -> Obj:
        return _cat(*self.blocks(0))

    @property
    def closing(self) -> Obj:
        return _cat(*self.blocks(1))


@dataclass(frozen=True)
class ContextWord:
    """``m0 ⨾ (layer 1) ⨾ m1 ⨾ ... ⨾ (layer L) ⨾ mL``."""

    morphisms: tuple[Morphism, ...]
    layers: tuple[Layer, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "layers", tuple(self.layers))
        ms, ls = self.morphisms, self.layers
        if len(ms) != len(ls) + 1:
            raise TypeMismatch(f"{len(ls)} layers need {len(ls) + 1} morphisms, got {len(ms)}")
        theory = ms[0].theory
        for m in ms[1:]:
            if not theory.owns(m):
                raise TypeMismatch("context components come from different theories")
        for k, layer in enumerate(ls):
            if ms[k].cod != layer.opening:
                raise TypeMismatch(f"layer {k + 1}: morphism lands in {show(ms[k].cod)}, expected {show(layer.opening)}")
            if ms[k + 1].dom != layer.closing:
                raise TypeMismatch(f"layer {k + 1}: morphism starts at {show(ms[k + 1].dom)}, expected {show(layer.closing)}")

    @property
    def theory(self) -> Theory:
        return self.morphisms[0].theory

    @property
    def outer(self) -> Hole:
        return self.morphisms[0].dom, self.morphisms[-1].cod

    @property
    def holes(self) -> tuple[Hole, ...]:
        return tuple(h for layer in self.layers for h in layer.holes)

    @property
    def arity(self) -> int:
        return len(self.holes)

    @property
    def shape(self) -> str:
        widths = [len(layer.holes) for layer in self.layers]
        if not widths:
            return "unit"
        if widths == [1]:
            return "context"
        if len(widths) == 1:
            return "par"
        if all(w == 1 for w in widths):
            return "seq"
        return "word"

    def __getitem__(self, i: int) -> Morphism:
        return self.morphisms[i]

    def describe(self) -> str:
        a, b = self.outer
        parts = []
        for layer in self.layers:
            holes = ", ".join(f"({show(x)},{show(y)})" for x, y in layer.holes)
            res = ", ".join(show(r) for r in layer.residuals)
            parts.append(f"[{holes} | residuals {res}]")
        return f"{self.shape} ({show(a)},{show(b)}) " + " ◁ ".join(parts)


# -- constructors ------------------------------------------------------------


def Context1(f: Morphism, g: Morphism, M: Obj = I, N: Obj = I) -> ContextWord:
    """``f ⨾ (id_M ⊗ □ ⊗ id_N) ⨾ g``; the hole is read off ``f`` and ``g``."""
    M, N = tuple(M), tuple(N)
    x = _strip(f.cod, M, N, "context")
    y = _strip(g.dom, M, N, "context")
    return ContextWord((f, g), (Layer((M, N), ((x, y),)),))


def CtxSeqSplit(f: Morphism, g: Morphism, h: Morphism, M: Obj = I, N: Obj = I, K: Obj = I, L: Obj = I) -> ContextWord:
    """``f ⨾ (M⊗□⊗N) ⨾ g ⨾ (K⊗□⊗L) ⨾ h``."""
    M, N, K, L = (tuple(o) for o in (M, N, K, L))
    x = _strip(f.cod, M, N, "sequential split")
    y = _strip(g.dom, M, N, "sequential split")
    x2 = _strip(g.cod, K, L, "sequential split")
    y2 = _strip(h.dom, K, L, "sequential split")
    return ContextWord((f, g, h), (Layer((M, N), ((x, y),)), Layer((K, L), ((x2, y2),))))


def CtxParSplit(f: Morphism, g: Morphism, holes: Sequence[Hole], M: Obj = I, N: Obj = I, O: Obj = I) -> ContextWord:
    """``f ⨾ (M⊗□⊗N⊗□⊗O) ⨾ g``; the two hole types are given explicitly."""
    (x, y), (x2, y2) = holes
    return ContextWord((f, g), (Layer((M, N, O), ((x, y), (x2, y2))),))


def CtxUnit(f: Morphism) -> ContextWord:
    return ContextWord((f,), ())


def ctx_identity(theory: Theory, a: Obj, b: Obj) -> ContextWord:
    """``id_A ⨾ □ ⨾ id_B`` with both residuals ``I``."""
    return Context1(theory.identity(tuple(a)), theory.identity(tuple(b)))


# -- filling -------------------------------------------------------------------


def _layer_map(theory: Theory, layer: Layer, fillers: Sequence[Morphism]) -> Morphism:
    parts = [theory.identity(layer.residuals[0])]
    for h, (x, y), r in zip(fillers, layer.holes, layer.residuals[1:]):
        if (h.dom, h.cod) != (x, y):
            raise TypeMismatch(f"filler {show(h.dom)}→{show(h.cod)} does not fit hole ({show(x)},{show(y)})")
        parts += [h, theory.identity(r)]
    return theory.par(*parts)


def fill(c: ContextWord, *fillers: Morphism) -> Morphism:
    """Close every hole (in order) and compose: ``m0 ⨾ (R0⊗h1⊗R1...) ⨾ m1 ⨾ ...``."""
    if len(fillers) == 1 and isinstance(fillers[0], (list, tuple)):
        fillers = tuple(fillers[0])
    if len(fillers) != c.arity:
        raise TypeMismatch(f"{c.arity} holes but {len(fillers)} fillers")
    theory = c.theory
    out = c.morphisms[0]
    k = 0
    for layer, m in zip(c.layers, c.morphisms[1:]):
        n = len(layer.holes)
        out = theory.seq(out, _layer_map(theory, layer, fillers[k: k + n]), m)
        k += n
    return out


def _locate(c: ContextWord, i: int) -> tuple[int, int]:
    if not 1 <= i <= c.arity:
        raise IndexError(f"hole {i} out of range for {c.arity} holes")
    for li, layer in enumerate(c.layers):
        if i <= len(layer.holes):
            return li, i - 1
        i -= len(layer.holes)
    raise AssertionError("unreachable")


def ctx_fill(c: ContextWord, i: int, d: ContextWord | Morphism) -> ContextWord:
    """Put ``d`` into hole ``i`` (1-based, counted across layers) of ``c``.

    ``d`` is fused into the surrounding morphisms and its residuals are
    widened by the wires around the hole.  A multi-layer ``d`` can only go
    into a hole that is alone in its layer; interleaving it with sibling
    holes is the job of :func:`laxator_left`.
    """
    if not isinstance(d, ContextWord):
        d = CtxUnit(d)
    li, j = _locate(c, i)
    layer = c.layers[li]
    if d.outer != layer.holes[j]:
        x, y = layer.holes[j]
        a, b = d.outer
        raise TypeMismatch(f"hole {i} has type ({show(x)},{show(y)}), filler has ({show(a)},{show(b)})")
    if len(d.layers) > 1 and len(layer.holes) > 1:
        raise TypeMismatch("a sequential filler cannot share a layer with other holes")
    theory = c.theory
    left_x = _cat(*layer.blocks(0)[: 2 * j + 1])
    right_x = _cat(*layer.blocks(0)[2 * j + 2:])
    left_y = _cat(*layer.blocks(1)[: 2 * j + 1])
    right_y = _cat(*layer.blocks(1)[2 * j + 2:])
    before, after = c.morphisms[: li + 1], c.morphisms[li + 1:]
    rs, hs = layer.residuals, layer.holes

    if not d.layers:
        opened = theory.compose(before[-1], theory.whisker(left_x, d.morphisms[0], right_x))
        merged = rs[:j] + (_cat(rs[j], hs[j][1], rs[j + 1]),) + rs[j + 2:]
        holes = hs[:j] + hs[j + 1:]
        if not holes:
            fused = theory.compose(opened, after[0])
            ms = before[:-1] + (fused,) + after[1:]
            return ContextWord(ms, c.layers[:li] + c.layers[li + 1:])
        ms = before[:-1] + (opened,) + after
        return ContextWord(ms, c.layers[:li] + (Layer(merged, holes),) + c.layers[li + 1:])

    dm = d.morphisms
    first = theory.compose(before[-1], theory.whisker(left_x, dm[0], right_x))
    last = theory.compose(theory.whisker(left_y, dm[-1], right_y), after[0])
    middle = tuple(theory.whisker(rs[0], m, rs[1]) for m in dm[1:-1])
    new_layers = []
    for dl in d.layers:
        inner = dl.residuals
        if len(d.layers) == 1:
            res = rs[:j] + (_cat(rs[j], inner[0]),) + inner[1:-1] + (_cat(inner[-1], rs[j + 1]),) + rs[j + 2:]
            new_layers.append(Layer(res, hs[:j] + dl.holes + hs[j + 1:]))
        else:
            res = (_cat(rs[0], inner[0]),) + inner[1:-1] + (_cat(inner[-1], rs[1]),)
            new_layers.append(Layer(res, dl.holes))
    ms = before[:-1] + (first,) + middle + (last,) + after[1:]
    return ContextWord(ms, c.layers[:li] + tuple(new_layers) + c.layers[li + 1:])


def ctx_compose(outer: ContextWord, inner: ContextWord) -> ContextWord:
    """Nest one-hole contexts: residuals become ``(M⊗M', N'⊗N)``."""
    if outer.arity != 1:
        raise TypeMismatch("ctx_compose expects a one-hole outer context")
    return ctx_fill(outer, 1, inner)


# -- the operation table -------------------------------------------------------
#
# Each function below transcribes one filling formula literally, with the
# residual bookkeeping spelled out, so that it can be checked independently
# of the generic ctx_fill above.


def _expect(c: ContextWord, shape: str, what: str) -> None:
    if c.shape != shape:
        raise TypeMismatch(f"{what} must be a {shape}, got a {c.shape}")


def _fits(inner: ContextWord | Morphism, hole: Hole, what: str) -> None:
    outer = inner.outer if isinstance(inner, ContextWord) else (inner.dom, inner.cod)
    if outer != hole:
        raise TypeMismatch(f"{what}: ({show(outer[0])},{show(outer[1])}) does not fit ({show(hole[0])},{show(hole[1])})")


def unit_action(c: ContextWord, u: Morphism) -> ContextWord:
    """``f ⨾ (id_M ⊗ u ⊗ id_N) ⨾ g``, a unit."""
    _expect(c, "context", "unit_action")
    _fits(u, c.holes[0], "unit_action")
    (M, N), t = c.layers[0].residuals, c.theory
    return CtxUnit(t.seq(c[0], t.whisker(M, u, N), c[1]))


def seq_action_1(s: ContextWord, c: ContextWord) -> ContextWord:
    """Context ``(u, v; P, Q)`` in the first hole of ``(f, g, h; M, N, K, L)``."""
    _expect(s, "seq", "seq_action_1")
    _expect(c, "context", "seq_action_1 filler")
    _fits(c, s.holes[0], "seq_action_1")
    t = s.theory
    M, N = s.layers[0].residuals
    K, L = s.layers[1].residuals
    P, Q = c.layers[0].residuals
    return CtxSeqSplit(
        t.compose(s[0], t.whisker(M, c[0], N)),
        t.compose(t.whisker(M, c[1], N), s[1]),
        s[2],
        M + P, Q + N, K, L,
    )


def seq_action_2(s: ContextWord, c: ContextWord) -> ContextWord:
    """Context ``(u, v; P, Q)`` in the second hole of ``(f, g, h; M, N, K, L)``."""
    _expect(s, "seq", "seq_action_2")
    _expect(c, "context", "seq_action_2 filler")
    _fits(c, s.holes[1], "seq_action_2")
    t = s.theory
    M, N = s.layers[0].residuals
    K, L = s.layers[1].residuals
    P, Q = c.layers[0].residuals
    return CtxSeqSplit(
        s[0],
        t.compose(s[1], t.whisker(K, c[0], L)),
        t.compose(t.whisker(K, c[1], L), s[2]),
        M, N, K + P, Q + L,
    )


def seq_action_both(c: ContextWord, s: ContextWord) -> ContextWord:
    """Sequential split ``(u, v, w; P, Q, R, S)`` in the hole of ``(f, g; M, N)``."""
    _expect(c, "context", "seq_action_both")
    _expect(s, "seq", "seq_action_both filler")
    _fits(s, c.holes[0], "seq_action_both")
    t = c.theory
    M, N = c.layers[0].residuals
    P, Q = s.layers[0].residuals
    R, S = s.layers[1].residuals
    return CtxSeqSplit(
        t.compose(c[0], t.whisker(M, s[0], N)),
        t.whisker(M, s[1], N),
        t.compose(t.whisker(M, s[2], N), c[1]),
        M + P, Q + N, M + R, S + N,
    )


def seq_assoc_left(s: ContextWord, r: ContextWord) -> ContextWord:
    """Sequential split ``r`` in the first hole of the sequential split ``s``,
    read as a three-hole word."""
    _expect(s, "seq", "seq_assoc_left")
    _expect(r, "seq", "seq_assoc_left filler")
    _fits(r, s.holes[0], "seq_assoc_left")
    t = s.theory
    M, N = s.layers[0].residuals
    K, L = s.layers[1].residuals
    P, Q = r.layers[0].residuals
    R, S = r.layers[1].residuals
    (x, y), (x2, y2) = r.holes
    return ContextWord(
        (
            t.compose(s[0], t.whisker(M, r[0], N)),
            t.whisker(M, r[1], N),
            t.compose(t.whisker(M, r[2], N), s[1]),
            s[2],
        ),
        (
            Layer((M + P, Q + N), ((x, y),)),
            Layer((M + R, S + N), ((x2, y2),)),
            Layer((K, L), (s.holes[1],)),
        ),
    )


def seq_assoc_right(s: ContextWord, r: ContextWord) -> ContextWord:
    """Sequential split ``r`` in the second hole of ``s``, as a three-hole word."""
    _expect(s, "seq", "seq_assoc_right")
    _expect(r, "seq", "seq_assoc_right filler")
    _fits(r, s.holes[1], "seq_assoc_right")
    t = s.theory
    M, N = s.layers[0].residuals
    K, L = s.layers[1].residuals
    P, Q = r.layers[0].residuals
    R, S = r.layers[1].residuals
    (x, y), (x2, y2) = r.holes
    return ContextWord(
        (
            s[0],
            t.compose(s[1], t.whisker(K, r[0], L)),
            t.whisker(K, r[1], L),
            t.compose(t.whisker(K, r[2], L), s[2]),
        ),
        (
            Layer((M, N), (s.holes[0],)),
            Layer((K + P, Q + L), ((x, y),)),
            Layer((K + R, S + L), ((x2, y2),)),
        ),
    )


def seq_unitor_left(s: ContextWord, u: Morphism) -> ContextWord:
    """Close the first hole of a sequential split with ``u``."""
    _expect(s, "seq", "seq_unitor_left")
    _fits(u, s.holes[0], "seq_unitor_left")
    t = s.theory
    M, N = s.layers[0].residuals
    K, L = s.layers[1].residuals
    return Context1(t.seq(s[0], t.whisker(M, u, N), s[1]), s[2], K, L)


def seq_unitor_right(s: ContextWord, u: Morphism) -> ContextWord:
    """Close the second hole of a sequential split with ``u``."""
    _expect(s, "seq", "seq_unitor_right")
    _fits(u, s.holes[1], "seq_unitor_right")
    t = s.theory
    M, N = s.layers[0].residuals
    K, L = s.layers[1].residuals
    return Context1(s[0], t.seq(s[1], t.whisker(K, u, L), s[2]), M, N)


def _par_parts(p: ContextWord) -> tuple[Obj, Obj, Obj, Hole, Hole]:
    M, N, O = p.layers[0].residuals
    h1, h2 = p.layers[0].holes
    return M, N, O, h1, h2


def par_action_1(p: ContextWord, c: ContextWord) -> ContextWord:
    """Context ``(u, v; P, Q)`` in the first hole of ``(f, g; M, N, O)``."""
    _expect(p, "par", "par_action_1")
    _expect(c, "context", "par_action_1 filler")
    _fits(c, p.holes[0], "par_action_1")
    t = p.theory
    M, N, O, _, (x2, y2) = _par_parts(p)
    P, Q = c.layers[0].residuals
    return CtxParSplit(
        t.compose(p[0], t.whisker(M, c[0], N + x2 + O)),
        t.compose(t.whisker(M, c[1], N + y2 + O), p[1]),
        (c.holes[0], (x2, y2)),
        M + P, Q + N, O,
    )


def par_action_2(p: ContextWord, c: ContextWord) -> ContextWord:
    """Context ``(u, v; P, Q)`` in the second hole of ``(f, g; M, N, O)``."""
    _expect(p, "par", "par_action_2")
    _expect(c, "context", "par_action_2 filler")
    _fits(c, p.holes[1], "par_action_2")
    t = p.theory
    M, N, O, (x, y), _ = _par_parts(p)
    P, Q = c.layers[0].residuals
    return CtxParSplit(
        t.compose(p[0], t.whisker(M + x + N, c[0], O)),
        t.compose(t.whisker(M + y + N, c[1], O), p[1]),
        ((x, y), c.holes[0]),
        M, N + P, Q + O,
    )


def par_action_both(c: ContextWord, p: ContextWord) -> ContextWord:
    """Parallel split ``(u, v; P, Q, R)`` in the hole of ``(f, g; M, N)``."""
    _expect(c, "context", "par_action_both")
    _expect(p, "par", "par_action_both filler")
    _fits(p, c.holes[0], "par_action_both")
    t = c.theory
    M, N = c.layers[0].residuals
    P, Q, R, h1, h2 = _par_parts(p)
    return CtxParSplit(
        t.compose(c[0], t.whisker(M, p[0], N)),
        t.compose(t.whisker(M, p[1], N), c[1]),
        (h1, h2),
        M + P, Q, R + N,
    )


def par_assoc_left(p: ContextWord, q: ContextWord) -> ContextWord:
    """Parallel split ``q`` in the first hole of ``p``: one layer, three holes."""
    _expect(p, "par", "par_assoc_left")
    _expect(q, "par", "par_assoc_left filler")
    _fits(q, p.holes[0], "par_assoc_left")
    t = p.theory
    M, N, O, _, (x3, y3) = _par_parts(p)
    P, Q, R, h1, h2 = _par_parts(q)
    return ContextWord(
        (
            t.compose(p[0], t.whisker(M, q[0], N + x3 + O)),
            t.compose(t.whisker(M, q[1], N + y3 + O), p[1]),
        ),
        (Layer((M + P, Q, R + N, O), (h1, h2, (x3, y3))),),
    )


def par_assoc_right(p: ContextWord, q: ContextWord) -> ContextWord:
    """Parallel split ``q`` in the second hole of ``p``: one layer, three holes."""
    _expect(p, "par", "par_assoc_right")
    _expect(q, "par", "par_assoc_right filler")
    _fits(q, p.holes[1], "par_assoc_right")
    t = p.theory
    M, N, O, (x, y), _ = _par_parts(p)
    P, Q, R, h2, h3 = _par_parts(q)
    return ContextWord(
        (
            t.compose(p[0], t.whisker(M + x + N, q[0], O)),
            t.compose(t.whisker(M + y + N, q[1], O), p[1]),
        ),
        (Layer((M, N + P, Q, R + O), ((x, y), h2, h3)),),
    )


def par_unitor_left(p: ContextWord, u: Morphism) -> ContextWord:
    """Close the first parallel hole with ``u`` on the way in: the remaining
    context has residuals ``(M⊗Y⊗N, O)``."""
    _expect(p, "par", "par_unitor_left")
    _fits(u, p.holes[0], "par_unitor_left")
    t = p.theory
    M, N, O, (x, y), (x2, y2) = _par_parts(p)
    return Context1(t.compose(p[0], t.whisker(M, u, N + x2 + O)), p[1], M + y + N, O)


def par_unitor_left_alt(p: ContextWord, u: Morphism) -> ContextWord:
    """The same closure applied on the way out: residuals ``(M⊗X⊗N, O)``."""
    _expect(p, "par", "par_unitor_left")
    _fits(u, p.holes[0], "par_unitor_left")
    t = p.theory
    M, N, O, (x, y), (x2, y2) = _par_parts(p)
    return Context1(p[0], t.compose(t.whisker(M, u, N + y2 + O), p[1]), M + x + N, O)


def par_unitor_right(p: ContextWord, u: Morphism) -> ContextWord:
    """Close the second parallel hole with ``u`` on the way in."""
    _expect(p, "par", "par_unitor_right")
    _fits(u, p.holes[1], "par_unitor_right")
    t = p.theory
    M, N, O, (x, y), (x2, y2) = _par_parts(p)
    return Context1(t.compose(p[0], t.whisker(M + x + N, u, O)), p[1], M, N + y2 + O)


def par_unitor_right_alt(p: ContextWord, u: Morphism) -> ContextWord:
    _expect(p, "par", "par_unitor_right")
    _fits(u, p.holes[1], "par_unitor_right")
    t = p.theory
    M, N, O, (x, y), (x2, y2) = _par_parts(p)
    return Context1(p[0], t.compose(t.whisker(M + y + N, u, O), p[1]), M, N + x2 + O)


def laxator_left(p: ContextWord, j: ContextWord, k: ContextWord) -> ContextWord:
    """Sequential splits in both holes of a parallel split become a sequence
    of two layers, each holding two parallel holes."""
    _expect(p, "par", "laxator_left")
    _expect(j, "seq", "laxator_left first filler")
    _expect(k, "seq", "laxator_left second filler")
    _fits(j, p.holes[0], "laxator_left")
    _fits(k, p.holes[1], "laxator_left")
    t = p.theory
    M, N, O, _, _ = _par_parts(p)
    U, V = j.layers[0].residuals
    U2, V2 = j.layers[1].residuals
    W, T = k.layers[0].residuals
    W2, T2 = k.layers[1].residuals

    def both(a: Morphism, b: Morphism) -> Morphism:
        return t.par(t.identity(M), a, t.identity(N), b, t.identity(O))

    return ContextWord(
        (
            t.compose(p[0], both(j[0], k[0])),
            both(j[1], k[1]),
            t.compose(both(j[2], k[2]), p[1]),
        ),
        (
            Layer((M + U, V + N + W, T + O), (j.holes[0], k.holes[0])),
            Layer((M + U2, V2 + N + W2, T2 + O), (j.holes[1], k.holes[1])),
        ),
    )


def laxator_right(s: ContextWord, j: ContextWord, k: ContextWord) -> ContextWord:
    """Parallel splits in both holes of a sequential split."""
    _expect(s, "seq", "laxator_right")
    _expect(j, "par", "laxator_right first filler")
    _expect(k, "par", "laxator_right second filler")
    _fits(j, s.holes[0], "laxator_right")
    _fits(k, s.holes[1], "laxator_right")
    t = s.theory
    M, N = s.layers[0].residuals
    K, L = s.layers[1].residuals
    P, Q, R, a1, a2 = _par_parts(j)
    P2, Q2, R2, b1, b2 = _par_parts(k)
    return ContextWord(
        (
            t.compose(s[0], t.whisker(M, j[0], N)),
            t.seq(t.whisker(M, j[1], N), s[1], t.whisker(K, k[0], L)),
            t.compose(t.whisker(K, k[1], L), s[2]),
        ),
        (
            Layer((M + P, Q, R + N), (a1, a2)),
            Layer((K + P2, Q2, R2 + L), (b1, b2)),
        ),
    )


# -- normalization and sliding -----------------------------------------------


def normalize_from_duosplice(e) -> ContextWord:
    """Send a spliced (monoidal) arrow to the context with empty residuals.

    Sequential holes become separate layers, a parallel split becomes one
    layer with two holes, and a parallel unit collapses to ``a0 ⨾ a1``.
    Contexts are returned unchanged, so the map is idempotent.
    """
    if isinstance(e, ContextWord):
        return e
    if isinstance(e, ParUnit):
        return CtxUnit(e.theory.compose(e.a0, e.a1))
    if isinstance(e, ParSplit):
        return CtxParSplit(e.f, e.g, e.holes)
    if isinstance(e, Splice):
        return ContextWord(e.morphisms, tuple(Layer((I, I), (h,)) for h in e.holes))
    return CtxUnit(e)


def dinat_slide(
    c: ContextWord,
    m: Morphism,
    n: Morphism,
    direction: str = "forward",
    factor: Morphism | None = None,
) -> ContextWord:
    """Move ``m ⊗ id ⊗ n`` across the hole of a one-hole context.

    ``forward``: ``c.f`` must equal ``factor ⨾ (m⊗id_X⊗n)``; the result is
    ``(factor, (m⊗id_Y⊗n) ⨾ g)``.  ``backward``: ``c.g`` must equal
    ``(m⊗id_Y⊗n) ⨾ factor``; the result is ``(f ⨾ (m⊗id_X⊗n), factor)``.
    Without ``factor`` the representative is taken to be already in the
    pre-slide form and the slide is applied by composition.
    """
    if c.shape != "context":
        raise TypeMismatch("dinat_slide acts on one-hole contexts")
    t = c.theory
    (x, y), = c.holes
    M, N = c.layers[0].residuals
    f, g = c.morphisms
    if direction == "forward":
        if m.cod != M or n.cod != N:
            raise TypeMismatch("forward slide: m and n must land in the residuals")
        if factor is None:
            raise FactorizationError("forward slide needs the factor f' with f = f' ⨾ (m⊗id⊗n)")
        recomposed = t.compose(factor, t.par(m, t.identity(x), n))
        if not _same(t, recomposed, f):
            raise FactorizationError("f' ⨾ (m⊗id⊗n) does not recompose to the context's first morphism")
        return Context1(factor, t.compose(t.par(m, t.identity(y), n), g), m.dom, n.dom)
    if direction == "backward":
        if m.dom != M or n.dom != N:
            raise TypeMismatch("backward slide: m and n must start at the residuals")
        if factor is None:
            raise FactorizationError("backward slide needs the factor g' with g = (m⊗id⊗n) ⨾ g'")
        recomposed = t.compose(t.par(m, t.identity(y), n), factor)
        if not _same(t, recomposed, g):
            raise FactorizationError("(m⊗id⊗n) ⨾ g' does not recompose to the context's last morphism")
        return Context1(t.compose(f, t.par(m, t.identity(x), n)), factor, m.cod, n.cod)
    raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}")


def slide_out(f: Morphism, g: Morphism, m: Morphism, n: Morphism) -> tuple[ContextWord, ContextWord]:
    """The two sides of one dinaturality step, built by composition:
    ``(f ⨾ (m⊗id⊗n), g)`` and ``(f, (m⊗id⊗n) ⨾ g)``.

    ``f: A → M⊗X⊗N`` and ``g: M'⊗Y⊗N' → B`` with ``m: M → M'``, ``n: N → N'``.
    """
    t = f.theory
    x = _strip(f.cod, m.dom, n.dom, "slide")
    y = _strip(g.dom, m.cod, n.cod, "slide")
    left = Context1(t.compose(f, t.par(m, t.identity(x), n)), g, m.cod, n.cod)
    right = Context1(f, t.compose(t.par(m, t.identity(y), n), g), m.dom, n.dom)
    return left, right


def _same(t: Theory, a: Morphism, b: Morphism) -> bool:
    try:
        return t.equal(a, b)
    except UndecidedEquality:
        return a == b


# -- equality ------------------------------------------------------------------


def hole_fillings(c: ContextWord, budget: int = ENUMERATION_BUDGET) -> Iterator[tuple[Morphism, ...]]:
    """Every tuple of probe morphisms for the holes (all maps in FinFn)."""
    families = [list(c.theory.probe_hom(x, y)) for x, y in c.holes]
    if math.prod(len(f) for f in families) > budget:
        raise EnumerationTooLarge(f"{math.prod(len(f) for f in families)} hole fillings")
    return itertools.product(*families)


def separating_fill(c1: ContextWord, c2: ContextWord) -> tuple[Morphism, ...] | None:
    """A hole filling on which the two contexts close differently, if any."""
    _same_type(c1, c2)
    t = c1.theory
    for hs in hole_fillings(c1):
        if not t.equal(fill(c1, hs), fill(c2, hs)):
            return hs
    return None


def fills_agree(c1: ContextWord, c2: ContextWord) -> bool:
    """Observational agreement: equal closures under every probe filling."""
    return separating_fill(c1, c2) is None


def _same_type(c1: ContextWord, c2: ContextWord) -> None:
    if c1.outer != c2.outer or c1.holes != c2.holes:
        raise TypeMismatch("contexts of different types cannot be compared")
    if not c1.theory.owns(c2.morphisms[0]):
        raise TypeMismatch("contexts from different theories cannot be compared")


def cartesian_canonical(c: ContextWord, shared: bool = False) -> tuple[FinFnMorphism, ...]:
    """Canonical representative data of a finite-function context.

    Every residual wire is replaced by the whole history it could depend on:
    ``D0 = A`` and, after layer ``k``, ``D_k = D_{k-1} ⊗ Y1 ⊗ D_{k-1} ⊗ ... ⊗ D_{k-1}``
    (one copy of the history per residual slot).  The result lists, per
    layer, the map ``D_{k-1} → X1⊗...⊗Xn`` followed by the final map
    ``D_L → B``.  Two contexts are equal in the quotient exactly when these
    tuples agree.

    With ``shared=True`` all slots read one copy of the history
    (``D_k = D_{k-1} ⊗ Y1 ⊗ ... ⊗ Yn``), which is the canonical form of a
    monoidal lens.
    """
    t = c.theory
    require_cartesian(t)
    ms, layers = c.morphisms, c.layers
    if not layers:
        return (ms[0],)
    history: Obj = c.outer[0]
    # residual values and hole inputs, indexed by a history point
    first = layers[0]
    blocks = first.blocks(0)
    out_parts = [t.decode(v, blocks) for v in ms[0].table]
    slots = [parts[0::2] for parts in out_parts]
    xs = [parts[1::2] for parts in out_parts]
    result = []
    for k, layer in enumerate(layers):
        x_obj = _cat(*(h[0] for h in layer.holes))
        x_blocks = [h[0] for h in layer.holes]
        result.append(FinFnMorphism(t, history, x_obj, tuple(t.encode(x, x_blocks) for x in xs)))
        y_blocks = [h[1] for h in layer.holes]
        n = len(layer.holes)
        if shared:
            new_blocks = [history] + y_blocks
        else:
            new_blocks = [history]
            for y in y_blocks:
                new_blocks += [y, history]
        new_history = _cat(*new_blocks)
        size = t.carrier(new_history)
        if size > ENUMERATION_BUDGET:
            raise EnumerationTooLarge(f"canonical history {show(new_history)} has {size} points")
        closing = layer.blocks(1)
        nxt = ms[k + 1]
        values = []
        for point in range(size):
            parts = t.decode(point, new_blocks)
            if shared:
                d, ys = parts[0], parts[1:]
                rs = [slots[d][j] for j in range(n + 1)]
            else:
                ds, ys = parts[0::2], parts[1::2]
                rs = [slots[ds[j]][j] for j in range(n + 1)]
            word = [rs[0]]
            for y, r in zip(ys, rs[1:]):
                word += [y, r]
            values.append(nxt.table[t.encode(word, closing)])
        history = new_history
        if k + 1 < len(layers):
            nb = layers[k + 1].blocks(0)
            out_parts = [t.decode(v, nb) for v in values]
            slots = [parts[0::2] for parts in out_parts]
            xs = [parts[1::2] for parts in out_parts]
        else:
            result.append(FinFnMorphism(t, history, nxt.cod, tuple(values)))
    return tuple(result)


def fill_equal(c1: ContextWord, c2: ContextWord) -> bool:
    """Equality in the quotient by sliding along residual wires.

    Finite functions are decided exactly through :func:`cartesian_canonical`;
    other finite theories fall back to :func:`fills_agree` over the probe
    family, which is sound but not known to be complete.
    """
    _same_type(c1, c2)
    if isinstance(c1.theory, FinFn):
        return cartesian_canonical(c1) == cartesian_canonical(c2)
    return fills_agree(c1, c2)


__all__ = [
    "Context1",
    "ContextWord",
    "CtxParSplit",
    "CtxSeqSplit",
    "CtxUnit",
    "Layer",
    "cartesian_canonical",
    "ctx_compose",
    "ctx_fill",
    "ctx_identity",
    "dinat_slide",
    "fill",
    "fill_equal",
    "fills_agree",
    "hole_fillings",
    "laxator_left",
    "laxator_right",
    "normalize_from_duosplice",
    "par_action_1",
    "par_action_2",
    "par_action_both",
    "par_assoc_left",
    "par_assoc_right",
    "par_unitor_left",
    "par_unitor_left_alt",
    "par_unitor_right",
    "par_unitor_right_alt",
    "separating_fill",
    "seq_action_1",
    "seq_action_2",
    "seq_action_both",
    "seq_assoc_left",
    "seq_assoc_right",
    "seq_unitor_left",
    "seq_unitor_right",
    "slide_out",
    "unit_action",
]
