"""Monoidal lenses: contexts whose residual sits on the left only.

A lens with ``n`` stages is ``m0 ⨾ (M1⊗□) ⨾ m1 ⨾ ... ⨾ (Mn⊗□) ⨾ mn`` with
``m_k: M_k ⊗ Y_k → M_{k+1} ⊗ X_{k+1}`` (``M0`` and ``M_{n+1}`` are ``I``).
Over a symmetric theory a stage with several parallel holes is the same
data as one hole of tensor type, so stages always carry one (possibly
tensor) hole and the parallel bookkeeping lives in :class:`ParLens`.

Polarized objects ``Send(X)`` and ``Get(X)`` denote the holes ``(X, I)``
and ``(I, X)``; a list of them denotes the tensor of their holes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .context import ContextWord, Layer, cartesian_canonical, fills_agree, separating_fill
from .duosplice import ParSplit, ParUnit
from .errors import TypeMismatch
from .splice import Hole, Splice
from .theory import FinFn, FinFnMorphism, I, Morphism, Obj, Theory, require_cartesian, show


@dataclass(frozen=True)
class Lens:
    """An n-stage lens; ``residuals[k]`` is the wire kept across stage ``k+1``."""

    morphisms: tuple[Morphism, ...]
    residuals: tuple[Obj, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "residuals", tuple(tuple(r) for r in self.residuals))
        ms, rs = self.morphisms, self.residuals
        if len(ms) != len(rs) + 1:
            raise TypeMismatch(f"{len(rs)} stages need {len(rs) + 1} morphisms, got {len(ms)}")
        theory = ms[0].theory
        for k, m in enumerate(ms[1:], start=1):
            if not theory.owns(m):
                raise TypeMismatch("lens components come from different theories")
            r = rs[k - 1]
            if ms[k - 1].cod[: len(r)] != r:
                raise TypeMismatch(f"stage {k}: {show(ms[k - 1].cod)} does not start with residual {show(r)}")
            if m.dom[: len(r)] != r:
                raise TypeMismatch(f"stage {k}: {show(m.dom)} does not start with residual {show(r)}")

    @property
    def theory(self) -> Theory:
        return self.morphisms[0].theory

    @property
    def stages(self) -> int:
        return len(self.residuals)

    @property
    def outer(self) -> Hole:
        return self.morphisms[0].dom, self.morphisms[-1].cod

    @property
    def holes(self) -> tuple[Hole, ...]:
        ms, rs = self.morphisms, self.residuals
        return tuple((ms[k].cod[len(r):], ms[k + 1].dom[len(r):]) for k, r in enumerate(rs))

    def __getitem__(self, i: int) -> Morphism:
        return self.morphisms[i]

    def as_context(self) -> ContextWord:
        """The same data as a two-sided context with right residuals ``I``."""
        layers = tuple(Layer((r, I), (h,)) for r, h in zip(self.residuals, self.holes))
        return ContextWord(self.morphisms, layers)

    def describe(self) -> str:
        a, b = self.outer
        stages = " ◁ ".join(f"({show(x)},{show(y)})" for x, y in self.holes)
        return f"lens ({show(a)},{show(b)}) stages {stages or 'none'}"


def Lens1(f: Morphism, g: Morphism, M: Obj = I) -> Lens:
    """``f ⨾ (id_M ⊗ □) ⨾ g``."""
    return Lens((f, g), (tuple(M),))


def LensSeqSplit(f: Morphism, g: Morphism, h: Morphism, M1: Obj = I, M2: Obj = I) -> Lens:
    return Lens((f, g, h), (tuple(M1), tuple(M2)))


def lens_unit(f: Morphism) -> Lens:
    """A plain morphism as a lens with no stages."""
    return Lens((f,), ())


def identity_lens(theory: Theory, a: Obj, b: Obj) -> Lens:
    return Lens1(theory.identity(tuple(a)), theory.identity(tuple(b)))


@dataclass(frozen=True)
class ParLens:
    """A one-stage lens whose hole is split as ``(X,Y) ⊗ (X',Y')``.

    The underlying :class:`Lens` is stored untouched: splitting a hole is
    bookkeeping only.
    """

    lens: Lens
    first: Hole

    def __post_init__(self) -> None:
        if self.lens.stages != 1:
            raise TypeMismatch("a parallel split lens has exactly one stage")
        (x, y), = self.lens.holes
        fx, fy = (tuple(o) for o in self.first)
        object.__setattr__(self, "first", (fx, fy))
        if x[: len(fx)] != fx or y[: len(fy)] != fy:
            raise TypeMismatch("the first parallel hole must prefix the fused hole")

    @property
    def holes(self) -> tuple[Hole, Hole]:
        (x, y), = self.lens.holes
        fx, fy = self.first
        return self.first, (x[len(fx):], y[len(fy):])

    @property
    def outer(self) -> Hole:
        return self.lens.outer

    @property
    def theory(self) -> Theory:
        return self.lens.theory


def par_lens(l: Lens, first: Hole) -> ParLens:
    return ParLens(l, first)


def par_fuse(p: ParLens) -> Lens:
    """Read the two parallel holes as one; the identity on data."""
    return p.lens


# -- filling ---------------------------------------------------------------------


def lens_fill(outer: Lens, i: int, inner: Lens | Morphism) -> Lens:
    """Put ``inner`` into stage ``i`` (1-based) of ``outer``.

    The residual ``M_i`` around the stage is prefixed to every residual of
    ``inner``; a stage-free ``inner`` (a morphism) closes the stage.
    """
    if not isinstance(inner, Lens):
        inner = lens_unit(inner)
    if not 1 <= i <= outer.stages:
        raise IndexError(f"stage {i} out of range for {outer.stages} stages")
    if inner.outer != outer.holes[i - 1]:
        x, y = outer.holes[i - 1]
        a, b = inner.outer
        raise TypeMismatch(f"stage {i} has type ({show(x)},{show(y)}), filler has ({show(a)},{show(b)})")
    t = outer.theory
    m = outer.residuals[i - 1]
    ms, rs = outer.morphisms, outer.residuals
    dm = inner.morphisms
    if len(dm) == 1:
        fused = t.seq(ms[i - 1], t.whisker(m, dm[0]), ms[i])
        return Lens(ms[: i - 1] + (fused,) + ms[i + 1:], rs[: i - 1] + rs[i:])
    first = t.compose(ms[i - 1], t.whisker(m, dm[0]))
    last = t.compose(t.whisker(m, dm[-1]), ms[i])
    middle = tuple(t.whisker(m, d) for d in dm[1:-1])
    new_rs = tuple(m + r for r in inner.residuals)
    return Lens(ms[: i - 1] + (first,) + middle + (last,) + ms[i + 1:], rs[: i - 1] + new_rs + rs[i:])


def lens_compose(outer: Lens, inner: Lens) -> Lens:
    """Nest one-stage lenses; residuals concatenate as ``M ⊗ M'``."""
    if outer.stages != 1:
        raise TypeMismatch("lens_compose expects a one-stage outer lens")
    return lens_fill(outer, 1, inner)


def lens_close(l: Lens, *fillers: Morphism) -> Morphism:
    """Fill every stage with a morphism of its hole type."""
    if len(fillers) == 1 and isinstance(fillers[0], (list, tuple)):
        fillers = tuple(fillers[0])
    if len(fillers) != l.stages:
        raise TypeMismatch(f"{l.stages} stages but {len(fillers)} fillers")
    t = l.theory
    out = l.morphisms[0]
    for h, r, hole, m in zip(fillers, l.residuals, l.holes, l.morphisms[1:]):
        if (h.dom, h.cod) != hole:
            raise TypeMismatch(f"filler {show(h.dom)}→{show(h.cod)} does not fit ({show(hole[0])},{show(hole[1])})")
        out = t.seq(out, t.whisker(r, h), m)
    return out


def lens_associate(outer: Lens, i: int, inner: Lens) -> Lens:
    """Both associators are instances of :func:`lens_fill`: filling stage 1
    of a two-stage lens with a two-stage lens reads ``(X◁X')◁X''`` as a
    three-stage word, filling stage 2 reads ``X◁(X'◁X'')`` as the same word."""
    if outer.stages != 2 or inner.stages != 2:
        raise TypeMismatch("associators act on two-stage lenses")
    return lens_fill(outer, i, inner)


def lens_unitor(outer: Lens, i: int, u: Morphism) -> Lens:
    """Close stage ``i`` of a two-stage lens with a morphism, e.g. the right
    unitor ``f0 ⨾ (id_M ⊗ □) ⨾ f1 ⨾ (id_N ⊗ u) ⨾ f2``."""
    if outer.stages != 2:
        raise TypeMismatch("unitors act on two-stage lenses")
    return lens_fill(outer, i, u)


# -- tensor, symmetry and laxators -----------------------------------------------


def lens_tensor(l1: Lens, l2: Lens) -> Lens:
    """Stage-wise tensor of two lenses with the same number of stages.

    For one stage this is ``f = (f1⊗f2) ⨾ (id_M1 ⊗ σ_{X,M2} ⊗ id_X')`` and
    ``g = (id_M1 ⊗ σ_{M2,Y} ⊗ id_Y') ⨾ (g1⊗g2)`` with residual ``M1⊗M2``; for
    several stages it is the interleaving that turns
    ``(X1◁X2◁...) ⊗ (X1'◁X2'◁...)`` into ``(X1⊗X1') ◁ (X2⊗X2') ◁ ...``.
    """
    if l1.stages != l2.stages:
        raise TypeMismatch(f"cannot tensor a {l1.stages}-stage lens with a {l2.stages}-stage lens")
    t = l1.theory
    if not t.owns(l2.morphisms[0]):
        raise TypeMismatch("lenses from different theories")
    n = l1.stages
    r1 = (I,) + l1.residuals + (I,)
    r2 = (I,) + l2.residuals + (I,)
    h1 = ((I, l1.outer[0]),) + l1.holes + ((l1.outer[1], I),)
    h2 = ((I, l2.outer[0]),) + l2.holes + ((l2.outer[1], I),)
    out = []
    for k in range(n + 1):
        m1, m2 = l1.morphisms[k], l2.morphisms[k]
        y1, y2 = h1[k][1], h2[k][1]
        x1, x2 = h1[k + 1][0], h2[k + 1][0]
        into = t.permute([r1[k], r2[k], y1, y2], [0, 2, 1, 3])
        outof = t.permute([r1[k + 1], x1, r2[k + 1], x2], [0, 2, 1, 3])
        out.append(t.seq(into, t.tensor(m1, m2), outof))
    return Lens(tuple(out), tuple(a + b for a, b in zip(l1.residuals, l2.residuals)))


lens_laxator = lens_tensor


def lens_par_split(l1: Lens, l2: Lens) -> ParLens:
    """Tensor of two one-stage lenses, remembering where the holes meet."""
    if l1.stages != 1 or l2.stages != 1:
        raise TypeMismatch("parallel split of one-stage lenses")
    return ParLens(lens_tensor(l1, l2), l1.holes[0])


def lens_symmetry(p: ParLens) -> ParLens:
    """Swap the two parallel holes with braidings on either side."""
    t = p.theory
    (x, y), (x2, y2) = p.holes
    l = p.lens
    m = l.residuals[0]
    f = t.compose(l[0], t.whisker(m, t.symmetry(x, x2)))
    g = t.compose(t.whisker(m, t.symmetry(y2, y)), l[1])
    return ParLens(Lens1(f, g, m), (x2, y2))


def lens_par_left_unitor(p: ParLens, u: Morphism) -> Lens:
    """Close the first parallel hole with ``u``: residual becomes ``M⊗Y``."""
    t = p.theory
    (x, y), (x2, y2) = p.holes
    if (u.dom, u.cod) != (x, y):
        raise TypeMismatch("unit does not fit the first parallel hole")
    m = p.lens.residuals[0]
    return Lens1(t.compose(p.lens[0], t.whisker(m, u, x2)), p.lens[1], m + y)


def lens_par_right_unitor(p: ParLens, u: Morphism) -> Lens:
    """Close the second parallel hole with ``u``; a braiding moves ``Y'``
    into the residual."""
    t = p.theory
    (x, y), (x2, y2) = p.holes
    if (u.dom, u.cod) != (x2, y2):
        raise TypeMismatch("unit does not fit the second parallel hole")
    m = p.lens.residuals[0]
    f = t.seq(p.lens[0], t.whisker(m, t.symmetry(x, x2)), t.whisker(m, u, x))
    g = t.compose(t.whisker(m, t.symmetry(y2, y)), p.lens[1])
    return Lens1(f, g, m + y2)


# -- polarized objects and the two embeddings ------------------------------------


@dataclass(frozen=True)
class Send:
    obj: Obj

    @property
    def hole(self) -> Hole:
        return tuple(self.obj), I

    def __str__(self) -> str:
        return "!" + show(self.obj)


@dataclass(frozen=True)
class Get:
    obj: Obj

    @property
    def hole(self) -> Hole:
        return I, tuple(self.obj)

    def __str__(self) -> str:
        return "?" + show(self.obj)


Polarized = Send | Get


def denote(parts: Sequence[Polarized]) -> Hole:
    """The hole denoted by a tensor of polarized objects."""
    xs: Obj = I
    ys: Obj = I
    for p in parts:
        x, y = p.hole
        xs, ys = xs + x, ys + y
    return xs, ys


def send(f: Morphism) -> Lens:
    """``f ⨾ □ ⨾ id_I`` from ``Send(A)`` to ``Send(B)``."""
    return Lens1(f, f.theory.identity(I))


def get(f: Morphism) -> Lens:
    """``id_I ⨾ □ ⨾ f`` from ``Get(A)`` to ``Get(B)`` for ``f: B → A``."""
    return Lens1(f.theory.identity(I), f)


# -- normalization ------------------------------------------------------------------


def lens_from_context(c: ContextWord) -> Lens:
    """Gather the residuals of every layer on the left and fuse its holes."""
    t = c.theory
    ms = list(c.morphisms)
    residuals = []
    for k, layer in enumerate(c.layers):
        n = len(layer.holes)
        blocks_in = layer.blocks(0)
        blocks_out = layer.blocks(1)
        gather = list(range(0, 2 * n + 1, 2)) + list(range(1, 2 * n, 2))
        ms[k] = t.compose(ms[k], t.permute(blocks_in, gather))
        moved = [blocks_out[i] for i in gather]
        scatter = [gather.index(i) for i in range(2 * n + 1)]
        ms[k + 1] = t.compose(t.permute(moved, scatter), ms[k + 1])
        residuals.append(tuple(a for r in layer.residuals for a in r))
    return Lens(tuple(ms), tuple(residuals))


def sym_normalize(e) -> Lens:
    """Send a spliced (monoidal) arrow or a context to its lens.

    Spliced arrows get residual ``I`` on every stage; a parallel split fuses
    its holes; a parallel unit becomes the plain morphism ``a0 ⨾ a1``.
    Lenses are returned unchanged, so the map is idempotent.
    """
    if isinstance(e, Lens):
        return e
    if isinstance(e, ParLens):
        return e.lens
    if isinstance(e, ContextWord):
        return lens_from_context(e)
    if isinstance(e, ParUnit):
        return lens_unit(e.theory.compose(e.a0, e.a1))
    if isinstance(e, ParSplit):
        return Lens1(e.f, e.g)
    if isinstance(e, Splice):
        return Lens(e.morphisms, (I,) * e.arity)
    return lens_unit(e)


# -- cartesian lenses and equality --------------------------------------------------


@dataclass(frozen=True)
class CartesianLens:
    """``get: A → X`` and ``put: A ⊗ Y → B``."""

    get: FinFnMorphism
    put: FinFnMorphism

    def __post_init__(self) -> None:
        if self.put.dom[: len(self.get.dom)] != self.get.dom:
            raise TypeMismatch("put must start at the domain of get")

    @property
    def outer(self) -> Hole:
        return self.get.dom, self.put.cod

    @property
    def hole(self) -> Hole:
        return self.get.cod, self.put.dom[len(self.get.dom):]


def lens_canonical(l: Lens) -> tuple[FinFnMorphism, ...]:
    """Per-stage view maps ``A⊗Y1⊗...⊗Y_{k-1} → X_k`` and the final update
    ``A⊗Y1⊗...⊗Yn → B``; equal exactly for equal lenses."""
    return cartesian_canonical(l.as_context(), shared=True)


def to_getput(l: Lens) -> CartesianLens:
    require_cartesian(l.theory)
    if l.stages != 1:
        raise TypeMismatch("get/put form is for one-stage lenses")
    get_, put = lens_canonical(l)
    return CartesianLens(get_, put)


def from_getput(c: CartesianLens) -> Lens:
    """Residual ``A``: copy the input, view one copy, keep the other."""
    t = require_cartesian(c.get.theory)
    a = c.get.dom
    return Lens1(t.compose(t.copy(a), t.whisker(a, c.get)), c.put, a)


def lens_equal(l1: Lens, l2: Lens) -> bool:
    """Equality of lenses up to sliding along the residual wires."""
    if l1.outer != l2.outer or l1.holes != l2.holes:
        raise TypeMismatch("lenses of different types cannot be compared")
    if isinstance(l1.theory, FinFn):
        return lens_canonical(l1) == lens_canonical(l2)
    return fills_agree(l1.as_context(), l2.as_context())


def lens_separating_fill(l1: Lens, l2: Lens) -> tuple[Morphism, ...] | None:
    return separating_fill(l1.as_context(), l2.as_context())


__all__ = [
    "CartesianLens",
    "Get",
    "Lens",
    "Lens1",
    "LensSeqSplit",
    "ParLens",
    "Polarized",
    "Send",
    "denote",
    "from_getput",
    "get",
    "identity_lens",
    "lens_associate",
    "lens_canonical",
    "lens_close",
    "lens_compose",
    "lens_equal",
    "lens_fill",
    "lens_from_context",
    "lens_laxator",
    "lens_par_left_unitor",
    "lens_par_right_unitor",
    "lens_par_split",
    "lens_separating_fill",
    "lens_symmetry",
    "lens_tensor",
    "lens_unit",
    "lens_unitor",
    "par_fuse",
    "par_lens",
    "send",
    "sym_normalize",
    "to_getput",
]
