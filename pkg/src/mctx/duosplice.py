"""Spliced monoidal arrows: splices plus parallel splits and parallel units.

Besides the sequential splices of :mod:`mctx.splice`, this category has

* parallel splits ``f ⨾ (□ ⊗ □) ⨾ g`` (:class:`ParSplit`), and
* parallel units ``⟨a0 ∥ a1⟩`` with ``a0: A → I`` and ``a1: I → B`` (:class:`ParUnit`),

related to the sequential structure by the laxators ``psi2``, ``psi0``,
``phi2`` and ``phi0``.  Laxators return canonical representatives so that
downstream comparisons are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .errors import TypeMismatch
from .splice import Hole, Splice, as_splice, fill_all
from .theory import I, Morphism, Obj, Theory, show


@dataclass(frozen=True)
class ParSplit:
    """``f ⨾ (□ ⊗ □) ⨾ g`` with ``f: A → X⊗X'`` and ``g: Y⊗Y' → B``."""

    f: Morphism
    g: Morphism
    holes: tuple[Hole, Hole]

    def __post_init__(self) -> None:
        (x, y), (x2, y2) = self.holes
        if self.f.cod != x + x2:
            raise TypeMismatch(f"parallel split: {show(self.f.cod)} is not {show(x)}⊗{show(x2)}")
        if self.g.dom != y + y2:
            raise TypeMismatch(f"parallel split: {show(self.g.dom)} is not {show(y)}⊗{show(y2)}")
        if not self.f.theory.owns(self.g):
            raise TypeMismatch("parallel split mixes theories")

    @classmethod
    def of(cls, f: Morphism, g: Morphism, x: Obj, y: Obj) -> "ParSplit":
        """Split ``f.cod`` after the prefix ``x`` and ``g.dom`` after ``y``."""
        x, y = tuple(x), tuple(y)
        if f.cod[: len(x)] != x or g.dom[: len(y)] != y:
            raise TypeMismatch("first hole does not prefix the boundary")
        return cls(f, g, ((x, y), (f.cod[len(x):], g.dom[len(y):])))

    @property
    def theory(self) -> Theory:
        return self.f.theory

    @property
    def outer(self) -> Hole:
        return self.f.dom, self.g.cod

    @property
    def arity(self) -> int:
        return 2


@dataclass(frozen=True)
class ParUnit:
    """``⟨a0 ∥ a1⟩`` with ``a0: A → I`` and ``a1: I → B``."""

    a0: Morphism
    a1: Morphism

    def __post_init__(self) -> None:
        if self.a0.cod != I or self.a1.dom != I:
            raise TypeMismatch("a parallel unit factors through the monoidal unit")

    @property
    def theory(self) -> Theory:
        return self.a0.theory

    @property
    def outer(self) -> Hole:
        return self.a0.dom, self.a1.cod

    @property
    def arity(self) -> int:
        return 0


Element = Union[Splice, ParSplit, ParUnit, Morphism]


def psi2(outer: ParSplit, left: Splice, right: Splice) -> tuple[Splice, ParSplit, ParSplit]:
    """Interleave two sequential splits sitting in the holes of a parallel split.

    ``f0 ⨾ ((h0⨾□⨾h1⨾□⨾h2) ⊗ (k0⨾□⨾k1⨾□⨾k2)) ⨾ f1`` becomes the splice
    ``⟨f0⨾(h0⊗k0) | h1⊗k1 | (h2⊗k2)⨾f1⟩`` whose two holes hold pure
    parallel splits ``id ⨾ (□⊗□) ⨾ id``.
    """
    if left.arity != 2 or right.arity != 2:
        raise TypeMismatch("psi2 expects two 2-hole splices")
    if left.outer != outer.holes[0] or right.outer != outer.holes[1]:
        raise TypeMismatch("psi2: inner splices do not fit the parallel holes")
    theory = outer.theory
    g = Splice(
        theory.compose(outer.f, theory.tensor(left[0], right[0])),
        theory.tensor(left[1], right[1]),
        theory.compose(theory.tensor(left[2], right[2]), outer.g),
    )
    (x, y), (x2, y2) = left.holes
    (u, v), (u2, v2) = right.holes
    p = ParSplit(theory.identity(x + u), theory.identity(y + v), ((x, y), (u, v)))
    q = ParSplit(theory.identity(x2 + u2), theory.identity(y2 + v2), ((x2, y2), (u2, v2)))
    return g, p, q


def psi0(u: ParUnit) -> Splice:
    """``⟨a0 ∥ a1⟩ ↦ ⟨a0 | id_I | a1⟩``; both holes have type ``(I, I)``."""
    return Splice(u.a0, u.theory.identity(I), u.a1)


def phi2(outer: ParSplit, h0: Morphism, h1: Morphism) -> Morphism:
    """Merge two sequential units in a parallel split: ``f ⨾ (h0 ⊗ h1) ⨾ g``."""
    if (h0.dom, h0.cod) != outer.holes[0] or (h1.dom, h1.cod) != outer.holes[1]:
        raise TypeMismatch("phi2: units do not fit the parallel holes")
    theory = outer.theory
    return theory.seq(outer.f, theory.tensor(h0, h1), outer.g)


def phi0(u: ParUnit) -> Morphism:
    """``⟨a0 ∥ a1⟩ ↦ a0 ⨾ a1``."""
    return u.theory.compose(u.a0, u.a1)


def par_representable(p: ParSplit | ParUnit) -> Splice:
    """Read a parallel split as one hole ``(X⊗X', Y⊗Y')`` (a unit as ``(I, I)``).

    The data is untouched; only the hole bookkeeping changes.
    """
    if isinstance(p, ParUnit):
        return Splice(p.a0, p.a1)
    return Splice(p.f, p.g)


def par_from_splice(s: Splice, first: Hole | None = None) -> ParSplit | ParUnit:
    """Inverse of :func:`par_representable`.

    With ``first`` given, the single hole is split after that prefix; without
    it the hole must be ``(I, I)`` and a parallel unit is returned.
    """
    if s.arity != 1:
        raise TypeMismatch("only one-hole splices are representable")
    if first is None:
        if s.holes[0] != (I, I):
            raise TypeMismatch("a parallel unit needs a hole of type (I, I)")
        return ParUnit(s[0], s[1])
    return ParSplit.of(s[0], s[1], *first)


# -- parallel associator and unitors ---------------------------------------


def par_alpha(outer: ParSplit, inner: ParSplit) -> tuple[ParSplit, ParSplit]:
    """``(X ⊗ X') ⊗ X'' → X ⊗ (X' ⊗ X'')``: ``inner`` sits in hole 1 of
    ``outer``; the result has a pure parallel split in hole 2."""
    if inner.outer != outer.holes[0]:
        raise TypeMismatch("par_alpha: inner split does not fit hole 1")
    theory = outer.theory
    (x, y), (x1, y1) = inner.holes
    x2, y2 = outer.holes[1]
    new_outer = ParSplit(
        theory.compose(outer.f, theory.whisker((), inner.f, x2)),
        theory.compose(theory.whisker((), inner.g, y2), outer.g),
        ((x, y), (x1 + x2, y1 + y2)),
    )
    pure = ParSplit(theory.identity(x1 + x2), theory.identity(y1 + y2), ((x1, y1), (x2, y2)))
    return new_outer, pure


def par_alpha_inv(outer: ParSplit, inner: ParSplit) -> tuple[ParSplit, ParSplit]:
    """``X ⊗ (X' ⊗ X'') → (X ⊗ X') ⊗ X''``: ``inner`` sits in hole 2."""
    if inner.outer != outer.holes[1]:
        raise TypeMismatch("par_alpha_inv: inner split does not fit hole 2")
    theory = outer.theory
    x, y = outer.holes[0]
    (x1, y1), (x2, y2) = inner.holes
    new_outer = ParSplit(
        theory.compose(outer.f, theory.whisker(x, inner.f)),
        theory.compose(theory.whisker(y, inner.g), outer.g),
        ((x + x1, y + y1), (x2, y2)),
    )
    pure = ParSplit(theory.identity(x + x1), theory.identity(y + y1), ((x, y), (x1, y1)))
    return new_outer, pure


def par_lambda(p: ParSplit, unit: ParUnit) -> Splice:
    """Absorb a parallel unit in hole 1: ``⟨f⨾(a0⊗id) | (a1⊗id)⨾g⟩``."""
    if unit.outer != p.holes[0]:
        raise TypeMismatch("par_lambda: unit does not fit hole 1")
    theory = p.theory
    x, y = p.holes[1]
    return Splice(
        theory.compose(p.f, theory.whisker((), unit.a0, x)),
        theory.compose(theory.whisker((), unit.a1, y), p.g),
    )


def par_rho(p: ParSplit, unit: ParUnit) -> Splice:
    """Absorb a parallel unit in hole 2: ``⟨f⨾(id⊗a0) | (id⊗a1)⨾g⟩``."""
    if unit.outer != p.holes[1]:
        raise TypeMismatch("par_rho: unit does not fit hole 2")
    theory = p.theory
    x, y = p.holes[0]
    return Splice(
        theory.compose(p.f, theory.whisker(x, unit.a0)),
        theory.compose(theory.whisker(y, unit.a1), p.g),
    )


def trivial_unit(theory: Theory) -> ParUnit:
    """``⟨id_I ∥ id_I⟩``, the parallel unit on ``(I, I)``."""
    return ParUnit(theory.identity(I), theory.identity(I))


# -- decomposition trees -----------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    """An open hole, named so fillers can be matched across rewrites."""

    label: str
    hole: Hole


@dataclass(frozen=True)
class Node:
    element: Splice | ParSplit | ParUnit
    children: tuple["Node | Leaf", ...] = ()

    def __post_init__(self) -> None:
        holes = element_holes(self.element)
        if len(self.children) != len(holes):
            raise TypeMismatch(f"{len(holes)} holes but {len(self.children)} children")
        for child, hole in zip(self.children, holes):
            if tree_outer(child) != hole:
                raise TypeMismatch(f"child of type {tree_outer(child)} in hole {hole}")


Tree = Union[Node, Leaf]


def element_holes(e: Splice | ParSplit | ParUnit) -> tuple[Hole, ...]:
    if isinstance(e, ParSplit):
        return e.holes
    if isinstance(e, ParUnit):
        return ()
    return e.holes


def tree_outer(t: Tree) -> Hole:
    return t.hole if isinstance(t, Leaf) else t.element.outer


def leaves(t: Tree) -> list[Leaf]:
    if isinstance(t, Leaf):
        return [t]
    return [leaf for c in t.children for leaf in leaves(c)]


def close(t: Tree, fillers: Mapping[str, Morphism]) -> Morphism:
    """Fill every leaf with the morphism of the same label and compose.

    A parallel unit closes to ``a0 ⨾ a1``, i.e. its ``(I, I)`` hole is
    filled with the identity.
    """
    if isinstance(t, Leaf):
        h = fillers[t.label]
        if (h.dom, h.cod) != t.hole:
            raise TypeMismatch(f"filler for {t.label} has the wrong type")
        return h
    inner = [close(c, fillers) for c in t.children]
    e = t.element
    if isinstance(e, ParUnit):
        return phi0(e)
    if isinstance(e, ParSplit):
        return phi2(e, *inner)
    return fill_all(e, inner)


def element_fill(e: Element, fillers: Sequence[Morphism]) -> Morphism:
    """Close a single element (any of the four kinds) with hole fillers."""
    if isinstance(e, ParSplit):
        return phi2(e, *fillers)
    if isinstance(e, ParUnit):
        if fillers:
            raise TypeMismatch("a parallel unit has no holes")
        return phi0(e)
    return fill_all(as_splice(e), fillers)


__all__ = [
    "Element",
    "Leaf",
    "Node",
    "ParSplit",
    "ParUnit",
    "close",
    "element_fill",
    "leaves",
    "par_alpha",
    "par_alpha_inv",
    "par_from_splice",
    "par_lambda",
    "par_representable",
    "par_rho",
    "phi0",
    "phi2",
    "psi0",
    "psi2",
    "trivial_unit",
]
