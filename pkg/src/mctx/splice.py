"""Spliced arrows: sequences ``f0 ⨾ □ ⨾ f1 ⨾ □ ⨾ ... ⨾ fn`` with typed gaps.

An n-hole splice is a plain tuple of morphisms; there is no quotient, so
two splices are equal exactly when their components are.  Hole ``i`` (1-based,
matching the ``≺i`` notation) has type ``(f[i-1].cod, f[i].dom)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import TypeMismatch
from .theory import Morphism, Obj, Theory, show

Hole = tuple[Obj, Obj]


@dataclass(frozen=True)
class Splice:
    """An n-hole spliced arrow ``⟨f0 | f1 | ... | fn⟩``."""

    morphisms: tuple[Morphism, ...]

    def __init__(self, *morphisms: Morphism) -> None:
        if len(morphisms) == 1 and isinstance(morphisms[0], (tuple, list)):
            morphisms = tuple(morphisms[0])
        if not morphisms:
            raise ValueError("a splice needs at least one morphism")
        theory = morphisms[0].theory
        for m in morphisms[1:]:
            if not theory.owns(m):
                raise TypeMismatch("splice components come from different theories")
        object.__setattr__(self, "morphisms", tuple(morphisms))

    @property
    def theory(self) -> Theory:
        return self.morphisms[0].theory

    @property
    def arity(self) -> int:
        return len(self.morphisms) - 1

    @property
    def outer(self) -> Hole:
        return self.morphisms[0].dom, self.morphisms[-1].cod

    @property
    def holes(self) -> tuple[Hole, ...]:
        ms = self.morphisms
        return tuple((ms[i].cod, ms[i + 1].dom) for i in range(len(ms) - 1))

    def __getitem__(self, i: int) -> Morphism:
        return self.morphisms[i]

    def __len__(self) -> int:
        return len(self.morphisms)

    def __repr__(self) -> str:
        return "⟨" + " | ".join(repr(m) for m in self.morphisms) + "⟩"

    def describe(self) -> str:
        a, b = self.outer
        holes = ", ".join(f"({show(x)},{show(y)})" for x, y in self.holes)
        return f"splice ({show(a)},{show(b)}) with holes [{holes}]"


def identity_splice(theory: Theory, x: Obj, y: Obj) -> Splice:
    """``id ⨾ □ ⨾ id`` on the hole ``(x, y)``."""
    return Splice(theory.identity(x), theory.identity(y))


def as_splice(e: Splice | Morphism) -> Splice:
    return e if isinstance(e, Splice) else Splice(e)


def splice_fill(c: Splice, i: int, d: Splice | Morphism) -> Splice:
    """``c ≺i d``: put ``d`` into hole ``i`` of ``c``, fusing the boundary morphisms."""
    d = as_splice(d)
    if not 1 <= i <= c.arity:
        raise IndexError(f"hole {i} out of range for a {c.arity}-hole splice")
    if d.outer != c.holes[i - 1]:
        x, y = c.holes[i - 1]
        a, b = d.outer
        raise TypeMismatch(f"hole {i} has type ({show(x)},{show(y)}), filler has ({show(a)},{show(b)})")
    ms = c.morphisms
    inner = d.morphisms
    theory = c.theory
    if len(inner) == 1:
        fused = theory.seq(ms[i - 1], inner[0], ms[i])
        return Splice(*ms[: i - 1], fused, *ms[i + 1:])
    first = theory.compose(ms[i - 1], inner[0])
    last = theory.compose(inner[-1], ms[i])
    return Splice(*ms[: i - 1], first, *inner[1:-1], last, *ms[i + 1:])


def fill_all(c: Splice, fillers: Sequence[Morphism]) -> Morphism:
    """Close every hole, giving ``f0 ⨾ h1 ⨾ f1 ⨾ ... ⨾ hn ⨾ fn``."""
    if len(fillers) != c.arity:
        raise TypeMismatch(f"{c.arity} holes but {len(fillers)} fillers")
    out = c.morphisms[0]
    for h, (x, y), f in zip(fillers, c.holes, c.morphisms[1:]):
        if (h.dom, h.cod) != (x, y):
            raise TypeMismatch(f"filler {show(h.dom)}→{show(h.cod)} does not fit hole ({show(x)},{show(y)})")
        out = c.theory.seq(out, h, f)
    return out


def _require_arity(s: Splice, n: int, what: str) -> None:
    if s.arity != n:
        raise TypeMismatch(f"{what} must have {n} holes, got {s.arity}")


def splice_alpha(f: Splice, g: Splice) -> tuple[Splice, Splice]:
    """Reassociate ``X ◁ (X' ◁ X'')`` into ``(X ◁ X') ◁ X''``.

    ``g`` sits in hole 2 of ``f``; the result ``(h, k)`` has ``k`` in hole 1
    of ``h``.  The canonical witness keeps the flattened 3-hole splice
    unchanged: ``h = ⟨id_A | id_X'' | g2 ⨾ f2⟩`` and ``k = ⟨f0 | f1 ⨾ g0 | g1⟩``.
    """
    _require_arity(f, 2, "outer split")
    _require_arity(g, 2, "inner split")
    if g.outer != f.holes[1]:
        raise TypeMismatch("inner split does not fit the second hole")
    theory = f.theory
    a = f.outer[0]
    x2 = g.holes[1][0]
    h = Splice(theory.identity(a), theory.identity(x2), theory.compose(g[2], f[2]))
    k = Splice(f[0], theory.compose(f[1], g[0]), g[1])
    return h, k


def splice_alpha_inv(h: Splice, k: Splice) -> tuple[Splice, Splice]:
    """Inverse of :func:`splice_alpha`: ``k`` in hole 1 of ``h`` becomes
    ``g`` in hole 2 of ``f``."""
    _require_arity(h, 2, "outer split")
    _require_arity(k, 2, "inner split")
    if k.outer != h.holes[0]:
        raise TypeMismatch("inner split does not fit the first hole")
    theory = h.theory
    y = k.holes[0][1]
    b = h.outer[1]
    f = Splice(theory.compose(h[0], k[0]), theory.identity(y), theory.identity(b))
    g = Splice(k[1], theory.compose(k[2], h[1]), h[2])
    return f, g


def splice_lambda(s: Splice, u: Morphism) -> Splice:
    """Left unitor: ``λ(⟨f0|f1|f2⟩ | u) = ⟨f0 ⨾ u ⨾ f1 | f2⟩``."""
    _require_arity(s, 2, "split")
    return splice_fill(s, 1, u)


def splice_rho(s: Splice, u: Morphism) -> Splice:
    """Right unitor: ``ρ(⟨f0|f1|f2⟩ | u) = ⟨f0 | f1 ⨾ u ⨾ f2⟩``."""
    _require_arity(s, 2, "split")
    return splice_fill(s, 2, u)


@dataclass(frozen=True)
class SpliceTree:
    """A splice whose holes are filled by sub-trees or left open (``None``)."""

    node: Splice
    children: tuple["SpliceTree | Morphism | None", ...]

    def __post_init__(self) -> None:
        if len(self.children) != self.node.arity:
            raise TypeMismatch("one child per hole is required")

    def flatten(self) -> Splice:
        """Fill children right to left so hole indices stay valid."""
        out = self.node
        for i in range(self.node.arity, 0, -1):
            child = self.children[i - 1]
            if child is None:
                continue
            inner = child.flatten() if isinstance(child, SpliceTree) else child
            out = splice_fill(out, i, inner)
        return out


def splices_equal(s: Splice, t: Splice) -> bool:
    """Componentwise equality (spliced arrows carry no quotient)."""
    if s.arity != t.arity or s.holes != t.holes or s.outer != t.outer:
        return False
    theory = s.theory
    return all(theory.equal(a, b) for a, b in zip(s.morphisms, t.morphisms))
