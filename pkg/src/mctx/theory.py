"""Strict monoidal theories behind one contract.

Objects are tuples of atom names: tensor is concatenation and the unit is
``()``.  Finite theories assign every atom a carrier size and encode an
element of ``A ⊗ B`` as a mixed-radix index with the leftmost atom most
significant.

Three backends share the :class:`Theory` contract:

* :class:`FinFn`, finite functions stored as lookup tables (cartesian);
* :class:`FinStoch`, stochastic matrices with exact rational entries;
* :class:`FreeTheory`, syntax trees of generators, interpreted with
  :func:`eval_term`.

Morphisms support ``f >> g`` for sequential composition and ``f @ g`` for
the tensor.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property, reduce
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    EnumerationTooLarge,
    MissingGenerator,
    NotCartesian,
    NotEnumerable,
    NotSymmetric,
    TheoryMismatch,
    TypeMismatch,
    UndecidedEquality,
)

Obj = tuple[str, ...]
I: Obj = ()

#: Default ceiling on the number of morphisms an enumeration may produce.
ENUMERATION_BUDGET = 2_000_000


def obj(spec: str | Iterable[str] = ()) -> Obj:
    """Build an object from ``"A*B"``-style text or an iterable of atoms."""
    if isinstance(spec, str):
        parts = [p.strip() for p in spec.replace("⊗", "*").split("*")]
        return tuple(p for p in parts if p and p != "I")
    return tuple(spec)


def show(a: Obj) -> str:
    return "⊗".join(a) if a else "I"


class Morphism:
    """Mixin giving every backend's arrows the operator syntax."""

    theory: "Theory"
    dom: Obj
    cod: Obj

    def __rshift__(self, other: "Morphism") -> "Morphism":
        return self.theory.compose(self, other)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return self.theory.tensor(self, other)


class Theory(ABC):
    """The uniform contract every downstream construction is written against."""

    name: str = "theory"
    symmetric: bool = True
    cartesian: bool = False

    @abstractmethod
    def identity(self, a: Obj) -> Morphism: ...

    @abstractmethod
    def _compose(self, f: Morphism, g: Morphism) -> Morphism: ...

    @abstractmethod
    def _tensor(self, f: Morphism, g: Morphism) -> Morphism: ...

    @abstractmethod
    def _symmetry(self, a: Obj, b: Obj) -> Morphism: ...

    @abstractmethod
    def equal(self, f: Morphism, g: Morphism) -> bool: ...

    def owns(self, f: Morphism) -> bool:
        return getattr(f, "theory", None) == self

    def _check_owned(self, *fs: Morphism) -> None:
        for f in fs:
            if not self.owns(f):
                raise TheoryMismatch(f"{f!r} does not belong to {self.name}")

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        self._check_owned(f, g)
        if f.cod != g.dom:
            raise TypeMismatch(f"cannot compose {show(f.dom)}→{show(f.cod)} with {show(g.dom)}→{show(g.cod)}")
        return self._compose(f, g)

    def tensor(self, f: Morphism, g: Morphism) -> Morphism:
        self._check_owned(f, g)
        return self._tensor(f, g)

    def symmetry(self, a: Obj, b: Obj) -> Morphism:
        if not self.symmetric:
            raise NotSymmetric(f"{self.name} has no braiding")
        return self._symmetry(tuple(a), tuple(b))

    def seq(self, first: Morphism, *rest: Morphism) -> Morphism:
        """Compose a non-empty chain left to right."""
        return reduce(self.compose, rest, first)

    def par(self, *fs: Morphism) -> Morphism:
        """Tensor a chain; the empty chain is the identity on the unit."""
        if not fs:
            return self.identity(I)
        return reduce(self.tensor, fs)

    def whisker(self, left: Obj, f: Morphism, right: Obj = I) -> Morphism:
        """``id_left ⊗ f ⊗ id_right``."""
        out = f
        if left:
            out = self.tensor(self.identity(left), out)
        if right:
            out = self.tensor(out, self.identity(right))
        return out

    def permute(self, blocks: Sequence[Obj], order: Sequence[int]) -> Morphism:
        """Rearrange ``⊗blocks`` into ``⊗blocks[order[0]] ⊗ ...`` using braidings.

        The generic version bubble-sorts adjacent blocks; concrete theories
        override it with direct index arithmetic.
        """
        if sorted(order) != list(range(len(blocks))):
            raise ValueError(f"{order} is not a permutation of {len(blocks)} blocks")
        current = list(range(len(blocks)))
        dom = tuple(a for b in blocks for a in b)
        out = self.identity(dom)
        target = list(order)
        changed = True
        while changed:
            changed = False
            for k in range(len(current) - 1):
                if target.index(current[k]) > target.index(current[k + 1]):
                    left = tuple(a for i in current[:k] for a in blocks[i])
                    right = tuple(a for i in current[k + 2:] for a in blocks[i])
                    swap = self.symmetry(blocks[current[k]], blocks[current[k + 1]])
                    out = self.compose(out, self.whisker(left, swap, right))
                    current[k], current[k + 1] = current[k + 1], current[k]
                    changed = True
        return out

    def enumerate_hom(self, a: Obj, b: Obj) -> Iterator[Morphism]:
        raise NotEnumerable(f"{self.name} cannot enumerate hom({show(a)}, {show(b)})")

    def probe_hom(self, a: Obj, b: Obj) -> Iterator[Morphism]:
        """A finite family used by observational equality checks."""
        return self.enumerate_hom(a, b)


# ---------------------------------------------------------------------------
# finite carriers


@dataclass(frozen=True)
class _Finite(Theory):
    """Shared carrier bookkeeping for the two finite backends."""

    carriers: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, carriers: Mapping[str, int] | None = None, **sizes: int):
        merged = dict(carriers or {})
        merged.update(sizes)
        for atom, size in merged.items():
            if not isinstance(size, int) or size < 1:
                raise ValueError(f"carrier of {atom!r} must be a positive integer, got {size!r}")
        return cls(tuple(sorted(merged.items())))

    @cached_property
    def sizes(self) -> dict[str, int]:
        return dict(self.carriers)

    def carrier(self, a: Obj) -> int:
        try:
            return math.prod(self.sizes[x] for x in a)
        except KeyError as exc:
            raise TypeMismatch(f"atom {exc.args[0]!r} has no declared carrier") from None

    def extend(self, **sizes: int):
        """A theory with additional atoms (existing ones keep their sizes)."""
        merged = dict(self.sizes)
        for atom, size in sizes.items():
            if merged.get(atom, size) != size:
                raise TypeMismatch(f"atom {atom!r} already has carrier {merged[atom]}")
            merged[atom] = size
        return type(self).of(merged)

    def decode(self, index: int, blocks: Sequence[Obj]) -> tuple[int, ...]:
        """Split a mixed-radix index of ``⊗blocks`` into per-block indices."""
        sizes = [self.carrier(b) for b in blocks]
        out = []
        for size in reversed(sizes):
            index, r = divmod(index, size)
            out.append(r)
        return tuple(reversed(out))

    def encode(self, parts: Sequence[int], blocks: Sequence[Obj]) -> int:
        index = 0
        for part, b in zip(parts, blocks):
            index = index * self.carrier(b) + part
        return index

    def _permutation_table(self, blocks: Sequence[Obj], order: Sequence[int]) -> list[int]:
        if sorted(order) != list(range(len(blocks))):
            raise ValueError(f"{order} is not a permutation of {len(blocks)} blocks")
        moved = [blocks[i] for i in order]
        size = math.prod(self.carrier(b) for b in blocks)
        table = []
        for index in range(size):
            parts = self.decode(index, blocks)
            table.append(self.encode([parts[i] for i in order], moved))
        return table


@dataclass(frozen=True, eq=True)
class FinFnMorphism(Morphism):
    theory: "FinFn" = field(repr=False)
    dom: Obj
    cod: Obj
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        object.__setattr__(self, "table", tuple(self.table))
        n, m = self.theory.carrier(self.dom), self.theory.carrier(self.cod)
        if len(self.table) != n:
            raise TypeMismatch(f"table has {len(self.table)} entries, domain carrier is {n}")
        if any(not 0 <= v < m for v in self.table):
            raise TypeMismatch(f"table entries must lie in [0, {m})")

    def __call__(self, index: int) -> int:
        return self.table[index]

    def __repr__(self) -> str:
        return f"FinFn[{show(self.dom)}→{show(self.cod)}]{list(self.table)}"


@dataclass(frozen=True)
class FinFn(_Finite):
    """Finite sets and functions: a cartesian symmetric monoidal category."""

    name = "finfn"
    symmetric = True
    cartesian = True

    def morphism(self, dom: Obj | str, cod: Obj | str, table: Sequence[int]) -> FinFnMorphism:
        return FinFnMorphism(self, obj(dom), obj(cod), tuple(table))

    def function(self, dom: Obj | str, cod: Obj | str, fn: Callable[..., object]) -> FinFnMorphism:
        """Tabulate ``fn``, which receives one index per domain atom and returns
        a tuple of codomain atom indices (or a bare index for one atom)."""
        dom, cod = obj(dom), obj(cod)
        dom_blocks = [(a,) for a in dom]
        cod_blocks = [(a,) for a in cod]
        table = []
        for index in range(self.carrier(dom)):
            value = fn(*self.decode(index, dom_blocks))
            if not isinstance(value, tuple):
                value = (value,)
            table.append(self.encode(value, cod_blocks))
        return FinFnMorphism(self, dom, cod, tuple(table))

    def identity(self, a: Obj) -> FinFnMorphism:
        a = tuple(a)
        return FinFnMorphism(self, a, a, tuple(range(self.carrier(a))))

    def _compose(self, f, g):
        gt = g.table
        return FinFnMorphism(self, f.dom, g.cod, tuple(gt[v] for v in f.table))

    def _tensor(self, f, g):
        m = self.carrier(g.cod)
        table = tuple(x * m + y for x in f.table for y in g.table)
        return FinFnMorphism(self, f.dom + g.dom, f.cod + g.cod, table)

    def _symmetry(self, a, b):
        return FinFnMorphism(self, a + b, b + a, tuple(self._permutation_table([a, b], [1, 0])))

    def permute(self, blocks, order):
        blocks = [tuple(b) for b in blocks]
        dom = tuple(x for b in blocks for x in b)
        cod = tuple(x for i in order for x in blocks[i])
        return FinFnMorphism(self, dom, cod, tuple(self._permutation_table(blocks, order)))

    def equal(self, f, g) -> bool:
        self._check_owned(f, g)
        return f.dom == g.dom and f.cod == g.cod and f.table == g.table

    def enumerate_hom(self, a, b, budget: int = ENUMERATION_BUDGET) -> Iterator[FinFnMorphism]:
        a, b = tuple(a), tuple(b)
        n, m = self.carrier(a), self.carrier(b)
        if m ** n > budget:
            raise EnumerationTooLarge(f"hom({show(a)}, {show(b)}) has {m}^{n} elements")
        for table in itertools.product(range(m), repeat=n):
            yield FinFnMorphism(self, a, b, table)

    def hom_size(self, a: Obj, b: Obj) -> int:
        return self.carrier(b) ** self.carrier(a)

    # cartesian structure

    def copy(self, a: Obj) -> FinFnMorphism:
        a = tuple(a)
        n = self.carrier(a)
        return FinFnMorphism(self, a, a + a, tuple(i * n + i for i in range(n)))

    def discard(self, a: Obj) -> FinFnMorphism:
        return FinFnMorphism(self, tuple(a), I, (0,) * self.carrier(a))

    def project(self, blocks: Sequence[Obj], keep: Sequence[int]) -> FinFnMorphism:
        """Keep the listed blocks (in the listed order), discarding the rest."""
        blocks = [tuple(b) for b in blocks]
        dom = tuple(x for b in blocks for x in b)
        cod = tuple(x for i in keep for x in blocks[i])
        kept = [blocks[i] for i in keep]
        table = []
        for index in range(self.carrier(dom)):
            parts = self.decode(index, blocks)
            table.append(self.encode([parts[i] for i in keep], kept))
        return FinFnMorphism(self, dom, cod, tuple(table))


# ---------------------------------------------------------------------------
# finite stochastic maps

Row = tuple[tuple[int, Fraction], ...]


def _as_fraction(value: object) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point probabilities are not accepted; use Fraction or 'p/q' text")
    return Fraction(value)  # type: ignore[arg-type]


@dataclass(frozen=True, eq=True)
class FinStochMorphism(Morphism):
    """A stochastic matrix stored as sparse rows ``((column, probability), ...)``."""

    theory: "FinStoch" = field(repr=False)
    dom: Obj
    cod: Obj
    rows: tuple[Row, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        n, m = self.theory.carrier(self.dom), self.theory.carrier(self.cod)
        if len(self.rows) != n:
            raise TypeMismatch(f"matrix has {len(self.rows)} rows, domain carrier is {n}")
        for row in self.rows:
            total = Fraction(0)
            for col, p in row:
                if not 0 <= col < m:
                    raise TypeMismatch(f"column {col} outside [0, {m})")
                if p <= 0:
                    raise ValueError("sparse rows store strictly positive entries only")
                total += p
            if total != 1:
                raise ValueError(f"row sums to {total}, not 1")

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        m = self.theory.carrier(self.cod)
        dense = []
        for row in self.rows:
            line = [Fraction(0)] * m
            for col, p in row:
                line[col] = p
            dense.append(tuple(line))
        return tuple(dense)

    def row(self, index: int) -> dict[int, Fraction]:
        return dict(self.rows[index])

    @property
    def is_deterministic(self) -> bool:
        return all(len(r) == 1 for r in self.rows)

    def __repr__(self) -> str:
        return f"FinStoch[{show(self.dom)}→{show(self.cod)}]{[dict(r) for r in self.rows]}"


def _normalize_row(entries: Mapping[int, Fraction]) -> Row:
    return tuple(sorted((c, p) for c, p in entries.items() if p != 0))

@cache
def _probe_rows(m: int) -> tuple[Row, ...]:
    weights = sorted({Fraction(k, d) for d in range(1, 5) for k in range(0, d + 1)})
    seen: dict[Row, None] = {}
    for j in range(m):
        for w in reversed(weights):
            entries = {c: (1 - w) / m for c in range(m)}
            entries[j] += w
            seen.setdefault(_normalize_row(entries), None)
    return tuple(seen)


@dataclass(frozen=True)
class FinStoch(_Finite):
    """Finite sets and stochastic maps with exact rational probabilities."""

    name = "finstoch"
    symmetric = True
    cartesian = False

    def morphism(self, dom: Obj | str, cod: Obj | str, matrix: Sequence[Sequence[object]]) -> FinStochMorphism:
        rows = []
        for line in matrix:
            rows.append(_normalize_row({c: _as_fraction(v) for c, v in enumerate(line)}))
        return FinStochMorphism(self, obj(dom), obj(cod), tuple(rows))

    def from_rows(self, dom: Obj | str, cod: Obj | str, rows: Sequence[Mapping[int, object]]) -> FinStochMorphism:
        return FinStochMorphism(
            self, obj(dom), obj(cod),
            tuple(_normalize_row({c: _as_fraction(v) for c, v in r.items()}) for r in rows),
        )

    def deterministic(self, dom: Obj | str, cod: Obj | str, table: Sequence[int]) -> FinStochMorphism:
        return FinStochMorphism(self, obj(dom), obj(cod), tuple(((v, Fraction(1)),) for v in table))

    def lift(self, f: FinFnMorphism) -> FinStochMorphism:
        """Embed a finite function as a deterministic stochastic map."""
        return self.deterministic(f.dom, f.cod, f.table)

    def identity(self, a: Obj) -> FinStochMorphism:
        a = tuple(a)
        return self.deterministic(a, a, range(self.carrier(a)))

    def _trusted(self, dom: Obj, cod: Obj, rows: tuple[Row, ...]) -> FinStochMorphism:
        # results of composition and tensor are stochastic by construction
        m = object.__new__(FinStochMorphism)
        for k, v in (("theory", self), ("dom", dom), ("cod", cod), ("rows", rows)):
            object.__setattr__(m, k, v)
        return m

    def _compose(self, f, g):
        rows = []
        g_rows = g.rows
        for row in f.rows:
            if len(row) == 1:
                rows.append(g_rows[row[0][0]])
                continue
            acc: dict[int, Fraction] = {}
            for mid, p in row:
                for col, q in g_rows[mid]:
                    acc[col] = acc.get(col, 0) + p * q
            rows.append(_normalize_row(acc))
        return self._trusted(f.dom, g.cod, tuple(rows))

    def _tensor(self, f, g):
        m = self.carrier(g.cod)
        rows = []
        for rf in f.rows:
            for rg in g.rows:
                if len(rf) == 1:
                    x = rf[0][0] * m
                    rows.append(tuple((x + y, q) for y, q in rg))
                elif len(rg) == 1:
                    y = rg[0][0]
                    rows.append(tuple((x * m + y, p) for x, p in rf))
                else:
                    rows.append(tuple((x * m + y, p * q) for x, p in rf for y, q in rg))
        return self._trusted(f.dom + g.dom, f.cod + g.cod, tuple(rows))

    def _symmetry(self, a, b):
        return self.deterministic(a + b, b + a, self._permutation_table([a, b], [1, 0]))

    def permute(self, blocks, order):
        blocks = [tuple(b) for b in blocks]
        dom = tuple(x for b in blocks for x in b)
        cod = tuple(x for i in order for x in blocks[i])
        return self.deterministic(dom, cod, self._permutation_table(blocks, order))

    def equal(self, f, g) -> bool:
        self._check_owned(f, g)
        return f.dom == g.dom and f.cod == g.cod and f.rows == g.rows

    def enumerate_hom(self, a, b):
        raise NotEnumerable("stochastic hom-sets are infinite; use probe_hom")

    def probe_rows(self, m: int) -> list[Row]:
        """Point masses, the uniform row, and point-mass/uniform mixtures with
        weights of denominator at most four."""
        return list(_probe_rows(m))

    def probe_hom(self, a, b, budget: int = ENUMERATION_BUDGET) -> Iterator[FinStochMorphism]:
        """Deterministic maps first, then the mixture family, without repeats."""
        a, b = tuple(a), tuple(b)
        n, m = self.carrier(a), self.carrier(b)
        rows = self.probe_rows(m)
        if len(rows) ** n > budget:
            raise EnumerationTooLarge(f"probing hom({show(a)}, {show(b)}) needs {len(rows)}^{n} maps")
        point = [((j, Fraction(1)),) for j in range(m)]
        for choice in itertools.product(point, repeat=n):
            yield FinStochMorphism(self, a, b, tuple(choice))
        for choice in itertools.product(rows, repeat=n):
            if all(len(r) == 1 for r in choice):
                continue
            yield FinStochMorphism(self, a, b, tuple(choice))

    def distribution(self, dist: FinStochMorphism | Mapping[int, object], f: FinStochMorphism) -> dict[int, Fraction]:
        """Push a distribution on ``dom f`` (a map from ``I`` or a sparse dict) through ``f``."""
        if isinstance(dist, FinStochMorphism):
            start = dict(dist.rows[0])
        else:
            start = {k: _as_fraction(v) for k, v in dist.items()}
        out: dict[int, Fraction] = {}
        for i, p in start.items():
            for col, q in f.rows[i]:
                out[col] = out.get(col, Fraction(0)) + p * q
        return {k: v for k, v in sorted(out.items()) if v}


# ---------------------------------------------------------------------------
# free symmetric monoidal terms


class FreeTerm(Morphism):
    """Syntax tree of a free (symmetric) monoidal category."""

    @property
    def theory(self) -> "FreeTheory":  # type: ignore[override]
        return FREE


@dataclass(frozen=True)
class Generator(FreeTerm):
    name: str
    dom: Obj
    cod: Obj

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Identity(FreeTerm):
    obj: Obj

    @property
    def dom(self) -> Obj:  # type: ignore[override]
        return self.obj

    @property
    def cod(self) -> Obj:  # type: ignore[override]
        return self.obj

    def __repr__(self) -> str:
        return f"id[{show(self.obj)}]"


@dataclass(frozen=True)
class Compose(FreeTerm):
    first: FreeTerm
    second: FreeTerm

    def __post_init__(self) -> None:
        if self.first.cod != self.second.dom:
            raise TypeMismatch(f"ill-typed composite {self.first!r} ⨾ {self.second!r}")

    @property
    def dom(self) -> Obj:  # type: ignore[override]
        return self.first.dom

    @property
    def cod(self) -> Obj:  # type: ignore[override]
        return self.second.cod

    def __repr__(self) -> str:
        return f"({self.first!r} ⨾ {self.second!r})"


@dataclass(frozen=True)
class Tensor(FreeTerm):
    left: FreeTerm
    right: FreeTerm

    @property
    def dom(self) -> Obj:  # type: ignore[override]
        return self.left.dom + self.right.dom

    @property
    def cod(self) -> Obj:  # type: ignore[override]
        return self.left.cod + self.right.cod

    def __repr__(self) -> str:
        return f"({self.left!r} ⊗ {self.right!r})"


@dataclass(frozen=True)
class Symmetry(FreeTerm):
    a: Obj
    b: Obj

    @property
    def dom(self) -> Obj:  # type: ignore[override]
        return self.a + self.b

    @property
    def cod(self) -> Obj:  # type: ignore[override]
        return self.b + self.a

    def __repr__(self) -> str:
        return f"σ[{show(self.a)},{show(self.b)}]"


@dataclass(frozen=True)
class FreeTheory(Theory):
    """Free terms with the strict unit laws applied by the smart constructors."""

    symmetric: bool = True
    name = "free"

    def owns(self, f: Morphism) -> bool:
        return isinstance(f, FreeTerm)

    def generator(self, name: str, dom: Obj | str, cod: Obj | str) -> Generator:
        return Generator(name, obj(dom), obj(cod))

    def identity(self, a: Obj) -> Identity:
        return Identity(tuple(a))

    def _compose(self, f, g):
        if isinstance(f, Identity):
            return g
        if isinstance(g, Identity):
            return f
        return Compose(f, g)

    def _tensor(self, f, g):
        if isinstance(f, Identity) and not f.obj:
            return g
        if isinstance(g, Identity) and not g.obj:
            return f
        if isinstance(f, Identity) and isinstance(g, Identity):
            return Identity(f.obj + g.obj)
        return Tensor(f, g)

    def _symmetry(self, a, b):
        if not a or not b:
            return Identity(a + b)
        return Symmetry(a, b)

    def equal(self, f, g) -> bool:
        raise UndecidedEquality("free terms are compared only after interpretation (eval_term)")


FREE = FreeTheory()


def generators(t: FreeTerm) -> Iterator[Generator]:
    """All generator occurrences, left to right."""
    if isinstance(t, Generator):
        yield t
    elif isinstance(t, Compose):
        yield from generators(t.first)
        yield from generators(t.second)
    elif isinstance(t, Tensor):
        yield from generators(t.left)
        yield from generators(t.right)


def eval_term(
    t: FreeTerm,
    interp: Mapping[str, Morphism],
    target: Theory,
    objects: Mapping[str, Obj] | None = None,
) -> Morphism:
    """Interpret a free term in ``target``.

    ``objects`` optionally sends each free atom to an object of the target
    (atoms missing from it are kept as they are).
    """

    def expand(a: Obj) -> Obj:
        if objects is None:
            return a
        return tuple(x for atom in a for x in objects.get(atom, (atom,)))

    def go(term: FreeTerm) -> Morphism:
        if isinstance(term, Generator):
            if term.name not in interp:
                raise MissingGenerator(f"no interpretation for generator {term.name!r}")
            image = interp[term.name]
            if image.dom != expand(term.dom) or image.cod != expand(term.cod):
                raise TypeMismatch(
                    f"generator {term.name!r}: expected {show(expand(term.dom))}→{show(expand(term.cod))}, "
                    f"got {show(image.dom)}→{show(image.cod)}"
                )
            return image
        if isinstance(term, Identity):
            return target.identity(expand(term.obj))
        if isinstance(term, Symmetry):
            return target.symmetry(expand(term.a), expand(term.b))
        if isinstance(term, Compose):
            return target.compose(go(term.first), go(term.second))
        if isinstance(term, Tensor):
            return target.tensor(go(term.left), go(term.right))
        raise TypeError(f"not a free term: {term!r}")

    return go(t)


def require_cartesian(theory: Theory) -> FinFn:
    if not isinstance(theory, FinFn):
        raise NotCartesian(f"{theory.name} is not the cartesian finite-function theory")
    return theory
