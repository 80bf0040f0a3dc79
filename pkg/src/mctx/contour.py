"""Contours: the category traced around the boundary of decompositions.

A presentation lists source objects, named elements (units, morphisms,
sequential splits and, for the monoidal version, parallel splits and
parallel units) and equation instances between them.  :func:`contour`
turns it into generators and relations over objects ``X^L`` and ``X^R``:

* a unit ``a`` on ``A`` gives ``a0: A^L → A^R``;
* a morphism ``b`` from ``B`` to ``X`` gives ``b0: B^L → X^L`` and ``b1: X^R → B^R``;
* a split ``c`` of ``C`` into ``Y ◁ Z`` gives ``c0: C^L → Y^L``, ``c1: Y^R → Z^L``, ``c2: Z^R → C^R``;
* a parallel split ``a`` of ``A`` into ``X ⊗ Y`` gives ``a0: A^L → X^L⊗Y^L`` and ``a1: X^R⊗Y^R → A^R``;
* a parallel unit ``a`` on ``A`` gives ``a0: A^L → I`` and ``a1: I → A^R``.

Relations are free terms; :func:`check_counit` interprets a presentation
built from concrete spliced arrows back into their theory and evaluates
every relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .duosplice import ParSplit, ParUnit, par_alpha, par_lambda, par_rho, phi0, phi2, psi0, psi2
from .errors import TypeMismatch
from .splice import Splice, splice_alpha, splice_lambda, splice_rho
from .theory import FREE, FreeTerm, Generator, I, Morphism, Obj, Theory, eval_term

SEQUENTIAL_KINDS = ("unit", "morphism", "split")
PARALLEL_KINDS = ("parsplit", "parunit")

#: equation tag -> kinds of the elements it relates, in order
EQUATION_SHAPES: dict[str, tuple[str, ...]] = {
    "alpha": ("split", "split", "split", "split"),
    "lambda": ("split", "unit", "morphism"),
    "rho": ("split", "unit", "morphism"),
    "par_alpha": ("parsplit", "parsplit", "parsplit", "parsplit"),
    "par_lambda": ("parsplit", "parunit", "morphism"),
    "par_rho": ("parsplit", "parunit", "morphism"),
    "psi2": ("parsplit", "split", "split", "split", "parsplit", "parsplit"),
    "psi0": ("parunit", "split", "parunit", "parunit"),
    "phi2": ("parsplit", "unit", "unit", "unit"),
    "phi0": ("parunit", "unit"),
}
SEQUENTIAL_TAGS = ("alpha", "lambda", "rho")


@dataclass(frozen=True)
class Element:
    """A named element of kind ``kind`` on ``outer`` with the given holes."""

    name: str
    kind: str
    outer: str
    holes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "holes", tuple(self.holes))
        expected = {"unit": 0, "morphism": 1, "split": 2, "parsplit": 2, "parunit": 0}
        if self.kind not in expected:
            raise TypeMismatch(f"unknown element kind {self.kind!r}")
        if len(self.holes) != expected[self.kind]:
            raise TypeMismatch(f"a {self.kind} has {expected[self.kind]} holes")


@dataclass(frozen=True)
class Equation:
    tag: str
    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))


@dataclass(frozen=True)
class Presentation:
    """Source data: objects, elements and equation instances."""

    objects: tuple[str, ...] = ()
    elements: tuple[Element, ...] = ()
    equations: tuple[Equation, ...] = ()

    def element(self, name: str) -> Element:
        for e in self.elements:
            if e.name == name:
                return e
        raise TypeMismatch(f"no element named {name!r}")

    def rename(self, mapping: Mapping[str, str]) -> "Presentation":
        """Rename elements (names missing from ``mapping`` are kept)."""
        r = lambda n: mapping.get(n, n)  # noqa: E731
        return Presentation(
            self.objects,
            tuple(Element(r(e.name), e.kind, e.outer, e.holes) for e in self.elements),
            tuple(Equation(q.tag, tuple(r(n) for n in q.elements)) for q in self.equations),
        )


@dataclass(frozen=True)
class Relation:
    tag: str
    lhs: FreeTerm
    rhs: FreeTerm


@dataclass(frozen=True)
class CategoryPresentation:
    objects: tuple[str, ...]
    generators: tuple[Generator, ...]
    relations: tuple[Relation, ...] = field(default=())

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)


def L(x: str) -> str:
    return f"{x}^L"


def R(x: str) -> str:
    return f"{x}^R"


def _generators(e: Element) -> list[Generator]:
    n, a, hs = e.name, e.outer, e.holes
    if e.kind == "unit":
        return [Generator(f"{n}0", (L(a),), (R(a),))]
    if e.kind == "morphism":
        (x,) = hs
        return [Generator(f"{n}0", (L(a),), (L(x),)), Generator(f"{n}1", (R(x),), (R(a),))]
    if e.kind == "split":
        y, z = hs
        return [
            Generator(f"{n}0", (L(a),), (L(y),)),
            Generator(f"{n}1", (R(y),), (L(z),)),
            Generator(f"{n}2", (R(z),), (R(a),)),
        ]
    if e.kind == "parsplit":
        x, y = hs
        return [Generator(f"{n}0", (L(a),), (L(x), L(y))), Generator(f"{n}1", (R(x), R(y)), (R(a),))]
    return [Generator(f"{n}0", (L(a),), I), Generator(f"{n}1", I, (R(a),))]


def _relations(p: Presentation, eq: Equation, gen: Mapping[str, Generator]) -> list[Relation]:
    shape = EQUATION_SHAPES.get(eq.tag)
    if shape is None:
        raise TypeMismatch(f"unknown equation tag {eq.tag!r}")
    if len(eq.elements) != len(shape):
        raise TypeMismatch(f"{eq.tag} relates {len(shape)} elements, got {len(eq.elements)}")
    els = [p.element(n) for n in eq.elements]
    for e, kind in zip(els, shape):
        if e.kind != kind:
            raise TypeMismatch(f"{eq.tag}: element {e.name} is a {e.kind}, expected a {kind}")
    g = lambda e, i: gen[f"{e.name}{i}"]  # noqa: E731
    seq, par = FREE.seq, FREE.tensor

    def idn(*objs: str) -> FreeTerm:
        return FREE.identity(tuple(objs))

    def rel(lhs: FreeTerm, rhs: FreeTerm) -> Relation:
        if (lhs.dom, lhs.cod) != (rhs.dom, rhs.cod):
            raise TypeMismatch(f"{eq.tag} instance {eq.elements} is ill-typed")
        return Relation(eq.tag, lhs, rhs)

    try:
        if eq.tag == "alpha":
            # a: A → X ◁ P with b: P → X' ◁ X''  equals  c: A → Q ◁ X'' with d: Q → X ◁ X'
            a, b, c, d = els
            return [
                rel(g(a, 0), seq(g(c, 0), g(d, 0))),
                rel(seq(g(a, 1), g(b, 0)), g(d, 1)),
                rel(g(b, 1), seq(g(d, 2), g(c, 1))),
                rel(g(c, 2), seq(g(b, 2), g(a, 2))),
            ]
        if eq.tag == "rho":
            a, b, c = els
            return [rel(g(a, 0), g(c, 0)), rel(seq(g(a, 1), g(b, 0), g(a, 2)), g(c, 1))]
        if eq.tag == "lambda":
            d, e, c = els
            return [rel(seq(g(d, 0), g(e, 0), g(d, 1)), g(c, 0)), rel(g(d, 2), g(c, 1))]
        if eq.tag == "par_alpha":
            # a: A → P ⊗ Z with b: P → X ⊗ Y  equals  c: A → X ⊗ Q with d: Q → Y ⊗ Z
            a, b, c, d = els
            z, x = a.holes[1], c.holes[0]
            return [
                rel(seq(g(a, 0), par(g(b, 0), idn(L(z)))), seq(g(c, 0), par(idn(L(x)), g(d, 0)))),
                rel(seq(par(g(b, 1), idn(R(z))), g(a, 1)), seq(par(idn(R(x)), g(d, 1)), g(c, 1))),
            ]
        if eq.tag == "par_lambda":
            a, b, c = els
            x = a.holes[1]
            return [
                rel(seq(g(a, 0), par(g(b, 0), idn(L(x)))), g(c, 0)),
                rel(seq(par(g(b, 1), idn(R(x))), g(a, 1)), g(c, 1)),
            ]
        if eq.tag == "par_rho":
            a, b, c = els
            x = a.holes[0]
            return [
                rel(seq(g(a, 0), par(idn(L(x)), g(b, 0))), g(c, 0)),
                rel(seq(par(idn(R(x)), g(b, 1)), g(a, 1)), g(c, 1)),
            ]
        if eq.tag == "psi2":
            a, b, c, d, e, f = els
            return [
                rel(seq(g(a, 0), par(g(b, 0), g(c, 0))), seq(g(d, 0), g(e, 0))),
                rel(par(g(b, 1), g(c, 1)), seq(g(e, 1), g(d, 1), g(f, 0))),
                rel(seq(par(g(b, 2), g(c, 2)), g(a, 1)), seq(g(f, 1), g(d, 2))),
            ]
        if eq.tag == "psi0":
            a, b, c, d = els
            return [
                rel(g(a, 0), seq(g(b, 0), g(c, 0))),
                rel(FREE.identity(I), seq(g(c, 1), g(b, 1), g(d, 0))),
                rel(g(a, 1), seq(g(d, 1), g(b, 2))),
            ]
        if eq.tag == "phi2":
            a, b, c, d = els
            return [rel(seq(g(a, 0), par(g(b, 0), g(c, 0)), g(a, 1)), g(d, 0))]
        a, b = els  # phi0
        return [rel(seq(g(a, 0), g(a, 1)), g(b, 0))]
    except TypeMismatch as exc:
        raise TypeMismatch(f"{eq.tag} instance {eq.elements} is ill-typed: {exc}") from None


def _emit(p: Presentation, monoidal: bool) -> CategoryPresentation:
    allowed = SEQUENTIAL_KINDS + (PARALLEL_KINDS if monoidal else ())
    objects = set(p.objects)
    gens: list[Generator] = []
    for e in p.elements:
        if e.kind not in allowed:
            raise TypeMismatch(f"element {e.name} of kind {e.kind} needs the monoidal contour")
        for o in (e.outer,) + e.holes:
            if o not in objects:
                raise TypeMismatch(f"element {e.name} mentions unknown object {o!r}")
        gens.extend(_generators(e))
    index = {g.name: g for g in gens}
    if len(index) != len(gens):
        raise TypeMismatch("element names must be unique")
    rels: list[Relation] = []
    for eq in p.equations:
        if not monoidal and eq.tag not in SEQUENTIAL_TAGS:
            raise TypeMismatch(f"equation {eq.tag} needs the monoidal contour")
        rels.extend(_relations(p, eq, index))
    objs = tuple(x for o in p.objects for x in (L(o), R(o)))
    return CategoryPresentation(objs, tuple(gens), tuple(rels))


def contour(p: Presentation) -> CategoryPresentation:
    """Generators and relations for a promonoidal presentation."""
    return _emit(p, monoidal=False)


def monoidal_contour(p: Presentation) -> CategoryPresentation:
    """Generators and relations for a produoidal presentation; the result is
    presented as a (strict) monoidal category."""
    return _emit(p, monoidal=True)


# -- concrete samples -------------------------------------------------------------


Concrete = Splice | ParSplit | ParUnit | Morphism


class SampleBuilder:
    """Collects concrete elements and equation instances into a presentation
    together with the interpretation of every generator."""

    def __init__(self) -> None:
        self._objects: dict[tuple[Obj, Obj], str] = {}
        self._elements: list[Element] = []
        self._equations: list[Equation] = []
        self.interp: dict[str, Morphism] = {}
        self.object_map: dict[str, Obj] = {}

    def _object(self, pair: tuple[Obj, Obj]) -> str:
        if pair not in self._objects:
            name = f"o{len(self._objects)}"
            self._objects[pair] = name
            self.object_map[L(name)] = pair[0]
            self.object_map[R(name)] = pair[1]
        return self._objects[pair]

    def add(self, value: Concrete, kind: str | None = None) -> str:
        name = f"e{len(self._elements)}"
        if isinstance(value, ParSplit):
            kind, parts = "parsplit", (value.f, value.g)
            holes = value.holes
        elif isinstance(value, ParUnit):
            kind, parts, holes = "parunit", (value.a0, value.a1), ()
        elif isinstance(value, Splice):
            kinds = {1: "morphism", 2: "split"}
            if value.arity not in kinds:
                raise TypeMismatch("only one- and two-hole splices are contour elements")
            kind, parts, holes = kinds[value.arity], value.morphisms, value.holes
        else:
            kind, parts, holes = "unit", (value,), ()
            outer = (value.dom, value.cod)
        if kind != "unit":
            outer = value.outer
        self._elements.append(Element(name, kind, self._object(outer), tuple(self._object(h) for h in holes)))
        for i, m in enumerate(parts):
            self.interp[f"{name}{i}"] = m
        return name

    def equation(self, tag: str, *values: Concrete) -> None:
        self._equations.append(Equation(tag, tuple(self.add(v) for v in values)))

    def presentation(self) -> Presentation:
        objects = tuple(sorted(self._objects.values(), key=lambda s: int(s[1:])))
        return Presentation(objects, tuple(self._elements), tuple(self._equations))


@dataclass(frozen=True)
class CounitReport:
    relations: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_counit(theory: Theory, sample: SampleBuilder) -> CounitReport:
    """Evaluate every contour relation of the sample in ``theory``."""
    pres = monoidal_contour(sample.presentation())
    bad = []
    for k, r in enumerate(pres.relations):
        lhs = eval_term(r.lhs, sample.interp, theory, sample.object_map)
        rhs = eval_term(r.rhs, sample.interp, theory, sample.object_map)
        if not theory.equal(lhs, rhs):
            bad.append(f"relation {k} ({r.tag}): {r.lhs!r} = {r.rhs!r}")
    return CounitReport(len(pres.relations), tuple(bad))


# Helpers recording one instance of each structural equation; the instance
# is produced by the corresponding operation of the splice modules.


def sample_alpha(s: SampleBuilder, f: Splice, g: Splice) -> None:
    h, k = splice_alpha(f, g)
    s.equation("alpha", f, g, h, k)


def sample_rho(s: SampleBuilder, f: Splice, u: Morphism) -> None:
    s.equation("rho", f, u, splice_rho(f, u))


def sample_lambda(s: SampleBuilder, f: Splice, u: Morphism) -> None:
    s.equation("lambda", f, u, splice_lambda(f, u))


def sample_par_alpha(s: SampleBuilder, outer: ParSplit, inner: ParSplit) -> None:
    c, d = par_alpha(outer, inner)
    s.equation("par_alpha", outer, inner, c, d)


def sample_par_lambda(s: SampleBuilder, p: ParSplit, u: ParUnit) -> None:
    s.equation("par_lambda", p, u, par_lambda(p, u))


def sample_par_rho(s: SampleBuilder, p: ParSplit, u: ParUnit) -> None:
    s.equation("par_rho", p, u, par_rho(p, u))


def sample_psi2(s: SampleBuilder, outer: ParSplit, left: Splice, right: Splice) -> None:
    g, p, q = psi2(outer, left, right)
    s.equation("psi2", outer, left, right, g, p, q)


def sample_psi0(s: SampleBuilder, u: ParUnit) -> None:
    g = psi0(u)
    t = u.theory
    unit = ParUnit(t.identity(I), t.identity(I))
    s.equation("psi0", u, g, unit, unit)


def sample_phi2(s: SampleBuilder, outer: ParSplit, h0: Morphism, h1: Morphism) -> None:
    s.equation("phi2", outer, h0, h1, phi2(outer, h0, h1))


def sample_phi0(s: SampleBuilder, u: ParUnit) -> None:
    s.equation("phi0", u, phi0(u))


def element_counts(p: Presentation) -> dict[str, int]:
    """Generators per element kind, as emitted."""
    per = {"unit": 1, "morphism": 2, "split": 3, "parsplit": 2, "parunit": 2}
    return {e.name: per[e.kind] for e in p.elements}


def relation_counts() -> dict[str, int]:
    return {"alpha": 4, "lambda": 2, "rho": 2, "par_alpha": 2, "par_lambda": 2, "par_rho": 2,
            "psi2": 3, "psi0": 3, "phi2": 1, "phi0": 1}


__all__ = [
    "CategoryPresentation",
    "CounitReport",
    "EQUATION_SHAPES",
    "Element",
    "Equation",
    "Presentation",
    "Relation",
    "SampleBuilder",
    "check_counit",
    "contour",
    "element_counts",
    "monoidal_contour",
    "relation_counts",
    "sample_alpha",
    "sample_lambda",
    "sample_par_alpha",
    "sample_par_lambda",
    "sample_par_rho",
    "sample_phi0",
    "sample_phi2",
    "sample_psi0",
    "sample_psi2",
    "sample_rho",
]
