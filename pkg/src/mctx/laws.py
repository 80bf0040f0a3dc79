"""Law suites: seeded fuzzing of every coherence and soundness property.

Each family draws its own ``random.Random`` from the run seed and the
family name, so families are independent of each other's order and a run
is reproducible byte for byte.  A family reports how many cases it ran and
the first failing case, if any.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import contour as ct
from .context import (
    Context1,
    ContextWord,
    dinat_slide,
    fill,
    fill_equal,
    fills_agree,
    laxator_left,
    laxator_right,
    normalize_from_duosplice,
    par_action_1,
    par_action_2,
    par_action_both,
    par_assoc_left,
    par_assoc_right,
    par_unitor_left,
    par_unitor_left_alt,
    par_unitor_right,
    par_unitor_right_alt,
    seq_action_1,
    seq_action_2,
    seq_action_both,
    seq_assoc_left,
    seq_assoc_right,
    seq_unitor_left,
    seq_unitor_right,
    slide_out,
    unit_action,
)
from .duosplice import (
    Leaf,
    Node,
    ParSplit,
    ParUnit,
    close,
    element_fill,
    leaves,
    par_alpha,
    par_alpha_inv,
    par_lambda,
    par_rho,
    phi0,
    phi2,
    psi0,
    psi2,
    trivial_unit,
)
from .lens import (
    Lens1,
    from_getput,
    get,
    lens_close,
    lens_compose,
    lens_equal,
    lens_tensor,
    send,
    sym_normalize,
    to_getput,
)
from .splice import Hole, Splice, SpliceTree, splice_alpha, splice_alpha_inv, splice_lambda, splice_rho, splices_equal
from .theory import FinFn, FinStoch, I, Morphism, Obj, Theory


# -- random generation ----------------------------------------------------------


class Fuzz:
    """Random objects and morphisms over a small finite theory.

    Every case starts with :meth:`fresh`, which re-draws atom carriers.
    """

    def __init__(self, rng: random.Random, kind: str = "finfn", max_carrier: int = 2, atoms: int = 3) -> None:
        self.rng = rng
        self.kind = kind
        self.max_carrier = max_carrier
        self.atoms = [f"A{i}" for i in range(atoms)]
        self.t: Theory = self.fresh()

    def fresh(self) -> Theory:
        # carrier 1 only occasionally: trivial atoms make every closure agree
        low = 1 if self.max_carrier < 2 or self.rng.random() < 0.1 else 2
        sizes = {a: self.rng.randint(low, max(low, self.max_carrier)) for a in self.atoms}
        self.t = FinStoch.of(sizes) if self.kind == "finstoch" else FinFn.of(sizes)
        return self.t

    def obj(self, max_len: int = 1) -> Obj:
        n = 0 if self.rng.random() < 0.15 else self.rng.randint(1, max(1, max_len))
        return tuple(self.rng.choice(self.atoms) for _ in range(n))

    def atom(self) -> Obj:
        return (self.rng.choice(self.atoms),)

    def hole(self, max_len: int = 1) -> Hole:
        return self.obj(max_len), self.obj(max_len)

    def mor(self, dom: Obj, cod: Obj) -> Morphism:
        """Half the time a map that loses as little as possible (injective or
        surjective), so that differences survive composition."""
        t = self.t
        n, m = t.carrier(dom), t.carrier(cod)
        if self.rng.random() < 0.5:
            cols = self.rng.sample(range(m), n) if n <= m else self._onto(n, m)
            if isinstance(t, FinStoch):
                return t.deterministic(dom, cod, cols)
            return t.morphism(dom, cod, cols)
        if isinstance(t, FinStoch):
            rows = t.probe_rows(m)
            return t.from_rows(dom, cod, [dict(self.rng.choice(rows)) for _ in range(n)])
        return t.morphism(dom, cod, [self.rng.randrange(m) for _ in range(n)])

    def _onto(self, n: int, m: int) -> list[int]:
        cols = list(range(m)) + [self.rng.randrange(m) for _ in range(n - m)]
        self.rng.shuffle(cols)
        return cols

    def splice(self, holes: Sequence[Hole], outer: Hole | None = None) -> Splice:
        a, b = outer if outer is not None else self.hole()
        ends = [a] + [y for _, y in holes]
        starts = [x for x, _ in holes] + [b]
        return Splice(*(self.mor(d, c) for d, c in zip(ends, starts)))

    def parsplit(self, holes: Sequence[Hole], outer: Hole | None = None) -> ParSplit:
        a, b = outer if outer is not None else self.hole()
        (x, y), (x2, y2) = holes
        return ParSplit(self.mor(a, x + x2), self.mor(y + y2, b), ((x, y), (x2, y2)))

    def parunit(self, outer: Hole | None = None) -> ParUnit:
        a, b = outer if outer is not None else self.hole()
        return ParUnit(self.mor(a, I), self.mor(I, b))

    def layer_word(self, outer: Hole, layers: Sequence[tuple[Sequence[Obj], Sequence[Hole]]]) -> ContextWord:
        from .context import Layer

        ls = [Layer(tuple(r), tuple(h)) for r, h in layers]
        ends = [outer[0]] + [l.closing for l in ls]
        starts = [l.opening for l in ls] + [outer[1]]
        return ContextWord(tuple(self.mor(d, c) for d, c in zip(ends, starts)), tuple(ls))

    def context1(self, hole: Hole | None = None, outer: Hole | None = None) -> ContextWord:
        hole = hole or self.hole()
        return self.layer_word(outer or self.hole(), [((self.obj(), self.obj()), (hole,))])

    def seqsplit(self, holes: Sequence[Hole] | None = None, outer: Hole | None = None) -> ContextWord:
        holes = holes or (self.hole(), self.hole())
        layers = [((self.obj(), self.obj()), (h,)) for h in holes]
        return self.layer_word(outer or self.hole(), layers)

    def ctxpar(self, holes: Sequence[Hole] | None = None, outer: Hole | None = None) -> ContextWord:
        holes = holes or (self.hole(), self.hole())
        return self.layer_word(outer or self.hole(), [((self.obj(), self.obj(), self.obj()), tuple(holes))])

    def fillers(self, holes: Sequence[Hole]) -> list[Morphism]:
        return [self.mor(x, y) for x, y in holes]


# -- results --------------------------------------------------------------------


@dataclass
class FamilyResult:
    name: str
    group: str
    cases: int = 0
    failures: int = 0
    first_failure: str = ""
    skipped: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def status(self) -> str:
        if self.skipped:
            return "SKIP"
        if self.cases == 0:
            return "PASS (vacuous)"
        return "PASS" if self.ok else "FAIL"

    def line(self) -> str:
        text = f"{self.group:<12} {self.name:<28} {self.status():<15} cases={self.cases} failures={self.failures}"
        if self.skipped:
            text += f"  ({self.skipped})"
        if self.first_failure:
            text += f"  first: {self.first_failure}"
        return text

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "family": self.name,
            "status": self.status(),
            "cases": self.cases,
            "failures": self.failures,
            "first_failure": self.first_failure,
            "skipped": self.skipped,
        }


def _run(name: str, group: str, cases: int, body: Callable[[int], bool | str]) -> FamilyResult:
    res = FamilyResult(name, group)
    for i in range(cases):
        outcome = body(i)
        res.cases += 1
        if outcome is not True:
            res.failures += 1
            if not res.first_failure:
                res.first_failure = f"case {i}" + (f": {outcome}" if isinstance(outcome, str) else "")
    return res


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}/{name}")


# -- splice coherence ---------------------------------------------------------------


def splice_pentagon(fz: Fuzz) -> bool:
    """Right-nested ``a[2:=b[2:=c]]``: the two reassociation routes to the
    left-nested form agree after flattening."""
    fz.fresh()
    c = fz.splice([fz.hole(), fz.hole()])
    b = fz.splice([fz.hole(), c.outer])
    a = fz.splice([fz.hole(), b.outer])
    original = SpliceTree(a, (None, SpliceTree(b, (None, c)))).flatten()
    # route A: root, then the new outer with c
    h, k = splice_alpha(a, b)
    h2, k2 = splice_alpha(h, c)
    route_a = SpliceTree(h2, (SpliceTree(k2, (k, None)), None)).flatten()
    # route B: inner pair, root, then the inner pair again
    bh, bk = splice_alpha(b, c)
    h3, k3 = splice_alpha(a, bh)
    k4, bk4 = splice_alpha(k3, bk)
    route_b = SpliceTree(h3, (SpliceTree(k4, (bk4, None)), None)).flatten()
    return splices_equal(route_a, route_b) and splices_equal(route_a, original)


def splice_triangle(fz: Fuzz) -> bool:
    """``a[2:=b[1:=u]]``: left unitor directly, or associate then right unitor."""
    fz.fresh()
    u_hole = fz.hole()
    b = fz.splice([u_hole, fz.hole()])
    a = fz.splice([fz.hole(), b.outer])
    u = fz.mor(*u_hole)
    route_1 = SpliceTree(a, (None, splice_lambda(b, u))).flatten()
    h, k = splice_alpha(a, b)
    route_2 = SpliceTree(h, (splice_rho(k, u), None)).flatten()
    inv_f, inv_g = splice_alpha_inv(h, k)
    back = splices_equal(inv_f, a) or splices_equal(SpliceTree(inv_f, (None, inv_g)).flatten(), SpliceTree(a, (None, b)).flatten())
    return splices_equal(route_1, route_2) and back


# -- produoidal coherence via tree rewriting ----------------------------------------

Ops = Mapping[str, Callable]
DEFAULT_OPS: dict[str, Callable] = {"psi2": psi2}


def _rewrite(tree: Node, path: Sequence[int], rule: Callable[[Node], Node]) -> Node:
    if not path:
        return rule(tree)
    kids = list(tree.children)
    kids[path[0]] = _rewrite(kids[path[0]], path[1:], rule)
    return Node(tree.element, tuple(kids))


def _rules(ops: Ops) -> dict[str, Callable[[Node], Node]]:
    def r_psi2(n: Node) -> Node:
        left, right = n.children
        g, p, q = ops["psi2"](n.element, left.element, right.element)
        return Node(g, (Node(p, (left.children[0], right.children[0])), Node(q, (left.children[1], right.children[1]))))

    def r_psi0(n: Node) -> Node:
        t = n.element.theory
        return Node(psi0(n.element), (Node(trivial_unit(t)), Node(trivial_unit(t))))

    def r_phi2(n: Node) -> Node:
        h0, h1 = (c.element[0] for c in n.children)
        return Node(Splice(phi2(n.element, h0, h1)))

    def r_phi0(n: Node) -> Node:
        return Node(Splice(phi0(n.element)))

    def r_alpha(n: Node) -> Node:
        c1, inner = n.children
        h, k = splice_alpha(n.element, inner.element)
        return Node(h, (Node(k, (c1, inner.children[0])), inner.children[1]))

    def r_alpha_inv(n: Node) -> Node:
        inner, d2 = n.children
        f, g = splice_alpha_inv(n.element, inner.element)
        return Node(f, (inner.children[0], Node(g, (inner.children[1], d2))))

    def r_par_alpha(n: Node) -> Node:
        inner, z = n.children
        outer, pure = par_alpha(n.element, inner.element)
        return Node(outer, (inner.children[0], Node(pure, (inner.children[1], z))))

    def r_par_alpha_inv(n: Node) -> Node:
        x, inner = n.children
        outer, pure = par_alpha_inv(n.element, inner.element)
        return Node(outer, (Node(pure, (x, inner.children[0])), inner.children[1]))

    def r_lambda(n: Node) -> Node:
        unit, c = n.children
        return Node(splice_lambda(n.element, unit.element[0]), (c,))

    def r_rho(n: Node) -> Node:
        c, unit = n.children
        return Node(splice_rho(n.element, unit.element[0]), (c,))

    def r_par_lambda(n: Node) -> Node:
        unit, c = n.children
        return Node(par_lambda(n.element, unit.element), (c,))

    def r_par_rho(n: Node) -> Node:
        c, unit = n.children
        return Node(par_rho(n.element, unit.element), (c,))

    return {k[2:]: v for k, v in locals().items() if k.startswith("r_")}


def _leaf(name: str, hole: Hole) -> Leaf:
    return Leaf(name, hole)


def _seq(fz: Fuzz, left: Node | Leaf, right: Node | Leaf) -> Node:
    return Node(fz.splice([_outer(left), _outer(right)]), (left, right))


def _par(fz: Fuzz, left: Node | Leaf, right: Node | Leaf) -> Node:
    return Node(fz.parsplit([_outer(left), _outer(right)]), (left, right))


def _outer(t: Node | Leaf) -> Hole:
    return t.hole if isinstance(t, Leaf) else t.element.outer


def _unit(fz: Fuzz) -> Node:
    return Node(Splice(fz.mor(*fz.hole())))


def _parunit(fz: Fuzz) -> Node:
    return Node(fz.parunit())


def _leaves(fz: Fuzz, names: str) -> list[Leaf]:
    return [_leaf(n, fz.hole()) for n in names]


def _family_trees(fz: Fuzz, which: str) -> tuple[Node, list, list]:
    """Start tree and the two rewrite routes of each coherence diagram."""
    if which == "psi2_par_assoc":
        a, b, c, d, e, f = _leaves(fz, "abcdef")
        tree = _par(fz, _seq(fz, a, b), _par(fz, _seq(fz, c, d), _seq(fz, e, f)))
        route_a = [((), "par_alpha_inv"), ((0,), "psi2"), ((), "psi2")]
        route_b = [((1,), "psi2"), ((), "psi2"), ((0,), "par_alpha_inv"), ((1,), "par_alpha_inv")]
    elif which == "psi2_seq_assoc":
        a, b, c, d, e, f = _leaves(fz, "abcdef")
        tree = _par(fz, _seq(fz, a, _seq(fz, b, c)), _seq(fz, d, _seq(fz, e, f)))
        route_a = [((0,), "alpha"), ((1,), "alpha"), ((), "psi2"), ((0,), "psi2")]
        route_b = [((), "psi2"), ((1,), "psi2"), ((), "alpha")]
    elif which == "par_unit_left":
        a, b = _leaves(fz, "ab")
        tree = _par(fz, _parunit(fz), _seq(fz, a, b))
        route_a = [((), "par_lambda")]
        route_b = [((0,), "psi0"), ((), "psi2"), ((0,), "par_lambda"), ((1,), "par_lambda")]
    elif which == "par_unit_right":
        a, b = _leaves(fz, "ab")
        tree = _par(fz, _seq(fz, a, b), _parunit(fz))
        route_a = [((), "par_rho")]
        route_b = [((1,), "psi0"), ((), "psi2"), ((0,), "par_rho"), ((1,), "par_rho")]
    elif which == "seq_unit_left":
        a, b = _leaves(fz, "ab")
        tree = _par(fz, _seq(fz, _unit(fz), a), _seq(fz, _unit(fz), b))
        route_a = [((), "psi2"), ((0,), "phi2"), ((), "lambda")]
        route_b = [((0,), "lambda"), ((1,), "lambda")]
    elif which == "seq_unit_right":
        a, b = _leaves(fz, "ab")
        tree = _par(fz, _seq(fz, a, _unit(fz)), _seq(fz, b, _unit(fz)))
        route_a = [((), "psi2"), ((1,), "phi2"), ((), "rho")]
        route_b = [((0,), "rho"), ((1,), "rho")]
    elif which == "phi2_assoc":
        tree = _par(fz, _unit(fz), _par(fz, _unit(fz), _unit(fz)))
        route_a = [((1,), "phi2"), ((), "phi2")]
        route_b = [((), "par_alpha_inv"), ((0,), "phi2"), ((), "phi2")]
    elif which == "psi0_coassoc":
        tree = _parunit(fz)
        route_a = [((), "psi0"), ((1,), "psi0")]
        route_b = [((), "psi0"), ((0,), "psi0"), ((), "alpha_inv")]
    elif which == "phi0_unit_left":
        tree = _par(fz, _parunit(fz), _unit(fz))
        route_a = [((), "par_lambda")]
        route_b = [((0,), "phi0"), ((), "phi2")]
    elif which == "phi0_unit_right":
        tree = _par(fz, _unit(fz), _parunit(fz))
        route_a = [((), "par_rho")]
        route_b = [((1,), "phi0"), ((), "phi2")]
    elif which == "psi0_phi0_counit":
        tree = _parunit(fz)
        route_a = [((), "psi0"), ((1,), "phi0"), ((), "rho")]
        route_b = []
    else:
        raise KeyError(which)
    return tree, route_a, route_b


PRODUOIDAL_FAMILIES = (
    "psi2_par_assoc",
    "psi2_seq_assoc",
    "par_unit_left",
    "par_unit_right",
    "seq_unit_left",
    "seq_unit_right",
    "phi2_assoc",
    "psi0_coassoc",
    "phi0_unit_left",
    "phi0_unit_right",
    "psi0_phi0_counit",
)


def produoidal_case(fz: Fuzz, which: str, ops: Ops = DEFAULT_OPS, draws: int = 2) -> bool | str:
    """Rewrite a random tree along both routes and compare closures."""
    fz.fresh()
    tree, route_a, route_b = _family_trees(fz, which)
    rules = _rules({**DEFAULT_OPS, **ops})
    ends = []
    for route in (route_a, route_b):
        t = tree
        for path, rule in route:
            t = _rewrite(t, path, rules[rule])
        ends.append(t)
    end_a, end_b = ends
    if [l.label for l in leaves(end_a)] != [l.label for l in leaves(end_b)]:
        return "routes end with different holes"
    for _ in range(draws):
        fillers = {l.label: fz.mor(*l.hole) for l in leaves(tree)}
        want = close(tree, fillers)
        t = fz.t
        if not (t.equal(close(end_a, fillers), want) and t.equal(close(end_b, fillers), want)):
            return "closures differ"
    return True


# -- the operation table -----------------------------------------------------------


def _e_cases(fz: Fuzz) -> dict[str, Callable[[], tuple[ContextWord, list[Morphism], Morphism]]]:
    """Per operation: build random inputs, apply it, fill the result and
    return ``(result, fillers, nested)`` where ``nested`` fills the inputs
    inside each other without the operation."""

    def h(hole: Hole) -> Morphism:
        return fz.mor(*hole)

    def unit_action_case():
        c = fz.context1()
        u = h(c.holes[0])
        return unit_action(c, u), [], fill(c, *[u])

    def seq_action_1_case():
        s = fz.seqsplit()
        c = fz.context1(outer=s.holes[0])
        h1, h2 = h(c.holes[0]), h(s.holes[1])
        return seq_action_1(s, c), [h1, h2], fill(s, *[fill(c, *[h1]), h2])

    def seq_action_2_case():
        s = fz.seqsplit()
        c = fz.context1(outer=s.holes[1])
        h1, h2 = h(s.holes[0]), h(c.holes[0])
        return seq_action_2(s, c), [h1, h2], fill(s, *[h1, fill(c, *[h2])])

    def seq_action_both_case():
        c = fz.context1()
        s = fz.seqsplit(outer=c.holes[0])
        hs = fz.fillers(s.holes)
        return seq_action_both(c, s), hs, fill(c, *[fill(s, *hs)])

    def seq_assoc_left_case():
        s = fz.seqsplit()
        r = fz.seqsplit(outer=s.holes[0])
        h1, h2 = fz.fillers(r.holes)
        h3 = h(s.holes[1])
        return seq_assoc_left(s, r), [h1, h2, h3], fill(s, *[fill(r, *[h1, h2]), h3])

    def seq_assoc_right_case():
        s = fz.seqsplit()
        r = fz.seqsplit(outer=s.holes[1])
        h1 = h(s.holes[0])
        h2, h3 = fz.fillers(r.holes)
        return seq_assoc_right(s, r), [h1, h2, h3], fill(s, *[h1, fill(r, *[h2, h3])])

    def seq_unitor_left_case():
        s = fz.seqsplit()
        u, k = h(s.holes[0]), h(s.holes[1])
        return seq_unitor_left(s, u), [k], fill(s, *[u, k])

    def seq_unitor_right_case():
        s = fz.seqsplit()
        k, u = h(s.holes[0]), h(s.holes[1])
        return seq_unitor_right(s, u), [k], fill(s, *[k, u])

    def par_action_1_case():
        p = fz.ctxpar()
        c = fz.context1(outer=p.holes[0])
        h1, h2 = h(c.holes[0]), h(p.holes[1])
        return par_action_1(p, c), [h1, h2], fill(p, *[fill(c, *[h1]), h2])

    def par_action_2_case():
        p = fz.ctxpar()
        c = fz.context1(outer=p.holes[1])
        h1, h2 = h(p.holes[0]), h(c.holes[0])
        return par_action_2(p, c), [h1, h2], fill(p, *[h1, fill(c, *[h2])])

    def par_action_both_case():
        c = fz.context1()
        p = fz.ctxpar(outer=c.holes[0])
        hs = fz.fillers(p.holes)
        return par_action_both(c, p), hs, fill(c, *[fill(p, *hs)])

    def par_assoc_left_case():
        p = fz.ctxpar()
        q = fz.ctxpar(outer=p.holes[0])
        h1, h2 = fz.fillers(q.holes)
        h3 = h(p.holes[1])
        return par_assoc_left(p, q), [h1, h2, h3], fill(p, *[fill(q, *[h1, h2]), h3])

    def par_assoc_right_case():
        p = fz.ctxpar()
        q = fz.ctxpar(outer=p.holes[1])
        h1 = h(p.holes[0])
        h2, h3 = fz.fillers(q.holes)
        return par_assoc_right(p, q), [h1, h2, h3], fill(p, *[h1, fill(q, *[h2, h3])])

    def par_unitor_left_case():
        p = fz.ctxpar()
        u, k = h(p.holes[0]), h(p.holes[1])
        r = par_unitor_left(p, u)
        alt = par_unitor_left_alt(p, u)
        if not fz.t.equal(fill(r, *[k]), fill(alt, *[k])):
            raise AssertionError("the two forms of the left unitor disagree")
        return r, [k], fill(p, *[u, k])

    def par_unitor_right_case():
        p = fz.ctxpar()
        k, u = h(p.holes[0]), h(p.holes[1])
        r = par_unitor_right(p, u)
        alt = par_unitor_right_alt(p, u)
        if not fz.t.equal(fill(r, *[k]), fill(alt, *[k])):
            raise AssertionError("the two forms of the right unitor disagree")
        return r, [k], fill(p, *[k, u])

    def laxator_left_case():
        p = fz.ctxpar()
        j = fz.seqsplit(outer=p.holes[0])
        k = fz.seqsplit(outer=p.holes[1])
        j1, j2 = fz.fillers(j.holes)
        k1, k2 = fz.fillers(k.holes)
        return laxator_left(p, j, k), [j1, k1, j2, k2], fill(p, *[fill(j, *[j1, j2]), fill(k, *[k1, k2])])

    def laxator_right_case():
        s = fz.seqsplit()
        j = fz.ctxpar(outer=s.holes[0])
        k = fz.ctxpar(outer=s.holes[1])
        js, ks = fz.fillers(j.holes), fz.fillers(k.holes)
        return laxator_right(s, j, k), js + ks, fill(s, *[fill(j, *js), fill(k, *ks)])

    return {name[:-5]: fn for name, fn in locals().items() if name.endswith("_case")}


WORD_OPS = (
    "unit_action",
    "seq_action_1",
    "seq_action_2",
    "seq_action_both",
    "seq_assoc_left",
    "seq_assoc_right",
    "seq_unitor_left",
    "seq_unitor_right",
    "par_action_1",
    "par_action_2",
    "par_action_both",
    "par_assoc_left",
    "par_assoc_right",
    "par_unitor_left",
    "par_unitor_right",
    "laxator_left",
    "laxator_right",
)


def operation_case(fz: Fuzz, op: str) -> bool | str:
    fz.fresh()
    try:
        result, fillers, nested = _e_cases(fz)[op]()
    except AssertionError as exc:
        return str(exc)
    return fz.t.equal(fill(result, *fillers), nested) or "filled result differs from nested filling"


# -- normalization, sliding, lenses, embeddings, contour ------------------------------


def _random_element(fz: Fuzz):
    kind = fz.rng.choice(["morphism", "splice1", "splice2", "splice3", "parsplit", "parunit"])
    if kind == "morphism":
        return fz.mor(*fz.hole())
    if kind.startswith("splice"):
        return fz.splice([fz.hole() for _ in range(int(kind[-1]))])
    if kind == "parsplit":
        return fz.parsplit([fz.hole(), fz.hole()])
    return fz.parunit()


def _element_holes(e) -> tuple[Hole, ...]:
    if isinstance(e, ParSplit):
        return e.holes
    if isinstance(e, (Splice,)):
        return e.holes
    return ()


def normalization_case(fz: Fuzz) -> bool | str:
    fz.fresh()
    e = _random_element(fz)
    hs = fz.fillers(_element_holes(e))
    want = element_fill(e, hs)
    c = normalize_from_duosplice(e)
    if not fz.t.equal(fill(c, *hs), want):
        return "context normalization changes the closure"
    if normalize_from_duosplice(c) != c:
        return "context normalization is not idempotent"
    lens = sym_normalize(e)
    fused = [fz.t.tensor(*hs)] if isinstance(e, ParSplit) else hs
    if not fz.t.equal(lens_close(lens, *fused), want):
        return "lens normalization changes the closure"
    if sym_normalize(lens) != lens:
        return "lens normalization is not idempotent"
    if not fz.t.equal(lens_close(sym_normalize(c), *fused), want):
        return "context-to-lens normalization changes the closure"
    return True


def dinaturality_case(fz: Fuzz) -> bool | str:
    fz.fresh()
    single = fz.kind == "finstoch"
    a, b = fz.hole()
    x, y = (fz.atom(), fz.atom()) if single else fz.hole()
    M, N, M2, N2 = fz.obj(), fz.obj(), fz.obj(), fz.obj()
    f = fz.mor(a, M + x + N)
    g = fz.mor(M2 + y + N2, b)
    m, n = fz.mor(M, M2), fz.mor(N, N2)
    left, right = slide_out(f, g, m, n)
    fwd = dinat_slide(left, m, n, "forward", factor=f)
    bwd = dinat_slide(right, m, n, "backward", factor=g)
    if fwd != right or bwd != left:
        return "slides do not land on the expected representatives"
    if not fill_equal(left, right):
        return "slid representatives are not equal in the quotient"
    if fz.kind == "finfn" and not fills_agree(left, right):
        return "slid representatives close differently"
    # interchange: a morphism beside the hole may be drawn before or after it
    p, q = fz.mor(M, M2), fz.mor(N, N2)
    t = fz.t
    before = Context1(t.par(p, t.identity(x), q), t.identity(M2 + y + N2), M2, N2)
    after = Context1(t.identity(M + x + N), t.par(p, t.identity(y), q), M, N)
    if not fill_equal(before, after):
        return "interchange fails"
    return True


def lens_quotient_case(fz: Fuzz) -> bool | str:
    if fz.kind != "finfn":
        return True
    fz.fresh()
    a, b = fz.hole()
    x, y = fz.hole()
    M, M2 = fz.obj(), fz.obj()
    f = fz.mor(a, M + x)
    g = fz.mor(M2 + y, b)
    m = fz.mor(M, M2)
    t = fz.t
    left = Lens1(t.compose(f, t.whisker(I, m, x)), g, M2)
    right = Lens1(f, t.compose(t.whisker(I, m, y), g), M)
    if not lens_equal(left, right):
        return "slid lenses differ"
    back = from_getput(to_getput(left))
    if not lens_equal(back, left):
        return "get/put roundtrip leaves the class"
    return True


def send_get_case(fz: Fuzz) -> bool | str:
    fz.fresh()
    t = fz.t
    a, b, c = fz.obj(), fz.obj(), fz.obj()
    f, g = fz.mor(a, b), fz.mor(b, c)
    a2, b2 = fz.obj(), fz.obj()
    k = fz.mor(a2, b2)
    checks = [
        (send(t.compose(f, g)), lens_compose(send(f), send(g))),
        (send(t.tensor(f, k)), lens_tensor(send(f), send(k))),
        (get(t.compose(f, g)), lens_compose(get(g), get(f))),
        (get(t.tensor(f, k)), lens_tensor(get(f), get(k))),
        (send(t.identity(a)), Lens1(t.identity(a), t.identity(I))),
    ]
    for i, (l1, l2) in enumerate(checks):
        if l1.outer != l2.outer or l1.holes != l2.holes:
            return f"check {i}: types differ"
        if not lens_equal(l1, l2):
            return f"check {i}: lenses differ"
    return True


def counit_case(fz: Fuzz) -> bool | str:
    fz.fresh()
    s = ct.SampleBuilder()
    b = fz.splice([fz.hole(), fz.hole()])
    a = fz.splice([fz.hole(), b.outer])
    ct.sample_alpha(s, a, b)
    sp = fz.splice([fz.hole(), fz.hole()])
    ct.sample_lambda(s, sp, fz.mor(*sp.holes[0]))
    ct.sample_rho(s, sp, fz.mor(*sp.holes[1]))
    inner = fz.parsplit([fz.hole(), fz.hole()])
    outer = fz.parsplit([inner.outer, fz.hole()])
    ct.sample_par_alpha(s, outer, inner)
    pu = fz.parsplit([fz.hole(), fz.hole()])
    ct.sample_par_lambda(s, pu, fz.parunit(pu.holes[0]))
    ct.sample_par_rho(s, pu, fz.parunit(pu.holes[1]))
    left = fz.splice([fz.hole(), fz.hole()])
    right = fz.splice([fz.hole(), fz.hole()])
    ct.sample_psi2(s, fz.parsplit([left.outer, right.outer]), left, right)
    ct.sample_psi0(s, fz.parunit())
    ct.sample_phi2(s, pu, fz.mor(*pu.holes[0]), fz.mor(*pu.holes[1]))
    ct.sample_phi0(s, fz.parunit())
    report = ct.check_counit(fz.t, s)
    return report.ok or report.violations[0]


# -- the runner -----------------------------------------------------------------------


@dataclass
class LawReport:
    seed: int
    theory: str
    max_carrier: int
    cases: int
    results: list[FamilyResult] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def text(self) -> str:
        head = f"law suite: theory={self.theory} max-carrier={self.max_carrier} cases={self.cases} seed={self.seed}"
        lines = [head] + [f"warning: {w}" for w in self.warnings] + [r.line() for r in self.results]
        failed = sum(1 for r in self.results if not r.ok)
        lines.append(f"summary: {len(self.results) - failed} passed, {failed} failed")
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        payload = {
            "seed": self.seed,
            "theory": self.theory,
            "max_carrier": self.max_carrier,
            "cases": self.cases,
            "warnings": self.warnings,
            "families": [r.as_dict() for r in self.results],
            "ok": self.ok,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


GROUPS = ("splice", "produoidal", "operations", "normalize", "dinaturality", "lens", "sendget", "counit")


def run_laws(
    theory: str = "finfn",
    max_carrier: int = 2,
    cases: int = 300,
    seed: int = 0,
    groups: Sequence[str] = GROUPS,
    ops: Ops | None = None,
) -> LawReport:
    """Run the selected law groups; ``ops`` may replace laxators (mutation tests)."""
    if theory not in ("finfn", "finstoch"):
        raise ValueError(f"unknown theory {theory!r}")
    report = LawReport(seed, theory, max_carrier, cases)
    if cases == 0:
        report.warnings.append("--cases 0: every family passes vacuously")
    ops = {**DEFAULT_OPS, **(ops or {})}

    def fuzz(name: str, carrier: int = max_carrier) -> Fuzz:
        return Fuzz(_rng(seed, name), theory, carrier)

    def family(group: str, name: str, case: Callable[[Fuzz], bool | str], carrier: int = max_carrier) -> None:
        fz = fuzz(name, carrier)
        report.results.append(_run(name, group, cases, lambda _: case(fz)))

    for group in groups:
        if group == "splice":
            family(group, "pentagon", splice_pentagon)
            family(group, "triangle", splice_triangle)
        elif group == "produoidal":
            for which in PRODUOIDAL_FAMILIES:
                family(group, which, lambda fz, w=which: produoidal_case(fz, w, ops))
        elif group == "operations":
            for op in WORD_OPS:
                family(group, op, lambda fz, o=op: operation_case(fz, o))
        elif group == "normalize":
            family(group, "normalize", normalization_case)
        elif group == "dinaturality":
            family(group, "slide", dinaturality_case)
        elif group == "lens":
            if theory != "finfn":
                report.results.append(FamilyResult("cartesian_quotient", group, skipped="cartesian theory only"))
            else:
                family(group, "cartesian_quotient", lens_quotient_case)
        elif group == "sendget":
            family(group, "send_get_functors", send_get_case)
        elif group == "counit":
            family(group, "contour_relations", counit_case)
        else:
            raise ValueError(f"unknown law group {group!r}")
    return report


def mutated_psi2(outer: ParSplit, left: Splice, right: Splice):
    """A deliberately wrong laxator: the first hole's input is cyclically
    shifted.  Used to check that the suite can fail."""
    g, p, q = psi2(outer, left, right)
    t = outer.theory
    x = left.holes[0][0]
    n = t.carrier(x)
    if isinstance(t, FinStoch):
        shift = t.deterministic(x, x, [(i + 1) % n for i in range(n)])
    else:
        shift = t.morphism(x, x, [(i + 1) % n for i in range(n)])
    x2 = right.holes[0][0]
    g0 = t.compose(g[0], t.whisker(I, shift, x2))
    return Splice(g0, *g.morphisms[1:]), p, q


__all__ = [
    "WORD_OPS",
    "FamilyResult",
    "Fuzz",
    "GROUPS",
    "LawReport",
    "PRODUOIDAL_FAMILIES",
    "counit_case",
    "dinaturality_case",
    "lens_quotient_case",
    "mutated_psi2",
    "normalization_case",
    "operation_case",
    "produoidal_case",
    "run_laws",
    "send_get_case",
    "splice_pentagon",
    "splice_triangle",
]
