"""Session types and multi-party composition.

A session type is a sequence of stages (``<`` in text, ``◁`` in notation),
each a tensor (``*``) of polarized objects ``!X`` (send) and ``?X``
(receive).  A party implements a session type with one step per stage
boundary; :func:`type_check` assembles the steps into a lens, parties are
combined stage by stage with :func:`interleave`, and :func:`fill_channels`
closes the fused holes with channel morphisms.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParseError, SessionError, TypeMismatch
from .lens import Get, Lens, Polarized, Send, denote, lens_canonical, lens_close, lens_equal, lens_separating_fill, lens_tensor
from .theory import FinFn, FinFnMorphism, FinStoch, FinStochMorphism, Morphism, Obj, obj, show


class PolarityWarning(UserWarning):
    """A combined stage pairs sends with sends (or receives with receives)."""


@dataclass(frozen=True)
class SessionType:
    stages: tuple[tuple[Polarized, ...], ...]

    def __post_init__(self) -> None:
        if not self.stages or any(not s for s in self.stages):
            raise ParseError("a session type needs at least one non-empty stage")

    @property
    def holes(self) -> tuple[tuple[Obj, Obj], ...]:
        return tuple(denote(s) for s in self.stages)

    def __len__(self) -> int:
        return len(self.stages)

    def __str__(self) -> str:
        def stage(s: tuple[Polarized, ...]) -> str:
            text = " * ".join(str(p) for p in s)
            return f"({text})" if len(s) > 1 and len(self.stages) > 1 else text

        return " < ".join(stage(s) for s in self.stages)


_ITEM = re.compile(r"^([!?])\s*([A-Za-z_][\w']*)$")


def parse_session(text: str) -> SessionType:
    """Parse ``!Msg < ?Msg < !Msg``; ``*`` (or ``⊗``) separates a stage's parts."""
    stages = []
    for chunk in text.replace("◁", "<").split("<"):
        chunk = chunk.strip()
        if chunk.startswith("(") and chunk.endswith(")"):
            chunk = chunk[1:-1]
        parts = []
        for item in chunk.replace("⊗", "*").split("*"):
            m = _ITEM.match(item.strip())
            if not m:
                raise ParseError(f"cannot read {item.strip()!r} in session type {text!r}")
            polarity, name = m.groups()
            atoms = obj(name)
            parts.append(Send(atoms) if polarity == "!" else Get(atoms))
        stages.append(tuple(parts))
    return SessionType(tuple(stages))


def tensor_sessions(s: SessionType, t: SessionType) -> SessionType:
    if len(s) != len(t):
        raise TypeMismatch(f"sessions with {len(s)} and {len(t)} stages do not interleave")
    return SessionType(tuple(a + b for a, b in zip(s.stages, t.stages)))


@dataclass(frozen=True)
class Party:
    """``steps[k]: R_k ⊗ Y_k → R_{k+1} ⊗ X_{k+1}``, starting at ``state_in`` and
    ending at ``state_out``; residuals are inferred unless given."""

    name: str
    session: SessionType
    steps: tuple[Morphism, ...]
    state_in: Obj
    state_out: Obj
    residuals: tuple[Obj, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "state_in", tuple(self.state_in))
        object.__setattr__(self, "state_out", tuple(self.state_out))
        if self.residuals is not None:
            object.__setattr__(self, "residuals", tuple(tuple(r) for r in self.residuals))


def type_check(p: Party) -> Lens:
    """Assemble a party's steps into a lens of its session type.

    Errors are :class:`SessionError` naming the first stage whose boundary
    does not match.
    """
    holes = p.session.holes
    n = len(holes)
    if len(p.steps) != n + 1:
        raise SessionError(f"{p.name}: {n} stages need {n + 1} steps, got {len(p.steps)}")
    if p.steps[0].dom != p.state_in:
        raise SessionError(f"{p.name}: first step starts at {show(p.steps[0].dom)}, state is {show(p.state_in)}", 1)
    if p.steps[-1].cod != p.state_out:
        raise SessionError(f"{p.name}: last step ends at {show(p.steps[-1].cod)}, state is {show(p.state_out)}", n)
    residuals = []
    for k, (x, y) in enumerate(holes, start=1):
        before, after = p.steps[k - 1], p.steps[k]
        if p.residuals is not None:
            r = p.residuals[k - 1]
            if before.cod != r + x:
                raise SessionError(f"{p.name}: stage {k} expects {show(r + x)}, step {k - 1} gives {show(before.cod)}", k)
        else:
            if len(before.cod) < len(x) or before.cod[len(before.cod) - len(x):] != x:
                raise SessionError(
                    f"{p.name}: stage {k} sends {show(x)}, but step {k - 1} ends at {show(before.cod)}", k
                )
            r = before.cod[: len(before.cod) - len(x)]
        if after.dom != r + y:
            raise SessionError(
                f"{p.name}: stage {k} receives {show(y)} next to residual {show(r)}, "
                f"but step {k} starts at {show(after.dom)}",
                k,
            )
        residuals.append(r)
    return Lens(p.steps, tuple(residuals))


def interleave(
    l1: Lens,
    l2: Lens,
    s1: SessionType | None = None,
    s2: SessionType | None = None,
) -> Lens:
    """Run two lenses side by side, fusing their holes stage by stage.

    With session types supplied, a stage where neither side sends to the
    other's receive (e.g. both send) raises a :class:`PolarityWarning`; the
    combination is still well defined.
    """
    if l1.stages != l2.stages:
        raise TypeMismatch(f"cannot interleave {l1.stages} stages with {l2.stages}")
    if s1 is not None and s2 is not None:
        for k, (a, b) in enumerate(zip(s1.stages, s2.stages), start=1):
            sends = any(isinstance(p, Send) for p in a + b)
            gets = any(isinstance(p, Get) for p in a + b)
            if not (sends and gets):
                warnings.warn(f"stage {k} has no send/receive pairing", PolarityWarning, stacklevel=2)
    return lens_tensor(l1, l2)


def fill_channels(combined: Lens, channels: Sequence[Morphism]) -> Morphism:
    """Close every fused hole with its channel and return the closed morphism."""
    if len(channels) != combined.stages:
        raise TypeMismatch(f"{combined.stages} stages but {len(channels)} channels")
    for k, (ch, hole) in enumerate(zip(channels, combined.holes), start=1):
        if (ch.dom, ch.cod) != hole:
            raise TypeMismatch(
                f"channel {k}: {show(ch.dom)}→{show(ch.cod)} does not fit stage hole ({show(hole[0])},{show(hole[1])})"
            )
    return lens_close(combined, *channels)


def outcome_distribution(m: Morphism, initial: int | Mapping[int, object]) -> dict[int, Fraction]:
    """Exact distribution of final states from an initial point or distribution."""
    start = {initial: Fraction(1)} if isinstance(initial, int) else {k: Fraction(v) for k, v in initial.items()}
    if sum(start.values()) != 1:
        raise ValueError("initial distribution must sum to 1")
    out: dict[int, Fraction] = {}
    for i, p in start.items():
        if isinstance(m, FinFnMorphism):
            row = {m.table[i]: Fraction(1)}
        elif isinstance(m, FinStochMorphism):
            row = dict(m.rows[i])
        else:
            raise TypeMismatch("outcome distributions need a finite morphism")
        for col, q in row.items():
            out[col] = out.get(col, Fraction(0)) + p * q
    return {k: v for k, v in sorted(out.items()) if v}


# -- refactoring checks ---------------------------------------------------------


def _as_finfn(m: Morphism, theory: FinFn) -> FinFnMorphism | None:
    if isinstance(m, FinFnMorphism):
        return FinFnMorphism(theory, m.dom, m.cod, m.table)
    if isinstance(m, FinStochMorphism) and m.is_deterministic:
        return FinFnMorphism(theory, m.dom, m.cod, tuple(r[0][0] for r in m.rows))
    return None


def deterministic_view(l: Lens) -> Lens | None:
    """The same lens over finite functions, if every component is deterministic."""
    t = l.theory
    if isinstance(t, FinFn):
        return l
    if not isinstance(t, FinStoch):
        return None
    fin = FinFn(t.carriers)
    ms = [_as_finfn(m, fin) for m in l.morphisms]
    if any(m is None for m in ms):
        return None
    return Lens(tuple(ms), l.residuals)


@dataclass(frozen=True)
class RefactorVerdict:
    equivalent: bool
    method: str
    separating: tuple[Morphism, ...] | None = None
    note: str = ""


def dinaturality_refactor_check(a: Party | Lens, b: Party | Lens) -> RefactorVerdict:
    """Decide whether two step decompositions of one party are the same lens.

    Deterministic parties are compared exactly through their canonical
    get/put form; otherwise fills are compared over the probe family.  A
    negative verdict carries a separating filling when one exists among the
    probes, and otherwise names the canonical component that differs.
    """
    la = type_check(a) if isinstance(a, Party) else a
    lb = type_check(b) if isinstance(b, Party) else b
    if la.outer != lb.outer or la.holes != lb.holes:
        raise TypeMismatch("the two decompositions have different session boundaries")
    da, db = deterministic_view(la), deterministic_view(lb)
    if da is not None and db is not None:
        if lens_equal(da, db):
            return RefactorVerdict(True, "canonical")
        sep = lens_separating_fill(da, db)
        if sep is not None:
            return RefactorVerdict(False, "canonical", sep)
        ca, cb = lens_canonical(da), lens_canonical(db)
        k = next(i for i, (x, y) in enumerate(zip(ca, cb)) if x != y)
        what = "final update" if k == len(ca) - 1 else f"view at stage {k + 1}"
        return RefactorVerdict(False, "canonical", None, f"canonical {what} differs")
    sep = lens_separating_fill(la, lb)
    return RefactorVerdict(sep is None, "probe", sep)


__all__ = [
    "Party",
    "PolarityWarning",
    "RefactorVerdict",
    "SessionType",
    "deterministic_view",
    "dinaturality_refactor_check",
    "fill_channels",
    "interleave",
    "outcome_distribution",
    "parse_session",
    "tensor_sessions",
    "type_check",
]
