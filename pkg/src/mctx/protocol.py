"""Reading and writing protocol files (schema ``mctx/1``).

A protocol file declares atoms with their carriers, named morphisms,
parties with session types and steps, one channel per stage, and optional
alternative step decompositions to be checked against a party::

    {
      "schema": "mctx/1",
      "theory": "finstoch",
      "objects": {"Msg": {"carrier": 9, "values": [...], "label": "MSG"}},
      "noise": "1/10",
      "morphisms": {"SYN": {"kind": "finfn", "dom": ["Client"], "cod": [...], "table": [...]}},
      "parties": [{"name": "client", "session": "!Msg < ?Msg < !Msg",
                   "state": ["Client"], "steps": ["SYN", "ID", "ACK", "ID"]}],
      "channels": ["NOISE", "NOISE", "NOISE"],
      "refactorings": [{"name": "...", "party": "client", "steps": [...]}]
    }

Morphism kinds: ``finfn`` (``table``), ``finstoch`` (``matrix`` of ``"p/q"``
strings), ``identity`` (``obj``), ``noise`` (``failure`` index; the failure
probability is the file's ``noise`` value), and the term kinds ``compose``
and ``tensor`` whose ``parts`` name other morphisms (or ``"id:Atom*Atom"``).
Terms are evaluated as free terms under the interpretation given by the
named morphisms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .errors import ParseError, TypeMismatch
from .session import Party, parse_session
from .theory import (
    FREE,
    FinFn,
    FinFnMorphism,
    FinStoch,
    FinStochMorphism,
    Generator,
    Morphism,
    Obj,
    Theory,
    eval_term,
    obj,
)

SCHEMA = "mctx/1"


def fraction_text(q: Fraction) -> str:
    """Exact ``p/q`` text (the denominator is always written)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: object) -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise ParseError(f"rationals must be written as \"p/q\" strings, got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {text!r}") from None


@dataclass(frozen=True)
class AtomInfo:
    carrier: int
    values: tuple[str, ...]
    label: str


@dataclass
class Protocol:
    theory: Theory
    atoms: dict[str, AtomInfo]
    morphisms: dict[str, Morphism]
    parties: list[Party]
    channels: list[str]
    noise: Fraction
    refactorings: list[dict[str, Any]] = field(default_factory=list)

    def value_label(self, atom: str, index: int) -> str:
        return self.atoms[atom].values[index]

    def state_labels(self, atoms: Obj, index: int) -> list[str]:
        parts = self.theory.decode(index, [(a,) for a in atoms])
        return [f"{self.atoms[a].label}:{self.value_label(a, i)}" for a, i in zip(atoms, parts)]


def _require(record: Mapping[str, Any], key: str, where: str) -> Any:
    if not isinstance(record, Mapping) or key not in record:
        raise ParseError(f"{where}: missing {key!r}")
    return record[key]


def _atoms_of(spec: Any, where: str) -> Obj:
    if isinstance(spec, str):
        return obj(spec)
    if isinstance(spec, list) and all(isinstance(a, str) for a in spec):
        return tuple(a for a in spec if a != "I")
    raise ParseError(f"{where}: an object is a list of atom names")


def morphism_to_json(m: Morphism) -> dict[str, Any]:
    if isinstance(m, FinFnMorphism):
        return {"kind": "finfn", "dom": list(m.dom), "cod": list(m.cod), "table": list(m.table)}
    if isinstance(m, FinStochMorphism):
        return {
            "kind": "finstoch",
            "dom": list(m.dom),
            "cod": list(m.cod),
            "matrix": [[fraction_text(q) for q in row] for row in m.matrix],
        }
    raise TypeError(f"cannot serialize {m!r}")


def morphism_from_json(theory: Theory, record: Mapping[str, Any], where: str = "morphism") -> Morphism:
    """Decode a ``finfn``/``finstoch``/``identity`` record into ``theory``."""
    kind = _require(record, "kind", where)
    if kind == "identity":
        return theory.identity(_atoms_of(_require(record, "obj", where), where))
    dom = _atoms_of(_require(record, "dom", where), where)
    cod = _atoms_of(_require(record, "cod", where), where)
    if kind == "finfn":
        table = _require(record, "table", where)
        if not isinstance(table, list) or not all(isinstance(v, int) for v in table):
            raise ParseError(f"{where}: table must be a list of integers")
        if isinstance(theory, FinStoch):
            return theory.deterministic(dom, cod, table)
        if isinstance(theory, FinFn):
            return theory.morphism(dom, cod, table)
    if kind == "finstoch":
        if not isinstance(theory, FinStoch):
            raise ParseError(f"{where}: stochastic matrices need the finstoch theory")
        matrix = _require(record, "matrix", where)
        return theory.morphism(dom, cod, [[parse_fraction(q) for q in row] for row in matrix])
    raise ParseError(f"{where}: unknown morphism kind {kind!r}")


def _noise(theory: Theory, dom: Obj, cod: Obj, failure: int, p: Fraction, where: str) -> Morphism:
    if dom != cod:
        raise TypeMismatch(f"{where}: a noisy channel maps an object to itself")
    if not 0 <= p <= 1:
        raise ParseError(f"{where}: noise probability {fraction_text(p)} is outside [0, 1]")
    n = theory.carrier(dom)
    if not 0 <= failure < n:
        raise ParseError(f"{where}: failure index {failure} outside the carrier")
    if isinstance(theory, FinStoch):
        rows = []
        for i in range(n):
            row = {i: 1 - p}
            row[failure] = row.get(failure, Fraction(0)) + p
            rows.append(row)
        return theory.from_rows(dom, cod, rows)
    if p == 0:
        return theory.identity(dom)
    if p == 1:
        return theory.morphism(dom, cod, [failure] * n)
    raise ParseError(f"{where}: only noise 0 or 1 is deterministic; use the finstoch theory")


def _build_morphisms(theory: Theory, records: Mapping[str, Any], p: Fraction) -> dict[str, Morphism]:
    out: dict[str, Morphism] = {}
    pending = dict(records)

    def part(ref: Any, where: str) -> Morphism:
        if isinstance(ref, str) and ref.startswith("id:"):
            return theory.identity(obj(ref[3:]))
        if isinstance(ref, str):
            if ref not in records:
                raise ParseError(f"{where}: unknown morphism {ref!r}")
            return build(ref)
        if isinstance(ref, Mapping):
            return decode(ref, where)
        raise ParseError(f"{where}: bad term part {ref!r}")

    def decode(record: Mapping[str, Any], where: str) -> Morphism:
        kind = _require(record, "kind", where)
        if kind in ("compose", "tensor"):
            parts = [part(r, where) for r in _require(record, "parts", where)]
            if not parts:
                raise ParseError(f"{where}: empty {kind}")
            names = [f"p{i}" for i in range(len(parts))]
            gens = [Generator(nm, m.dom, m.cod) for nm, m in zip(names, parts)]
            term = FREE.seq(*gens) if kind == "compose" else FREE.par(*gens)
            return eval_term(term, dict(zip(names, parts)), theory)
        if kind == "noise":
            dom = _atoms_of(_require(record, "dom", where), where)
            cod = _atoms_of(record.get("cod", list(dom)), where)
            return _noise(theory, dom, cod, int(record.get("failure", 0)), p, where)
        return morphism_from_json(theory, record, where)

    visiting: set[str] = set()

    def build(name: str) -> Morphism:
        if name in out:
            return out[name]
        if name in visiting:
            raise ParseError(f"morphism {name!r} refers to itself")
        visiting.add(name)
        out[name] = decode(pending[name], f"morphism {name}")
        visiting.discard(name)
        return out[name]

    for name in records:
        build(name)
    return out


def _party(record: Mapping[str, Any], morphisms: Mapping[str, Morphism], where: str) -> Party:
    name = _require(record, "name", where)
    session = parse_session(_require(record, "session", where))
    state = record.get("state")
    state_in = _atoms_of(record.get("state_in", state), where) if (state or "state_in" in record) else None
    state_out = _atoms_of(record.get("state_out", state), where) if (state or "state_out" in record) else None
    steps = []
    for ref in _require(record, "steps", where):
        if ref not in morphisms:
            raise ParseError(f"{where}: unknown step {ref!r}")
        steps.append(morphisms[ref])
    if not steps:
        raise ParseError(f"{where}: no steps")
    residuals = record.get("residuals")
    return Party(
        name=name,
        session=session,
        steps=tuple(steps),
        state_in=state_in if state_in is not None else steps[0].dom,
        state_out=state_out if state_out is not None else steps[-1].cod,
        residuals=None if residuals is None else tuple(_atoms_of(r, where) for r in residuals),
    )


def load_protocol(source: str | Path | Mapping[str, Any], noise: Fraction | str | None = None) -> Protocol:
    """Read a protocol file (path or already-decoded JSON).

    ``noise`` overrides the file's failure probability for ``noise``
    channels.
    """
    if isinstance(source, Mapping):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
        except OSError as exc:
            raise ParseError(f"{source}: {exc.strerror}") from None
    if not isinstance(data, Mapping):
        raise ParseError("a protocol file is a JSON object")
    if data.get("schema") != SCHEMA:
        raise ParseError(f"unsupported schema {data.get('schema')!r}; expected {SCHEMA!r}")
    objects = _require(data, "objects", "protocol")
    atoms: dict[str, AtomInfo] = {}
    for name, info in objects.items():
        if isinstance(info, int):
            info = {"carrier": info}
        carrier = _require(info, "carrier", f"object {name}")
        if not isinstance(carrier, int) or carrier < 1:
            raise ParseError(f"object {name}: carrier must be a positive integer")
        values = tuple(str(v) for v in info.get("values", range(carrier)))
        if len(values) != carrier:
            raise ParseError(f"object {name}: {len(values)} value labels for carrier {carrier}")
        atoms[name] = AtomInfo(carrier, values, str(info.get("label", name)))
    sizes = {name: a.carrier for name, a in atoms.items()}
    kind = data.get("theory", "finfn")
    if kind == "finfn":
        theory: Theory = FinFn.of(sizes)
    elif kind == "finstoch":
        theory = FinStoch.of(sizes)
    else:
        raise ParseError(f"unknown theory {kind!r}")
    p = parse_fraction(noise if noise is not None else data.get("noise", "0"))
    morphisms = _build_morphisms(theory, data.get("morphisms", {}), p)
    parties_data = data.get("parties") or []
    if not parties_data:
        raise ParseError("no parties")
    parties = [_party(r, morphisms, f"party {i + 1}") for i, r in enumerate(parties_data)]
    channels = list(data.get("channels", []))
    for ch in channels:
        if ch not in morphisms:
            raise ParseError(f"unknown channel morphism {ch!r}")
    return Protocol(theory, atoms, morphisms, parties, channels, p, list(data.get("refactorings", [])))


def variant_party(proto: Protocol, refactoring: Mapping[str, Any]) -> tuple[Party, Party]:
    """The named party and its alternative decomposition."""
    target = _require(refactoring, "party", "refactoring")
    base = next((p for p in proto.parties if p.name == target), None)
    if base is None:
        raise ParseError(f"refactoring refers to unknown party {target!r}")
    record = {"name": f"{target} ({refactoring.get('name', 'variant')})", "session": str(base.session)}
    record["steps"] = _require(refactoring, "steps", "refactoring")
    if "residuals" in refactoring:
        record["residuals"] = refactoring["residuals"]
    record["state_in"] = list(base.state_in)
    record["state_out"] = list(base.state_out)
    return base, _party(record, proto.morphisms, f"refactoring {refactoring.get('name', '')}")


def closed_to_json(proto: Protocol, m: Morphism) -> dict[str, Any]:
    """A self-contained file for a closed morphism (objects plus the matrix)."""
    used = sorted(set(m.dom) | set(m.cod))
    return {
        "schema": SCHEMA,
        "theory": proto.theory.name,
        "objects": {
            a: {"carrier": proto.atoms[a].carrier, "values": list(proto.atoms[a].values), "label": proto.atoms[a].label}
            for a in used
        },
        "morphism": morphism_to_json(m),
    }


def closed_from_json(data: Mapping[str, Any]) -> Morphism:
    if data.get("schema") != SCHEMA:
        raise ParseError(f"unsupported schema {data.get('schema')!r}")
    sizes = {a: _require(info, "carrier", f"object {a}") for a, info in _require(data, "objects", "file").items()}
    kind = data.get("theory", "finfn")
    theory: Theory = FinStoch.of(sizes) if kind == "finstoch" else FinFn.of(sizes)
    return morphism_from_json(theory, _require(data, "morphism", "file"))


__all__ = [
    "AtomInfo",
    "Protocol",
    "SCHEMA",
    "closed_from_json",
    "closed_to_json",
    "fraction_text",
    "load_protocol",
    "morphism_from_json",
    "morphism_to_json",
    "parse_fraction",
    "variant_party",
]
