"""``mctx``: check, compose and evaluate protocol files; run the law suites.

Exit codes: 0 ok, 1 type error, 2 law failure, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Sequence, TextIO

from .errors import MctxError, ParseError, SessionError, TypeMismatch
from .laws import GROUPS, run_laws
from .lens import Lens
from .protocol import Protocol, closed_to_json, fraction_text, load_protocol, variant_party
from .session import (
    PolarityWarning,
    dinaturality_refactor_check,
    fill_channels,
    interleave,
    outcome_distribution,
    tensor_sessions,
    type_check,
)
from .theory import Morphism, show

OK, TYPE_ERROR, LAW_FAILURE, PARSE_ERROR = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors are parse errors, not law failures
        raise ParseError(f"{self.prog}: {message}")


def _protocol(args: argparse.Namespace) -> Protocol:
    """Load the named file; bare names of shipped files (``tcp.json``) also work."""
    path = Path(args.file)
    if not path.exists():
        shipped = Path(__file__).parent / "data" / path.name
        if path.name == str(path) and shipped.exists():
            path = shipped
    return load_protocol(path, noise=args.noise)


def _combined(proto: Protocol) -> tuple[Lens, list[str]]:
    """All parties interleaved stage by stage, plus any polarity warnings."""
    lenses = [type_check(p) for p in proto.parties]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PolarityWarning)
        combined = lenses[0]
        session = proto.parties[0].session
        for p, l in zip(proto.parties[1:], lenses[1:]):
            combined = interleave(combined, l, session, p.session)
            session = tensor_sessions(session, p.session)
    notes = [str(w.message) for w in caught if issubclass(w.category, PolarityWarning)]
    return combined, notes


def _closed(proto: Protocol) -> Morphism:
    combined, _ = _combined(proto)
    channels = [proto.morphisms[c] for c in proto.channels]
    return fill_channels(combined, channels)


def _state_atoms(proto: Protocol) -> tuple[str, ...]:
    return reduce(lambda acc, p: acc + p.state_in, proto.parties, ())


def _initial_index(proto: Protocol, text: str | None) -> int:
    """``"client=0,server=0"``: each party's initial state by value label or index."""
    chosen: dict[str, int] = {}
    if text:
        for item in text.split(","):
            name, sep, value = item.partition("=")
            name, value = name.strip(), value.strip()
            party = next((p for p in proto.parties if p.name == name), None)
            if not sep or party is None:
                raise ParseError(f"--initial: cannot read {item.strip()!r} (expected party=value)")
            chosen[name] = _state_value(proto, party.state_in, value)
    t = proto.theory
    parts = [chosen.get(p.name, 0) for p in proto.parties]
    return t.encode(parts, [p.state_in for p in proto.parties])


def _state_value(proto: Protocol, atoms: tuple[str, ...], value: str) -> int:
    if len(atoms) == 1:
        values = proto.atoms[atoms[0]].values
        if value in values:
            return values.index(value)
    try:
        index = int(value)
    except ValueError:
        raise ParseError(f"--initial: {value!r} is not a state of {show(atoms)}") from None
    if not 0 <= index < proto.theory.carrier(atoms):
        raise ParseError(f"--initial: state index {index} outside {show(atoms)}")
    return index


def _table(rows: list[tuple[list[str], Fraction]]) -> str:
    cols = max((len(labels) for labels, _ in rows), default=0)
    widths = [max(len(labels[k]) for labels, _ in rows) for k in range(cols)]
    out = []
    for labels, p in rows:
        cells = " ".join(l.ljust(w) for l, w in zip(labels, widths))
        out.append(f"{cells}  {fraction_text(p)}")
    return "\n".join(out) + "\n"


# -- subcommands -----------------------------------------------------------------


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    proto = _protocol(args)
    for p in proto.parties:
        type_check(p)
        out.write(f"{p.name}: ok  {p.session}\n")
    combined, notes = _combined(proto)
    for n in notes:
        out.write(f"warning: {n}\n")
    if proto.channels:
        fill_channels(combined, [proto.morphisms[c] for c in proto.channels])
        out.write(f"channels: ok  {len(proto.channels)} stage(s)\n")
    status = OK
    for r in proto.refactorings:
        base, variant = variant_party(proto, r)
        verdict = dinaturality_refactor_check(base, variant)
        word = "equivalent" if verdict.equivalent else "NOT equivalent"
        out.write(f"refactoring {r.get('name', '?')}: {word} ({verdict.method})\n")
        if verdict.note:
            out.write(f"  {verdict.note}\n")
        if not verdict.equivalent:
            status = LAW_FAILURE
    return status


def cmd_compose(args: argparse.Namespace, out: TextIO) -> int:
    proto = _protocol(args)
    text = json.dumps(closed_to_json(proto, _closed(proto)), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        out.write(f"wrote {args.out}\n")
    else:
        out.write(text)
    return OK


def cmd_eval(args: argparse.Namespace, out: TextIO) -> int:
    proto = _protocol(args)
    closed = _closed(proto)
    dist = outcome_distribution(closed, _initial_index(proto, args.initial))
    atoms = _state_atoms(proto)
    rows = [(proto.state_labels(atoms, k), p) for k, p in dist.items()]
    if args.json:
        payload = {
            "noise": fraction_text(proto.noise),
            "outcomes": [{"state": labels, "probability": fraction_text(p)} for labels, p in rows],
            "total": fraction_text(sum(dist.values(), Fraction(0))),
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(_table(rows))
    return OK


def cmd_laws(args: argparse.Namespace, out: TextIO) -> int:
    if args.cases < 0:
        raise ParseError("--cases must be non-negative")
    if args.max_carrier < 1:
        raise ParseError("--max-carrier must be at least 1")
    groups = args.group or GROUPS
    report = run_laws(args.theory, args.max_carrier, args.cases, args.seed, groups)
    out.write(report.json() if args.json else report.text())
    return OK if report.ok else LAW_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mctx", description="Monoidal contexts and lenses over finite theories.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def protocol_command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="protocol file (schema mctx/1)")
        p.add_argument("--noise", help="failure probability of noise channels, as p/q")
        return p

    protocol_command("check", "type-check parties, channels and refactorings")
    p = protocol_command("compose", "compose all parties with their channels")
    p.add_argument("--out", help="write the closed morphism here instead of stdout")
    p = protocol_command("eval", "exact outcome distribution")
    p.add_argument("--initial", help='initial states, e.g. "client=0,server=0"')
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("laws", help="run the law suites")
    p.add_argument("--theory", choices=["finfn", "finstoch"], default="finfn")
    p.add_argument("--max-carrier", type=int, default=2)
    p.add_argument("--cases", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--group", action="append", choices=GROUPS, help="run only this group (repeatable)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


COMMANDS = {"check": cmd_check, "compose": cmd_compose, "eval": cmd_eval, "laws": cmd_laws}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return PARSE_ERROR
    except SessionError as exc:
        where = f" (stage {exc.stage})" if exc.stage is not None else ""
        err.write(f"type error{where}: {exc}\n")
        return TYPE_ERROR
    except (TypeMismatch, MctxError) as exc:
        err.write(f"type error: {exc}\n")
        return TYPE_ERROR


if __name__ == "__main__":
    sys.exit(main())
