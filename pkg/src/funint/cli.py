"""Command-line front end: ``funint interpret|translate|check|types``.

Exit status is 0 on success, 1 when a check finds a failure and 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .checker import DEFAULT_SIGNATURE, parse_signature, run_check
from .core import ALI, IL, MixedLogicError, logic_of
from .interpreter import STANDARD, interpret_al, interpret_il, spec_for, stein, uniform, witness_types
from .syntax import ParseError, emit_json, parse_formula, parse_modality, print_formula
from .translations import CIRC, STAR, STAR_SIMPLE, forget, translate

CHECKS = ("mr", "rreal", "dial", "mrt", "qreal", "pure", "stein", "bang-order", "wf")
_VIA = {"star": STAR, "star-simple": STAR_SIMPLE, "circ": CIRC}


class _UsageError(Exception):
    pass


def _spec(text: str):
    kind, sep, level = text.partition(":")
    if kind == "stein" and sep:
        if level == "inf":
            return stein(float("inf"))
        if level.isdigit():
            return stein(int(level))
    elif not sep and kind in ("k", "d", "g", "kt", "dt"):
        return spec_for(parse_modality(kind))
    raise argparse.ArgumentTypeError(f"unknown spec {text!r} (k, d, g, kt, dt or stein:M)")


def _modality(text: str):
    try:
        return parse_modality(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="funint", description="Unified functional interpretations.")
    sub = p.add_subparsers(dest="command", required=True)

    ip = sub.add_parser("interpret", help="interpret a formula")
    ip.add_argument("--logic", choices=("il", "al"), default="il")
    ip.add_argument("--spec", type=_spec,
                    help="bounding spec; required for il, for al it overrides every bang label")
    ip.add_argument("--format", choices=("text", "json"), default="text")
    ip.add_argument("formula")

    tp = sub.add_parser("translate", help="translate between the logics")
    tp.add_argument("--via", choices=(*_VIA, "forget"), required=True)
    tp.add_argument("--mod", type=_modality, default=parse_modality("g"),
                    help="label of the bangs introduced (default g)")
    tp.add_argument("formula")

    cp = sub.add_parser("check", help="run an exhaustive check")
    cp.add_argument("--diagram", choices=CHECKS, required=True)
    cp.add_argument("--depth", type=int, default=3)
    cp.add_argument("--sig", type=Path, help="signature file, one 'name : N^k' per line")
    cp.add_argument("--jobs", type=int, default=1)
    cp.add_argument("--format", choices=("text", "json"), default="text")
    cp.add_argument("--out", type=Path, help="write the report here instead of stdout")

    yp = sub.add_parser("types", help="witness and challenge types only")
    yp.add_argument("formula")
    yp.add_argument("--spec", type=_spec)
    return p


def _parse(text: str, logic: str | None = None):
    f = parse_formula(text)
    found = logic_of(f)
    if logic is not None and found not in (None, logic):
        raise _UsageError(f"expected an {logic} formula, got {found}")
    return f


def _list(vs) -> str:
    return ", ".join(f"{v.name}:{v.type}" for v in vs) or "-"


def _interpret(args) -> int:
    logic = IL if args.logic == "il" else ALI
    f = _parse(args.formula, logic)
    if logic == IL:
        if args.spec is None:
            raise _UsageError("--spec is required with --logic il")
        r = interpret_il(f, args.spec)
    else:
        r = interpret_al(f, STANDARD if args.spec is None else uniform(args.spec))
    if args.format == "json":
        print(emit_json(r))
    else:
        print(f"witnesses:  {_list(r.witnesses)}")
        print(f"challenges: {_list(r.challenges)}")
        print(f"matrix:     {print_formula(r.matrix)}")
    return 0


def _translate(args) -> int:
    if args.via == "forget":
        out = forget(_parse(args.formula, ALI))
    else:
        out = translate(_parse(args.formula, IL), _VIA[args.via], args.mod)
    print(print_formula(out))
    return 0


def _check(args) -> int:
    sig = DEFAULT_SIGNATURE
    if args.sig is not None:
        try:
            sig = parse_signature(args.sig.read_text())
        except OSError as exc:
            raise _UsageError(f"cannot read {args.sig}: {exc.strerror}") from None
    if args.depth < 1:
        raise _UsageError("--depth must be at least 1")
    report = run_check(args.diagram, args.depth, sig, args.jobs)
    text = emit_json(report) if args.format == "json" else report.summary()
    if args.out is not None:
        args.out.write_text(text + "\n")
        if args.format == "json":
            print(report.summary())
    else:
        print(text)
    return 0 if report.ok else 1


def _types(args) -> int:
    f = _parse(args.formula)
    if logic_of(f) == ALI:
        ws, cs = witness_types(f, STANDARD if args.spec is None else args.spec)
    else:
        if args.spec is None:
            raise _UsageError("--spec is required for an intuitionistic formula")
        ws, cs = witness_types(f, args.spec)
    print("witnesses:  " + (", ".join(map(str, ws)) or "-"))
    print("challenges: " + (", ".join(map(str, cs)) or "-"))
    return 0


_COMMANDS = {"interpret": _interpret, "translate": _translate, "check": _check, "types": _types}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"funint: parse error: {exc}", file=sys.stderr)
        if exc.span is not None:
            print("  " + getattr(args, "formula", ""), file=sys.stderr)
            print("  " + " " * exc.span.start + "^" * max(1, exc.span.end - exc.span.start),
                  file=sys.stderr)
        return 2
    except (_UsageError, MixedLogicError, ValueError, TypeError) as exc:
        print(f"funint: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
