"""Concrete syntax for formulas, and JSON output.

Grammar (ASCII)::

    type    := tatom ['->' type]
    tatom   := 'N' | 'B' | 'set' '(' type ')' | '(' type ')'
    formula := binder
             | term '?' formula ':' formula
             | binop [('->' | '-o') formula]
    binop   := unary {('&' | '|' | '*' | '+') unary}
    unary   := '!' mod unary | binder | '(' formula ')' | atomic
    binder  := ('forall' | 'exists') ident ':' type ['in' term] '.' formula
    mod     := 'k' | 'd' | 'g' | 'kt' | 'dt' | 'stein' '[' (nat | 'inf') ']'
    atomic  := ident '(' term {',' term} ')' | ident
             | term '=' ('true' | 'false') | term 'in' term
    term    := targ {targ}          (application, left-nested)
    targ    := ident | 'true' | 'false' | '(' term ')'

A predicate's argument list must follow its name without a space, so
``P(x)`` is an atom while ``f (g x)`` is an application.  ``->``/``-o`` are
right-associative and all of ``& | * +`` share one left-associative level.
A binder in operand position extends as far right as possible, so
``!d forall z:N. P(z)`` covers the whole quantifier.
The bounded quantifier ``forall y:N in s. A`` and the conditional
``b ? A : B`` only arise in interpreted matrices but parse like the rest.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Mapping

from .core import (
    B, FALSE, INF, N, TRUE, And, App, Arrow, Atom, Bang, BForall, Cond,
    EqBool, Exists, FinSet, Forall, Formula, Implies, Lolli, Mem, Modality, Or, Plus,
    SimpleType, Tensor, Term, Var, logic_of,
)

__all__ = ["SourceSpan", "ParseError", "parse_formula", "parse_type", "parse_modality",
           "print_formula", "print_term", "emit_json", "interpreted_to_dict"]


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        self.span = span
        self.message = message
        super().__init__(f"{message} at line {span.line}, column {span.column}")


# ---------------------------------------------------------------- lexing

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>->|-o|[()\[\],.:?=!&|*+])
""", re.VERBOSE)

_KEYWORDS = {"forall", "exists", "in", "true", "false"}


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    start: int
    end: int
    adjacent: bool  # no whitespace before this token


def _span(text: str, start: int, end: int) -> SourceSpan:
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(start, end, line, col)


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, prev_end = 0, -1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), m.start(), m.end(), m.start() == prev_end))
            prev_end = m.end()
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), len(text), False))
    return toks


# ---------------------------------------------------------------- parsing


class _Parser:
    def __init__(self, text: str, env: Mapping[str, SimpleType]):
        self.text = text
        self.toks = _lex(text)
        self.i = 0
        self.free = dict(env)

    # token helpers

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "ident") and self.tok.text == text

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, _span(self.text, tok.start, max(tok.end, tok.start + 1)))

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def ident(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.text in _KEYWORDS:
            raise self.error(f"expected an identifier, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    # types

    def type(self) -> SimpleType:
        t = self.type_atom()
        if self.at("->"):
            self.i += 1
            return Arrow(t, self.type())
        return t

    def type_atom(self) -> SimpleType:
        if self.at("N"):
            self.i += 1
            return N
        if self.at("B"):
            self.i += 1
            return B
        if self.at("set"):
            self.i += 1
            self.expect("(")
            t = self.type()
            self.expect(")")
            return FinSet(t)
        if self.at("("):
            self.i += 1
            t = self.type()
            self.expect(")")
            return t
        raise self.error(f"expected a type, found {self.tok.text or 'end of input'!r}")

    # terms

    def var(self, name: str, scope: Mapping[str, SimpleType]) -> Var:
        if name in scope:
            return Var(name, scope[name])
        return Var(name, self.free.setdefault(name, N))

    def term_start(self) -> bool:
        tok = self.tok
        if tok.kind == "ident":
            return tok.text not in ("forall", "exists", "in")
        return False

    def targ(self, scope) -> Term:
        if self.at("true"):
            self.i += 1
            return TRUE
        if self.at("false"):
            self.i += 1
            return FALSE
        if self.at("("):
            self.i += 1
            t = self.term(scope)
            self.expect(")")
            return t
        return self.var(self.ident(), scope)

    def term(self, scope) -> Term:
        t = self.targ(scope)
        while (self.term_start() and not self.at("true") and not self.at("false")) or (
                self.at("(") and not self.tok.adjacent):
            t = App(t, self.targ(scope))
        return t

    # formulas

    def formula(self, scope) -> Formula:
        if self.at("forall") or self.at("exists"):
            return self.binder(scope)
        if self.term_start() and not self.at("true") and not self.at("false"):
            save = self.i
            try:
                sel = self.term(scope)
            except ParseError:
                sel = None
            if sel is not None and self.at("?"):
                self.i += 1
                then = self.formula(scope)
                self.expect(":")
                return Cond(sel, then, self.formula(scope))
            self.i = save
        left = self.binop(scope)
        if self.at("->") or self.at("-o"):
            op = Implies if self.tok.text == "->" else Lolli
            self.i += 1
            return op(left, self.formula(scope))
        return left

    def binder(self, scope) -> Formula:
        kw = self.tok
        self.i += 1
        name = self.ident()
        self.expect(":")
        ty = self.type()
        bound = None
        if self.at("in"):
            if kw.text != "forall":
                raise self.error("only forall takes a bound", self.tok)
            self.i += 1
            bound = self.term(scope)
        self.expect(".")
        v = Var(name, ty)
        body = self.formula({**scope, name: ty})
        if bound is not None:
            return BForall(v, bound, body)
        return Forall(v, body) if kw.text == "forall" else Exists(v, body)

    _BINOPS = {"&": And, "|": Or, "*": Tensor, "+": Plus}

    def binop(self, scope) -> Formula:
        left = self.unary(scope)
        while self.tok.kind == "sym" and self.tok.text in self._BINOPS:
            op = self._BINOPS[self.tok.text]
            self.i += 1
            left = op(left, self.unary(scope))
        return left

    def modality(self) -> Modality:
        tok = self.tok
        name = self.ident() if tok.kind == "ident" else None
        if name in ("k", "d", "g", "kt", "dt"):
            return Modality(name)
        if name == "stein":
            self.expect("[")
            if self.at("inf"):
                self.i += 1
                level = INF
            elif self.tok.kind == "num":
                level = int(self.tok.text)
                self.i += 1
            else:
                raise self.error("expected a natural number or 'inf'")
            self.expect("]")
            return Modality.stein(level)
        raise self.error(f"unknown modality {tok.text!r}", tok)

    def unary(self, scope) -> Formula:
        if self.at("!"):
            self.i += 1
            m = self.modality()
            return Bang(m, self.unary(scope))
        if self.at("forall") or self.at("exists"):
            return self.binder(scope)
        if self.at("("):
            self.i += 1
            f = self.formula(scope)
            self.expect(")")
            return f
        return self.atomic(scope)

    def atomic(self, scope) -> Formula:
        tok = self.tok
        nxt = self.toks[min(self.i + 1, len(self.toks) - 1)]
        if tok.kind == "ident" and tok.text not in _KEYWORDS and nxt.text == "(" and nxt.adjacent:
            self.i += 2
            args = [self.term(scope)]
            while self.at(","):
                self.i += 1
                args.append(self.term(scope))
            self.expect(")")
            return Atom(tok.text, tuple(args))
        if not self.term_start() and not (self.at("true") or self.at("false")):
            raise self.error(f"expected a formula, found {tok.text or 'end of input'!r}")
        t = self.term(scope)
        if self.at("="):
            self.i += 1
            if self.at("true"):
                rhs = TRUE
            elif self.at("false"):
                rhs = FALSE
            else:
                raise self.error("expected 'true' or 'false'")
            self.i += 1
            return EqBool(t, rhs)
        if self.at("in"):
            self.i += 1
            return Mem(t, self.term(scope))
        if isinstance(t, Var) and t.name not in scope:
            return Atom(t.name)
        raise self.error("expected a formula", tok)


def parse_formula(text: str, env: Mapping[str, SimpleType] | None = None) -> Formula:
    """Parse ``text``; free variables take their types from ``env`` (default ``N``).

    Raises :class:`ParseError` on malformed input and
    :class:`~funint.core.MixedLogicError` when both logics are used.
    """
    p = _Parser(text, env or {})
    f = p.formula({})
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    logic_of(f)
    return f


def parse_type(text: str) -> SimpleType:
    p = _Parser(text, {})
    t = p.type()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return t


def parse_modality(text: str) -> Modality:
    p = _Parser(text, {})
    m = p.modality()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return m


# ---------------------------------------------------------------- printing

_SYMBOL = {And: "&", Or: "|", Implies: "->", Tensor: "*", Plus: "+", Lolli: "-o"}


def print_term(t: Term) -> str:
    return str(t)


def print_formula(f: Formula) -> str:
    """Render with the fewest parentheses the grammar needs."""
    return _fmt(f, 0)


def _fmt(f: Formula, ctx: int) -> str:
    match f:
        case Atom(p, args):
            s, level = (f"{p}({', '.join(map(str, args))})" if args else p), 4
        case EqBool(lhs, rhs):
            s, level = f"{lhs} = {rhs}", 4
        case Mem(e, st):
            s, level = f"{e} in {st}", 4
        case Implies(l, r) | Lolli(l, r):
            s, level = f"{_fmt(l, 2)} {_SYMBOL[type(f)]} {_fmt(r, 1)}", 1
        case And(l, r) | Or(l, r) | Tensor(l, r) | Plus(l, r):
            s, level = f"{_fmt(l, 2)} {_SYMBOL[type(f)]} {_fmt(r, 3)}", 2
        case Bang(m, body):
            s, level = f"!{m} {_fmt(body, 3)}", 3
        case Forall(v, body) | Exists(v, body):
            kw = "forall" if isinstance(f, Forall) else "exists"
            s, level = f"{kw} {v.name}:{v.type}. {_fmt(body, 0)}", 0
        case BForall(v, bound, body):
            s, level = f"forall {v.name}:{v.type} in {bound}. {_fmt(body, 0)}", 0
        case Cond(sel, a, b):
            s, level = f"{sel} ? {_fmt(a, 0)} : {_fmt(b, 0)}", 0
        case _:
            raise TypeError(f"not a formula: {f!r}")
    return f"({s})" if level < ctx else s


# ---------------------------------------------------------------- json


def interpreted_to_dict(r) -> dict:
    return {
        "witnesses": [{"name": v.name, "type": str(v.type)} for v in r.witnesses],
        "challenges": [{"name": v.name, "type": str(v.type)} for v in r.challenges],
        "matrix": print_formula(r.matrix),
    }


def _report_to_dict(r) -> dict:
    failure = None
    if r.first_failure is not None:
        ff = r.first_failure
        failure = {
            "formula": print_formula(ff.formula),
            "left": interpreted_to_dict(ff.left) if ff.left is not None else None,
            "right": interpreted_to_dict(ff.right) if ff.right is not None else None,
        }
        if ff.note:
            failure["note"] = ff.note
    return {"diagram": r.diagram, "total": r.total, "passed": r.passed,
            "first_failure": failure}


def emit_json(r) -> str:
    """Serialise an interpreted formula or a check report; key order is fixed."""
    if hasattr(r, "matrix"):
        obj = interpreted_to_dict(r)
    elif hasattr(r, "diagram"):
        obj = _report_to_dict(r)
    else:
        raise TypeError(f"cannot serialise {type(r).__name__}")
    return json.dumps(obj, ensure_ascii=False)
