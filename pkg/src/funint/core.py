"""Immutable syntax trees for formulas and the typed terms inside them.

One formula language covers both intuitionistic logic (``&``, ``|``, ``->``)
and intuitionistic affine logic (``*``, ``+``, ``-o``, labelled ``!``).
Quantifiers, atoms, the bounded quantifier and the boolean conditional are
shared by both.  A formula mixing the two connective families is rejected by
:func:`logic_of`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Nat", "Bool", "Arrow", "FinSet", "N", "B", "SimpleType",
    "Var", "App", "BoolConst", "TRUE", "FALSE", "Term",
    "Atom", "EqBool", "Mem", "And", "Or", "Implies", "Tensor", "Plus", "Lolli",
    "Bang", "Forall", "Exists", "BForall", "Cond", "Formula",
    "Modality", "K", "D", "G", "KT", "DT", "INF",
    "IL", "ALI", "MixedLogicError", "FormulaTypeError",
    "arrow", "apply", "type_of", "type_level", "pure_type",
    "free_vars", "term_free_vars", "all_names", "substitute", "substitute_all",
    "alpha_normalize", "alpha_equal", "logic_of", "expand_cond", "typecheck",
    "relabel", "connective_depth",
]


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class Nat:
    def __str__(self) -> str:
        return "N"


@dataclass(frozen=True)
class Bool:
    def __str__(self) -> str:
        return "B"


@dataclass(frozen=True)
class Arrow:
    dom: "SimpleType"
    cod: "SimpleType"

    def __str__(self) -> str:
        d = str(self.dom)
        if isinstance(self.dom, Arrow):
            d = f"({d})"
        return f"{d}->{self.cod}"


@dataclass(frozen=True)
class FinSet:
    elem: "SimpleType"

    def __str__(self) -> str:
        return f"set({self.elem})"


SimpleType = Union[Nat, Bool, Arrow, FinSet]
N = Nat()
B = Bool()


def arrow(doms: Sequence[SimpleType], cod: SimpleType) -> SimpleType:
    """Curried function type ``doms[0] -> ... -> cod``."""
    for d in reversed(doms):
        cod = Arrow(d, cod)
    return cod


def type_level(t: SimpleType) -> int:
    """Type level: 0 for base types, and ``max(level(a)+1, level(b))`` for ``a->b``."""
    match t:
        case Nat() | Bool():
            return 0
        case Arrow(dom, cod):
            return max(type_level(dom) + 1, type_level(cod))
        case FinSet(elem):
            return type_level(elem)
    raise TypeError(f"not a type: {t!r}")


def pure_type(m: int) -> SimpleType:
    """Pure type of level ``m``: ``N`` for 0, ``pure(m-1) -> N`` above."""
    if m < 0 or m == math.inf:
        raise ValueError(f"pure type needs a finite level, got {m}")
    t: SimpleType = N
    for _ in range(m):
        t = Arrow(t, N)
    return t


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str
    type: SimpleType

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"

    def __str__(self) -> str:
        a = str(self.arg)
        if isinstance(self.arg, App):
            a = f"({a})"
        return f"{self.fun} {a}"


@dataclass(frozen=True)
class BoolConst:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


Term = Union[Var, App, BoolConst]
TRUE = BoolConst(True)
FALSE = BoolConst(False)


class FormulaTypeError(TypeError):
    """Ill-typed term or formula.  ``path`` locates the offending node."""

    def __init__(self, message: str, path: Sequence[str] = ()):
        self.path = tuple(path)
        where = "/".join(self.path) or "<root>"
        super().__init__(f"{message} (at {where})")
        self.message = message


class MixedLogicError(ValueError):
    """The formula uses both intuitionistic and affine connectives."""


def type_of(t: Term) -> SimpleType:
    match t:
        case Var(_, ty):
            return ty
        case BoolConst():
            return B
        case App(fun, arg):
            ft = type_of(fun)
            if not isinstance(ft, Arrow):
                raise FormulaTypeError(f"not a function type: {fun} : {ft}")
            at = type_of(arg)
            if ft.dom != at:
                raise FormulaTypeError(f"argument {arg} : {at} does not match {fun} : {ft}")
            return ft.cod
    raise TypeError(f"not a term: {t!r}")


def apply(fun: Term, args: Iterable[Term]) -> Term:
    """Left-nested application ``fun a1 ... an``."""
    for a in args:
        fun = App(fun, a)
    return fun


def term_free_vars(t: Term) -> frozenset[Var]:
    match t:
        case Var():
            return frozenset((t,))
        case App(fun, arg):
            return term_free_vars(fun) | term_free_vars(arg)
    return frozenset()


def _subst_term(t: Term, sub: Mapping[str, Term]) -> Term:
    match t:
        case Var(name, _):
            return sub.get(name, t)
        case App(fun, arg):
            return App(_subst_term(fun, sub), _subst_term(arg, sub))
    return t


# ---------------------------------------------------------------- modalities

INF = math.inf


@dataclass(frozen=True)
class Modality:
    """Label of a bang.  ``stein`` carries the type-level cut-off ``level``."""

    kind: str
    level: float | int | None = None

    _KINDS = ("k", "d", "g", "kt", "dt", "stein")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown modality {self.kind!r}")
        if (self.kind == "stein") != (self.level is not None):
            raise ValueError("only stein modalities carry a level")
        if self.kind == "stein" and self.level != INF and (
            int(self.level) != self.level or self.level < 0
        ):
            raise ValueError(f"stein level must be a natural number or inf, got {self.level}")

    @classmethod
    def stein(cls, level: float | int) -> "Modality":
        return cls("stein", INF if level == INF else int(level))

    def __str__(self) -> str:
        if self.kind == "stein":
            return f"stein[{'inf' if self.level == INF else self.level}]"
        return self.kind


K = Modality("k")
D = Modality("d")
G = Modality("g")
KT = Modality("kt")
DT = Modality("dt")


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class EqBool:
    lhs: Term
    rhs: BoolConst


@dataclass(frozen=True)
class Mem:
    elem: Term
    set: Term


@dataclass(frozen=True)
class _Binary:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class And(_Binary):
    pass


@dataclass(frozen=True)
class Or(_Binary):
    pass


@dataclass(frozen=True)
class Implies(_Binary):
    pass


@dataclass(frozen=True)
class Tensor(_Binary):
    pass


@dataclass(frozen=True)
class Plus(_Binary):
    pass


@dataclass(frozen=True)
class Lolli(_Binary):
    pass


@dataclass(frozen=True)
class Bang:
    modality: Modality
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class BForall:
    """``forall var in bound. body``; ``bound`` is a finite set or an enumeration ``sigma -> type(var)``."""

    var: Var
    bound: Term
    body: "Formula"


@dataclass(frozen=True)
class Cond:
    """``sel ? then : else_``, the boolean case split macro, kept unexpanded."""

    sel: Term
    then: "Formula"
    else_: "Formula"


Formula = Union[Atom, EqBool, Mem, And, Or, Implies, Tensor, Plus, Lolli,
                Bang, Forall, Exists, BForall, Cond]

_IL_BINARY = (And, Or, Implies)
_AL_BINARY = (Tensor, Plus, Lolli)
_BINDERS = (Forall, Exists, BForall)

IL = "IL"
ALI = "ALi"


def connective_depth(f: Formula) -> int:
    """Atoms have depth 1; every connective or quantifier adds one."""
    match f:
        case Atom() | EqBool() | Mem():
            return 1
        case _Binary(l, r):
            return 1 + max(connective_depth(l), connective_depth(r))
        case Bang(_, body) | Forall(_, body) | Exists(_, body) | BForall(_, _, body):
            return 1 + connective_depth(body)
        case Cond(_, a, b):
            return 1 + max(connective_depth(a), connective_depth(b))
    raise TypeError(f"not a formula: {f!r}")


def logic_of(f: Formula) -> str | None:
    """``IL``, ``ALi``, or ``None`` for formulas using only shared constructors.

    Raises :class:`MixedLogicError` when both families occur.
    """
    found: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, _IL_BINARY):
            found.add(IL)
        elif isinstance(g, _AL_BINARY) or isinstance(g, Bang):
            found.add(ALI)
        match g:
            case _Binary(l, r):
                stack += (l, r)
            case Bang(_, body) | Forall(_, body) | Exists(_, body) | BForall(_, _, body):
                stack.append(body)
            case Cond(_, a, b):
                stack += (a, b)
        if len(found) == 2:
            raise MixedLogicError("mixed logics: intuitionistic and affine connectives in one formula")
    return found.pop() if found else None


# ---------------------------------------------------------------- variables


def free_vars(f: Formula) -> frozenset[Var]:
    match f:
        case Atom(_, args):
            out: frozenset[Var] = frozenset()
            for a in args:
                out |= term_free_vars(a)
            return out
        case EqBool(lhs, _):
            return term_free_vars(lhs)
        case Mem(e, s):
            return term_free_vars(e) | term_free_vars(s)
        case _Binary(l, r):
            return free_vars(l) | free_vars(r)
        case Bang(_, body):
            return free_vars(body)
        case Forall(v, body) | Exists(v, body):
            return frozenset(x for x in free_vars(body) if x.name != v.name)
        case BForall(v, bound, body):
            return term_free_vars(bound) | frozenset(
                x for x in free_vars(body) if x.name != v.name)
        case Cond(sel, a, b):
            return term_free_vars(sel) | free_vars(a) | free_vars(b)
    raise TypeError(f"not a formula: {f!r}")


def all_names(f: Formula) -> set[str]:
    """Every variable name occurring in ``f``, free or bound."""
    names: set[str] = set()

    def term(t: Term):
        names.update(v.name for v in term_free_vars(t))

    def go(g: Formula):
        match g:
            case Atom(_, args):
                for a in args:
                    term(a)
            case EqBool(lhs, _):
                term(lhs)
            case Mem(e, s):
                term(e)
                term(s)
            case _Binary(l, r):
                go(l)
                go(r)
            case Bang(_, body):
                go(body)
            case Forall(v, body) | Exists(v, body):
                names.add(v.name)
                go(body)
            case BForall(v, bound, body):
                names.add(v.name)
                term(bound)
                go(body)
            case Cond(sel, a, b):
                term(sel)
                go(a)
                go(b)

    go(f)
    return names


def _fresh_name(base: str, avoid: set[str]) -> str:
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def substitute(f: Formula, v: Var, t: Term) -> Formula:
    """Capture-avoiding ``f[t/v]``."""
    if type_of(t) != v.type:
        raise FormulaTypeError(f"cannot substitute {t} : {type_of(t)} for {v.name} : {v.type}")
    return substitute_all(f, {v.name: t})


def substitute_all(f: Formula, sub: Mapping[str, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution, keyed by variable name."""
    if not sub:
        return f
    incoming: set[str] = set()
    for t in sub.values():
        incoming.update(x.name for x in term_free_vars(t))
    return _subst(f, dict(sub), incoming)


def _subst(f: Formula, sub: dict[str, Term], incoming: set[str]) -> Formula:
    match f:
        case Atom(p, args):
            return Atom(p, tuple(_subst_term(a, sub) for a in args))
        case EqBool(lhs, rhs):
            return EqBool(_subst_term(lhs, sub), rhs)
        case Mem(e, s):
            return Mem(_subst_term(e, sub), _subst_term(s, sub))
        case _Binary(l, r):
            return type(f)(_subst(l, sub, incoming), _subst(r, sub, incoming))
        case Bang(m, body):
            return Bang(m, _subst(body, sub, incoming))
        case Cond(sel, a, b):
            return Cond(_subst_term(sel, sub), _subst(a, sub, incoming), _subst(b, sub, incoming))
        case Forall(v, body) | Exists(v, body) | BForall(v, _, body):
            bound = _subst_term(f.bound, sub) if isinstance(f, BForall) else None
            inner = {k: t for k, t in sub.items() if k != v.name}
            if inner and v.name in incoming:
                live = {x.name for x in free_vars(body)}
                if any(k in live for k in inner):
                    avoid = live | incoming | set(inner)
                    nv = Var(_fresh_name(v.name, avoid), v.type)
                    inner = {**inner, v.name: nv}
                    v = nv
            new_body = _subst(body, inner, incoming) if inner else body
            if isinstance(f, BForall):
                return BForall(v, bound, new_body)
            return type(f)(v, new_body)
    raise TypeError(f"not a formula: {f!r}")


def alpha_normalize(f: Formula) -> Formula:
    """Rename bound variables to ``v0, v1, ...`` in depth-first, left-to-right order.

    Free variables are untouched and canonical names skip any free name.
    """
    taken = {x.name for x in free_vars(f)}
    counter = [0]

    def next_name() -> str:
        while True:
            name = f"v{counter[0]}"
            counter[0] += 1
            if name not in taken:
                return name

    def go(g: Formula, env: dict[str, Term]) -> Formula:
        match g:
            case Atom(p, args):
                return Atom(p, tuple(_subst_term(a, env) for a in args))
            case EqBool(lhs, rhs):
                return EqBool(_subst_term(lhs, env), rhs)
            case Mem(e, s):
                return Mem(_subst_term(e, env), _subst_term(s, env))
            case _Binary(l, r):
                return type(g)(go(l, env), go(r, env))
            case Bang(m, body):
                return Bang(m, go(body, env))
            case Cond(sel, a, b):
                return Cond(_subst_term(sel, env), go(a, env), go(b, env))
            case Forall(v, body) | Exists(v, body):
                nv = Var(next_name(), v.type)
                return type(g)(nv, go(body, {**env, v.name: nv}))
            case BForall(v, bound, body):
                bound = _subst_term(bound, env)
                nv = Var(next_name(), v.type)
                return BForall(nv, bound, go(body, {**env, v.name: nv}))
        raise TypeError(f"not a formula: {g!r}")

    return go(f, {})


def alpha_equal(f: Formula, g: Formula) -> bool:
    return alpha_normalize(f) == alpha_normalize(g)


# ---------------------------------------------------------------- macros


def relabel(f: Formula, mapping: Mapping[Modality, Modality]) -> Formula:
    """Replace bang labels according to ``mapping``."""
    match f:
        case _Binary(l, r):
            return type(f)(relabel(l, mapping), relabel(r, mapping))
        case Bang(m, body):
            return Bang(mapping.get(m, m), relabel(body, mapping))
        case Forall(v, body) | Exists(v, body):
            return type(f)(v, relabel(body, mapping))
        case BForall(v, bound, body):
            return BForall(v, bound, relabel(body, mapping))
        case Cond(sel, a, b):
            return Cond(sel, relabel(a, mapping), relabel(b, mapping))
    return f


def expand_cond(f: Formula, bang: Modality | None = None) -> Formula:
    """Unfold every ``b ? A : B``.

    Intuitionistic formulas become ``(b = true -> A) & (b = false -> B)``;
    affine ones become ``(!m (b = true) -o A) * (!m (b = false) -o B)`` with
    ``m = bang``.  A formula using only shared constructors is expanded the
    intuitionistic way unless ``bang`` is given.
    """
    logic = logic_of(f)
    affine = logic == ALI or (logic is None and bang is not None)
    if affine and bang is None:
        raise ValueError("expanding an affine conditional needs a bang modality")

    def go(g: Formula) -> Formula:
        match g:
            case Cond(sel, a, b):
                a, b = go(a), go(b)
                if affine:
                    return Tensor(Lolli(Bang(bang, EqBool(sel, TRUE)), a),
                                  Lolli(Bang(bang, EqBool(sel, FALSE)), b))
                return And(Implies(EqBool(sel, TRUE), a), Implies(EqBool(sel, FALSE), b))
            case _Binary(l, r):
                return type(g)(go(l), go(r))
            case Bang(m, body):
                return Bang(m, go(body))
            case Forall(v, body) | Exists(v, body):
                return type(g)(v, go(body))
            case BForall(v, bound, body):
                return BForall(v, bound, go(body))
        return g

    return go(f)


# ---------------------------------------------------------------- typing


def typecheck(f: Formula, signature: Mapping[str, Sequence[SimpleType]] | None = None) -> None:
    """Raise :class:`FormulaTypeError` or :class:`MixedLogicError` if ``f`` is ill-formed.

    ``signature`` maps predicate names to argument types; when given, every
    atom must use a declared predicate at its declared types.
    """
    logic_of(f)
    free: dict[str, SimpleType] = {}

    def term(t: Term, env: Mapping[str, SimpleType], path: list[str]) -> SimpleType:
        match t:
            case Var(name, ty):
                expected = env.get(name, free.get(name))
                if expected is None:
                    free[name] = ty
                elif expected != ty:
                    raise FormulaTypeError(
                        f"variable {name} used at {ty} but declared {expected}", path)
                return ty
            case BoolConst():
                return B
            case App(fun, arg):
                ft = term(fun, env, path + ["fun"])
                if not isinstance(ft, Arrow):
                    raise FormulaTypeError(f"not a function type: {fun} : {ft}", path)
                at = term(arg, env, path + ["arg"])
                if ft.dom != at:
                    raise FormulaTypeError(
                        f"argument {arg} : {at} does not match {fun} : {ft}", path)
                return ft.cod
        raise FormulaTypeError(f"not a term: {t!r}", path)

    def go(g: Formula, env: dict[str, SimpleType], path: list[str]):
        match g:
            case Atom(p, args):
                tys = [term(a, env, path + [f"{p}.arg{i}"]) for i, a in enumerate(args)]
                if signature is not None:
                    if p not in signature:
                        raise FormulaTypeError(f"undeclared predicate {p}", path)
                    if list(signature[p]) != tys:
                        raise FormulaTypeError(
                            f"predicate {p} expects ({', '.join(map(str, signature[p]))}), "
                            f"got ({', '.join(map(str, tys))})", path)
            case EqBool(lhs, _):
                if term(lhs, env, path + ["lhs"]) != B:
                    raise FormulaTypeError(f"{lhs} is not boolean", path)
            case Mem(e, s):
                et = term(e, env, path + ["elem"])
                st = term(s, env, path + ["set"])
                if st != FinSet(et):
                    raise FormulaTypeError(f"{s} : {st} is not a set of {et}", path)
            case _Binary(l, r):
                name = type(g).__name__
                go(l, env, path + [f"{name}.left"])
                go(r, env, path + [f"{name}.right"])
            case Bang(_, body):
                go(body, env, path + ["Bang.body"])
            case Forall(v, body) | Exists(v, body):
                go(body, {**env, v.name: v.type}, path + [f"{type(g).__name__}.body"])
            case BForall(v, bound, body):
                bt = term(bound, env, path + ["BForall.bound"])
                ok = bt == FinSet(v.type) or (isinstance(bt, Arrow) and bt.cod == v.type)
                if not ok:
                    raise FormulaTypeError(f"{bound} : {bt} cannot bound {v.name} : {v.type}", path)
                go(body, {**env, v.name: v.type}, path + ["BForall.body"])
            case Cond(sel, a, b):
                if term(sel, env, path + ["Cond.sel"]) != B:
                    raise FormulaTypeError(f"selector {sel} is not boolean", path)
                go(a, env, path + ["Cond.then"])
                go(b, env, path + ["Cond.else"])
            case _:
                raise FormulaTypeError(f"not a formula: {g!r}", path)

    go(f, {}, [])
