"""The parametrised functional interpretation and its instances.

An interpretation maps a formula ``A`` to a witness tuple ``x``, a challenge
tuple ``y`` and a matrix ``|A|_x^y``.  For intuitionistic logic the only
parametrised clause is implication; for affine logic it is the bang.  The
parameter is a :class:`BoundingSpec`, the constructor ``{y}_a A`` that turns
a matrix with free challenges ``y`` into one bounded by the tuple ``a``:

========== ======================== ================================
modality   bound types for ``y``    ``{y}_a A``
========== ======================== ================================
``k``      none                     ``forall y. A``
``g``      ``type(y)``              ``A[a/y]``
``d``      ``set(type(y))``         ``forall y in a. A``
``stein``  ``pure(M) -> type(y)``   ``forall y<M. forall y>=M in a. A``
``kt/dt``  as ``k``/``d``           same, plus the truth conjunct
========== ======================== ================================

Results are canonically named: witnesses ``w0, w1, ...``, challenges
``c0, c1, ...`` and bound variables ``v0, v1, ...`` (names clashing with a
free variable of the source are skipped).  Two interpretations are therefore
syntactically equal exactly when they agree up to renaming.

Each realizability variant has its own direct clauses, written
independently of the parametrised interpreters, so the factorisation checks in :mod:`funint.checker` compare
two genuinely different computations.  The clauses used for realizability
with truth (read off from the circ-translation and the ``kt`` bang) are::

    mrt(P)              = P & P
    mrt(A & B)          = mrt(A) & mrt(B)
    mrt(A | B)_{x,v,b}  = b ? mrt(A)_x : mrt(B)_v
    mrt(A -> B)_f       = (forall x. mrt(A)_x -> mrt(B)_{f x}) & (A -> B)
    mrt(exists z A)_{x,a} = mrt(A[a/z])_x
    mrt(forall z A)_f   = (forall z. mrt(A)_{f z}) & forall z A

The duplicated atom is what the ``kt`` bang produces at ``!P``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence

from .core import (
    ALI, B, D, G, IL, K, And, App, Arrow, Atom, Bang, BForall, Cond,
    EqBool, Exists, FinSet, Forall, Formula, Implies, Lolli, Mem, MixedLogicError,
    Modality, Or, Plus, SimpleType, Tensor, Term, Var, all_names, alpha_normalize,
    apply, arrow, free_vars, logic_of, pure_type, substitute_all, type_level,
)
from .translations import CIRC, translate

__all__ = [
    "BoundingSpec", "kreisel", "dialectica", "diller_nahm", "stein", "spec_for",
    "Registry", "STANDARD", "uniform", "UnregisteredModality", "InterpretedFormula",
    "interpret_il", "interpret_al", "interpret_mr_unary", "interpret_mrt",
    "interpret_qreal", "witness_types",
]


# ---------------------------------------------------------------- bounding specs


def _forall_all(ys: Sequence[Var], body: Formula) -> Formula:
    for y in reversed(ys):
        body = Forall(y, body)
    return body


def _bforall_all(ys: Sequence[Var], bounds: Sequence[Term], body: Formula) -> Formula:
    for y, a in reversed(list(zip(ys, bounds))):
        body = BForall(y, a, body)
    return body


@dataclass(frozen=True)
class BoundingSpec:
    """One instance of the constructor ``{y}_a A``.

    ``bound_types`` maps the challenge types ``type(y)`` to the types of the
    bounding tuple ``a``; ``build(y, a, A)`` produces the bounded formula.
    ``truth`` appends the truth conjunct at bangs (and, intuitionistically,
    wherever the full star translation would put a bang).
    """

    modality: Modality
    bound_types: Callable[[Sequence[SimpleType]], list[SimpleType]]
    build: Callable[[Sequence[Var], Sequence[Term], Formula], Formula]
    truth: bool = False

    def __repr__(self) -> str:
        return f"BoundingSpec({self.modality}{', truth' if self.truth else ''})"


def kreisel(modality: Modality = K) -> BoundingSpec:
    return BoundingSpec(modality, lambda tys: [], lambda ys, bounds, body: _forall_all(ys, body))


def dialectica(modality: Modality = G) -> BoundingSpec:
    return BoundingSpec(
        modality,
        lambda tys: list(tys),
        lambda ys, bounds, body: substitute_all(body, {y.name: a for y, a in zip(ys, bounds)}),
    )


def diller_nahm(modality: Modality = D) -> BoundingSpec:
    return BoundingSpec(modality, lambda tys: [FinSet(t) for t in tys], _bforall_all)


def stein(level: int | float) -> BoundingSpec:
    """The level-indexed interpretation with cut-off ``level`` (a natural number or ``INF``).

    Challenges of type level below the cut-off are quantified outright, the
    rest range over enumerations indexed by the pure type of that level.
    """
    modality = Modality.stein(level)

    def high(t: SimpleType) -> bool:
        return type_level(t) >= level

    def bound_types(tys):
        return [Arrow(pure_type(level), t) for t in tys if high(t)]

    def build(ys, bounds, body):
        low = [y for y in ys if not high(y.type)]
        top = [y for y in ys if high(y.type)]
        return _forall_all(low, _bforall_all(top, bounds, body))

    return BoundingSpec(modality, bound_types, build)


def spec_for(m: Modality) -> BoundingSpec:
    """The bounding spec the hybrid interpretation assigns to modality ``m``."""
    match m.kind:
        case "k":
            return kreisel(m)
        case "g":
            return dialectica(m)
        case "d":
            return diller_nahm(m)
        case "kt":
            return dataclasses.replace(kreisel(m), truth=True)
        case "dt":
            return dataclasses.replace(diller_nahm(m), truth=True)
        case "stein":
            return stein(m.level)
    raise ValueError(f"unknown modality {m}")


class UnregisteredModality(KeyError):
    pass


class Registry(Mapping):
    """Modality -> BoundingSpec, with an optional fallback for unlisted labels."""

    def __init__(self, specs: Mapping[Modality, BoundingSpec] | None = None,
                 fallback: Callable[[Modality], BoundingSpec] | None = None):
        self._specs = dict(specs or {})
        self._fallback = fallback

    def __getitem__(self, m: Modality) -> BoundingSpec:
        if m in self._specs:
            return self._specs[m]
        if self._fallback is not None:
            return self._fallback(m)
        raise UnregisteredModality(f"no bounding spec registered for !{m}")

    def __contains__(self, m) -> bool:
        return m in self._specs or self._fallback is not None

    def __iter__(self) -> Iterator[Modality]:
        return iter(self._specs)

    def __len__(self) -> int:
        return len(self._specs)


STANDARD = Registry(fallback=spec_for)


def uniform(spec: BoundingSpec) -> Registry:
    """Interpret every bang, whatever its label, with ``spec``."""
    return Registry(fallback=lambda m: spec)


# ---------------------------------------------------------------- results


@dataclass(frozen=True)
class InterpretedFormula:
    witnesses: tuple[Var, ...]
    challenges: tuple[Var, ...]
    matrix: Formula

    @property
    def witness_types(self) -> list[SimpleType]:
        return [v.type for v in self.witnesses]

    @property
    def challenge_types(self) -> list[SimpleType]:
        return [v.type for v in self.challenges]


class _Fresh:
    def __init__(self, avoid: set[str]):
        self.avoid = avoid
        self.n = 0

    def __call__(self, ty: SimpleType) -> Var:
        while True:
            name = f"_{self.n}"
            self.n += 1
            if name not in self.avoid:
                return Var(name, ty)

    def many(self, tys: Sequence[SimpleType]) -> list[Var]:
        return [self(t) for t in tys]


def _canonical_names(prefix: str, n: int, taken: set[str]) -> list[str]:
    out, i = [], 0
    while len(out) < n:
        name = f"{prefix}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def _finish(xs, ys, matrix: Formula, source: Formula) -> InterpretedFormula:
    taken = {v.name for v in free_vars(source)}
    wit = [Var(n, x.type) for n, x in zip(_canonical_names("w", len(xs), taken), xs)]
    ch = [Var(n, y.type) for n, y in zip(_canonical_names("c", len(ys), taken), ys)]
    sub = {old.name: new for old, new in zip(list(xs) + list(ys), wit + ch)}
    return InterpretedFormula(tuple(wit), tuple(ch), alpha_normalize(substitute_all(matrix, sub)))


def _types(vs: Sequence[Var]) -> list[SimpleType]:
    return [v.type for v in vs]


def _check_source(f: Formula, expect: str) -> None:
    logic = logic_of(f)
    if logic is not None and logic != expect:
        raise MixedLogicError(f"expected a formula of {expect}, got {logic}")
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Cond, BForall)):
            raise ValueError(f"{type(g).__name__} only occurs in interpreted matrices; "
                             "expand it before interpreting")
        match g:
            case And(l, r) | Or(l, r) | Implies(l, r) | Tensor(l, r) | Plus(l, r) | Lolli(l, r):
                stack += (l, r)
            case Bang(_, body) | Forall(_, body) | Exists(_, body):
                stack.append(body)


def _witness_funs(fresh: _Fresh, args: Sequence[Var], targets: Sequence[Var]) -> list[Var]:
    return [fresh(arrow(_types(args), t.type)) for t in targets]


# ---------------------------------------------------------------- intuitionistic


def interpret_il(f: Formula, spec: BoundingSpec) -> InterpretedFormula:
    """Parametrised interpretation of an intuitionistic formula.

    With a truth spec every subformula that the full star translation would
    bang carries its truth conjunct, and disjunction and the existential use
    the bounded clauses.  The result is what ``forget`` reads back from the
    affine interpretation of the star translation.
    """
    _check_source(f, IL)
    xs, ys, m = _il(f, spec, _Fresh(all_names(f)))
    return _finish(xs, ys, m, f)


def _il(f: Formula, spec: BoundingSpec, fresh: _Fresh):
    match f:
        case Atom() | EqBool() | Mem():
            return [], [], f
        case And(l, r):
            xa, ya, ma = _il(l, spec, fresh)
            xb, yb, mb = _il(r, spec, fresh)
            return xa + xb, ya + yb, And(ma, mb)
        case Or(l, r):
            xa, ya, ma = _il(l, spec, fresh)
            xb, yb, mb = _il(r, spec, fresh)
            b = fresh(B)
            if spec.truth:
                ca = fresh.many(spec.bound_types(_types(ya)))
                cb = fresh.many(spec.bound_types(_types(yb)))
                left = And(spec.build(ya, ca, ma), l)
                right = And(spec.build(yb, cb, mb), r)
                return xa + xb + [b], ca + cb, Cond(b, left, right)
            return xa + xb + [b], ya + yb, Cond(b, ma, mb)
        case Implies(l, r):
            xa, ya, ma = _il(l, spec, fresh)
            xb, yb, mb = _il(r, spec, fresh)
            fs = _witness_funs(fresh, xa, xb)
            gs = [fresh(arrow(_types(xa + yb), t)) for t in spec.bound_types(_types(ya))]
            premise = spec.build(ya, [apply(g, xa + yb) for g in gs], ma)
            if spec.truth:
                premise = And(premise, l)
            concl = substitute_all(mb, {v.name: apply(fn, xa) for v, fn in zip(xb, fs)})
            return fs + gs, xa + yb, Implies(premise, concl)
        case Exists(z, body):
            xa, ya, ma = _il(body, spec, fresh)
            a = fresh(z.type)
            ma = substitute_all(ma, {z.name: a})
            if spec.truth:
                cs = fresh.many(spec.bound_types(_types(ya)))
                return xa + [a], cs, And(spec.build(ya, cs, ma), substitute_all(body, {z.name: a}))
            return xa + [a], ya, ma
        case Forall(z, body):
            xa, ya, ma = _il(body, spec, fresh)
            a = fresh(z.type)
            fs = [fresh(Arrow(z.type, x.type)) for x in xa]
            sub = {z.name: a, **{x.name: App(fn, a) for x, fn in zip(xa, fs)}}
            return fs, ya + [a], substitute_all(ma, sub)
    raise TypeError(f"cannot interpret {f!r}")


# ---------------------------------------------------------------- affine


def interpret_al(f: Formula, registry: Mapping[Modality, BoundingSpec] = STANDARD
                 ) -> InterpretedFormula:
    """Interpretation of an affine formula; each bang is read through ``registry``."""
    _check_source(f, ALI)
    xs, ys, m = _al(f, registry, _Fresh(all_names(f)))
    return _finish(xs, ys, m, f)


def _al(f: Formula, registry, fresh: _Fresh):
    match f:
        case Atom() | EqBool() | Mem():
            return [], [], f
        case Tensor(l, r):
            xa, ya, ma = _al(l, registry, fresh)
            xb, yb, mb = _al(r, registry, fresh)
            return xa + xb, ya + yb, Tensor(ma, mb)
        case Plus(l, r):
            xa, ya, ma = _al(l, registry, fresh)
            xb, yb, mb = _al(r, registry, fresh)
            b = fresh(B)
            return xa + xb + [b], ya + yb, Cond(b, ma, mb)
        case Lolli(l, r):
            xa, ya, ma = _al(l, registry, fresh)
            xb, yb, mb = _al(r, registry, fresh)
            fs = _witness_funs(fresh, xa, xb)
            gs = [fresh(arrow(_types(xa + yb), y.type)) for y in ya]
            premise = substitute_all(ma, {y.name: apply(g, xa + yb) for y, g in zip(ya, gs)})
            concl = substitute_all(mb, {v.name: apply(fn, xa) for v, fn in zip(xb, fs)})
            return fs + gs, xa + yb, Lolli(premise, concl)
        case Exists(z, body):
            xa, ya, ma = _al(body, registry, fresh)
            a = fresh(z.type)
            return xa + [a], ya, substitute_all(ma, {z.name: a})
        case Forall(z, body):
            xa, ya, ma = _al(body, registry, fresh)
            a = fresh(z.type)
            fs = [fresh(Arrow(z.type, x.type)) for x in xa]
            sub = {z.name: a, **{x.name: App(fn, a) for x, fn in zip(xa, fs)}}
            return fs, ya + [a], substitute_all(ma, sub)
        case Bang(m, body):
            spec = registry[m]
            xa, ya, ma = _al(body, registry, fresh)
            bounds = fresh.many(spec.bound_types(_types(ya)))
            out = Bang(m, spec.build(ya, bounds, ma))
            if spec.truth:
                out = Tensor(out, Bang(m, body))
            return xa, bounds, out
    raise TypeError(f"cannot interpret {f!r}")


# ---------------------------------------------------------------- realizability


@dataclass(frozen=True)
class _Target:
    """Connectives in which a realizability formula is written.

    With ``circ`` unset the formula is intuitionistic.  With ``circ = m`` the
    clauses emit the circ-image directly, labelling bangs ``m``.  The
    implication clause ``forall x. (C -> D)`` is one unit whose image is
    ``!forall x. (C -o D)``: the bang of the translated implication and the
    bang of its realizer quantifier are the same bang.
    """

    circ: Modality | None = None

    def atom(self, f: Formula) -> Formula:
        return f if self.circ is None else Bang(self.circ, f)

    def conj(self, a: Formula, b: Formula) -> Formula:
        return And(a, b) if self.circ is None else Tensor(a, b)

    def block(self, xs: Sequence[Var], c: Formula, d: Formula) -> Formula:
        if self.circ is None:
            return _forall_all(xs, Implies(c, d))
        return Bang(self.circ, _forall_all(xs, Lolli(c, d)))

    def forall(self, v: Var, body: Formula) -> Formula:
        return Forall(v, body) if self.circ is None else Bang(self.circ, Forall(v, body))

    def truth(self, src: Formula) -> Formula:
        return src if self.circ is None else translate(src, CIRC, self.circ)


def interpret_mr_unary(f: Formula, circ: Modality | None = None) -> InterpretedFormula:
    """Unary modified realizability ``x mr A``; ``challenges`` is always empty.

    With ``circ`` given, return the circ-translation of the realizability
    formula (bangs labelled ``circ``) instead of the formula itself.
    """
    _check_source(f, IL)
    xs, m = _mr(f, _Target(circ), False, _Fresh(all_names(f)))
    return _finish(xs, [], m, f)


def interpret_mrt(f: Formula, circ: Modality | None = None) -> InterpretedFormula:
    """Modified realizability with truth; clauses in the module docstring."""
    _check_source(f, IL)
    xs, m = _mr(f, _Target(circ), True, _Fresh(all_names(f)))
    return _finish(xs, [], m, f)


def _mr(f: Formula, tgt: _Target, truth: bool, fresh: _Fresh):
    match f:
        case Atom() | EqBool() | Mem():
            m = tgt.atom(f)
            return [], tgt.conj(m, tgt.truth(f)) if truth else m
        case And(l, r):
            xa, ma = _mr(l, tgt, truth, fresh)
            xb, mb = _mr(r, tgt, truth, fresh)
            return xa + xb, tgt.conj(ma, mb)
        case Or(l, r):
            xa, ma = _mr(l, tgt, truth, fresh)
            xb, mb = _mr(r, tgt, truth, fresh)
            b = fresh(B)
            return xa + xb + [b], Cond(b, ma, mb)
        case Implies(l, r):
            xa, ma = _mr(l, tgt, truth, fresh)
            xb, mb = _mr(r, tgt, truth, fresh)
            fs = _witness_funs(fresh, xa, xb)
            concl = substitute_all(mb, {v.name: apply(fn, xa) for v, fn in zip(xb, fs)})
            m = tgt.block(xa, ma, concl)
            return fs, tgt.conj(m, tgt.truth(f)) if truth else m
        case Exists(z, body):
            xa, ma = _mr(body, tgt, truth, fresh)
            a = fresh(z.type)
            return xa + [a], substitute_all(ma, {z.name: a})
        case Forall(z, body):
            xa, ma = _mr(body, tgt, truth, fresh)
            a = fresh(z.type)
            fs = [fresh(Arrow(z.type, x.type)) for x in xa]
            sub = {z.name: a, **{x.name: App(fn, a) for x, fn in zip(xa, fs)}}
            m = tgt.forall(a, substitute_all(ma, sub))
            return fs, tgt.conj(m, tgt.truth(f)) if truth else m
    raise TypeError(f"cannot interpret {f!r}")


def interpret_qreal(f: Formula) -> InterpretedFormula:
    """Relational q-realizability.

    Disjunction and the existential have empty challenges and carry a truth
    conjunct; the premise of an implication carries one as well,
    ``(forall y. qr(A)_x^y & A) -> qr(B)_{f x}^w``.  The other clauses are
    those of relational realizability.
    """
    _check_source(f, IL)
    xs, ys, m = _qr(f, _Fresh(all_names(f)))
    return _finish(xs, ys, m, f)


def _qr(f: Formula, fresh: _Fresh):
    match f:
        case Atom() | EqBool() | Mem():
            return [], [], f
        case And(l, r):
            xa, ya, ma = _qr(l, fresh)
            xb, yb, mb = _qr(r, fresh)
            return xa + xb, ya + yb, And(ma, mb)
        case Or(l, r):
            xa, ya, ma = _qr(l, fresh)
            xb, yb, mb = _qr(r, fresh)
            b = fresh(B)
            return xa + xb + [b], [], Cond(b, And(_forall_all(ya, ma), l),
                                           And(_forall_all(yb, mb), r))
        case Implies(l, r):
            xa, ya, ma = _qr(l, fresh)
            xb, yb, mb = _qr(r, fresh)
            fs = _witness_funs(fresh, xa, xb)
            concl = substitute_all(mb, {v.name: apply(fn, xa) for v, fn in zip(xb, fs)})
            return fs, xa + yb, Implies(And(_forall_all(ya, ma), l), concl)
        case Exists(z, body):
            xa, ya, ma = _qr(body, fresh)
            a = fresh(z.type)
            m = And(_forall_all(ya, ma), body)
            return xa + [a], [], substitute_all(m, {z.name: a})
        case Forall(z, body):
            xa, ya, ma = _qr(body, fresh)
            a = fresh(z.type)
            fs = [fresh(Arrow(z.type, x.type)) for x in xa]
            sub = {z.name: a, **{x.name: App(fn, a) for x, fn in zip(xa, fs)}}
            return fs, ya + [a], substitute_all(ma, sub)
    raise TypeError(f"cannot interpret {f!r}")


# ---------------------------------------------------------------- types only


def witness_types(f: Formula, spec: BoundingSpec | Mapping[Modality, BoundingSpec] = STANDARD
                  ) -> tuple[list[SimpleType], list[SimpleType]]:
    """Types of the witness and challenge tuples, without building the matrix.

    Intuitionistic formulas need a single spec; affine formulas take a
    registry (a single spec is applied to every bang).
    """
    logic = logic_of(f)
    if logic == ALI or (logic is None and not isinstance(spec, BoundingSpec)):
        registry = uniform(spec) if isinstance(spec, BoundingSpec) else spec
        _check_source(f, ALI)
        return _tys(f, None, registry)
    if not isinstance(spec, BoundingSpec):
        raise TypeError("an intuitionistic formula needs a single BoundingSpec")
    _check_source(f, IL)
    return _tys(f, spec, None)


def _tys(f: Formula, spec: BoundingSpec | None, registry):
    match f:
        case Atom() | EqBool() | Mem():
            return [], []
        case And(l, r) | Tensor(l, r):
            xa, ya = _tys(l, spec, registry)
            xb, yb = _tys(r, spec, registry)
            return xa + xb, ya + yb
        case Or(l, r) | Plus(l, r):
            xa, ya = _tys(l, spec, registry)
            xb, yb = _tys(r, spec, registry)
            if spec is not None and spec.truth:
                return xa + xb + [B], spec.bound_types(ya) + spec.bound_types(yb)
            return xa + xb + [B], ya + yb
        case Implies(l, r) | Lolli(l, r):
            xa, ya = _tys(l, spec, registry)
            xb, yb = _tys(r, spec, registry)
            bounds = spec.bound_types(ya) if spec is not None else ya
            return [arrow(xa, t) for t in xb] + [arrow(xa + yb, t) for t in bounds], xa + yb
        case Exists(z, body):
            xa, ya = _tys(body, spec, registry)
            if spec is not None and spec.truth:
                return xa + [z.type], spec.bound_types(ya)
            return xa + [z.type], ya
        case Forall(z, body):
            xa, ya = _tys(body, spec, registry)
            return [Arrow(z.type, t) for t in xa], ya + [z.type]
        case Bang(m, body):
            xa, ya = _tys(body, spec, registry)
            return xa, registry[m].bound_types(ya)
    raise TypeError(f"cannot interpret {f!r}")
