"""Exhaustive checks over enumerated formulas.

The five factorisation diagrams state that interpreting an intuitionistic
formula directly, then translating the result, gives literally the same
formula as translating first and interpreting in affine logic:

======== ================================= ==================================
diagram  direct route                      affine route
======== ================================= ==================================
MR       circ(x mr A)                      |circ A| with ``!k``
RREAL    star'(|A| with k-spec)            |star' A| with ``!k``
DIAL     star'(|A| with g-spec)            |star' A| with ``!g``
MRT      circ(x mrt A)                     |circ A| with ``!kt``
QREAL    q-realizability of A              forget(|star A| with ``!kt``)
======== ================================= ==================================

``star'`` is the star translation without bangs at ``|`` and ``exists``.
Results are compared as (witness types, challenge types, matrix) after
canonical renaming.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .core import (
    ALI, D, DT, G, IL, INF, K, KT, And, Arrow, Atom, Bang, Exists, Forall, Formula,
    Implies, Lolli, Modality, N, Or, Plus, SimpleType, Tensor, Var, alpha_normalize,
    free_vars, logic_of, relabel, typecheck,
)
from .interpreter import (
    STANDARD, InterpretedFormula, diller_nahm, dialectica, interpret_al, interpret_il,
    interpret_mr_unary, interpret_mrt, interpret_qreal, kreisel, spec_for, stein, uniform,
    witness_types,
)
from .translations import CIRC, STAR, STAR_SIMPLE, forget, translate

__all__ = [
    "DEFAULT_SIGNATURE", "parse_signature", "enumerate_formulas", "DiagramId",
    "Comparison", "Failure", "CheckReport", "check_commutation", "check_pure_coincidence",
    "bang_leq", "BANG_ORDER_EDGES", "check_bang_order", "check_stein_boundaries",
    "check_well_formed", "check_diagram", "run_check", "PURE_SPECS",
]

Signature = Mapping[str, Sequence[SimpleType]]

DEFAULT_SIGNATURE: dict[str, tuple[SimpleType, ...]] = {"P": (), "Q": (), "R": (N,)}
HYBRID_MODALITIES = (K, D, G, KT, DT)


def parse_signature(text: str) -> dict[str, tuple[SimpleType, ...]]:
    """Read ``name : N^k`` lines (``name : N`` means ``N^1``); ``#`` starts a comment."""
    sig: dict[str, tuple[SimpleType, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, ty = (s.strip() for s in line.partition(":"))
        if not sep or not name.isidentifier():
            raise ValueError(f"line {lineno}: expected 'name : N^k', got {raw!r}")
        if ty == "N":
            arity = 1
        elif ty.startswith("N^") and ty[2:].isdigit():
            arity = int(ty[2:])
        else:
            raise ValueError(f"line {lineno}: expected 'N^k', got {ty!r}")
        sig[name] = (N,) * arity
    return sig


# ---------------------------------------------------------------- enumeration

_IL_BINARY = (And, Or, Implies)
_AL_BINARY = (Tensor, Plus, Lolli)


def enumerate_formulas(signature: Signature | None = None, depth: int = 3, logic: str = IL,
                       modalities: Sequence[Modality] = HYBRID_MODALITIES,
                       exclude: Iterable[type] = ()) -> Iterator[Formula]:
    """Every closed formula of connective depth at most ``depth``, shallowest first.

    The binder at nesting level ``k`` is always named ``xk``, so distinct
    outputs are never alpha-equivalent.  Constructors listed in ``exclude``
    (``Implies``, ``Bang``, ...) are not used.
    """
    sig = signature if signature is not None else DEFAULT_SIGNATURE
    sig_key = tuple(sorted((p, tuple(ts)) for p, ts in sig.items()))
    excl = frozenset(exclude)
    binary = tuple(c for c in (_IL_BINARY if logic == IL else _AL_BINARY) if c not in excl)
    quants = tuple(c for c in (Forall, Exists) if c not in excl)
    mods = () if logic == IL or Bang in excl else tuple(modalities)
    gen = _Enumerator(sig_key, binary, quants, mods)
    for d in range(1, depth + 1):
        yield from gen.exact(d, 0)


class _Enumerator:
    def __init__(self, sig, binary, quants, mods):
        self.sig, self.binary, self.quants, self.mods = sig, binary, quants, mods
        self.exact = lru_cache(maxsize=None)(self._exact)
        self.upto = lru_cache(maxsize=None)(self._upto)

    def _atoms(self, k: int) -> list[Formula]:
        scope = [Var(f"x{i}", N) for i in range(k)]
        out: list[Formula] = []
        for p, tys in self.sig:
            if any(t != N for t in tys):
                raise ValueError(f"predicate {p}: enumeration supports arguments of type N only")
            out.extend(Atom(p, args) for args in itertools.product(scope, repeat=len(tys)))
        return out

    def _upto(self, d: int, k: int) -> tuple[Formula, ...]:
        return tuple(itertools.chain.from_iterable(self.exact(e, k) for e in range(1, d + 1)))

    def _exact(self, d: int, k: int) -> tuple[Formula, ...]:
        if d == 1:
            return tuple(self._atoms(k))
        out: list[Formula] = []
        below = self.upto(d - 1, k)
        top = set(self.exact(d - 1, k))
        for op in self.binary:
            for l in below:
                for r in below:
                    if l in top or r in top:
                        out.append(op(l, r))
        v = Var(f"x{k}", N)
        for q in self.quants:
            out.extend(q(v, body) for body in self.exact(d - 1, k + 1))
        for m in self.mods:
            out.extend(Bang(m, body) for body in self.exact(d - 1, k))
        return tuple(out)


# ---------------------------------------------------------------- reports


class DiagramId(enum.Enum):
    MR = "mr"
    RREAL = "rreal"
    DIAL = "dial"
    MRT = "mrt"
    QREAL = "qreal"


@dataclass(frozen=True)
class Comparison:
    passed: bool
    left: InterpretedFormula | None
    right: InterpretedFormula | None
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class Failure:
    formula: Formula
    left: InterpretedFormula | None
    right: InterpretedFormula | None
    note: str = ""


@dataclass(frozen=True)
class CheckReport:
    diagram: str
    total: int = 0
    passed: int = 0
    first_failure: Failure | None = None

    def record(self, f: Formula, c: Comparison) -> "CheckReport":
        failure = self.first_failure
        if not c.passed and failure is None:
            failure = Failure(f, c.left, c.right, c.note)
        return CheckReport(self.diagram, self.total + 1, self.passed + c.passed, failure)

    def merge(self, later: "CheckReport") -> "CheckReport":
        """Combine with the report of a later slice of the same stream."""
        return CheckReport(self.diagram, self.total + later.total, self.passed + later.passed,
                           self.first_failure or later.first_failure)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def summary(self) -> str:
        line = f"{self.diagram}: {self.passed}/{self.total} passed"
        if self.first_failure is not None:
            from .syntax import print_formula
            line += f"; first failure: {print_formula(self.first_failure.formula)}"
            if self.first_failure.note:
                line += f" ({self.first_failure.note})"
        return line


# ---------------------------------------------------------------- diagrams


def _retranslate(r: InterpretedFormula, fn) -> InterpretedFormula:
    return InterpretedFormula(r.witnesses, r.challenges, alpha_normalize(fn(r.matrix)))


def _routes(d: DiagramId, f: Formula) -> tuple[InterpretedFormula, InterpretedFormula]:
    match d:
        case DiagramId.MR:
            return (interpret_mr_unary(f, circ=K),
                    interpret_al(translate(f, CIRC, K), STANDARD))
        case DiagramId.RREAL:
            return (_retranslate(interpret_il(f, kreisel()), lambda m: translate(m, STAR_SIMPLE, K)),
                    interpret_al(translate(f, STAR_SIMPLE, K), STANDARD))
        case DiagramId.DIAL:
            return (_retranslate(interpret_il(f, dialectica()), lambda m: translate(m, STAR_SIMPLE, G)),
                    interpret_al(translate(f, STAR_SIMPLE, G), STANDARD))
        case DiagramId.MRT:
            return (interpret_mrt(f, circ=KT),
                    interpret_al(translate(f, CIRC, KT), STANDARD))
        case DiagramId.QREAL:
            return (interpret_qreal(f),
                    _retranslate(interpret_al(translate(f, STAR, KT), STANDARD), forget))
    raise ValueError(f"unknown diagram {d}")


def check_commutation(d: DiagramId, f: Formula) -> Comparison:
    """Run both routes of diagram ``d`` on ``f``: left is direct, right goes through affine logic."""
    if logic_of(f) == ALI:
        raise ValueError("diagrams start from an intuitionistic formula")
    left, right = _routes(d, f)
    return Comparison(left == right, left, right)


PURE_SPECS = (kreisel(), diller_nahm(), dialectica(), stein(0), stein(2), stein(INF))


def _contains(f: Formula, cls: type) -> bool:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, cls):
            return True
        for child in ("left", "right", "body"):
            if hasattr(g, child):
                stack.append(getattr(g, child))
    return False


def check_pure_coincidence(f: Formula) -> Comparison:
    """All non-truth instances agree on implication-free (resp. bang-free) formulas."""
    if logic_of(f) == ALI:
        if _contains(f, Bang):
            raise ValueError("pure coincidence needs a bang-free affine formula")
        results = [interpret_al(f, uniform(s)) for s in PURE_SPECS]
    else:
        if _contains(f, Implies):
            raise ValueError("pure coincidence needs an implication-free formula")
        results = [interpret_il(f, s) for s in PURE_SPECS]
    for spec, r in zip(PURE_SPECS[1:], results[1:]):
        if r != results[0]:
            return Comparison(False, results[0], r, f"{PURE_SPECS[0].modality} vs {spec.modality}")
    return Comparison(True, results[0], results[0])


# ---------------------------------------------------------------- bang order

BANG_ORDER_EDGES = ((KT, K), (KT, DT), (K, D), (DT, D), (D, G))
_ORDERED = (K, D, G, KT, DT)


@lru_cache(maxsize=None)
def _above() -> dict[Modality, frozenset[Modality]]:
    reach = {m: {m} for m in _ORDERED}
    changed = True
    while changed:
        changed = False
        for hi, lo in BANG_ORDER_EDGES:
            new = reach[lo] - reach[hi]
            if new:
                reach[hi] |= new
                changed = True
    return {m: frozenset(s) for m, s in reach.items()}


def bang_leq(a: Modality, b: Modality) -> bool:
    """True when ``a`` sits above (or is) ``b``: a witness for ``!a A`` is one for ``!b A``."""
    for m in (a, b):
        if m not in _ORDERED:
            raise ValueError(f"!{m} is not part of the hybrid ordering")
    return b in _above()[a]


def check_bang_order() -> CheckReport:
    """Verify the partial-order laws by exhaustion over the five modalities."""
    report = CheckReport("BANG_ORDER")
    for a in _ORDERED:
        report = report.record(Atom(f"refl_{a}"), Comparison(bang_leq(a, a), None, None,
                                                             f"reflexivity at {a}"))
    for a, b in itertools.product(_ORDERED, repeat=2):
        ok = not (a != b and bang_leq(a, b) and bang_leq(b, a))
        report = report.record(Atom(f"antisym_{a}_{b}"), Comparison(ok, None, None,
                                                                   f"antisymmetry at {a},{b}"))
    for a, b, c in itertools.product(_ORDERED, repeat=3):
        ok = not (bang_leq(a, b) and bang_leq(b, c)) or bang_leq(a, c)
        report = report.record(Atom(f"trans_{a}_{b}_{c}"), Comparison(ok, None, None,
                                                                     f"transitivity at {a},{b},{c}"))
    return report


# ---------------------------------------------------------------- stein


def _subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for child in ("left", "right", "body"):
        if hasattr(f, child):
            yield from _subformulas(getattr(f, child))


def _is_nat_indexed(t: SimpleType) -> bool:
    return isinstance(t, Arrow) and t.dom == N


def _stein_il(f: Formula) -> Comparison:
    left, right = interpret_il(f, stein(INF)), interpret_il(f, kreisel())
    if left != right:
        return Comparison(False, left, right, "stein[inf] differs from k")
    s0 = stein(0)
    for g in _subformulas(f):
        if isinstance(g, Implies):
            bounds = s0.bound_types(witness_types(g.left, s0)[1])
            if not all(_is_nat_indexed(t) for t in bounds):
                return Comparison(False, None, None, f"stein[0] bound types {bounds}")
    return Comparison(True, left, right)


def _stein_al(f: Formula) -> Comparison:
    s_inf, s0 = Modality.stein(INF), Modality.stein(0)
    direct = interpret_al(f, STANDARD)
    left = interpret_al(relabel(f, {K: s_inf}), STANDARD)
    right = InterpretedFormula(direct.witnesses, direct.challenges,
                               relabel(direct.matrix, {K: s_inf}))
    if left != right:
        return Comparison(False, left, right, "stein[inf] differs from k")
    for g in _subformulas(relabel(f, {K: s0})):
        if isinstance(g, Bang):
            bounds = witness_types(g, STANDARD)[1]
            if not all(_is_nat_indexed(t) for t in bounds):
                return Comparison(False, None, None, f"stein[0] bound types {bounds}")
    return Comparison(True, left, right)


def check_stein_boundaries(depth: int = 3, signature: Signature | None = None) -> CheckReport:
    """The level-indexed family at its ends.

    ``stein[inf]`` must agree with ``k``, and ``stein[0]`` must bound every
    challenge by an ``N``-indexed enumeration.

    Runs over the intuitionistic corpus and the affine corpus with ``!k``
    bangs, the latter relabelled to ``stein[inf]`` and ``stein[0]``.
    """
    report = CheckReport("STEIN")
    for f in enumerate_formulas(signature, depth, IL):
        report = report.record(f, _stein_il(f))
    for f in enumerate_formulas(signature, depth, ALI, modalities=(K,)):
        report = report.record(f, _stein_al(f))
    return report


# ---------------------------------------------------------------- well-formedness

_IL_SPECS = (kreisel(), diller_nahm(), dialectica(), spec_for(KT), spec_for(DT),
             stein(0), stein(1), stein(INF))


def _sound(r: InterpretedFormula, source: Formula, signature: Signature, logic: str) -> str:
    typecheck(r.matrix, signature)
    matrix_logic = logic_of(r.matrix)
    if matrix_logic not in (None, logic):
        return f"matrix is {matrix_logic}, source is {logic}"
    fv_src = {v.name for v in free_vars(source)}
    names = [v.name for v in r.witnesses + r.challenges]
    if len(set(names)) != len(names) or fv_src & set(names):
        return "witnesses and challenges are not fresh and disjoint"
    stray = {v.name for v in free_vars(r.matrix)} - set(names) - fv_src
    if stray:
        return f"matrix has stray free variables {sorted(stray)}"
    return ""


def check_well_formed(f: Formula, signature: Signature | None = None) -> Comparison:
    """Every interpretation of ``f`` typechecks and respects the free-variable discipline."""
    sig = signature if signature is not None else DEFAULT_SIGNATURE
    if logic_of(f) == ALI:
        runs = [(ALI, interpret_al(f, STANDARD))]
    else:
        runs = [(IL, interpret_il(f, s)) for s in _IL_SPECS]
        runs += [(IL, interpret_qreal(f)), (IL, interpret_mr_unary(f)), (IL, interpret_mrt(f)),
                 (ALI, interpret_mr_unary(f, circ=K)), (ALI, interpret_mrt(f, circ=KT))]
    for logic, r in runs:
        try:
            problem = _sound(r, f, sig, logic)
        except (TypeError, ValueError) as exc:
            problem = str(exc)
        if problem:
            return Comparison(False, r, None, problem)
    return Comparison(True, None, None)


# ---------------------------------------------------------------- drivers


def _check_slice(args) -> CheckReport:
    name, formulas, signature = args
    report = CheckReport(name.upper())
    for f in formulas:
        report = report.record(f, _one(name, f, signature))
    return report


def _one(name: str, f: Formula, signature) -> Comparison:
    if name == "pure":
        return check_pure_coincidence(f)
    if name == "wf":
        return check_well_formed(f, signature)
    return check_commutation(DiagramId(name), f)


def _corpus(name: str, depth: int, signature) -> Iterator[Formula]:
    if name == "pure":
        yield from enumerate_formulas(signature, depth, IL, exclude=(Implies,))
        yield from enumerate_formulas(signature, depth, ALI, exclude=(Bang,))
    elif name == "wf":
        yield from enumerate_formulas(signature, depth, IL)
        yield from enumerate_formulas(signature, depth, ALI)
    else:
        yield from enumerate_formulas(signature, depth, IL)


def run_check(name: str, depth: int = 3, signature: Signature | None = None,
              jobs: int = 1) -> CheckReport:
    """Run one named check: a diagram (``mr`` ... ``qreal``), ``pure``, ``wf``,
    ``stein`` or ``bang-order``.  ``jobs > 1`` splits the corpus across processes.
    """
    if name == "stein":
        return check_stein_boundaries(depth, signature)
    if name == "bang-order":
        return check_bang_order()
    if name not in {d.value for d in DiagramId} | {"pure", "wf"}:
        raise ValueError(f"unknown check {name!r}")
    formulas = list(_corpus(name, depth, signature))
    if jobs <= 1:
        return _check_slice((name, formulas, signature))
    size = -(-len(formulas) // jobs)
    slices = [(name, formulas[i:i + size], signature) for i in range(0, len(formulas), size)]
    with ProcessPoolExecutor(jobs) as pool:
        reports = list(pool.map(_check_slice, slices))
    out = CheckReport(name.upper())
    for r in reports:
        out = out.merge(r)
    return out


def check_diagram(d: DiagramId, depth: int = 3, signature: Signature | None = None,
                  jobs: int = 1) -> CheckReport:
    return run_check(d.value, depth, signature, jobs)
