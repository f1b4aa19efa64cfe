"""The standard embeddings of intuitionistic logic into affine logic, and back.

``STAR`` and ``CIRC`` are the two standard translations; ``STAR_SIMPLE`` is
the variant without bangs at disjunctions and existentials, which is adequate
once affine logic is extended by the two principles built by
:func:`extra_principles`.  :func:`forget` erases the linear structure.

All translations act homomorphically on the shared constructors, so they
apply equally to source formulas and to interpreted matrices: a conditional
``b ? A : B`` is translated branch-wise and a bounded quantifier like an
ordinary one.
"""

from __future__ import annotations

import enum

from .core import (
    ALI, IL, And, Atom, Bang, BForall, Cond, EqBool, Exists, Forall, Formula, G,
    Implies, Lolli, Mem, MixedLogicError, Modality, N, Or, Plus, Tensor, Var,
    logic_of,
)

__all__ = ["TranslationMode", "STAR", "STAR_SIMPLE", "CIRC", "translate", "forget",
           "extra_principles"]


class TranslationMode(enum.Enum):
    STAR = "star"
    STAR_SIMPLE = "star-simple"
    CIRC = "circ"


STAR = TranslationMode.STAR
STAR_SIMPLE = TranslationMode.STAR_SIMPLE
CIRC = TranslationMode.CIRC


def translate(f: Formula, mode: TranslationMode, bang: Modality = G) -> Formula:
    """Translate an intuitionistic formula into affine logic.

    Every bang introduced by the translation is labelled ``bang``.
    """
    if logic_of(f) == ALI:
        raise MixedLogicError("translate expects an intuitionistic formula")
    if mode is CIRC:
        return _circ(f, bang)
    return _star(f, bang, full=mode is STAR)


def _star(f: Formula, m: Modality, full: bool) -> Formula:
    match f:
        case Atom() | EqBool() | Mem():
            return f
        case And(l, r):
            return Tensor(_star(l, m, full), _star(r, m, full))
        case Or(l, r):
            a, b = _star(l, m, full), _star(r, m, full)
            return Plus(Bang(m, a), Bang(m, b)) if full else Plus(a, b)
        case Implies(l, r):
            return Lolli(Bang(m, _star(l, m, full)), _star(r, m, full))
        case Forall(v, body):
            return Forall(v, _star(body, m, full))
        case Exists(v, body):
            body = _star(body, m, full)
            return Exists(v, Bang(m, body) if full else body)
        case BForall(v, bound, body):
            return BForall(v, bound, _star(body, m, full))
        case Cond(sel, a, b):
            return Cond(sel, _star(a, m, full), _star(b, m, full))
    raise TypeError(f"cannot star-translate {f!r}")


def _circ(f: Formula, m: Modality) -> Formula:
    match f:
        case Atom() | EqBool() | Mem():
            return Bang(m, f)
        case And(l, r):
            return Tensor(_circ(l, m), _circ(r, m))
        case Or(l, r):
            return Plus(_circ(l, m), _circ(r, m))
        case Implies(l, r):
            return Bang(m, Lolli(_circ(l, m), _circ(r, m)))
        case Forall(v, body):
            return Bang(m, Forall(v, _circ(body, m)))
        case Exists(v, body):
            return Exists(v, _circ(body, m))
        case BForall(v, bound, body):
            return Bang(m, BForall(v, bound, _circ(body, m)))
        case Cond(sel, a, b):
            return Cond(sel, _circ(a, m), _circ(b, m))
    raise TypeError(f"cannot circ-translate {f!r}")


def forget(f: Formula) -> Formula:
    """Erase bangs and read ``*``, ``+``, ``-o`` as ``&``, ``|``, ``->``."""
    if logic_of(f) == IL:
        raise MixedLogicError("forget expects an affine formula")
    return _forget(f)


def _forget(f: Formula) -> Formula:
    match f:
        case Tensor(l, r):
            return And(_forget(l), _forget(r))
        case Plus(l, r):
            return Or(_forget(l), _forget(r))
        case Lolli(l, r):
            return Implies(_forget(l), _forget(r))
        case Bang(_, body):
            return _forget(body)
        case Forall(v, body) | Exists(v, body):
            return type(f)(v, _forget(body))
        case BForall(v, bound, body):
            return BForall(v, bound, _forget(body))
        case Cond(sel, a, b):
            return Cond(sel, _forget(a), _forget(b))
    return f


def extra_principles(a: Formula, b: Formula, bang: Modality,
                     var: Var = Var("x", N)) -> tuple[Formula, Formula]:
    """``!a + !b -o !(a + b)`` and ``(exists var. !a) -o !(exists var. a)``."""
    for g in (a, b):
        if logic_of(g) == IL:
            raise MixedLogicError("extra principles are stated in affine logic")
    disj = Lolli(Plus(Bang(bang, a), Bang(bang, b)), Bang(bang, Plus(a, b)))
    ex = Lolli(Exists(var, Bang(bang, a)), Bang(bang, Exists(var, a)))
    return disj, ex
