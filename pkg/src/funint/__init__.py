"""Unified functional interpretations of intuitionistic and affine logic.

Quick tour::

    >>> from funint import parse_formula, interpret_il, dialectica, print_formula
    >>> r = interpret_il(parse_formula("forall z:N. exists w:N. P(z,w)"), dialectica())
    >>> print_formula(r.matrix)
    'P(c0, w0 c0)'
"""

from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .translations import *  # noqa: F401,F403
from .translations import __all__ as _tr_all
from .interpreter import *  # noqa: F401,F403
from .interpreter import __all__ as _in_all
from .checker import *  # noqa: F401,F403
from .checker import __all__ as _ch_all
from .syntax import *  # noqa: F401,F403
from .syntax import __all__ as _sy_all

__all__ = [*_core_all, *_tr_all, *_in_all, *_ch_all, *_sy_all]
__version__ = "0.1.0"
