"""Monoidal contexts, lenses and spliced arrows over finite monoidal theories.

Objects are tuples of atom names; morphisms live in a :class:`Theory`
(finite functions, finite stochastic maps, or free terms).  Spliced arrows,
contexts and lenses are tuples of morphisms with typed holes, and the
``fill``/``close`` functions compose them back into a single morphism.
"""

from .context import Context1, ContextWord, CtxParSplit, CtxSeqSplit, fill, fill_equal
from .duosplice import ParSplit, ParUnit, phi0, phi2, psi0, psi2
from .errors import MctxError, ParseError, SessionError, TypeMismatch
from .lens import Get, Lens, Lens1, Send, get, lens_close, lens_compose, lens_equal, lens_tensor, send
from .session import Party, interleave, parse_session, type_check
from .splice import Splice, splice_alpha, splice_fill, splice_lambda, splice_rho
from .theory import FREE, FinFn, FinStoch, FreeTheory, I, Obj, Theory, eval_term, obj

__all__ = [
    "Context1",
    "ContextWord",
    "CtxParSplit",
    "CtxSeqSplit",
    "FREE",
    "FinFn",
    "FinStoch",
    "FreeTheory",
    "Get",
    "I",
    "Lens",
    "Lens1",
    "MctxError",
    "Obj",
    "ParSplit",
    "ParUnit",
    "ParseError",
    "Party",
    "Send",
    "SessionError",
    "Splice",
    "Theory",
    "TypeMismatch",
    "eval_term",
    "fill",
    "fill_equal",
    "get",
    "interleave",
    "lens_close",
    "lens_compose",
    "lens_equal",
    "lens_tensor",
    "obj",
    "parse_session",
    "phi0",
    "phi2",
    "psi0",
    "psi2",
    "send",
    "splice_alpha",
    "splice_fill",
    "splice_lambda",
    "splice_rho",
    "type_check",
]
