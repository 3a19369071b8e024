"""An interpreter for funcons: fundamental constructs with fixed small-step
behaviour, plus translators from IMP and a SIMPLE subset into funcon terms."""

from __future__ import annotations

from .engine import (
    DEFAULT_MAX_STEPS,
    Abrupted,
    Diverged,
    Done,
    EntityState,
    Interpreter,
    Normal,
    RunResult,
    Scheduler,
    Signalled,
    Stepped,
    Stuck,
    StuckError,
    rewrite,
    run,
    step,
)
from .errors import (
    AbruptSignal,
    ArityError,
    DuplicateNameError,
    FunconError,
    NotGroundError,
    ParseError,
    TranslationError,
    UnknownFunconError,
)
from .library import DEFAULT, default_registry
from .library.data import datatype_construct
from .registry import Funcon, FunconSig, Param, Registry, RewriteRule, TransitionRule, lazy, strict
from .syntax import parse_term, parse_values, print_term
from .terms import type_member, value_equal


def register_funcon(
    sig: FunconSig,
    rewrite: RewriteRule | None = None,
    transition: TransitionRule | None = None,
    *,
    registry: Registry | None = None,
) -> Funcon:
    """Add a funcon to ``registry`` (the default one if omitted)."""
    return (registry or DEFAULT).register(sig, rewrite, transition)


__all__ = [
    "DEFAULT",
    "DEFAULT_MAX_STEPS",
    "AbruptSignal",
    "Abrupted",
    "ArityError",
    "Diverged",
    "Done",
    "DuplicateNameError",
    "EntityState",
    "Funcon",
    "FunconError",
    "FunconSig",
    "Interpreter",
    "Normal",
    "NotGroundError",
    "Param",
    "ParseError",
    "Registry",
    "RunResult",
    "Scheduler",
    "Signalled",
    "Stepped",
    "Stuck",
    "StuckError",
    "TranslationError",
    "UnknownFunconError",
    "datatype_construct",
    "default_registry",
    "lazy",
    "parse_term",
    "parse_values",
    "print_term",
    "register_funcon",
    "rewrite",
    "run",
    "step",
    "strict",
    "type_member",
    "value_equal",
]
