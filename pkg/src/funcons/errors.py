"""Exception types shared across the package."""

from __future__ import annotations


class FunconError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(FunconError):
    """Malformed funcon term or source program text."""

    def __init__(self, message: str, position: int = 0, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.position = position
        self.line = line
        self.column = column


class UnknownFunconError(FunconError):
    def __init__(self, name: str):
        super().__init__(f"unknown funcon: {name}")
        self.name = name


class ArityError(FunconError):
    def __init__(self, name: str, got: int, expected: str):
        super().__init__(f"{name}: got {got} argument(s), expected {expected}")
        self.name = name
        self.got = got
        self.expected = expected


class DuplicateNameError(FunconError):
    def __init__(self, name: str):
        super().__init__(f"funcon name already registered: {name}")
        self.name = name


class NotGroundError(FunconError):
    """A ground value was required (set element, map key, equality operand)."""


class TranslationError(FunconError):
    """A source program cannot be translated to funcons."""


class NoRuleApplies(FunconError):
    """Raised inside the engine when a term is stuck.

    The engine turns this into a ``Stuck`` termination; it never escapes ``run``.
    """


class AbruptSignal(Exception):
    """The control entity: a step terminated abruptly with ``reason``.

    Deliberately not a ``FunconError``: it is normal control flow inside the
    engine, caught by handler funcons or reported as ``Abrupted`` at top level.
    """

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason
