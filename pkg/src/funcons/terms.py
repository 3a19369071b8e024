"""Funcon terms and the values they compute.

Values are themselves terms (a value is a term in normal form), so a term
tree is built from ``App`` nodes, ``Seq`` nodes, and ``Value`` leaves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import NotGroundError

NAME_RE = re.compile(r"[a-z][a-z0-9]*(-[a-z0-9]+)*")


def is_name(text: str) -> bool:
    return NAME_RE.fullmatch(text) is not None


class Term:
    __slots__ = ()


class Value(Term):
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class App(Term):
    """A funcon name applied to a (possibly empty) tuple of argument terms."""

    name: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True, slots=True)
class Seq(Term):
    """A sequence of terms; a sequence of values is a computed result."""

    items: tuple[Term, ...] = ()


# -- primitive values ---------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Bool(Value):
    value: bool


@dataclass(frozen=True, slots=True)
class Int(Value):
    value: int


@dataclass(frozen=True, slots=True)
class Char(Value):
    value: str

    def __post_init__(self):
        if len(self.value) != 1 or ord(self.value) > 127:
            raise ValueError(f"not an ASCII character: {self.value!r}")


@dataclass(frozen=True, slots=True)
class Null(Value):
    pass


TRUE = Bool(True)
FALSE = Bool(False)
NULL = Null()


# -- composite values ---------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Datatype(Value):
    """Generic algebraic datatype value: tuples, lists, identifiers, reasons..."""

    constructor: str
    args: tuple[Value, ...] = ()


@dataclass(frozen=True, slots=True)
class SetVal(Value):
    elements: frozenset = frozenset()


class MapVal(Value):
    """Finite map from ground values to value sequences of length at most one.

    An entry mapped to the empty sequence hides any binding for its key when
    the map is used to override another one.
    """

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[Value, tuple[Value, ...]] | Iterable = ()):
        d = dict(entries)
        for k, v in d.items():
            if not isinstance(v, tuple) or len(v) > 1:
                raise ValueError(f"map entry for {k!r} must be a sequence of length <= 1")
        object.__setattr__(self, "_entries", d)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MapVal is immutable")

    def __eq__(self, other):
        return isinstance(other, MapVal) and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._entries.items())))
        return self._hash

    def __repr__(self):
        return f"MapVal({self._entries!r})"

    def __len__(self):
        return len(self._entries)

    def __contains__(self, key):
        return key in self._entries

    def get(self, key, default=None):
        return self._entries.get(key, default)

    def keys(self):
        return self._entries.keys()

    def items(self):
        return self._entries.items()

    def override(self, other: MapVal) -> MapVal:
        """Left-biased union: entries of ``self`` win."""
        if not other._entries:
            return self
        if not self._entries:
            return other
        merged = dict(other._entries)
        merged.update(self._entries)
        return MapVal(merged)


EMPTY_MAP = MapVal()


# -- abstractions, variables, links, types -----------------------------------


@dataclass(frozen=True, slots=True)
class AbsVal(Value):
    """An unevaluated term captured as a value by ``abstraction``."""

    body: Term


@dataclass(frozen=True, slots=True)
class TypeVal(Value):
    name: str
    args: tuple[Value, ...] = ()


@dataclass(frozen=True, slots=True)
class Variable(Value):
    """A simple variable: a store location with the type of storable values."""

    location: int
    type: TypeVal


@dataclass(frozen=True, slots=True)
class Link(Value):
    id: int


VALUES = TypeVal("values")


# -- constructors for common composite values --------------------------------


def string(text: str) -> Datatype:
    return Datatype("list", tuple(Char(c) for c in text))


def identifier(name: str) -> Datatype:
    return Datatype("identifier", (string(name),))


def list_value(items: Iterable[Value]) -> Datatype:
    return Datatype("list", tuple(items))


def tuple_value(*items: Value) -> Datatype:
    return Datatype("tuple", tuple(items))


def env(bindings: Mapping[str, Value] | None = None, **kw: Value) -> MapVal:
    """Environment mapping identifier names to single values."""
    merged = dict(bindings or {})
    merged.update(kw)
    return MapVal({identifier(k): (v,) for k, v in merged.items()})


def as_string(v: Value) -> str | None:
    """Python text of a string value (list of characters), else None."""
    if isinstance(v, Datatype) and v.constructor == "list":
        if all(isinstance(c, Char) for c in v.args):
            return "".join(c.value for c in v.args)
    return None


def identifier_name(v: Value) -> str | None:
    if isinstance(v, Datatype) and v.constructor == "identifier" and len(v.args) == 1:
        return as_string(v.args[0])
    return None


# -- sequences ---------------------------------------------------------------


def is_done(t: Term) -> bool:
    """True for a value or a sequence of values (a computed result)."""
    if isinstance(t, Value):
        return True
    if isinstance(t, Seq):
        return all(isinstance(i, Value) for i in t.items)
    return False


def values_of(t: Term) -> tuple[Value, ...]:
    if isinstance(t, Value):
        return (t,)
    assert isinstance(t, Seq)
    return t.items  # type: ignore[return-value]


def flat_values(args: Iterable[Term]) -> tuple[Value, ...]:
    out: list[Value] = []
    for a in args:
        out.extend(values_of(a))
    return tuple(out)


def seq(items: Iterable[Term]) -> Term:
    """Flattening sequence constructor; a singleton sequence is its element."""
    flat: list[Term] = []
    for i in items:
        if isinstance(i, Seq):
            flat.extend(i.items)
        else:
            flat.append(i)
    if len(flat) == 1:
        return flat[0]
    return Seq(tuple(flat))


EMPTY = Seq(())


# -- ground values and equality ----------------------------------------------


def is_ground(v: Value) -> bool:
    if isinstance(v, (AbsVal, Variable, Link)):
        return False
    if isinstance(v, Datatype):
        return all(is_ground(a) for a in v.args)
    if isinstance(v, TypeVal):
        return all(is_ground(a) for a in v.args)
    if isinstance(v, SetVal):
        return True  # elements are checked on construction
    if isinstance(v, MapVal):
        return all(is_ground(x) for vs in v._entries.values() for x in vs)
    return True


def value_equal(a: Value, b: Value) -> bool:
    if not (is_ground(a) and is_ground(b)):
        raise NotGroundError("equality is only defined on ground values")
    return a == b


def walk(v: Value) -> Iterator[Value]:
    """All values nested inside ``v``, including ``v`` itself."""
    yield v
    if isinstance(v, (Datatype, TypeVal)):
        for a in v.args:
            yield from walk(a)
    elif isinstance(v, SetVal):
        for a in v.elements:
            yield from walk(a)
    elif isinstance(v, MapVal):
        for k, vs in v.items():
            yield from walk(k)
            for x in vs:
                yield from walk(x)


# -- types -------------------------------------------------------------------

TYPE_NAMES = {
    "values": 0,
    "ground-values": 0,
    "value-types": 0,
    "booleans": 0,
    "integers": 0,
    "naturals": 0,
    "bounded": 2,
    "characters": 0,
    "ascii-characters": 0,
    "strings": 0,
    "null-type": 0,
    "identifiers": 0,
    "environments": 0,
    "tuples": -1,
    "lists": 1,
    "sets": 1,
    "maps": 2,
    "abstractions": 1,
    "thunks": 1,
    "functions": 2,
    "patterns": 0,
    "variables": 0,
}


def type_member(v: Value, t: TypeVal) -> bool:
    n, a = t.name, t.args
    if n == "values":
        return True
    if n == "ground-values":
        return is_ground(v)
    if n == "value-types":
        return isinstance(v, TypeVal)
    if n == "booleans":
        return isinstance(v, Bool)
    if n == "integers":
        return isinstance(v, Int)
    if n == "naturals":
        return isinstance(v, Int) and v.value >= 0
    if n == "bounded":
        lo, hi = a
        return isinstance(v, Int) and lo.value <= v.value <= hi.value  # type: ignore[attr-defined]
    if n in ("characters", "ascii-characters"):
        return isinstance(v, Char)
    if n == "strings":
        return isinstance(v, Datatype) and v.constructor == "list" and all(isinstance(c, Char) for c in v.args)
    if n == "null-type":
        return isinstance(v, Null)
    if n == "identifiers":
        return identifier_name(v) is not None
    if n == "environments":
        return isinstance(v, MapVal) and all(identifier_name(k) is not None for k in v.keys())
    if n == "tuples":
        return (
            isinstance(v, Datatype)
            and v.constructor == "tuple"
            and len(v.args) == len(a)
            and all(isinstance(ti, TypeVal) and type_member(x, ti) for x, ti in zip(v.args, a))
        )
    if n == "lists":
        return (
            isinstance(v, Datatype)
            and v.constructor == "list"
            and all(type_member(x, a[0]) for x in v.args)  # type: ignore[arg-type]
        )
    if n == "sets":
        return isinstance(v, SetVal) and all(type_member(x, a[0]) for x in v.elements)  # type: ignore[arg-type]
    if n == "maps":
        if not isinstance(v, MapVal):
            return False
        kt, vt = a
        return all(
            type_member(k, kt) and all(type_member(x, vt) for x in vs)  # type: ignore[arg-type]
            for k, vs in v.items()
        )
    if n == "abstractions":
        return isinstance(v, AbsVal)
    if n in ("thunks", "functions"):
        ctor = n[:-1]
        return (
            isinstance(v, Datatype)
            and v.constructor == ctor
            and len(v.args) == 1
            and isinstance(v.args[0], AbsVal)
        )
    if n == "patterns":
        return isinstance(v, Datatype) and v.constructor == "pattern"
    if n == "variables":
        return isinstance(v, Variable)
    return False
