"""Text format for funcon terms.

Terms are written in applicative notation, ``name(arg, ...)``, with a few
literal forms: integers, ``'c'`` characters, ``"..."`` strings, ``[...]``
lists, ``{a, b}`` sets, ``{k |-> v}`` maps and ``(a, b)`` sequences.
``print_term`` produces the canonical rendering; ``parse_term`` accepts it
back (and any whitespace variation of it).
"""

from __future__ import annotations

import re

from .errors import ParseError
from .registry import Registry
from .terms import (
    AbsVal,
    App,
    Bool,
    Char,
    Datatype,
    Int,
    Link,
    MapVal,
    Null,
    Seq,
    SetVal,
    Term,
    TypeVal,
    Variable,
    as_string,
    seq,
    string,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>-?[0-9]+)
  | (?P<name>[a-z][a-z0-9]*(?:-[a-z0-9]+)*)
  | (?P<char>'(?:\\.|[^'\\])')
  | (?P<str>"(?:\\.|[^"\\])*")
  | (?P<mapsto>\|->)
  | (?P<punct>[(),\[\]{}])
    """,
    re.VERBOSE,
)

_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"'}
_UNESCAPES = {v: k for k, v in _ESCAPES.items()}


def _default_registry() -> Registry:
    from .library import DEFAULT

    return DEFAULT


def _unescape(body: str) -> str:
    out = []
    it = iter(body)
    for c in it:
        if c == "\\":
            e = next(it)
            if e not in _ESCAPES:
                raise ValueError(f"unknown escape \\{e}")
            out.append(_ESCAPES[e])
        else:
            out.append(c)
    return "".join(out)


def _escape(text: str, quote: str) -> str:
    out = []
    for c in text:
        if c == "\\" or c == quote or c in "\n\t":
            out.append("\\" + _UNESCAPES[c])
        else:
            out.append(c)
    return "".join(out)


class _Parser:
    def __init__(self, text: str, registry: Registry):
        self.text = text
        self.reg = registry
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                self.fail(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            if kind != "ws":
                self.toks.append((kind, m.group(), pos))  # type: ignore[arg-type]
            pos = m.end()
        self.i = 0

    def fail(self, msg: str, pos: int | None = None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise ParseError(msg, pos, line, col)

    def peek(self) -> str | None:
        return self.toks[self.i][1] if self.i < len(self.toks) else None

    def next(self) -> tuple[str, str, int]:
        if self.i >= len(self.toks):
            self.fail("unexpected end of input")
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        if self.peek() != text:
            self.fail(f"expected {text!r}")
        self.i += 1

    def args(self, close: str) -> list[Term]:
        items: list[Term] = []
        if self.peek() == close:
            self.i += 1
            return items
        items.append(self.term())
        while self.peek() == ",":
            self.i += 1
            items.append(self.term())
        self.expect(close)
        return items

    def term(self) -> Term:
        kind, text, pos = self.next()
        if kind == "int":
            return Int(int(text))
        if kind == "char":
            try:
                c = _unescape(text[1:-1])
                return Char(c)
            except ValueError as e:
                self.fail(str(e), pos)
        if kind == "str":
            try:
                return string(_unescape(text[1:-1]))
            except ValueError as e:
                self.fail(str(e), pos)
        if kind == "name":
            if self.peek() == "(":
                self.i += 1
                return self.reg.app(text, *self.args(")"))
            return self.reg.app(text)
        if text == "(":
            return seq(self.args(")"))
        if text == "[":
            return self.reg.app("list", *self.args("]"))
        if text == "{":
            return self.braces()
        self.fail(f"unexpected {text!r}", pos)
        raise AssertionError  # unreachable

    def braces(self) -> Term:
        if self.peek() == "}":
            self.i += 1
            return self.reg.app("map")
        first = self.term()
        if self.peek() == "|->":
            self.i += 1
            entries = [self.reg.app("tuple", first, self.term())]
            while self.peek() == ",":
                self.i += 1
                k = self.term()
                self.expect("|->")
                entries.append(self.reg.app("tuple", k, self.term()))
            self.expect("}")
            return self.reg.app("map", *entries)
        items = [first]
        while self.peek() == ",":
            self.i += 1
            items.append(self.term())
        self.expect("}")
        return self.reg.app("set", *items)


def parse_term(text: str, registry: Registry | None = None) -> Term:
    p = _Parser(text, registry or _default_registry())
    if not p.toks:
        p.fail("empty term")
    t = p.term()
    if p.i != len(p.toks):
        p.fail("trailing input after term")
    return t


def parse_values(text: str, registry: Registry | None = None) -> list:
    """Parse one value per non-blank line (the standard-in file format)."""
    from .terms import Value

    out = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        t = parse_term(line, registry)
        if not isinstance(t, Value):
            raise ParseError(f"not a value: {line.strip()}", 0, n, 1)
        out.append(t)
    return out


def _join(items) -> str:
    return ", ".join(items) if items else " "


def print_term(t: Term, registry: Registry | None = None) -> str:
    reg = registry or _default_registry()

    def p(t: Term) -> str:
        if isinstance(t, App):
            if not t.args:
                f = reg.funcons.get(t.name)
                if f is not None and not f.sig.params:
                    return t.name
            return f"{t.name}({_join([p(a) for a in t.args])})"
        if isinstance(t, Seq):
            return f"({_join([p(a) for a in t.items])})"
        if isinstance(t, Bool):
            return "true" if t.value else "false"
        if isinstance(t, Int):
            return str(t.value)
        if isinstance(t, Char):
            return "'" + _escape(t.value, "'") + "'"
        if isinstance(t, Null):
            return "null-value"
        if isinstance(t, Datatype):
            if t.constructor == "list":
                s = as_string(t)
                if s:
                    return '"' + _escape(s, '"') + '"'
                return f"[{_join([p(a) for a in t.args])}]"
            if not t.args and reg.constants.get(t.constructor) == t:
                return t.constructor
            return f"{t.constructor}({_join([p(a) for a in t.args])})"
        if isinstance(t, SetVal):
            if not t.elements:
                return "set( )"
            return "{" + ", ".join(sorted(p(e) for e in t.elements)) + "}"
        if isinstance(t, MapVal):
            if not len(t):
                return "{ }"
            entries = sorted((p(k), p(vs[0]) if vs else "( )") for k, vs in t.items())
            return "{" + ", ".join(f"{k} |-> {v}" for k, v in entries) + "}"
        if isinstance(t, AbsVal):
            return f"abstraction({p(t.body)})"
        if isinstance(t, TypeVal):
            if not t.args and t.name in reg.constants:
                return t.name
            return f"{t.name}({_join([p(a) for a in t.args])})"
        if isinstance(t, Variable):
            return f"variable(#{t.location}: {p(t.type)})"
        if isinstance(t, Link):
            return f"link(#{t.id})"
        raise TypeError(f"not a term: {t!r}")

    return p(t)
