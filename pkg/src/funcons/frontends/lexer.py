"""Tokenizer and parser scaffolding shared by the source-language frontends."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|//[^\n]*)
  | (?P<num>[0-9]+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>==|!=|<=|>=|&&|\|\||[-+*/%<>=!(){};,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # num | id | kw | op | eof
    text: str
    pos: int
    line: int
    column: int


def tokenize(src: str, keywords: frozenset[str]) -> list[Token]:
    toks: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, line, pos - line_start + 1)
        kind, text = m.lastgroup, m.group()
        if kind != "ws":
            if kind == "id" and text in keywords:
                kind = "kw"
            toks.append(Token(kind, text, pos, line, pos - line_start + 1))  # type: ignore[arg-type]
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = pos + text.rfind("\n") + 1
        pos = m.end()
    toks.append(Token("eof", "", pos, line, pos - line_start + 1))
    return toks


class TokenStream:
    def __init__(self, src: str, keywords: frozenset[str]):
        self.toks = tokenize(src, keywords)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.peek
        return t.kind in ("op", "kw") and t.text == text

    def fail(self, msg: str, tok: Token | None = None):
        t = tok or self.peek
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{msg}, found {found}", t.pos, t.line, t.column)

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def ident(self) -> Token:
        if self.peek.kind != "id":
            self.fail("expected an identifier")
        return self.advance()
