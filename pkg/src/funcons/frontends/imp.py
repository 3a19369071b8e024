"""IMP: a tiny imperative language with integer variables and while-loops.

Grammar::

    program := stmt*
    stmt    := "int" id "=" exp ";" | id "=" exp ";" | ";" | "break" ";"
             | "if" "(" exp ")" block ["else" block]
             | "while" "(" exp ")" block | block
    block   := "{" stmt* "}"
    exp     := and ; and := rel ("&&" rel)* ; rel := add [("<="|"<"|"==") add]
    add     := mul (("+"|"-") mul)* ; mul := unary (("*"|"/") unary)*
    unary   := "!" unary | "-" unary | num | id | "true" | "false" | "(" exp ")"

Conditions must be Boolean expressions; this is checked during translation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import TranslationError
from ..library.flow import BROKEN
from ..terms import FALSE, NULL, TRUE, App, Int, Term, TypeVal, identifier
from .lexer import TokenStream

KEYWORDS = frozenset({"int", "if", "else", "while", "break", "true", "false"})

Pos = tuple[int, int]


# -- abstract syntax ---------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BoolLit:
    value: bool
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Unary:
    op: str
    arg: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Skip:
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Break:
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Declare:
    name: str
    init: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Assign:
    name: str
    value: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class If:
    cond: object
    then: Block
    orelse: Block | None = None
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class While:
    cond: object
    body: Block
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Block:
    stmts: tuple = ()
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Program:
    stmts: tuple = ()


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, src: str):
        self.ts = TokenStream(src, KEYWORDS)

    def pos(self) -> Pos:
        t = self.ts.peek
        return (t.line, t.column)

    def program(self) -> Program:
        stmts = []
        while self.ts.peek.kind != "eof":
            stmts.append(self.stmt())
        return Program(tuple(stmts))

    def block(self) -> Block:
        p = self.pos()
        self.ts.expect("{")
        stmts = []
        while not self.ts.at("}"):
            if self.ts.peek.kind == "eof":
                self.ts.fail("expected '}'")
            stmts.append(self.stmt())
        self.ts.advance()
        return Block(tuple(stmts), p)

    def stmt(self):
        ts, p = self.ts, self.pos()
        if ts.at("{"):
            return self.block()
        if ts.accept(";"):
            return Skip(p)
        if ts.accept("break"):
            ts.expect(";")
            return Break(p)
        if ts.accept("int"):
            name = ts.ident().text
            ts.expect("=")
            e = self.exp()
            ts.expect(";")
            return Declare(name, e, p)
        if ts.accept("if"):
            ts.expect("(")
            c = self.exp()
            ts.expect(")")
            then = self.block()
            orelse = self.block() if ts.accept("else") else None
            return If(c, then, orelse, p)
        if ts.accept("while"):
            ts.expect("(")
            c = self.exp()
            ts.expect(")")
            return While(c, self.block(), p)
        if ts.peek.kind == "id":
            name = ts.advance().text
            ts.expect("=")
            e = self.exp()
            ts.expect(";")
            return Assign(name, e, p)
        ts.fail("expected a statement")

    def exp(self):
        left = self.rel()
        while self.ts.at("&&"):
            p = self.pos()
            self.ts.advance()
            left = Binary("&&", left, self.rel(), p)
        return left

    def rel(self):
        left = self.add()
        for op in ("<=", "<", "=="):
            if self.ts.at(op):
                p = self.pos()
                self.ts.advance()
                return Binary(op, left, self.add(), p)
        return left

    def add(self):
        left = self.mul()
        while self.ts.at("+") or self.ts.at("-"):
            p = self.pos()
            op = self.ts.advance().text
            left = Binary(op, left, self.mul(), p)
        return left

    def mul(self):
        left = self.unary()
        while self.ts.at("*") or self.ts.at("/"):
            p = self.pos()
            op = self.ts.advance().text
            left = Binary(op, left, self.unary(), p)
        return left

    def unary(self):
        ts, p = self.ts, self.pos()
        if ts.at("!") or ts.at("-"):
            op = ts.advance().text
            return Unary(op, self.unary(), p)
        t = ts.peek
        if t.kind == "num":
            ts.advance()
            return Num(int(t.text), p)
        if t.kind == "id":
            ts.advance()
            return Var(t.text, p)
        if ts.accept("true"):
            return BoolLit(True, p)
        if ts.accept("false"):
            return BoolLit(False, p)
        if ts.accept("("):
            e = self.exp()
            ts.expect(")")
            return e
        ts.fail("expected an expression")


def parse_imp(src: str) -> Program:
    return _Parser(src).program()


# -- translation -------------------------------------------------------------

_ARITH = {"+": "integer-add", "-": "integer-subtract", "*": "integer-multiply"}
_REL = {"<=": "is-less-or-equal", "<": "is-less", "==": "is-equal"}
INTEGERS = TypeVal("integers")


def _kind(e) -> str:
    if isinstance(e, BoolLit):
        return "bool"
    if isinstance(e, Unary):
        return "bool" if e.op == "!" else "int"
    if isinstance(e, Binary):
        return "bool" if e.op in _REL or e.op == "&&" else "int"
    return "int"


def _where(node) -> str:
    line, col = getattr(node, "pos", (0, 0))
    return f" at {line}:{col}" if line else ""


def sequence(terms: list[Term]) -> Term:
    if not terms:
        return NULL
    if len(terms) == 1:
        return terms[0]
    return App("sequential", tuple(terms))


class ImpTranslator:
    """The translation functions execute, eval-bool and eval-int.

    ``naive_while`` drops the break handler around loops, reproducing the
    translation in which a break escapes every enclosing loop.
    """

    def __init__(self, *, naive_while: bool = False):
        self.naive_while = naive_while
        self._loops = 0

    def program(self, prog: Program) -> Term:
        return self.stmts(prog.stmts)

    def stmts(self, stmts) -> Term:
        out: list[Term] = []
        for i, s in enumerate(stmts):
            if isinstance(s, Declare):
                init = App("allocate-initialised-variable", (INTEGERS, self.eval_int(s.init)))
                decl = App("bind-value", (identifier(s.name), init))
                out.append(App("scope", (decl, self.stmts(stmts[i + 1 :]))))
                break
            out.append(self.execute(s))
        return sequence(out)

    def execute(self, s) -> Term:
        if isinstance(s, Skip):
            return NULL
        if isinstance(s, Break):
            if not self._loops:
                raise TranslationError(f"break outside a loop{_where(s)}")
            return App("abrupt", (BROKEN,))
        if isinstance(s, Block):
            return self.stmts(s.stmts)
        if isinstance(s, Declare):
            return self.stmts((s,))
        if isinstance(s, Assign):
            return App("assign", (App("bound-value", (identifier(s.name),)), self.eval_int(s.value)))
        if isinstance(s, If):
            orelse = self.execute(s.orelse) if s.orelse is not None else NULL
            return App("if-true-else", (self.eval_bool(s.cond), self.execute(s.then), orelse))
        if isinstance(s, While):
            self._loops += 1
            try:
                loop = App("while-true", (self.eval_bool(s.cond), self.execute(s.body)))
            finally:
                self._loops -= 1
            if self.naive_while:
                return loop
            given = App("given", ())
            handler = App(
                "if-true-else",
                (App("is-equal", (given, BROKEN)), NULL, App("abrupt", (given,))),
            )
            return App("handle-abrupt", (loop, handler))
        raise TranslationError(f"unknown statement {type(s).__name__}")

    def eval_bool(self, e) -> Term:
        if _kind(e) != "bool":
            raise TranslationError(f"condition is an integer expression{_where(e)}")
        if isinstance(e, BoolLit):
            return TRUE if e.value else FALSE
        if isinstance(e, Unary):
            return App("not", (self.eval_bool(e.arg),))
        if e.op == "&&":
            return App("if-true-else", (self.eval_bool(e.left), self.eval_bool(e.right), FALSE))
        return App(_REL[e.op], (self.eval_int(e.left), self.eval_int(e.right)))

    def eval_int(self, e) -> Term:
        if _kind(e) != "int":
            raise TranslationError(f"expected an integer expression{_where(e)}")
        if isinstance(e, Num):
            return Int(e.value)
        if isinstance(e, Var):
            return App("assigned", (App("bound-value", (identifier(e.name),)),))
        if isinstance(e, Unary):
            return App("integer-negate", (self.eval_int(e.arg),))
        if e.op == "/":
            return App("checked", (App("integer-divide", (self.eval_int(e.left), self.eval_int(e.right))),))
        return App(_ARITH[e.op], (self.eval_int(e.left), self.eval_int(e.right)))


def translate_imp(prog: Program, *, naive_while: bool = False) -> Term:
    return ImpTranslator(naive_while=naive_while).program(prog)
