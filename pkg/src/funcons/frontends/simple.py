"""A SIMPLE subset: global variables, one-parameter functions, blocks, return.

Grammar::

    program := decl* [exp]
    decl    := "var" id "=" exp ";" | "function" id "(" id ")" block
    block   := "{" stmt* "}"
    stmt    := "var" id "=" exp ";" | id "=" exp ";" | "return" exp ";"
             | "print" "(" exp ("," exp)* ")" ";"
             | "if" "(" exp ")" block ["else" block] | block | exp ";"
    exp     := rel ; rel := add [("=="|"!="|"<"|"<="|">"|">=") add]
    add     := mul (("+"|"-") mul)* ; mul := unary (("*"|"/"|"%") unary)*
    unary   := "-" unary | "!" unary | postfix
    postfix := atom ("(" exp ")")*
    atom    := num | id | "true" | "false" | "(" exp ")"

Identifiers are bound only to simple variables, so reading ``x`` is
``assigned-value(bound-value(x))``.  Binding is static by default;
``binding="dynamic"`` builds function bodies with ``abstraction`` instead of
``closure``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import TranslationError
from ..terms import FALSE, AbsVal, Datatype, NULL, TRUE, VALUES, App, Int, SetVal, Term, TypeVal, identifier
from .imp import sequence
from .lexer import TokenStream

KEYWORDS = frozenset({"var", "function", "return", "print", "if", "else", "true", "false"})

Pos = tuple[int, int]


@dataclass(frozen=True)
class Id:
    name: str
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Lit:
    value: int | bool
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Apply:
    fn: object
    arg: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Op:
    op: str
    args: tuple
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class VarDecl:
    name: str
    init: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class FunDecl:
    name: str
    param: str
    body: Block
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Block:
    stmts: tuple = ()
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Return:
    value: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ExpStmt:
    exp: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Assign:
    name: str
    value: object
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Print:
    args: tuple
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class If:
    cond: object
    then: Block
    orelse: Block | None = None
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Program:
    decls: tuple = ()
    entry: object = None


# -- parser ------------------------------------------------------------------

_RELOPS = ("==", "!=", "<=", ">=", "<", ">")


class _Parser:
    def __init__(self, src: str):
        self.ts = TokenStream(src, KEYWORDS)

    def pos(self) -> Pos:
        t = self.ts.peek
        return (t.line, t.column)

    def program(self) -> Program:
        ts = self.ts
        decls = []
        while ts.at("var") or ts.at("function"):
            decls.append(self.decl())
        entry = None
        if ts.peek.kind != "eof":
            entry = self.exp()
            if ts.peek.kind != "eof":
                ts.fail("expected end of program")
        return Program(tuple(decls), entry)

    def decl(self):
        ts, p = self.ts, self.pos()
        if ts.accept("var"):
            name = ts.ident().text
            ts.expect("=")
            e = self.exp()
            ts.expect(";")
            return VarDecl(name, e, p)
        ts.expect("function")
        name = ts.ident().text
        ts.expect("(")
        param = ts.ident().text
        ts.expect(")")
        return FunDecl(name, param, self.block(), p)

    def block(self) -> Block:
        ts, p = self.ts, self.pos()
        ts.expect("{")
        stmts = []
        while not ts.at("}"):
            if ts.peek.kind == "eof":
                ts.fail("expected '}'")
            stmts.append(self.stmt())
        ts.advance()
        return Block(tuple(stmts), p)

    def stmt(self):
        ts, p = self.ts, self.pos()
        if ts.at("{"):
            return self.block()
        if ts.at("var"):
            return self.decl()
        if ts.accept("return"):
            e = self.exp()
            ts.expect(";")
            return Return(e, p)
        if ts.accept("print"):
            ts.expect("(")
            args = [self.exp()]
            while ts.accept(","):
                args.append(self.exp())
            ts.expect(")")
            ts.expect(";")
            return Print(tuple(args), p)
        if ts.accept("if"):
            ts.expect("(")
            c = self.exp()
            ts.expect(")")
            then = self.block()
            orelse = self.block() if ts.accept("else") else None
            return If(c, then, orelse, p)
        if ts.peek.kind == "id" and ts.toks[ts.i + 1].text == "=":
            name = ts.advance().text
            ts.advance()
            e = self.exp()
            ts.expect(";")
            return Assign(name, e, p)
        e = self.exp()
        ts.expect(";")
        return ExpStmt(e, p)

    def exp(self):
        left = self.add()
        for op in _RELOPS:
            if self.ts.at(op):
                p = self.pos()
                self.ts.advance()
                return Op(op, (left, self.add()), p)
        return left

    def add(self):
        left = self.mul()
        while self.ts.at("+") or self.ts.at("-"):
            p = self.pos()
            op = self.ts.advance().text
            left = Op(op, (left, self.mul()), p)
        return left

    def mul(self):
        left = self.unary()
        while self.ts.at("*") or self.ts.at("/") or self.ts.at("%"):
            p = self.pos()
            op = self.ts.advance().text
            left = Op(op, (left, self.unary()), p)
        return left

    def unary(self):
        ts, p = self.ts, self.pos()
        if ts.at("-") or ts.at("!"):
            op = ts.advance().text
            return Op("neg" if op == "-" else "!", (self.unary(),), p)
        e = self.atom()
        while ts.at("("):
            p = self.pos()
            ts.advance()
            arg = self.exp()
            ts.expect(")")
            e = Apply(e, arg, p)
        return e

    def atom(self):
        ts, p = self.ts, self.pos()
        t = ts.peek
        if t.kind == "num":
            ts.advance()
            return Lit(int(t.text), p)
        if t.kind == "id":
            ts.advance()
            return Id(t.text, p)
        if ts.accept("true"):
            return Lit(True, p)
        if ts.accept("false"):
            return Lit(False, p)
        if ts.accept("("):
            e = self.exp()
            ts.expect(")")
            return e
        ts.fail("expected an expression")


def parse_simple(src: str) -> Program:
    return _Parser(src).program()


# -- translation -------------------------------------------------------------

_OPS = {
    "+": "integer-add",
    "-": "integer-subtract",
    "*": "integer-multiply",
    "<": "is-less",
    "<=": "is-less-or-equal",
    ">": "is-greater",
    ">=": "is-greater-or-equal",
    "==": "is-equal",
    "neg": "integer-negate",
    "!": "not",
}

FUNCTIONS = TypeVal("functions", (VALUES, VALUES))


class SimpleTranslator:
    """The translation functions rval, declare and exec."""

    def __init__(self, binding: str = "static"):
        if binding not in ("static", "dynamic"):
            raise ValueError("binding must be 'static' or 'dynamic'")
        self.binding = binding

    def program(self, prog: Program) -> Term:
        ids = SetVal(frozenset(identifier(d.name) for d in prog.decls))
        decls = App("recursive", (ids, App("accumulate", tuple(self.declare(d) for d in prog.decls))))
        entry = NULL if prog.entry is None else self.rval(prog.entry)
        return App("scope", (decls, entry))

    def rval(self, e) -> Term:
        if isinstance(e, Id):
            return App("assigned", (App("bound-value", (identifier(e.name),)),))
        if isinstance(e, Apply):
            return App("apply", (self.rval(e.fn), self.rval(e.arg)))
        if isinstance(e, Lit):
            if isinstance(e.value, bool):
                return TRUE if e.value else FALSE
            return Int(e.value)
        if isinstance(e, Op):
            args = tuple(self.rval(a) for a in e.args)
            if e.op == "/":
                return App("checked", (App("integer-divide", args),))
            if e.op == "%":
                return App("checked", (App("integer-modulo", args),))
            if e.op == "!=":
                return App("not", (App("is-equal", args),))
            return App(_OPS[e.op], args)
        raise TranslationError(f"unknown expression {type(e).__name__}")

    def declare(self, d) -> Term:
        if isinstance(d, VarDecl):
            return App(
                "bind-value",
                (identifier(d.name), App("allocate-initialised-variable", (VALUES, self.rval(d.init)))),
            )
        if isinstance(d, FunDecl):
            param = App(
                "bind-value",
                (identifier(d.param), App("allocate-initialised-variable", (VALUES, App("given", ())))),
            )
            body = App("scope", (param, App("handle-return", (self.exec(d.body),))))
            if self.binding == "static":
                fn: Term = App("function", (App("closure", (body,)),))
            else:
                # no environment to capture, so the function is already a value
                fn = Datatype("function", (AbsVal(body),))
            return App("bind-value", (identifier(d.name), App("allocate-initialised-variable", (FUNCTIONS, fn))))
        raise TranslationError(f"unknown declaration {type(d).__name__}")

    def exec(self, s) -> Term:
        if isinstance(s, Block):
            return self._stmts(s.stmts)
        if isinstance(s, VarDecl):
            return self._stmts((s,))
        if isinstance(s, Return):
            return App("return", (self.rval(s.value),))
        if isinstance(s, ExpStmt):
            return App("effect", (self.rval(s.exp),))
        if isinstance(s, Assign):
            return App("assign", (App("bound-value", (identifier(s.name),)), self.rval(s.value)))
        if isinstance(s, Print):
            return App("print", tuple(self.rval(a) for a in s.args))
        if isinstance(s, If):
            orelse = self.exec(s.orelse) if s.orelse is not None else NULL
            return App("if-true-else", (self.rval(s.cond), self.exec(s.then), orelse))
        raise TranslationError(f"unknown statement {type(s).__name__}")

    def _stmts(self, stmts) -> Term:
        out: list[Term] = []
        for i, s in enumerate(stmts):
            if isinstance(s, VarDecl):
                out.append(App("scope", (self.declare(s), self._stmts(stmts[i + 1 :]))))
                break
            out.append(self.exec(s))
        return sequence(out)


def translate_simple(prog: Program, *, binding: str = "static") -> Term:
    return SimpleTranslator(binding).program(prog)
