"""Control flow, data flow, and abrupt termination funcons."""

from __future__ import annotations

from ..errors import AbruptSignal, NoRuleApplies
from ..registry import STAR, FunconSig, Registry, lazy, strict
from ..terms import (
    EMPTY,
    NULL,
    App,
    Bool,
    Datatype,
    Int,
    Null,
    Term,
    Value,
    flat_values,
    is_done,
    seq,
    values_of,
)
from .data import call

BROKEN = Datatype("broken")
CONTINUED = Datatype("continued")
FAILED = Datatype("failed")


def _first_pending(args: tuple[Term, ...], order) -> int | None:
    for i in order:
        if not is_done(args[i]):
            return i
    return None


# -- control flow ------------------------------------------------------------


def _install_control(reg: Registry) -> None:
    def ordered(name: str, rightmost: bool) -> None:
        def rw(args):
            if all(is_done(a) for a in args):
                return seq(args)
            return None

        def tr(args, ctx):
            order = range(len(args) - 1, -1, -1) if rightmost else range(len(args))
            i = _first_pending(args, order)
            new = ctx.sub(args[i], i)
            return App(name, args[:i] + (new,) + args[i + 1 :])

        reg.register(FunconSig(name, (lazy("values", STAR),)), rw, tr)

    ordered("left-to-right", False)
    ordered("right-to-left", True)

    def sequential_rw(args):
        if len(args) == 1:
            return args[0]
        if is_done(args[0]):
            if values_of(args[0]) == (NULL,):
                return App("sequential", args[1:])
        return None

    def sequential_tr(args, ctx):
        if is_done(args[0]):
            raise NoRuleApplies("sequential: a command computed a value other than null-value")
        return App("sequential", (ctx.sub(args[0], 0),) + args[1:])

    reg.register(
        FunconSig("sequential", (lazy("null-type", STAR), lazy())), sequential_rw, sequential_tr
    )

    reg.register(FunconSig("effect", (strict("values", STAR),), "null-type"), lambda args: NULL)
    reg.register(FunconSig("interleave", (strict("values", STAR),)), lambda args: seq(args))

    def choice(args, ctx):
        return args[ctx.scheduler.pick(range(len(args)))]

    reg.register(FunconSig("choice", (lazy("values", STAR),)), None, choice)

    def if_true_else(args):
        b = values_of(args[0])
        if len(b) != 1 or not isinstance(b[0], Bool):
            return None
        return args[1] if b[0].value else args[2]

    reg.register(FunconSig("if-true-else", (strict("booleans"), lazy(), lazy())), if_true_else)

    def while_true(args):
        b, x = args
        return App("if-true-else", (b, App("sequential", (x, App("while-true", (b, x)))), NULL))

    reg.register(FunconSig("while-true", (lazy("booleans"), lazy("null-type")), "null-type"), while_true)


# -- data flow ---------------------------------------------------------------


def _install_data_flow(reg: Registry) -> None:
    def given(args, ctx):
        if not ctx.given:
            raise NoRuleApplies("given: no given value")
        return seq(ctx.given)

    reg.register(FunconSig("given", (), entities=frozenset({"given-value"})), None, given)

    def give_rw(args):
        return args[1] if is_done(args[1]) else None

    def give_tr(args, ctx):
        return App("give", (args[0], ctx.sub(args[1], 1, given=values_of(args[0]))))

    reg.register(FunconSig("give", (strict(), lazy())), give_rw, give_tr)

    def no_given_tr(args, ctx):
        return App("no-given", (ctx.sub(args[0], 0, given=()),))

    reg.register(FunconSig("no-given", (lazy(),)), lambda a: a[0] if is_done(a[0]) else None, no_given_tr)

    def mapper(name: str, combine: str) -> None:
        def rw(args):
            v = flat_values(args)
            if not v:
                return None
            f, xs = v[0], v[1:]
            return App(combine, tuple(call(f, x) for x in xs))

        reg.register(FunconSig(name, (strict("functions"), strict("values", STAR))), rw)

    mapper("left-to-right-map", "left-to-right")
    mapper("interleave-map", "interleave")

    def repeater(name: str, mapname: str) -> None:
        def rw(args):
            v = flat_values(args)
            if len(v) != 3 or not isinstance(v[1], Int) or not isinstance(v[2], Int):
                return None
            return App(mapname, (v[0],) + tuple(Int(i) for i in range(v[1].value, v[2].value + 1)))

        reg.register(FunconSig(name, (strict("functions"), strict("integers"), strict("integers"))), rw)

    repeater("left-to-right-repeat", "left-to-right-map")
    repeater("interleave-repeat", "interleave-map")

    def filterer(name: str, combine: str) -> None:
        def rw(args):
            v = flat_values(args)
            if not v:
                return None
            p, xs = v[0], v[1:]
            return App(combine, tuple(App("if-true-else", (call(p, x), x, EMPTY)) for x in xs))

        reg.register(FunconSig(name, (strict("functions"), strict("values", STAR))), rw)

    filterer("left-to-right-filter", "left-to-right")
    filterer("interleave-filter", "interleave")

    def fold_left(args):
        v = flat_values(args)
        if len(v) < 2:
            return None
        f, acc, xs = v[0], v[1], v[2:]
        if not xs:
            return acc
        return App("fold-left", (f, call(f, App("tuple", (acc, xs[0]))), seq(xs[1:])))

    def fold_right(args):
        v = flat_values(args)
        if len(v) < 2:
            return None
        f, acc, xs = v[0], v[1], v[2:]
        if not xs:
            return acc
        return call(f, App("tuple", (xs[0], App("fold-right", (f, acc, seq(xs[1:]))))))

    sig = (strict("functions"), strict(), strict("values", STAR))
    reg.register(FunconSig("fold-left", sig), fold_left)
    reg.register(FunconSig("fold-right", sig), fold_right)


# -- abrupt termination ------------------------------------------------------


def _handler(reg: Registry, name: str, params, on_value, on_signal) -> None:
    """A funcon stepping its first argument and inspecting any signal.

    ``on_value(args)`` rewrites once the first argument is computed;
    ``on_signal(reason, args)`` returns the replacement term, or ``None`` to
    let the signal propagate unchanged.
    """

    def rw(args):
        return on_value(args) if is_done(args[0]) else None

    def tr(args, ctx):
        try:
            new = ctx.sub(args[0], 0)
        except AbruptSignal as s:
            handled = on_signal(s.reason, args)
            if handled is None:
                raise
            return handled
        return App(name, (new,) + args[1:])

    reg.register(FunconSig(name, tuple(params)), rw, tr)


def _payload(reason: Value, ctor: str) -> Value | None:
    if isinstance(reason, Datatype) and reason.constructor == ctor and len(reason.args) == 1:
        return reason.args[0]
    return None


def _install_abrupt(reg: Registry) -> None:
    def abrupt(args, ctx):
        v = flat_values(args)
        if len(v) != 1:
            raise NoRuleApplies("abrupt: expects exactly one reason value")
        raise AbruptSignal(v[0])

    reg.register(FunconSig("abrupt", (strict(),), "empty-type", frozenset({"abrupted"})), None, abrupt)

    reg.register(FunconSig("fail"), lambda a: App("abrupt", (FAILED,)))
    reg.register(FunconSig("break"), lambda a: App("abrupt", (BROKEN,)))
    reg.register(FunconSig("continue"), lambda a: App("abrupt", (CONTINUED,)))

    def wrapper(name: str, ctor: str) -> None:
        def rw(args):
            v = flat_values(args)
            return App("abrupt", (Datatype(ctor, v),)) if len(v) == 1 else None

        reg.register(FunconSig(name, (strict(),)), rw)

    wrapper("throw", "thrown")
    wrapper("return", "returned")

    first = lambda args: args[0]  # noqa: E731

    _handler(
        reg,
        "handle-abrupt",
        [lazy(), lazy()],
        first,
        lambda r, args: App("give", (r, args[1])),
    )
    _handler(
        reg,
        "finally",
        [lazy(), lazy("null-type")],
        lambda args: App("sequential", (App("effect", (args[1],)), args[0])),
        lambda r, args: App("sequential", (App("effect", (args[1],)), App("abrupt", (r,)))),
    )

    def else_on_signal(r, args):
        if r != FAILED or len(args) < 2:
            return None
        return App("else", args[1:]) if len(args) > 2 else args[1]

    def else_rw(args):
        if len(args) == 1 or is_done(args[0]):
            return args[0]
        return None

    def else_tr(args, ctx):
        try:
            new = ctx.sub(args[0], 0)
        except AbruptSignal as s:
            handled = else_on_signal(s.reason, args)
            if handled is None:
                raise
            return handled
        return App("else", (new,) + args[1:])

    reg.register(FunconSig("else", (lazy(), lazy("values", STAR))), else_rw, else_tr)

    def else_choice(args, ctx):
        order = ctx.scheduler.permutation(len(args))
        return App("else", tuple(args[i] for i in order))

    reg.register(FunconSig("else-choice", (lazy(), lazy("values", STAR))), None, else_choice)

    def check_true(args):
        v = flat_values(args)
        if len(v) != 1 or not isinstance(v[0], Bool):
            return None
        return NULL if v[0].value else App("fail")

    reg.register(FunconSig("check-true", (strict("booleans"),), "null-type"), check_true)

    def checked(args):
        v = flat_values(args)
        return seq(v) if v else App("fail")

    reg.register(FunconSig("checked", (strict("values", "optional"),)), checked)

    def caught(ctor: str, result):
        def on_signal(r, args):
            p = _payload(r, ctor)
            return None if p is None else result(p, args)

        return on_signal

    _handler(
        reg,
        "handle-thrown",
        [lazy(), lazy()],
        first,
        caught("thrown", lambda v, args: App("give", (v, args[1]))),
    )
    _handler(
        reg,
        "handle-recursively",
        [lazy(), lazy()],
        first,
        caught("thrown", lambda v, args: App("give", (v, App("handle-recursively", (args[1], args[1]))))),
    )
    _handler(reg, "handle-return", [lazy()], first, caught("returned", lambda v, args: v))

    def exact(reason: Value):
        return lambda r, args: NULL if r == reason else None

    _handler(reg, "handle-break", [lazy("null-type")], first, exact(BROKEN))
    _handler(reg, "handle-continue", [lazy("null-type")], first, exact(CONTINUED))


def install(reg: Registry) -> None:
    _install_control(reg)
    _install_data_flow(reg)
    _install_abrupt(reg)


__all__ = ["install", "BROKEN", "CONTINUED", "FAILED", "Null"]
