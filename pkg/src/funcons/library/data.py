"""Value funcons: primitives, composites, generic datatypes, abstractions,
functions, thunks and patterns.

Data operations are entity-free, so they are all rewrite rules over their
(strict, pre-evaluated) arguments.  A rule returning ``None`` means no rule
applies, which the engine reports as a stuck term; partial operations
instead return the empty sequence.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from ..errors import ArityError, FunconError
from ..registry import STAR, FunconSig, Registry, lazy, strict
from ..terms import (
    EMPTY,
    EMPTY_MAP,
    FALSE,
    NULL,
    TRUE,
    TYPE_NAMES,
    AbsVal,
    App,
    Bool,
    Datatype,
    Int,
    MapVal,
    Seq,
    SetVal,
    Term,
    TypeVal,
    Value,
    flat_values,
    identifier,
    is_ground,
    seq,
    type_member,
)

ValueRule = Callable[[tuple[Value, ...]], Optional[Term]]

FAIL = App("fail")


def _data(reg: Registry, name: str, params, fn: ValueRule, *, constructor: bool = False) -> None:
    def rule(args: tuple[Term, ...]) -> Term | None:
        return fn(flat_values(args))

    reg.register(FunconSig(name, tuple(params)), rule, constructor=constructor)


def _ints(vals: Sequence[Value], n: int | None = None) -> list[int] | None:
    if n is not None and len(vals) != n:
        return None
    if not all(isinstance(v, Int) for v in vals):
        return None
    return [v.value for v in vals]  # type: ignore[attr-defined]


def _bools(vals: Sequence[Value], n: int | None = None) -> list[bool] | None:
    if n is not None and len(vals) != n:
        return None
    if not all(isinstance(v, Bool) for v in vals):
        return None
    return [v.value for v in vals]  # type: ignore[attr-defined]


def _is(v: Value, ctor: str) -> bool:
    return isinstance(v, Datatype) and v.constructor == ctor


def _abs(v: Value, ctor: str) -> AbsVal | None:
    """The abstraction inside ``ctor(abstraction(X))``, if ``v`` has that shape."""
    if _is(v, ctor) and len(v.args) == 1 and isinstance(v.args[0], AbsVal):  # type: ignore[attr-defined]
        return v.args[0]  # type: ignore[attr-defined]
    return None


def call(f: Value, arg: Term) -> Term:
    """Term that gives ``arg`` to a function value or a bare abstraction."""
    if isinstance(f, AbsVal):
        return App("give", (arg, App("enact", (f,))))
    return App("apply", (f, arg))


def _truncdiv(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


# -- booleans and integers ---------------------------------------------------


def _install_primitives(reg: Registry) -> None:
    reg.constant("true", TRUE)
    reg.constant("false", FALSE)
    reg.constant("null-value", NULL)
    reg.alias("null", "null-value")

    def not_(v):
        b = _bools(v, 1)
        return None if b is None else Bool(not b[0])

    def and_(v):
        b = _bools(v)
        return None if b is None else Bool(all(b))

    def or_(v):
        b = _bools(v)
        return None if b is None else Bool(any(b))

    def implies(v):
        b = _bools(v, 2)
        return None if b is None else Bool((not b[0]) or b[1])

    def xor(v):
        b = _bools(v, 2)
        return None if b is None else Bool(b[0] != b[1])

    def is_equal(v):
        if len(v) != 2 or not (is_ground(v[0]) and is_ground(v[1])):
            return None
        return Bool(v[0] == v[1])

    _data(reg, "not", [strict("booleans")], not_)
    _data(reg, "and", [strict("booleans", STAR)], and_)
    _data(reg, "or", [strict("booleans", STAR)], or_)
    _data(reg, "implies", [strict("booleans"), strict("booleans")], implies)
    _data(reg, "exclusive-or", [strict("booleans"), strict("booleans")], xor)
    _data(reg, "is-equal", [strict("ground-values"), strict("ground-values")], is_equal)

    def binary(fn):
        def rule(v):
            i = _ints(v, 2)
            return None if i is None else fn(*i)

        return rule

    def add(v):
        i = _ints(v)
        return None if i is None else Int(sum(i))

    def multiply(v):
        i = _ints(v)
        if i is None:
            return None
        r = 1
        for x in i:
            r *= x
        return Int(r)

    def negate(v):
        i = _ints(v, 1)
        return None if i is None else Int(-i[0])

    def absolute(v):
        i = _ints(v, 1)
        return None if i is None else Int(abs(i[0]))

    def successor(v):
        i = _ints(v, 1)
        return None if i is None or i[0] < 0 else Int(i[0] + 1)

    def predecessor(v):
        i = _ints(v, 1)
        if i is None or i[0] < 0:
            return None
        return EMPTY if i[0] == 0 else Int(i[0] - 1)

    ints = "integers"
    _data(reg, "integer-add", [strict(ints, STAR)], add)
    _data(reg, "integer-subtract", [strict(ints), strict(ints)], binary(lambda a, b: Int(a - b)))
    _data(reg, "integer-multiply", [strict(ints, STAR)], multiply)
    _data(
        reg,
        "integer-divide",
        [strict(ints), strict(ints)],
        binary(lambda a, b: EMPTY if b == 0 else Int(_truncdiv(a, b))),
    )
    _data(
        reg,
        "integer-modulo",
        [strict(ints), strict(ints)],
        binary(lambda a, b: EMPTY if b == 0 else Int(a - b * _truncdiv(a, b))),
    )
    _data(reg, "integer-negate", [strict(ints)], negate)
    _data(reg, "integer-absolute-value", [strict(ints)], absolute)
    _data(reg, "is-less", [strict(ints), strict(ints)], binary(lambda a, b: Bool(a < b)))
    _data(reg, "is-less-or-equal", [strict(ints), strict(ints)], binary(lambda a, b: Bool(a <= b)))
    _data(reg, "is-greater", [strict(ints), strict(ints)], binary(lambda a, b: Bool(a > b)))
    _data(reg, "is-greater-or-equal", [strict(ints), strict(ints)], binary(lambda a, b: Bool(a >= b)))
    _data(reg, "natural-successor", [strict("naturals")], successor)
    _data(reg, "natural-predecessor", [strict("naturals")], predecessor)

    def cast(v):
        if len(v) != 2 or not isinstance(v[0], TypeVal):
            return None
        return v[1] if type_member(v[1], v[0]) else EMPTY

    def in_type(v):
        if len(v) != 2 or not isinstance(v[1], TypeVal):
            return None
        return Bool(type_member(v[0], v[1]))

    _data(reg, "bounded-cast", [strict("value-types"), strict()], cast)
    _data(reg, "is-in-type", [strict(), strict("value-types")], in_type)


# -- types -------------------------------------------------------------------


def _install_types(reg: Registry) -> None:
    for name, arity in TYPE_NAMES.items():
        if arity == 0:
            reg.constant(name, TypeVal(name))
            continue

        def make(v, name=name, arity=arity):
            if arity >= 0 and len(v) != arity:
                return None
            if name == "bounded" and _ints(v) is None:
                return None
            return TypeVal(name, v)

        mult = STAR if arity < 0 else "one"
        params = [strict("values", mult)] * (1 if arity < 0 else arity)
        _data(reg, name, params, make, constructor=True)


# -- generic datatypes, tuples, lists ----------------------------------------


def register_datatype(reg: Registry, name: str, arity: int | None = None) -> None:
    """Introduce a new algebraic datatype constructor.

    ``arity=None`` takes any number of arguments; a nullary constructor is
    registered as a constant.
    """
    if arity == 0:
        reg.constant(name, Datatype(name))
        return

    def make(v):
        if arity is not None and len(v) != arity:
            return None
        return Datatype(name, v)

    params = [strict("values", STAR)] if arity is None else [strict()] * arity
    _data(reg, name, params, make, constructor=True)


def datatype_construct(constructor: str, args: Sequence[Value], registry: Registry | None = None) -> Value:
    """Construct a datatype value by constructor name, checking arity."""
    if registry is None:
        from . import DEFAULT as registry
    name = registry.resolve(constructor)
    if name in registry.constants:
        if args:
            raise ArityError(constructor, len(args), "0")
        return registry.constants[name]
    f = registry.get(name)
    if not f.constructor:
        raise FunconError(f"{constructor} is not a value constructor")
    v = registry.app(name, *args)
    if not isinstance(v, Value):
        raise FunconError(f"{constructor} does not accept these arguments")
    return v


def _install_composites(reg: Registry) -> None:
    for name in ("broken", "continued", "failed"):
        register_datatype(reg, name, 0)
    for name in ("thrown", "returned"):
        register_datatype(reg, name, 1)
    register_datatype(reg, "tuple")
    register_datatype(reg, "list")

    def make_identifier(v):
        if len(v) != 1 or not type_member(v[0], TypeVal("strings")):
            return None
        return Datatype("identifier", v)

    _data(reg, "identifier", [strict("strings")], make_identifier, constructor=True)

    def elements_of(ctor):
        def rule(v):
            if len(v) != 1 or not _is(v[0], ctor):
                return None
            return seq(v[0].args)  # type: ignore[attr-defined]

        return rule

    _data(reg, "tuple-elements", [strict("tuples")], elements_of("tuple"))
    _data(reg, "list-elements", [strict("lists")], elements_of("list"))

    def pair_elements(v):
        if len(v) != 1 or not _is(v[0], "tuple") or len(v[0].args) != 2:  # type: ignore[attr-defined]
            return None
        return Seq(v[0].args)  # type: ignore[attr-defined]

    _data(reg, "pair-elements", [strict("tuples")], pair_elements)

    def one_list(v):
        if len(v) != 1 or not _is(v[0], "list"):
            return None
        return v[0].args  # type: ignore[attr-defined]

    def head(v):
        xs = one_list(v)
        if xs is None:
            return None
        return xs[0] if xs else EMPTY

    def tail(v):
        xs = one_list(v)
        if xs is None:
            return None
        return Datatype("list", xs[1:]) if xs else EMPTY

    def length(v):
        xs = one_list(v)
        return None if xs is None else Int(len(xs))

    def reverse(v):
        xs = one_list(v)
        return None if xs is None else Datatype("list", xs[::-1])

    def cons(v):
        if len(v) != 2 or not _is(v[1], "list"):
            return None
        return Datatype("list", (v[0],) + v[1].args)  # type: ignore[attr-defined]

    def concatenate(v):
        if not all(_is(x, "list") for x in v):
            return None
        return Datatype("list", tuple(e for x in v for e in x.args))  # type: ignore[attr-defined]

    def index(v):
        if not v or not isinstance(v[0], Int):
            return None
        n, rest = v[0].value, v[1:]
        return rest[n - 1] if 1 <= n <= len(rest) else EMPTY

    _data(reg, "head", [strict("lists")], head)
    _data(reg, "tail", [strict("lists")], tail)
    _data(reg, "length", [strict("lists")], length)
    _data(reg, "reverse", [strict("lists")], reverse)
    _data(reg, "cons", [strict(), strict("lists")], cons)
    _data(reg, "concatenate", [strict("lists", STAR)], concatenate)
    _data(reg, "index", [strict("naturals"), strict("values", STAR)], index)


# -- sets and maps -----------------------------------------------------------


def _install_collections(reg: Registry) -> None:
    def make_set(v):
        if not all(is_ground(x) for x in v):
            return None
        return SetVal(frozenset(v))

    def sets(v, n=None):
        if n is not None and len(v) != n:
            return None
        if not all(isinstance(x, SetVal) for x in v):
            return None
        return [x.elements for x in v]

    def set_elements(v):
        from ..syntax import print_term

        s = sets(v, 1)
        if s is None:
            return None
        return seq(sorted(s[0], key=print_term))

    def is_in_set(v):
        if len(v) != 2 or not isinstance(v[1], SetVal) or not is_ground(v[0]):
            return None
        return Bool(v[0] in v[1].elements)

    def set_insert(v):
        if len(v) != 2 or not isinstance(v[1], SetVal) or not is_ground(v[0]):
            return None
        return SetVal(v[1].elements | {v[0]})

    def set_unite(v):
        s = sets(v)
        return None if s is None else SetVal(frozenset().union(*s))

    def set_intersect(v):
        s = sets(v)
        if not s:
            return None
        return SetVal(frozenset.intersection(*s))

    def set_difference(v):
        s = sets(v, 2)
        return None if s is None else SetVal(s[0] - s[1])

    def set_size(v):
        s = sets(v, 1)
        return None if s is None else Int(len(s[0]))

    _data(reg, "set", [strict("ground-values", STAR)], make_set, constructor=True)
    _data(reg, "set-elements", [strict("sets")], set_elements)
    _data(reg, "is-in-set", [strict("ground-values"), strict("sets")], is_in_set)
    _data(reg, "set-insert", [strict("ground-values"), strict("sets")], set_insert)
    _data(reg, "set-unite", [strict("sets", STAR)], set_unite)
    _data(reg, "set-intersect", [strict("sets"), strict("sets", STAR)], set_intersect)
    _data(reg, "set-difference", [strict("sets"), strict("sets")], set_difference)
    _data(reg, "set-size", [strict("sets")], set_size)

    def make_map(v):
        entries: dict[Value, tuple[Value, ...]] = {}
        for t in v:
            if not _is(t, "tuple") or len(t.args) not in (1, 2):  # type: ignore[attr-defined]
                return None
            k, rest = t.args[0], t.args[1:]  # type: ignore[attr-defined]
            if not is_ground(k) or k in entries:
                return None
            entries[k] = rest
        return MapVal(entries)

    def maps(v, n=None):
        if n is not None and len(v) != n:
            return None
        if not all(isinstance(x, MapVal) for x in v):
            return None
        return list(v)

    def map_lookup(v):
        if len(v) != 2 or not isinstance(v[0], MapVal) or not is_ground(v[1]):
            return None
        return seq(v[0].get(v[1], ()))

    def map_domain(v):
        m = maps(v, 1)
        return None if m is None else SetVal(frozenset(m[0].keys()))

    def map_override(v):
        m = maps(v)
        if m is None:
            return None
        out = EMPTY_MAP
        for x in reversed(m):
            out = x.override(out)
        return out

    def map_unite(v):
        m = maps(v)
        if m is None:
            return None
        merged: dict = {}
        for x in m:
            for k, vs in x.items():
                if k in merged:
                    return FAIL
                merged[k] = vs
        return MapVal(merged)

    def map_delete(v):
        if len(v) != 2 or not isinstance(v[0], MapVal) or not isinstance(v[1], SetVal):
            return None
        return MapVal({k: vs for k, vs in v[0].items() if k not in v[1].elements})

    def map_elements(v):
        from ..syntax import print_term

        m = maps(v, 1)
        if m is None:
            return None
        keys = sorted(m[0].keys(), key=print_term)
        return seq(Datatype("tuple", (k,) + m[0].get(k)) for k in keys)

    _data(reg, "map", [strict("tuples", STAR)], make_map, constructor=True)
    _data(reg, "map-lookup", [strict("maps"), strict("ground-values")], map_lookup)
    _data(reg, "map-domain", [strict("maps")], map_domain)
    _data(reg, "map-override", [strict("maps", STAR)], map_override)
    _data(reg, "map-unite", [strict("maps", STAR)], map_unite)
    _data(reg, "map-delete", [strict("maps"), strict("sets")], map_delete)
    _data(reg, "map-elements", [strict("maps")], map_elements)


# -- abstractions, thunks, functions -----------------------------------------


def _install_abstractions(reg: Registry) -> None:
    reg.register(
        FunconSig("abstraction", (lazy(),), "abstractions"),
        lambda args: AbsVal(args[0]),
        constructor=True,
    )

    def closure(args, ctx):
        return AbsVal(App("closed", (App("scope", (ctx.env, args[0])),)))

    reg.register(FunconSig("closure", (lazy(),), "abstractions", frozenset({"environment"})), None, closure)

    def enact(v):
        if len(v) != 1 or not isinstance(v[0], AbsVal):
            return None
        return v[0].body

    _data(reg, "enact", [strict("abstractions")], enact)

    for ctor in ("thunk", "function", "pattern"):

        def wrap(v, ctor=ctor):
            if len(v) != 1 or not isinstance(v[0], AbsVal):
                return None
            return Datatype(ctor, v)

        _data(reg, ctor, [strict("abstractions")], wrap, constructor=True)

    def force(v):
        a = _abs(v[0], "thunk") if len(v) == 1 else None
        return None if a is None else App("no-given", (a.body,))

    def apply(v):
        a = _abs(v[0], "function") if len(v) == 2 else None
        return None if a is None else App("give", (v[1], a.body))

    def supply(v):
        a = _abs(v[0], "function") if len(v) == 2 else None
        if a is None:
            return None
        return Datatype("thunk", (AbsVal(App("give", (v[1], a.body))),))

    def function_of(body: Term) -> Value:
        return Datatype("function", (AbsVal(body),))

    given = App("given")

    def compose(v):
        if len(v) != 2 or _abs(v[0], "function") is None or _abs(v[1], "function") is None:
            return None
        return function_of(App("apply", (v[0], App("apply", (v[1], given)))))

    def curry(v):
        if len(v) != 1 or _abs(v[0], "function") is None:
            return None
        return function_of(App("partial-apply", (v[0], given)))

    def partial_apply(v):
        if len(v) != 2 or _abs(v[0], "function") is None:
            return None
        return function_of(App("apply", (v[0], App("tuple", (v[1], given)))))

    def uncurry(v):
        if len(v) != 1 or _abs(v[0], "function") is None:
            return None
        first = App("index", (Int(1), App("pair-elements", (given,))))
        second = App("index", (Int(2), App("pair-elements", (given,))))
        return function_of(App("apply", (App("apply", (v[0], first)), second)))

    _data(reg, "force", [strict("thunks")], force)
    _data(reg, "apply", [strict("functions"), strict()], apply)
    _data(reg, "supply", [strict("functions"), strict()], supply)
    _data(reg, "compose", [strict("functions"), strict("functions")], compose)
    _data(reg, "curry", [strict("functions")], curry)
    _data(reg, "uncurry", [strict("functions")], uncurry)
    _data(reg, "partial-apply", [strict("functions"), strict()], partial_apply)


# -- patterns ----------------------------------------------------------------


def _install_patterns(reg: Registry) -> None:
    given = App("given")

    def pattern_of(body: Term) -> Value:
        return Datatype("pattern", (AbsVal(body),))

    def pattern_bind(v):
        if len(v) != 1:
            return None
        return pattern_of(App("bind-value", (v[0], given)))

    def pattern_any(v):
        return pattern_of(EMPTY_MAP) if not v else None

    def pattern_value(v):
        if len(v) != 1 or not is_ground(v[0]):
            return None
        test = App("is-equal", (given, v[0]))
        return pattern_of(App("if-true-else", (test, EMPTY_MAP, FAIL)))

    def pattern_tuple(v):
        return Datatype("tuple", v)

    def match(v):
        if len(v) != 2:
            return None
        return _match(v[0], v[1])

    _data(reg, "pattern-bind", [strict("identifiers")], pattern_bind)
    _data(reg, "pattern-any", [], pattern_any)
    _data(reg, "pattern-value", [strict("ground-values")], pattern_value)
    _data(reg, "pattern-tuple", [strict("patterns", STAR)], pattern_tuple)
    _data(reg, "match", [strict(), strict("patterns")], match)


def _match(value: Value, pat: Value) -> Term | None:
    a = _abs(pat, "pattern")
    if a is not None:
        return App("give", (value, a.body))
    if isinstance(pat, Datatype) and not is_ground(pat):
        if not isinstance(value, Datatype) or value.constructor != pat.constructor or len(value.args) != len(pat.args):
            return FAIL
        if not pat.args:
            return EMPTY_MAP
        return App("collateral", tuple(App("match", (x, p)) for x, p in zip(value.args, pat.args)))
    if not is_ground(pat):
        return None
    if not is_ground(value):
        return FAIL
    return EMPTY_MAP if value == pat else FAIL


def install(reg: Registry) -> None:
    _install_primitives(reg)
    _install_types(reg)
    _install_composites(reg)
    _install_collections(reg)
    _install_abstractions(reg)
    _install_patterns(reg)


__all__ = ["install", "call", "register_datatype", "datatype_construct", "identifier"]
