"""Name binding, imperative variables, and standard-in/standard-out."""

from __future__ import annotations

from ..errors import AbruptSignal, NoRuleApplies
from ..registry import STAR, FunconSig, Registry, lazy, strict
from ..terms import (
    EMPTY_MAP,
    NULL,
    App,
    Datatype,
    Link,
    MapVal,
    Null,
    SetVal,
    Term,
    TypeVal,
    Value,
    Variable,
    as_string,
    flat_values,
    identifier,
    identifier_name,
    is_done,
    is_ground,
    seq,
    type_member,
    values_of,
    walk,
)
from .flow import FAILED


def _fail():
    raise AbruptSignal(FAILED)


def as_identifier(v: Value) -> Value | None:
    """Identifiers are ``identifier("x")``; a bare string is accepted for them."""
    if identifier_name(v) is not None:
        return v
    s = as_string(v)
    if s is not None and s:
        return identifier(s)
    return None


def _env_value(v: Value) -> MapVal | None:
    return v if isinstance(v, MapVal) else None


# -- binding -----------------------------------------------------------------


def _deref(v: Value, ctx) -> Value:
    seen = set()
    while isinstance(v, Link):
        if v.id in seen:
            raise NoRuleApplies("link cycle")
        seen.add(v.id)
        target = ctx.state.links.get(v.id)
        if target is None:
            raise NoRuleApplies(f"link #{v.id} read before set")
        v = target
    return v


def _install_binding(reg: Registry) -> None:
    def bind_value(args):
        v = flat_values(args)
        if len(v) != 2:
            return None
        i = as_identifier(v[0])
        return None if i is None else MapVal({i: (v[1],)})

    def unbind(args):
        v = flat_values(args)
        i = as_identifier(v[0]) if len(v) == 1 else None
        return None if i is None else MapVal({i: ()})

    reg.register(FunconSig("bind-value", (strict("identifiers"), strict()), "environments"), bind_value)
    reg.alias("bind", "bind-value")
    reg.register(FunconSig("unbind", (strict("identifiers"),), "environments"), unbind)

    def bound_value(args, ctx):
        v = flat_values(args)
        i = as_identifier(v[0]) if len(v) == 1 else None
        if i is None:
            raise NoRuleApplies("bound-value: argument is not an identifier")
        found = ctx.env.get(i)
        if not found:
            _fail()
        return _deref(found[0], ctx)

    reg.register(
        FunconSig("bound-value", (strict("identifiers"),), entities=frozenset({"environment", "links"})),
        None,
        bound_value,
    )
    reg.alias("bound", "bound-value")

    def scope_rw(args):
        if len(values_of(args[0])) == 1 and isinstance(values_of(args[0])[0], MapVal) and is_done(args[1]):
            return args[1]
        return None

    def scope_tr(args, ctx):
        v = values_of(args[0])
        rho = _env_value(v[0]) if len(v) == 1 else None
        if rho is None:
            raise NoRuleApplies("scope: first argument is not an environment")
        return App("scope", (rho, ctx.sub(args[1], 1, env=rho.override(ctx.env))))

    reg.register(
        FunconSig("scope", (strict("environments"), lazy()), entities=frozenset({"environment"})),
        scope_rw,
        scope_tr,
    )

    def closed_tr(args, ctx):
        return App("closed", (ctx.sub(args[0], 0, env=EMPTY_MAP),))

    reg.register(FunconSig("closed", (lazy(),)), lambda a: a[0] if is_done(a[0]) else None, closed_tr)

    def accumulate_rw(args):
        if not args:
            return EMPTY_MAP
        if len(args) == 1:
            return args[0]
        if len(args) > 2:
            return App("accumulate", (args[0], App("accumulate", args[1:])))
        d1, d2 = values_of(args[0]), args[1]
        if len(d1) != 1 or not isinstance(d1[0], MapVal):
            return None
        if is_done(d2):
            d2v = values_of(d2)
            if len(d2v) == 1 and isinstance(d2v[0], MapVal):
                return d2v[0].override(d1[0])
            return None
        return None

    def accumulate_tr(args, ctx):
        if len(args) != 2:
            raise NoRuleApplies("accumulate: malformed")
        d1 = values_of(args[0])
        if len(d1) != 1 or not isinstance(d1[0], MapVal):
            raise NoRuleApplies("accumulate: first declaration did not compute an environment")
        rho1 = d1[0]
        return App("accumulate", (rho1, ctx.sub(args[1], 1, env=rho1.override(ctx.env))))

    # first argument strict, the rest are evaluated in the extended environment
    reg.register(
        FunconSig("accumulate", (strict("environments", "optional"), lazy("environments", STAR))),
        accumulate_rw,
        accumulate_tr,
    )

    def collateral(args):
        v = flat_values(args)
        if not all(isinstance(x, MapVal) for x in v):
            return None
        return App("map-unite", tuple(v))

    reg.register(FunconSig("collateral", (strict("environments", STAR),), "environments"), collateral)

    def bind_recursively(args):
        v = values_of(args[0])
        i = as_identifier(v[0]) if len(v) == 1 else None
        if i is None:
            return None
        return App("recursive", (SetVal(frozenset({i})), App("bind-value", (i, args[1]))))

    reg.register(FunconSig("bind-recursively", (strict("identifiers"), lazy())), bind_recursively)

    def recursive(args, ctx):
        from ..syntax import print_term

        v = values_of(args[0])
        if len(v) != 1 or not isinstance(v[0], SetVal):
            raise NoRuleApplies("recursive: first argument is not a set of identifiers")
        ids = []
        for x in sorted(v[0].elements, key=print_term):
            i = as_identifier(x)
            if i is None:
                raise NoRuleApplies("recursive: set contains a non-identifier")
            ids.append(i)
        state = ctx.state
        links = {}
        for i in ids:
            link = Link(state.next_link)
            state.next_link += 1
            state.links[link.id] = None
            links[i] = (link,)
        return App("set-forward-links", (MapVal(links), args[1]))

    reg.register(
        FunconSig("recursive", (strict("sets"), lazy("environments")), entities=frozenset({"links"})),
        None,
        recursive,
    )

    def set_links_tr(args, ctx):
        link_env, d = values_of(args[0])[0], args[1]
        if not is_done(d):
            return App("set-forward-links", (link_env, ctx.sub(d, 1, env=link_env.override(ctx.env))))
        dv = values_of(d)
        if len(dv) != 1 or not isinstance(dv[0], MapVal):
            raise NoRuleApplies("recursive: declarations did not compute an environment")
        rho = dv[0]
        links = ctx.state.links
        for i, (link,) in link_env.items():
            bound = rho.get(i)
            if not bound:
                raise NoRuleApplies(f"recursive: {identifier_name(i)} not bound by the declarations")
            if links.get(link.id) is not None:
                raise NoRuleApplies(f"link #{link.id} set twice")
            links[link.id] = bound[0]
        if ctx.interp.link_checks:
            for vs in [vs for _, vs in rho.items()]:
                for x in vs:
                    for inner in walk(x):
                        if isinstance(inner, Link) and links.get(inner.id) is None:
                            raise NoRuleApplies(f"link #{inner.id} left unset after recursive declaration")
        return rho

    reg.register(FunconSig("set-forward-links", (strict("environments"), lazy())), None, set_links_tr)


# -- storing -----------------------------------------------------------------


def _var(v: Value, ctx) -> Variable:
    if not isinstance(v, Variable):
        raise NoRuleApplies("expected a variable")
    if v.location not in ctx.state.store:
        raise NoRuleApplies(f"variable #{v.location} is not allocated")
    return v


def _assign(var: Variable, value: Value, ctx) -> None:
    if not type_member(value, var.type):
        _fail()
    ctx.state.store[var.location] = value


def _assigned(var: Variable, ctx) -> Value:
    stored = ctx.state.store[var.location]
    if stored is None:
        _fail()
    return stored  # type: ignore[return-value]


def _install_storing(reg: Registry) -> None:
    store = frozenset({"store"})

    def allocate(args, ctx):
        v = flat_values(args)
        if len(v) != 1 or not isinstance(v[0], TypeVal):
            raise NoRuleApplies("allocate-variable: argument is not a type")
        state = ctx.state
        loc = state.next_location
        state.next_location += 1
        state.store[loc] = None
        return Variable(loc, v[0])

    reg.register(FunconSig("allocate-variable", (strict("value-types"),), "variables", store), None, allocate)

    def recycle(args, ctx):
        for v in flat_values(args):
            del ctx.state.store[_var(v, ctx).location]
        return NULL

    reg.register(FunconSig("recycle-variables", (strict("variables", STAR),), "null-type", store), None, recycle)

    def two(args, ctx) -> tuple[Variable, Value]:
        v = flat_values(args)
        if len(v) != 2:
            raise NoRuleApplies("expected a variable and a value")
        return _var(v[0], ctx), v[1]

    def initialise(args, ctx):
        var, value = two(args, ctx)
        _assign(var, value, ctx)
        return NULL

    def assign(args, ctx):
        var, value = two(args, ctx)
        _assign(var, value, ctx)
        return NULL

    reg.register(FunconSig("initialise-variable", (strict("variables"), strict()), "null-type", store), None, initialise)
    reg.register(FunconSig("assign", (strict("variables"), strict()), "null-type", store), None, assign)

    def alloc_init(args):
        v = flat_values(args)
        if len(v) != 2 or not isinstance(v[0], TypeVal):
            return None
        given = App("given")
        return App(
            "give",
            (App("allocate-variable", (v[0],)), App("sequential", (App("initialise-variable", (given, v[1])), given))),
        )

    reg.register(FunconSig("allocate-initialised-variable", (strict("value-types"), strict()), "variables"), alloc_init)
    reg.alias("alloc-init", "allocate-initialised-variable")

    def one(args):
        v = flat_values(args)
        if len(v) != 1:
            raise NoRuleApplies("expected one argument")
        return v[0]

    def assigned(args, ctx):
        return _assigned(_var(one(args), ctx), ctx)

    reg.register(FunconSig("assigned", (strict("variables"),), entities=store), None, assigned)
    reg.alias("assigned-value", "assigned")

    def current_value(args, ctx):
        v = one(args)
        return _assigned(_var(v, ctx), ctx) if isinstance(v, Variable) else v

    reg.register(FunconSig("current-value", (strict(),), entities=store), None, current_value)

    def un_assign(args, ctx):
        var = _var(one(args), ctx)
        ctx.state.store[var.location] = None
        return NULL

    reg.register(FunconSig("un-assign", (strict("variables"),), "null-type", store), None, un_assign)

    def structural_assign(args, ctx):
        v = flat_values(args)
        if len(v) != 2:
            raise NoRuleApplies("structural-assign: expects two values")
        updates: list[tuple[Variable, Value]] = []
        _plan(v[0], v[1], updates, ctx)
        # all checks pass before anything is written
        for var, value in updates:
            if not type_member(value, var.type):
                _fail()
        for var, value in updates:
            ctx.state.store[var.location] = value
        return NULL

    reg.register(FunconSig("structural-assign", (strict(), strict()), "null-type", store), None, structural_assign)

    def structural_assigned(args, ctx):
        return _substitute(one(args), ctx)

    reg.register(FunconSig("structural-assigned", (strict(),), entities=store), None, structural_assigned)


def _plan(target: Value, value: Value, out: list, ctx) -> None:
    if isinstance(target, Variable):
        out.append((_var(target, ctx), value))
        return
    if isinstance(target, Datatype):
        if (
            not isinstance(value, Datatype)
            or value.constructor != target.constructor
            or len(value.args) != len(target.args)
        ):
            _fail()
        for t, v in zip(target.args, value.args):
            _plan(t, v, out, ctx)
        return
    if isinstance(target, MapVal):
        if not isinstance(value, MapVal) or set(target.keys()) != set(value.keys()):
            _fail()
        for k, tv in target.items():
            vv = value.get(k)
            if len(tv) != len(vv):
                _fail()
            for t, v in zip(tv, vv):
                _plan(t, v, out, ctx)
        return
    if not is_ground(target) or not is_ground(value) or target != value:
        _fail()


def _substitute(v: Value, ctx) -> Value:
    if isinstance(v, Variable):
        return _assigned(_var(v, ctx), ctx)
    if isinstance(v, Datatype):
        return Datatype(v.constructor, tuple(_substitute(a, ctx) for a in v.args))
    if isinstance(v, MapVal):
        return MapVal({k: tuple(_substitute(x, ctx) for x in vs) for k, vs in v.items()})
    return v


# -- interaction -------------------------------------------------------------


def _install_interaction(reg: Registry) -> None:
    def read(args, ctx):
        stdin = ctx.state.stdin
        if not stdin or isinstance(stdin[0], Null):
            _fail()
        return stdin.pop(0)

    reg.register(FunconSig("read", (), entities=frozenset({"standard-in"})), None, read)

    def print_(args, ctx):
        v = flat_values(args)
        if not all(is_ground(x) for x in v):
            raise NoRuleApplies("print: values must be ground")
        ctx.state.stdout.extend(v)
        return NULL

    reg.register(
        FunconSig("print", (strict("ground-values", STAR),), "null-type", frozenset({"standard-out"})), None, print_
    )


def install(reg: Registry) -> None:
    _install_binding(reg)
    _install_storing(reg)
    _install_interaction(reg)


__all__ = ["install", "as_identifier", "seq", "Term"]
