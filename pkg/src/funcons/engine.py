"""Small-step execution of funcon terms.

Each funcon contributes a *rewrite* rule (entity-free, written ``~>`` in
funcon definitions) and/or a *transition* rule (which may read contextual
entities, update the store, consume input, emit output, or signal abrupt
termination).  Strict arguments are stepped by generic congruence before
either rule is consulted; lazy arguments are left to the funcon's own rules.

Contextual entities (environment, given value) are passed down the term as
arguments and never returned.  Mutable entities (store, links) and the
streams live in one ``EntityState`` threaded through a run.  The control
entity is a Python exception, ``AbruptSignal``, which propagates through
every enclosing funcon unless a handler's transition rule catches it.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import AbruptSignal, NoRuleApplies
from .registry import Registry
from .terms import EMPTY_MAP, App, MapVal, Seq, Term, Value, is_done, seq, values_of

DEFAULT_MAX_STEPS = 1_000_000


@dataclass
class EntityState:
    env: MapVal = EMPTY_MAP
    given: tuple[Value, ...] = ()
    # location -> stored value, or None while uninitialised
    store: dict[int, Value | None] = field(default_factory=dict)
    # link id -> referenced value, or None until set
    links: dict[int, Value | None] = field(default_factory=dict)
    stdin: list[Value] = field(default_factory=list)
    stdout: list[Value] = field(default_factory=list)
    next_location: int = 0
    next_link: int = 0

    def copy(self) -> EntityState:
        return EntityState(
            self.env,
            self.given,
            dict(self.store),
            dict(self.links),
            list(self.stdin),
            list(self.stdout),
            self.next_location,
            self.next_link,
        )


class Scheduler:
    """Resolves the freedom the semantics leaves over evaluation order.

    Seed 0 is the deterministic leftmost-first policy; any other seed picks
    pseudo-randomly but reproducibly.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed) if seed else None

    def pick(self, candidates: Sequence[int]) -> int:
        if self._rng is None or len(candidates) == 1:
            return candidates[0]
        return self._rng.choice(list(candidates))

    def permutation(self, n: int) -> list[int]:
        order = list(range(n))
        if self._rng is not None:
            self._rng.shuffle(order)
        return order


class StepContext:
    """What a transition rule sees: contextual entities plus the machine."""

    __slots__ = ("interp", "env", "given", "path")

    def __init__(self, interp: Interpreter, env: MapVal, given: tuple[Value, ...], path: tuple[int, ...]):
        self.interp = interp
        self.env = env
        self.given = given
        self.path = path

    @property
    def state(self) -> EntityState:
        return self.interp.state

    @property
    def scheduler(self) -> Scheduler:
        return self.interp.scheduler

    @property
    def registry(self) -> Registry:
        return self.interp.registry

    def sub(self, t: Term, index: int, *, env: MapVal | None = None, given: tuple[Value, ...] | None = None) -> Term:
        """One step of argument ``index`` (the term ``t``), optionally with
        overridden contextual entities."""
        return self.interp._step(
            t,
            self.env if env is None else env,
            self.given if given is None else given,
            self.path + (index,),
        )


# -- outcomes ----------------------------------------------------------------


@dataclass(frozen=True)
class Stepped:
    next: Term
    state: EntityState
    out: tuple[Value, ...]


@dataclass(frozen=True)
class Signalled:
    reason: Value
    state: EntityState
    out: tuple[Value, ...]


@dataclass(frozen=True)
class Done:
    result: tuple[Value, ...]


@dataclass(frozen=True)
class StuckError:
    diagnostic: str


StepOutcome = Union[Stepped, Signalled, Done, StuckError]


@dataclass(frozen=True)
class Normal:
    result: tuple[Value, ...]

    def __str__(self):
        from .syntax import print_term

        return f"Normal({print_term(seq(self.result))})"


@dataclass(frozen=True)
class Abrupted:
    reason: Value

    def __str__(self):
        from .syntax import print_term

        return f"Abrupted({print_term(self.reason)})"


@dataclass(frozen=True)
class Diverged:
    def __str__(self):
        return "Diverged"


@dataclass(frozen=True)
class Stuck:
    diagnostic: str

    def __str__(self):
        return f"Stuck({self.diagnostic})"


Termination = Union[Normal, Abrupted, Diverged, Stuck]


@dataclass
class RunResult:
    termination: Termination
    output: tuple[Value, ...]
    steps: int
    state: EntityState
    trace: list[str] = field(default_factory=list)

    def observable(self) -> tuple:
        """Everything an outside observer can distinguish, minus step counts."""
        return (self.termination, self.output, self.state.store, self.state.links)


# -- the interpreter ---------------------------------------------------------


class Interpreter:
    def __init__(
        self,
        registry: Registry | None = None,
        *,
        seed: int = 0,
        trace: bool = False,
        link_checks: bool = True,
        state: EntityState | None = None,
    ):
        if registry is None:
            from .library import DEFAULT as registry
        self.registry = registry
        self.scheduler = Scheduler(seed)
        self.tracing = trace
        self.link_checks = link_checks
        self.state = state if state is not None else EntityState()
        self._redex: tuple[tuple[int, ...], str] | None = None

    def _fired(self, path: tuple[int, ...], name: str) -> None:
        self._redex = (path, name)

    def _step(self, t: Term, env: MapVal, given: tuple[Value, ...], path: tuple[int, ...]) -> Term:
        if isinstance(t, Seq):
            items = t.items
            for i, item in enumerate(items):
                if not is_done(item):
                    new = self._step(item, env, given, path + (i,))
                    return seq(items[:i] + (new,) + items[i + 1 :])
            raise NoRuleApplies("a computed value sequence cannot step")
        if not isinstance(t, App):
            raise NoRuleApplies("a value cannot step")
        f = self.registry.funcons.get(t.name)
        if f is None:
            raise NoRuleApplies(f"unknown funcon {t.name}")
        args = t.args
        flags = f.sig.strictness(len(args))
        pending = [i for i, (a, s) in enumerate(zip(args, flags)) if s and not is_done(a)]
        if pending:
            i = self.scheduler.pick(pending)
            new = self._step(args[i], env, given, path + (i,))
            return App(t.name, args[:i] + (new,) + args[i + 1 :])
        if f.rewrite is not None:
            r = f.rewrite(args)
            if r is not None:
                self._fired(path, t.name)
                return r
        if f.transition is not None:
            self._fired(path, t.name)
            return f.transition(args, StepContext(self, env, given, path))
        from .syntax import print_term

        raise NoRuleApplies(f"no rule for {t.name} applies to {print_term(t)}")

    def step(self, t: Term) -> Term:
        """One transition of the whole term against ``self.state``."""
        return self._step(t, self.state.env, self.state.given, ())

    def run(self, t: Term, max_steps: int = DEFAULT_MAX_STEPS) -> RunResult:
        if max_steps < 1:
            raise ValueError("max_steps must be positive")
        state = self.state
        out_start = len(state.stdout)
        trace: list[str] = []
        steps = 0
        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, 20000))
        try:
            while True:
                if is_done(t):
                    term: Termination = Normal(values_of(t))
                    break
                if steps >= max_steps:
                    term = Diverged()
                    break
                before = len(state.stdout)
                self._redex = None
                signal = None
                try:
                    t = self.step(t)
                except AbruptSignal as s:
                    signal = s.reason
                except NoRuleApplies as e:
                    term = Stuck(str(e))
                    break
                except RecursionError:
                    term = Stuck("term nesting exceeds the interpreter's recursion limit")
                    break
                steps += 1
                if self.tracing:
                    trace.append(self._trace_line(steps, state.stdout[before:], signal))
                if signal is not None:
                    term = Abrupted(signal)
                    break
        finally:
            sys.setrecursionlimit(old_limit)
        if self.tracing:
            trace.append(f"result: {term}")
        return RunResult(term, tuple(state.stdout[out_start:]), steps, state, trace)

    def _trace_line(self, n: int, out: list[Value], signal: Value | None) -> str:
        from .syntax import print_term

        path, name = self._redex or ((), "?")
        where = "/" + "/".join(str(i) for i in path)
        outs = ", ".join(print_term(v) for v in out)
        sig = "none" if signal is None else print_term(signal)
        return f"step {n}: {where} {name} | out=[{outs}] | signal={sig}"


# -- functional entry points -------------------------------------------------


def step(t: Term, s: EntityState, *, registry: Registry | None = None, seed: int = 0) -> StepOutcome:
    if is_done(t):
        return Done(values_of(t))
    state = s.copy()
    interp = Interpreter(registry, seed=seed, state=state)
    before = len(state.stdout)
    try:
        nt = interp.step(t)
    except AbruptSignal as sig:
        return Signalled(sig.reason, state, tuple(state.stdout[before:]))
    except NoRuleApplies as e:
        return StuckError(str(e))
    return Stepped(nt, state, tuple(state.stdout[before:]))


def run(
    t: Term,
    state: EntityState | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    *,
    registry: Registry | None = None,
    seed: int = 0,
    trace: bool = False,
    link_checks: bool = True,
) -> RunResult:
    """Run ``t`` to termination (or the step limit) from a copy of ``state``."""
    s = state.copy() if state is not None else EntityState()
    return Interpreter(registry, seed=seed, trace=trace, link_checks=link_checks, state=s).run(t, max_steps)


def rewrite(t: Term, registry: Registry | None = None) -> Term:
    """Apply entity-free rewrite rules at the root until none applies.

    ``while-true`` unfolds at most once, since its unfolding can reproduce
    itself without any transition in between.
    """
    if registry is None:
        from .library import DEFAULT as registry
    unfolded = False
    while isinstance(t, App):
        f = registry.funcons.get(t.name)
        if f is None or f.rewrite is None:
            break
        flags = f.sig.strictness(len(t.args))
        if any(s and not is_done(a) for a, s in zip(t.args, flags)):
            break
        if t.name == "while-true":
            if unfolded:
                break
            unfolded = True
        r = f.rewrite(t.args)
        if r is None:
            break
        t = r
    return t
