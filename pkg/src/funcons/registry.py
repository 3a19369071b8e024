"""Funcon signatures and the append-only registry of funcon definitions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Optional

from .errors import ArityError, DuplicateNameError, UnknownFunconError
from .terms import App, Term, Value, is_done, is_name

if TYPE_CHECKING:
    from .engine import StepContext

RewriteRule = Callable[[tuple[Term, ...]], Optional[Term]]
TransitionRule = Callable[[tuple[Term, ...], "StepContext"], Term]

ONE, OPTIONAL, STAR = "one", "optional", "star"


@dataclass(frozen=True)
class Param:
    strict: bool
    multiplicity: str = ONE
    type: str = "values"


def strict(type: str = "values", multiplicity: str = ONE) -> Param:
    return Param(True, multiplicity, type)


def lazy(type: str = "values", multiplicity: str = ONE) -> Param:
    return Param(False, multiplicity, type)


@dataclass(frozen=True)
class FunconSig:
    name: str
    params: tuple[Param, ...] = ()
    result: str = "values"
    entities: frozenset[str] = frozenset()

    def __post_init__(self):
        if not is_name(self.name):
            raise ValueError(f"not a funcon name: {self.name!r}")
        stars = sum(p.multiplicity == STAR for p in self.params)
        if stars > 1:
            raise ValueError(f"{self.name}: at most one star parameter")

    @property
    def min_arity(self) -> int:
        return sum(p.multiplicity == ONE for p in self.params)

    @property
    def max_arity(self) -> float:
        if any(p.multiplicity == STAR for p in self.params):
            return float("inf")
        return sum(p.multiplicity != STAR for p in self.params)

    def arity_ok(self, n: int) -> bool:
        return self.min_arity <= n <= self.max_arity

    def expected(self) -> str:
        lo, hi = self.min_arity, self.max_arity
        if hi == float("inf"):
            return f"at least {lo}"
        if lo == hi:
            return str(lo)
        return f"{lo} to {int(hi)}"

    def strictness(self, n: int) -> tuple[bool, ...]:
        """Strictness of each of ``n`` actual arguments.

        Parameters before a star parameter bind leading arguments, those after
        it bind trailing arguments, and the star covers whatever is between.
        """
        params = self.params
        star = next((i for i, p in enumerate(params) if p.multiplicity == STAR), None)
        if star is None:
            out = [p.strict for p in params[:n]]
            return tuple(out + [out[-1] if out else True] * (n - len(out)))
        before, after = params[:star], params[star + 1 :]
        middle = n - len(before) - len(after)
        if middle < 0:
            return tuple(p.strict for p in (before + after)[:n])
        return tuple(
            [p.strict for p in before] + [params[star].strict] * middle + [p.strict for p in after]
        )


@dataclass
class Funcon:
    sig: FunconSig
    rewrite: RewriteRule | None = None
    transition: TransitionRule | None = None
    # value constructors fold into values as soon as their arguments are values
    constructor: bool = False

    @property
    def name(self) -> str:
        return self.sig.name


@dataclass
class Registry:
    funcons: dict[str, Funcon] = field(default_factory=dict)
    aliases: dict[str, str] = field(default_factory=dict)
    constants: dict[str, Value] = field(default_factory=dict)

    def _check_fresh(self, name: str) -> None:
        if name in self.funcons or name in self.aliases or name in self.constants:
            raise DuplicateNameError(name)

    def register(
        self,
        sig: FunconSig,
        rewrite: RewriteRule | None = None,
        transition: TransitionRule | None = None,
        *,
        constructor: bool = False,
    ) -> Funcon:
        self._check_fresh(sig.name)
        f = Funcon(sig, rewrite, transition, constructor)
        self.funcons[sig.name] = f
        return f

    def alias(self, alias: str, target: str) -> None:
        if not is_name(alias):
            raise ValueError(f"not a funcon name: {alias!r}")
        self._check_fresh(alias)
        self.resolve(target)
        self.aliases[alias] = self.aliases.get(target, target)

    def constant(self, name: str, value: Value) -> None:
        if not is_name(name):
            raise ValueError(f"not a funcon name: {name!r}")
        self._check_fresh(name)
        self.constants[name] = value

    def resolve(self, name: str) -> str:
        name = self.aliases.get(name, name)
        if name not in self.funcons and name not in self.constants:
            raise UnknownFunconError(name)
        return name

    def __contains__(self, name: str) -> bool:
        name = self.aliases.get(name, name)
        return name in self.funcons or name in self.constants

    def get(self, name: str) -> Funcon:
        try:
            return self.funcons[self.aliases.get(name, name)]
        except KeyError:
            raise UnknownFunconError(name) from None

    def check_arity(self, name: str, n: int) -> None:
        sig = self.get(name).sig
        if not sig.arity_ok(n):
            raise ArityError(name, n, sig.expected())

    def is_constant_name(self, name: str, value: Value) -> bool:
        return self.constants.get(name) == value

    def app(self, name: str, *args: Term) -> Term:
        """Build ``name(args)``, folding value constructors applied to values."""
        canon = self.resolve(name)
        if canon in self.constants:
            if args:
                raise ArityError(name, len(args), "0")
            return self.constants[canon]
        f = self.funcons[canon]
        if not f.sig.arity_ok(len(args)):
            raise ArityError(name, len(args), f.sig.expected())
        if f.constructor and f.rewrite is not None:
            flags = f.sig.strictness(len(args))
            if all(is_done(a) for a, s in zip(args, flags) if s):
                folded = f.rewrite(args)
                if folded is not None:
                    return folded
        return App(canon, args)

    def copy(self) -> Registry:
        return Registry(dict(self.funcons), dict(self.aliases), dict(self.constants))
