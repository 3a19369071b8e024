"""The shipped funcon library."""

from __future__ import annotations

from ..registry import Registry
from . import context, data, flow


def default_registry() -> Registry:
    """A fresh registry holding every shipped funcon."""
    reg = Registry()
    data.install(reg)
    flow.install(reg)
    context.install(reg)
    return reg


DEFAULT = default_registry()

__all__ = ["DEFAULT", "default_registry"]
