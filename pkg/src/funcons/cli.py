"""Command-line driver: ``funcons run FILE [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import DEFAULT_MAX_STEPS, Abrupted, Diverged, EntityState, Normal, Stuck, run
from .errors import FunconError
from .syntax import parse_term, parse_values, print_term
from .terms import seq

EXIT_NORMAL, EXIT_ABRUPTED, EXIT_STUCK, EXIT_DIVERGED, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3, 4, 64

MODES = {".fct": "funcon", ".imp": "imp", ".spl": "simple"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="funcons", description="Run funcon terms and IMP/SIMPLE programs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    r = sub.add_parser("run", help="execute a .fct, .imp or .spl file")
    r.add_argument("file", type=Path)
    r.add_argument("--mode", choices=["funcon", "imp", "simple"], help="override the extension-based mode")
    r.add_argument("--emit-funcons", action="store_true", help="print the funcon term instead of running it")
    r.add_argument("--trace", action="store_true", help="write one line per step to standard error")
    r.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS, metavar="N")
    r.add_argument("--seed", type=int, default=0, metavar="N", help="0 = leftmost-first scheduling")
    r.add_argument("--stdin", type=Path, metavar="FILE", help="values for standard-in, one per line")
    return p


def load(path: Path, mode: str | None):
    """Read ``path`` and return its funcon term."""
    mode = mode or MODES.get(path.suffix)
    if mode is None:
        raise ValueError(f"cannot infer the mode from {path.name!r}; use --mode")
    text = path.read_text(encoding="utf-8")
    if mode == "funcon":
        return parse_term(text)
    if mode == "imp":
        from .frontends import parse_imp, translate_imp

        return translate_imp(parse_imp(text))
    from .frontends import parse_simple, translate_simple

    return translate_simple(parse_simple(text))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        term = load(args.file, args.mode)
        stdin = parse_values(args.stdin.read_text(encoding="utf-8")) if args.stdin else []
    except (FunconError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.emit_funcons:
        print(print_term(term))
        return EXIT_NORMAL
    result = run(term, EntityState(stdin=stdin), args.max_steps, seed=args.seed, trace=args.trace)
    for line in result.trace:
        print(line, file=sys.stderr)
    for v in result.output:
        print(print_term(v))
    t = result.termination
    if isinstance(t, Normal):
        print(f"result: {print_term(seq(t.result))}")
        return EXIT_NORMAL
    if isinstance(t, Abrupted):
        print(f"abrupted: {print_term(t.reason)}")
        return EXIT_ABRUPTED
    if isinstance(t, Stuck):
        print(f"stuck: {t.diagnostic}", file=sys.stderr)
        return EXIT_STUCK
    assert isinstance(t, Diverged)
    print(f"diverged: step limit {args.max_steps} reached", file=sys.stderr)
    return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
