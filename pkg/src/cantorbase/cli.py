"""Command-line interface.

Exit codes: 0 success, 1 negative decision, 2 usage error,
3 unknown or undetermined within the step budget, 4 internal limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import admissibility, automaton, solver
from .bases import StreamBase, UPBase, parse_base
from .errors import (
    BudgetExceeded, CantorBaseError, NotARepresentationOf1, UnknownQuasiGreedy,
)
from .exact import format_number, parse_number
from .expansion import Unknown, default_max_steps, expansion_of, greedy_digits, quasi_greedy_table, val
from .words import UPWord, format_finite, parse_word

OK, NEGATIVE, USAGE, UNDECIDED, LIMIT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(args, data: dict, human: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(human)


def _word_record(w) -> dict:
    if isinstance(w, UPWord):
        return {"status": "periodic", "word": str(w), "pretty": w.pretty()}
    return {"status": "unknown", "prefix": format_finite(w.prefix)}


def _word_text(w) -> str:
    return w.pretty() if isinstance(w, UPWord) else str(w)


def _up_base(args) -> UPBase:
    base = parse_base(args.base)
    if not isinstance(base, UPBase):
        raise UsageError(f"command {args.command!r} needs an ultimately periodic base")
    return base


def _steps(args) -> int:
    return args.max_steps if args.max_steps is not None else default_max_steps()


def cmd_expand(args) -> int:
    base = parse_base(args.base)
    x = parse_number(args.x)
    if isinstance(base, StreamBase):
        trace = greedy_digits(base, x, _steps(args))
        digits = format_finite(trace.digits)
        _emit(args, {"base": args.base, "x": format_number(x), "status": trace.status, "digits": digits},
              f"{digits} ({trace.status})")
        return OK if trace.status == "finite" else UNDECIDED
    w = expansion_of(base, x, _steps(args))
    _emit(args, {"base": args.base, "x": format_number(x), **_word_record(w)}, _word_text(w))
    return UNDECIDED if isinstance(w, Unknown) else OK


def cmd_expand1(args) -> int:
    base = _up_base(args).shift(args.shift)
    table = quasi_greedy_table(base, _steps(args))
    d, ds = table.expansions[0], table.dstar[0]
    _emit(args, {"shift": args.shift, "greedy": _word_record(d), "quasi_greedy": _word_record(ds)},
          f"d = {_word_text(d)}\nd* = {_word_text(ds)}")
    return UNDECIDED if isinstance(d, Unknown) or isinstance(ds, Unknown) else OK


def cmd_quasigreedy(args) -> int:
    base = _up_base(args)
    table = quasi_greedy_table(base, _steps(args))
    rows = [{"class": i, "greedy": _word_record(d), "quasi_greedy": _word_record(ds)}
            for i, (d, ds) in enumerate(zip(table.expansions, table.dstar))]
    human = "\n".join(f"{i}: {_word_text(ds)}" for i, ds in enumerate(table.dstar))
    _emit(args, {"base": str(base), "classes": rows}, human)
    return OK if table.complete else UNDECIDED


def cmd_val(args) -> int:
    v = val(_up_base(args), parse_word(args.word))
    _emit(args, {"value": format_number(v)}, format_number(v))
    return OK


def _decision(args, name: str, answer: bool) -> int:
    _emit(args, {name: answer}, "true" if answer else "false")
    return OK if answer else NEGATIVE


def cmd_admissible(args) -> int:
    test = admissibility.in_S if args.closure else admissibility.in_D
    answer = test(_up_base(args), parse_word(args.word), max_steps=args.max_steps)
    return _decision(args, "in_S" if args.closure else "in_D", answer)


def cmd_greedy_check(args) -> int:
    answer = admissibility.is_greedy_expansion(_up_base(args), parse_word(args.word), parse_number(args.x),
                                               max_steps=args.max_steps)
    return _decision(args, "greedy", answer)


def cmd_parry2(args) -> int:
    try:
        answer = admissibility.parry2_check(_up_base(args), parse_word(args.word), max_steps=args.max_steps)
    except NotARepresentationOf1 as exc:
        print(f"note: {exc}", file=sys.stderr)
        answer = False
    return _decision(args, "expansion_of_1", answer)


def cmd_automaton(args) -> int:
    base = _up_base(args)
    a = automaton.build_automaton(base, max_steps=_steps(args))
    if args.trim:
        a = automaton.trim_accessible(a)
    print(automaton.export(a, "json" if args.json else "dot"), end="" if not args.json else "\n")
    return OK


def cmd_forbidden(args) -> int:
    base = _up_base(args)
    a = automaton.trim_accessible(automaton.build_automaton(base, max_steps=_steps(args)))
    words = [format_finite(w) for w in automaton.forbidden_factors(a, args.max_len)]
    _emit(args, {"max_len": args.max_len, "forbidden": words}, "\n".join(words))
    return OK


def cmd_solve(args) -> int:
    word = parse_word(args.word)
    tol = Fraction(args.tol)
    steps = args.max_steps if args.max_steps is not None else solver.DEFAULT_BISECTION_STEPS
    if args.p == 1 and args.tail is None:
        enc = solver.solve_single_base(word, tol, steps)
        rec = enc.to_record()
    else:
        tail = None if args.tail is None else [parse_number(t).as_fraction() for t in args.tail.split(",")]
        sol = solver.construct_alternate_base(word, args.p, tail, tol, steps)
        enc, rec = sol.enclosure, sol.to_record()
    human = f"[{enc.lo}, {enc.hi}]  ~ {float(enc.midpoint()):.15g}"
    if enc.exact is not None:
        human += f"  (exact root {enc.exact})"
    if "tail" in rec:
        human += "\ntail: " + ", ".join(rec["tail"])
    _emit(args, rec, human)
    return OK


def cmd_construct_base(args) -> int:
    cb = solver.construct_cantor_base(parse_word(args.word))
    blocks = cb.blocks(args.blocks)
    entries = [format_number(cb.base.beta_at(n)) for n in range(args.entries)]
    rec = {"log": [b.to_record() for b in blocks], "entries": entries}
    human = "entries: " + ", ".join(entries)
    if blocks:
        human += "\n" + "\n".join(f"block start={b.start} length={b.length} alpha={b.alpha}" for b in blocks)
    _emit(args, rec, human)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantor-bases", description="Expansions in Cantor real bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, base=True, word=False, json_flag=True):
        p = sub.add_parser(name)
        if base:
            p.add_argument("--base", required=True)
        if word:
            p.add_argument("--word", required=True)
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--max-steps", type=int, default=None)
        p.set_defaults(func=func)
        return p

    add("expand", cmd_expand).add_argument("--x", required=True)
    add("expand1", cmd_expand1).add_argument("--shift", type=int, default=0)
    add("quasigreedy", cmd_quasigreedy)
    add("val", cmd_val, word=True)
    add("admissible", cmd_admissible, word=True).add_argument("--closure", action="store_true")
    add("greedy-check", cmd_greedy_check, word=True).add_argument("--x", required=True)
    add("parry2", cmd_parry2, word=True)
    p = add("automaton", cmd_automaton, json_flag=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--trim", action="store_true")
    add("forbidden", cmd_forbidden).add_argument("--max-len", type=int, required=True)
    p = add("solve", cmd_solve, base=False, word=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--tol", default="1/1000000000000")
    p.add_argument("--tail", default=None, help="comma-separated rational tail entries")
    p = add("construct-base", cmd_construct_base, base=False, word=True)
    p.add_argument("--blocks", type=int, default=5)
    p.add_argument("--entries", type=int, default=10)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UnknownQuasiGreedy as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return UNDECIDED
    except BudgetExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return LIMIT
    except (UsageError, CantorBaseError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
