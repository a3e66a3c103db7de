"""Command-line interface: ``swa <command> ...``.

Exit codes: ``check`` returns 0 when the word is accepted and 1 when it is
rejected; the other commands return 0 once they have decided.  Every
error exits with 2; with ``--json`` the error kind is printed as JSON.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import time
from typing import Sequence

from . import langops, reg561, samples
from .core import Swa
from .errors import InputError, SwaError
from .extensions import BetaBoundedSwa, instantiate
from .lcsred import LcsInstance, lcs_dp, lcs_reduce
from .modelcheck import ENGINES, compress, model_check
from .schedule import schedule
from .textio import (
    parse_automaton,
    parse_constants,
    parse_lcs,
    parse_nfa,
    parse_word,
    serialize_automaton,
    serialize_nfa,
    serialize_word,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w") as f:
            f.write(text)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


def _automaton(path: str):
    return parse_automaton(_read(path))


def _word(arg: str) -> str:
    """A word file, or the word text itself when no such file exists."""
    return parse_word(_read(arg) if arg == "-" or os.path.exists(arg) else arg)


def _fixed(a, n: int | None = None) -> Swa:
    if isinstance(a, BetaBoundedSwa):
        if n is None:
            raise InputError("this command needs fixed stopwatch bounds")
        return instantiate(a, n)
    return a


def _show(w: str) -> str:
    """Short words verbatim, long ones in run-length form."""
    if not w:
        return "(empty word)"
    return w if len(w) <= 60 else serialize_word(w)


def _out(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if getattr(args, "json", False) else text)


def _verdict_out(args, a: Swa, w: str, verdict) -> int:
    word = "accepted" if verdict.accepted else "rejected"
    payload = {"accepted": verdict.accepted, "explored": verdict.explored, "peak_front": verdict.peak_front}
    lines = [word]
    if args.witness and verdict.witness is not None:
        pairs = compress(verdict.witness)
        payload["witness"] = [[q, t] for q, t in pairs]
        lines += [f"({q}, {t})" for q, t in pairs]
    _out(args, payload, "\n".join(lines))
    return 0 if verdict.accepted else 1


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    w = _word(args.word)
    a = _fixed(_automaton(args.automaton), len(w))
    verdict = model_check(a, w, witness=args.witness, engine=args.engine)
    return _verdict_out(args, a, w, verdict)


def cmd_empty(args) -> int:
    a = _fixed(_automaton(args.automaton))
    nonempty, word = langops.is_nonempty(a, node_budget=args.node_budget)
    text = "nonempty" if nonempty else "empty"
    if nonempty and args.witness:
        text += " " + _show(word)
    _out(args, {"nonempty": nonempty, "witness": word}, text)
    return 0


def cmd_intersect(args) -> int:
    a, b = _fixed(_automaton(args.first)), _fixed(_automaton(args.second))
    p = langops.product(a, b)
    if args.emit:
        _write(args.emit, serialize_automaton(p))
    nonempty, word = langops.is_nonempty(p, node_budget=args.node_budget)
    text = ("nonempty " + _show(word)) if nonempty else "empty"
    _out(args, {"nonempty": nonempty, "witness": word}, text)
    return 0


def _schedule_out(args, result) -> int:
    if not result.legal:
        _out(args, {"legal": False}, "illegal")
    else:
        _out(
            args,
            {"legal": True, "extension": result.extension, "count": result.count},
            f"{_show(result.extension)}\ncount {result.count}",
        )
    return 0


def cmd_schedule(args) -> int:
    w = _word(args.word)
    a = _fixed(_automaton(args.automaton), len(w) + args.horizon)
    return _schedule_out(args, schedule(a, w, args.letter, args.horizon))


def cmd_translate(args) -> int:
    if args.direction == "nfa2swa":
        _write(args.output, serialize_automaton(langops.from_nfa(parse_nfa(_read(args.input)))))
    else:
        a = _fixed(_automaton(args.input))
        _write(args.output, serialize_nfa(langops.to_nfa(a, capacity=args.capacity)))
    return 0


def _constants(args) -> reg561.Reg561Constants:
    if args.constants:
        return parse_constants(_read(args.constants))
    return reg561.DEFAULTS


def _articles(args) -> tuple[str, ...]:
    if not args.articles:
        return reg561.ARTICLES
    arts = tuple(x.strip() for x in args.articles.split(",") if x.strip())
    return arts


def cmd_reg561(args) -> int:
    c, arts = _constants(args), _articles(args)
    if args.action == "build":
        r = reg561.build_reg561(c, arts)
        _write(args.output, serialize_automaton(r.automaton))
        _out(
            args,
            {"articles": sorted(r.articles), "states": len(r.automaton.states), "stopwatches": r.automaton.stopwatch_count},
            f"{len(r.automaton.states)} states, {r.automaton.stopwatch_count} stopwatches, "
            f"{len(r.automaton.transitions)} transitions",
        )
        return 0
    w = _word(args.word)
    a = reg561.build_reg561(c, arts).automaton
    if args.action == "check":
        return _verdict_out(args, a, w, model_check(a, w, witness=args.witness))
    return _schedule_out(args, schedule(a, w, args.letter, args.horizon))


def cmd_lcs(args) -> int:
    inst = parse_lcs(_read(args.instance))
    if args.action == "solve":
        yes, sub = lcs_dp(inst)
        _out(args, {"yes": yes, "subsequence": sub}, f"yes {sub}" if yes else "no")
        return 0
    if inst.m > len(inst.words[0]):
        raise InputError(f"m = {inst.m} exceeds |w_0| = {len(inst.words[0])}; the answer is no")
    red = lcs_reduce(inst)
    _write(args.output, serialize_automaton(red.automaton))
    _write(args.word_out, serialize_word(red.word) + "\n")
    _out(args, {"parameter": red.parameter, "length": len(red.word)}, f"parameter {red.parameter}, word length {len(red.word)}")
    return 0


# -- benchmark harness ---------------------------------------------------------

DAY = "d" * 270 + "r" * 45 + "d" * 270 + "r" * 855
WEEK = DAY * 6 + "d" * 120 + "r" * 1320
W1 = "d" * 270 + "r" * 45 + "d" * 270 + "r" * 660


def _bench_instances(suite: str, seed: int, quick: bool):
    if suite == "reg561":
        art7 = reg561.build_reg561(reg561.DEFAULTS, ["Art7"]).automaton
        full = reg561.build_reg561().automaton
        yield "art7-dr270", art7, "dr" * 270
        yield "art7-d271", art7, "d" * 271
        yield "full-W1", full, W1
        yield "full-day", full, DAY
        if not quick:
            yield "full-week", full, WEEK
    elif suite == "random":
        rng = random.Random(seed)
        for i in range(10 if quick else 100):
            a = samples.random_swa(rng)
            w = "".join(rng.choice("ab") for _ in range(rng.randint(0, 12 if quick else 40)))
            yield f"random-{i}", a, w
    elif suite == "lcs":
        rng = random.Random(seed)
        for i in range(5 if quick else 30):
            k = rng.randint(2, 3)
            words = tuple("".join(rng.choice("ab") for _ in range(rng.randint(2, 6 if quick else 10))) for _ in range(k))
            inst = LcsInstance("ab", words, rng.randint(0, len(words[0])))
            red = lcs_reduce(inst)
            yield f"lcs-{i}", red.automaton, red.word
    else:
        raise InputError(f"unknown suite {suite!r}")


def cmd_bench(args) -> int:
    rows = []
    for name, a, w in _bench_instances(args.suite, args.seed, args.quick):
        t = time.perf_counter()
        v = model_check(a, w, witness=False)
        wall = time.perf_counter() - t
        rows.append([name, len(w), a.stopwatch_count, a.max_bound, str(a.bound_product), v.explored,
                     v.peak_front, int(v.accepted), f"{wall:.3f}"])
    header = ["instance", "length", "c", "t", "B", "explored", "peak_front", "accepted", "wall_s"]
    with open(args.csv, "w", newline="") as f:
        out = csv.writer(f)
        out.writerow(header)
        out.writerows(rows)
    print(f"{len(rows)} rows written to {args.csv}")
    return 0


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="swa", description="Discrete-time stopwatch automata toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = common(sub.add_parser("check", help="model check a word"))
    sp.add_argument("automaton")
    sp.add_argument("word", help="word file, or the word text itself")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--engine", choices=ENGINES, default="auto")
    sp.set_defaults(fn=cmd_check)

    sp = common(sub.add_parser("empty", help="decide language emptiness"))
    sp.add_argument("automaton")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--node-budget", type=int, default=None)
    sp.set_defaults(fn=cmd_empty)

    sp = common(sub.add_parser("intersect", help="product automaton and its emptiness"))
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--emit", default=None)
    sp.add_argument("--node-budget", type=int, default=None)
    sp.set_defaults(fn=cmd_intersect)

    sp = common(sub.add_parser("schedule", help="optimal legal extension"))
    sp.add_argument("automaton")
    sp.add_argument("word")
    sp.add_argument("--letter", required=True)
    sp.add_argument("--horizon", type=int, required=True)
    sp.set_defaults(fn=cmd_schedule)

    sp = common(sub.add_parser("translate", help="convert between NFAs and automata"))
    sp.add_argument("direction", choices=("nfa2swa", "swa2nfa"))
    sp.add_argument("input")
    sp.add_argument("output")
    sp.add_argument("--capacity", type=int, default=100_000)
    sp.set_defaults(fn=cmd_translate)

    sp = sub.add_parser("reg561", help="driving-time regulation automaton")
    rs = sp.add_subparsers(dest="action", required=True)
    for name in ("build", "check", "schedule"):
        r = common(rs.add_parser(name))
        if name != "build":
            r.add_argument("word")
        r.add_argument("--constants", default=None, help="file of 'name = value' lines")
        r.add_argument("--articles", default=None, help="comma-separated article list")
        if name == "build":
            r.add_argument("-o", "--output", required=True)
        if name == "check":
            r.add_argument("--witness", action="store_true")
        if name == "schedule":
            r.add_argument("--letter", required=True)
            r.add_argument("--horizon", type=int, required=True)
        r.set_defaults(fn=cmd_reg561)

    sp = sub.add_parser("lcs", help="longest common subsequence instances")
    ls = sp.add_subparsers(dest="action", required=True)
    r = common(ls.add_parser("solve"))
    r.add_argument("instance")
    r.set_defaults(fn=cmd_lcs)
    r = common(ls.add_parser("reduce"))
    r.add_argument("instance")
    r.add_argument("-o", "--output", required=True)
    r.add_argument("--word-out", required=True)
    r.set_defaults(fn=cmd_lcs)

    sp = sub.add_parser("bench", help="run a benchmark suite and write a CSV")
    sp.add_argument("--suite", choices=("reg561", "random", "lcs"), required=True)
    sp.add_argument("--csv", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--quick", action="store_true", help="smaller instances")
    sp.set_defaults(fn=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SwaError as e:
        if getattr(args, "json", False):
            print(json.dumps({"error": e.kind, "message": str(e)}))
        else:
            print(f"error ({e.kind}): {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
