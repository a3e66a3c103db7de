"""Small reference automata used by the tests, the CLI examples and the benchmarks."""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator

from .core import PLabeledSwa, Swa, SwaBuilder
from .expr import OPS, action, guard
from .langops import Nfa


def e1() -> Swa:
    """Accepts exactly the word ``ab``."""
    b = SwaBuilder("ab")
    b.state("start", "a")
    b.state("q_a", "a")
    b.state("q_b", "b")
    b.state("accept", "a")
    # x also runs in start so that no time can be spent there
    b.stopwatch("x", 2, active=["start", "q_a", "q_b"])
    b.trans("start", "q_a", guard("x = 0"))
    b.trans("q_a", "q_b", guard("x = 1"), action("x := 0"))
    b.trans("q_b", "accept", guard("x = 1"))
    return b.build(name="e1")


def exact_word(word: str, alphabet: str) -> Swa:
    """Accepts exactly ``word``: one state per position, one time unit each."""
    b = SwaBuilder(alphabet)
    b.state("start", alphabet[0])
    b.state("accept", alphabet[0])
    b.stopwatch("x", 2, active=["start"] + [f"p{i}" for i in range(len(word))])
    prev = "start"
    for i, letter in enumerate(word):
        q = b.state(f"p{i}", letter)
        b.trans(prev, q, guard("x = 0") if prev == "start" else guard("x = 1"), action("x := 0"))
        prev = q
    b.trans(prev, "accept", guard("x = 0") if prev == "start" else guard("x = 1"))
    return b.build(name=f"word-{word or 'eps'}")


def length_exactly(n: int, alphabet: str, max_count: dict[str, int] | None = None) -> Swa:
    """Words of length exactly ``n``; ``max_count`` caps the occurrences of given letters.

    A stopwatch ``len`` active everywhere measures the length; a per-letter
    stopwatch active in that letter's state counts its occurrences.
    """
    max_count = max_count or {}
    b = SwaBuilder(alphabet)
    b.state("start", alphabet[0])
    b.state("accept", alphabet[0])
    b.stopwatch("len", n + 1)
    b.stopwatch("t0", 1, active=["start"])
    letters = [b.state(f"s_{c}", c) for c in alphabet]
    for q in letters:
        b.active.add(("len", q))
    for c, cap in max_count.items():
        b.stopwatch(f"n_{c}", cap + 1, active=[f"s_{c}"])
    caps = [f"n_{c} <= {cap}" for c, cap in max_count.items()]
    b.trans("start", "accept", guard("t0 = 0", f"len = {n}", *caps))
    for q in letters:
        b.trans("start", q, guard("t0 = 0"))
        b.trans(q, "accept", guard(f"len = {n}", *caps))
        for r in letters:
            if r != q:
                b.trans(q, r)
    return b.build(name=f"len-{n}")


def e3() -> Swa:
    """Length-4 words over ``ab`` with at most two ``a``."""
    return length_exactly(4, "ab", {"a": 2})


def universal(alphabet: str) -> Swa:
    """Accepts every word; no stopwatches beyond a start lock."""
    b = SwaBuilder(alphabet)
    b.state("start", alphabet[0])
    b.state("accept", alphabet[0])
    b.stopwatch("t0", 1, active=["start"])
    states = [b.state(f"s_{c}", c) for c in alphabet]
    b.trans("start", "accept", guard("t0 = 0"))
    for q in states:
        b.trans("start", q, guard("t0 = 0"))
        b.trans(q, "accept")
        for r in states:
            if r != q:
                b.trans(q, r)
    return b.build(name="universal")


# -- generated families for property tests and benchmarks ----------------------

def _random_atom(rng: random.Random, names: list[str], bounds: dict[str, int]) -> str:
    x = rng.choice(names)
    lhs = x if rng.random() < 0.8 else f"{x} + {rng.randint(1, 2)}"
    roll = rng.random()
    if roll < 0.6 or len(names) == 1:
        rhs = str(rng.randint(0, bounds[x] + 1))
    elif roll < 0.9:
        rhs = rng.choice([y for y in names if y != x])
    else:
        rhs = f"bound({x})"
    return f"{lhs} {rng.choice(OPS)} {rhs}"


def _random_step(rng: random.Random, names: list[str], bounds: dict[str, int]) -> str:
    x, y = rng.choice(names), rng.choice(names)
    rhs = rng.choice(["0", "0", str(rng.randint(0, bounds[x] + 1)), y, f"{x} + 1", f"{y} - 1", f"min({x}, {y})", f"sgn({y})"])
    return f"{x} := {rhs}"


def random_swa(
    rng: random.Random,
    max_states: int = 3,
    max_stopwatches: int = 2,
    max_bound: int = 3,
    alphabet: str = "ab",
    max_transitions: int = 8,
    plabeled: bool = False,
) -> Swa:
    """A small random automaton: states ``start``, ``q0..``, ``accept``."""
    n = rng.randint(1, max_states)
    b = SwaBuilder(alphabet)
    working = [f"q{i}" for i in range(n)]

    def label():
        if plabeled:
            return frozenset(rng.sample(alphabet, rng.randint(1, len(alphabet))))
        return rng.choice(alphabet)

    for q in ["start", *working, "accept"]:
        b.state(q, label())
    names = [f"x{i}" for i in range(rng.randint(0, max_stopwatches))]
    bounds = {x: rng.randint(0, max_bound) for x in names}
    for x in names:
        b.stopwatch(x, bounds[x], active=[q for q in ["start", *working] if rng.random() < 0.5])
    for _ in range(rng.randint(1, max_transitions)):
        src = rng.choice(["start", *working])
        dst = rng.choice([*working, "accept"])
        atoms = [_random_atom(rng, names, bounds) for _ in range(rng.randint(0, 2))] if names else []
        steps = [_random_step(rng, names, bounds) for _ in range(rng.randint(0, 2))] if names else []
        b.trans(src, dst, guard(*atoms), action(*steps))
    return b.build(PLabeledSwa if plabeled else Swa, name="random")


def swa_family(max_states: int = 3, max_stopwatches: int = 2, max_bound: int = 3) -> Iterator[Swa]:
    """Every combination of state count, labels, bounds and activity over a fixed wiring.

    With stopwatches ``x0..`` the wiring is a chain ``start -> q0 -> ... ->
    accept`` whose edges test and reset the stopwatches in turn, plus a back
    edge and a skip edge, so both cycles and several path lengths occur.
    """
    for n in range(1, max_states + 1):
        working = [f"q{i}" for i in range(n)]
        for c in range(max_stopwatches + 1):
            names = [f"x{i}" for i in range(c)]
            for labels in product("ab", repeat=n):
                for bounds in product(range(1, max_bound + 1), repeat=c):
                    for act in product(range(2 ** n), repeat=c):
                        b = SwaBuilder("ab")
                        b.state("start", "a")
                        for q, lab in zip(working, labels):
                            b.state(q, lab)
                        b.state("accept", "a")
                        for x, bound, mask in zip(names, bounds, act):
                            b.stopwatch(x, bound, active=[q for i, q in enumerate(working) if mask >> i & 1])
                        chain = ["start", *working, "accept"]
                        for i, (s, d) in enumerate(zip(chain, chain[1:])):
                            if not names:
                                b.trans(s, d)
                                continue
                            x = names[i % c]
                            ops = ("=", ">=", "<=")
                            b.trans(s, d, guard(f"{x} {ops[i % 3]} {i % (bounds[i % c] + 1)}"), action(f"{x} := 0"))
                        if names:
                            b.trans(working[-1], working[0], guard(f"{names[-1]} < bound({names[-1]})"), action(f"{names[0]} := {names[0]} + 1"))
                            b.trans("start", working[-1], guard(f"{names[0]} = 0"))
                        else:
                            b.trans(working[-1], working[0])
                        yield b.build(name=f"fam-{n}-{''.join(labels)}-{bounds}-{act}")


def random_nfa(rng: random.Random, max_states: int = 4, alphabet: str = "ab") -> Nfa:
    n = rng.randint(1, max_states)
    states = tuple(f"p{i}" for i in range(n))
    trans = {(s, c, d) for s in states for c in alphabet for d in states if rng.random() < 0.35}
    initial = {s for s in states if rng.random() < 0.4} or {states[0]}
    final = {s for s in states if rng.random() < 0.4}
    return Nfa(states, tuple(alphabet), frozenset(initial), frozenset(final), frozenset(trans))
