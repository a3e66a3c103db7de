"""Longest common subsequence: a dynamic-programming solver and the reduction to model checking.

The reduction builds a letter-set labeled automaton that reads ``w^m``
(``w`` the concatenation of the instance words) in ``m`` rounds.  In round
``l`` it walks through one guess part per word; part ``i`` spends
``|w_i|`` time units and guesses one position of ``w_i`` by spending one
unit in a state ``guess(a)``.  The guessed positions are kept in registers
and must increase from round to round, and all parts of a round must guess
the same letter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .core import PLabeledSwa, Swa, SwaBuilder, delabel
from .errors import CapacityError, InputError
from .expr import action, guard
from .modelcheck import Verdict, model_check

DP_CAPACITY = 2_000_000


@dataclass(frozen=True)
class LcsInstance:
    alphabet: tuple[str, ...]
    words: tuple[str, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "words", tuple(self.words))
        if not self.words:
            raise InputError("an LCS instance needs at least one word")
        if self.m < 0:
            raise InputError("the target length m must be >= 0")
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise InputError("the alphabet must be a non-empty list of distinct letters")
        bad = sorted({c for w in self.words for c in w} - set(self.alphabet))
        if bad:
            raise InputError(f"letters {bad} are not in the alphabet")

    @property
    def k(self) -> int:
        return len(self.words)


def lcs_length(inst: LcsInstance, capacity: int = DP_CAPACITY) -> tuple[int, str]:
    """Length of a longest common subsequence and one such subsequence."""
    words = inst.words
    dims = [len(w) + 1 for w in words]
    if inst.k >= 3 and math.prod(dims) > capacity:
        raise CapacityError(f"{math.prod(dims)} position tuples exceed the DP capacity {capacity}")
    # best[p] is the LCS length of the suffixes starting at positions p
    best: dict[tuple[int, ...], int] = {}
    for p in product(*(range(d - 1, -1, -1) for d in dims)):
        if any(pi == len(w) for pi, w in zip(p, words)):
            best[p] = 0
            continue
        first = words[0][p[0]]
        if all(w[pi] == first for pi, w in zip(p, words)):
            best[p] = 1 + best[tuple(pi + 1 for pi in p)]
        else:
            best[p] = max(best[p[:i] + (p[i] + 1,) + p[i + 1:]] for i in range(len(p)))
    p = (0,) * inst.k
    out = []
    while best[p]:
        first = words[0][p[0]]
        if all(w[pi] == first for pi, w in zip(p, words)):
            out.append(first)
            p = tuple(pi + 1 for pi in p)
            continue
        for i in range(len(p)):
            q = p[:i] + (p[i] + 1,) + p[i + 1:]
            if best[q] == best[p]:
                p = q
                break
    return best[(0,) * inst.k], "".join(out)


def lcs_dp(inst: LcsInstance, capacity: int = DP_CAPACITY) -> tuple[bool, str | None]:
    """Whether the words have a common subsequence of length ``m`` (and one such)."""
    length, witness = lcs_length(inst, capacity)
    if length < inst.m:
        return False, None
    return True, witness[: inst.m]


@dataclass(frozen=True)
class ReductionOutput:
    labeled: PLabeledSwa
    automaton: Swa
    word: str

    @property
    def parameter(self) -> int:
        return self.automaton.parameter


def _part(i: int) -> tuple[str, str]:
    return f"start{i}", f"end{i}"


def lcs_reduce(inst: LcsInstance) -> ReductionOutput:
    """Automaton accepting ``w^m`` iff the words have a common subsequence of length ``m``."""
    words, sigma, m = inst.words, inst.alphabet, inst.m
    if m > len(words[0]):
        raise InputError(f"m = {m} exceeds |w_0| = {len(words[0])}; the answer is no")
    k = inst.k
    b = SwaBuilder(sigma, start="start0", accept="accept")
    everything = frozenset(sigma)
    b.state("accept", everything)
    guesses = []
    for i in range(k):
        start, end = _part(i)
        b.state(start, everything)
        part = [b.state(f"guess{i}_{a}", frozenset({a})) for a in sigma]
        b.state(end, everything)
        guesses += part
        b.stopwatch(f"x{i}", len(words[i]) + 1)
        b.stopwatch(f"y{i}", len(words[i]) + 1, active=[start, end] + part)
    b.stopwatch("z", 2, active=guesses)
    b.stopwatch("x_letter", len(sigma) - 1)
    b.stopwatch("y_round", m)
    for i in range(k):
        start, end = _part(i)
        n = len(words[i])
        for j, a in enumerate(sigma):
            q = f"guess{i}_{a}"
            # x_i holds one past the position guessed in the previous round,
            # so position 0 is available in the first round
            atoms = [f"x{i} <= y{i}", f"y{i} < {n}"]
            if i:
                atoms.append(f"x_letter = {j}")
            b.trans(start, q, guard(*atoms), action(f"x{i} := y{i} + 1"))
            steps = ["z := 0"] + ([f"x_letter := {j}"] if i == 0 else [])
            b.trans(q, end, guard("z = 1"), action(*steps))
        nxt = _part((i + 1) % k)[0]
        steps = [f"y{i} := 0"] + (["y_round := y_round + 1"] if i == k - 1 else [])
        b.trans(end, nxt, guard(f"y{i} = {n}"), action(*steps))
    b.trans("start0", "accept", guard(f"y_round = {m}"))
    labeled = b.build(PLabeledSwa, name="lcs")
    return ReductionOutput(labeled, delabel(labeled), "".join(words) * m)


def lcs_model_check(inst: LcsInstance, *, witness: bool = False) -> bool:
    """Decide the instance through the reduction (``m > |w_0|`` answers no directly)."""
    if inst.m > len(inst.words[0]):
        return False
    red = lcs_reduce(inst)
    return bool(model_check(red.automaton, red.word, witness=witness))


def lcs_verdict(inst: LcsInstance) -> Verdict:
    red = lcs_reduce(inst)
    return model_check(red.automaton, red.word)


def parameter_envelope(k: int, sigma: int) -> int:
    return (k + sigma + 4) ** 4
