"""Extend a legal prefix by ``n`` letters, maximising occurrences of one letter.

The search runs over layers ``0..|w|+n`` of the transition system.  The
prefix layers are plain model checking; in the ``n`` extension layers any
letter may be read.  A forward pass labels every node ``V`` = the best
number of target letters read in the extension so far, and a backward pass
labels it ``R`` = the best number still obtainable before acceptance.
Both passes must agree on the optimum.  ``R`` then drives a greedy walk
that picks, at every position, the smallest letter that keeps the optimum
reachable, giving the lexicographically least optimal extension.

Within a layer labels move along 0-edges unchanged, so each closure is
saturated to the maximum before crossing to the next layer.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .core import Compiled, Swa
from .errors import CapacityError, InputError
from .modelcheck import advance, check_letters, initial_front, model_check
from .semantics import oracle_accepts

BRUTEFORCE_LIMIT = 100_000


@dataclass(frozen=True)
class ScheduleQuery:
    automaton: Swa
    prefix: str
    letter: str
    horizon: int

    def validate(self) -> None:
        if self.letter not in self.automaton.alphabet:
            raise InputError(f"target letter {self.letter!r} is not in the alphabet")
        if self.horizon < 0:
            raise InputError("horizon must be non-negative")
        check_letters(self.automaton, self.prefix)


@dataclass(frozen=True)
class ScheduleResult:
    legal: bool
    extension: str | None = None
    count: int | None = None

    @classmethod
    def illegal(cls) -> ScheduleResult:
        return cls(False)


def _max_closure(c: Compiled, labels: dict) -> dict:
    """Spread labels along 0-edges, every node keeping the largest it can get."""
    out: dict = {}
    by_value = defaultdict(list)
    for n, v in labels.items():
        by_value[v].append(n)
    for v in sorted(by_value, reverse=True):
        todo = [n for n in by_value[v] if n not in out]
        for n in todo:
            out[n] = v
        while todo:
            q, vals = todo.pop()
            for g, act, dst, _ in c.out[q]:
                if g is None or g(vals):
                    m = (dst, vals if act is None else act(vals))
                    if m not in out:
                        out[m] = v
                        todo.append(m)
    return out


def _reverse_max(c: Compiled, layer: set, direct: dict) -> dict:
    """Largest ``direct`` value 0-reachable from each node of ``layer``."""
    preds = defaultdict(list)
    for n in layer:
        q, vals = n
        for g, act, dst, _ in c.out[q]:
            if g is None or g(vals):
                preds[(dst, vals if act is None else act(vals))].append(n)
    out: dict = {}
    by_value = defaultdict(list)
    for n, v in direct.items():
        by_value[v].append(n)
    for v in sorted(by_value, reverse=True):
        todo = [n for n in by_value[v] if n not in out]
        for n in todo:
            out[n] = v
        while todo:
            for p in preds[todo.pop()]:
                if p not in out:
                    out[p] = v
                    todo.append(p)
    return out


def schedule(q: ScheduleQuery | Swa, prefix: str = "", letter: str | None = None, horizon: int = 0) -> ScheduleResult:
    if not isinstance(q, ScheduleQuery):
        q = ScheduleQuery(q, prefix, letter, horizon)
    q.validate()
    a, target = q.automaton, q.letter
    c = a.reduced
    front = initial_front(c)
    for ch in q.prefix:
        front = advance(c, front, ch)
        if not front:
            return ScheduleResult.illegal()

    # forward: reachable layers and V labels
    layers = [_max_closure(c, {n: 0 for n in front})]
    for _ in range(q.horizon):
        seeds: dict = {}
        for (s, vals), v in layers[-1].items():
            if s == c.accept:
                continue
            m = (s, c.elapse_fns[s](vals))
            gain = v + (target in c.letters[s])
            if seeds.get(m, -1) < gain:
                seeds[m] = gain
        layers.append(_max_closure(c, seeds))
    finals = [v for (s, _), v in layers[-1].items() if s == c.accept]
    if not finals:
        return ScheduleResult.illegal()
    best = max(finals)

    # backward: R labels
    rest: list[dict] = [{}] * len(layers)
    rest[-1] = _reverse_max(c, set(layers[-1]), {n: 0 for n in layers[-1] if n[0] == c.accept})
    for j in range(len(layers) - 2, -1, -1):
        direct = {}
        for n in layers[j]:
            s, vals = n
            if s == c.accept:
                continue
            r = rest[j + 1].get((s, c.elapse_fns[s](vals)))
            if r is not None:
                direct[n] = r + max(ch == target for ch in c.letters[s])
        rest[j] = _reverse_max(c, set(layers[j]), direct)
    assert max(rest[0].values()) == best, "forward and backward optima disagree"

    # greedy lexicographic walk
    current = {n for n, r in rest[0].items() if r == best}
    remaining = best
    word = []
    for j in range(q.horizon):
        for ch in a.alphabet:
            gain = ch == target
            seeds = set()
            for n in current:
                s, vals = n
                if s == c.accept or ch not in c.letters[s]:
                    continue
                m = (s, c.elapse_fns[s](vals))
                if rest[j + 1].get(m) == remaining - gain:
                    seeds.add(m)
            if seeds:
                word.append(ch)
                remaining -= gain
                current = c.closure(seeds)
                break
        else:  # pragma: no cover - the labels guarantee a continuation
            raise AssertionError("optimal extension lost")
    extension = "".join(word)
    full = q.prefix + extension
    assert model_check(a, full, witness=False).accepted
    return ScheduleResult(True, extension, full.count(target))


def schedule_bruteforce(q: ScheduleQuery | Swa, prefix: str = "", letter: str | None = None, horizon: int = 0) -> ScheduleResult:
    """Try every extension with the oracle; the first optimum in alphabet order wins."""
    if not isinstance(q, ScheduleQuery):
        q = ScheduleQuery(q, prefix, letter, horizon)
    q.validate()
    a = q.automaton
    if len(a.alphabet) ** q.horizon > BRUTEFORCE_LIMIT:
        raise CapacityError(f"{len(a.alphabet)}^{q.horizon} extensions exceed {BRUTEFORCE_LIMIT}")
    best: ScheduleResult = ScheduleResult.illegal()
    length = len(q.prefix) + q.horizon
    for v in itertools.product(a.alphabet, repeat=q.horizon):
        full = q.prefix + "".join(v)
        if oracle_accepts(a, full, max_length=max(length, 8)):
            n = full.count(q.letter)
            if not best.legal or n > best.count:
                best = ScheduleResult(True, "".join(v), n)
    return best
