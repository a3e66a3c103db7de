"""Direct compliance checks for single articles, independent of the automaton.

These scan the word as blocks of equal letters and reason about whole
periods (a break, a daily rest) instead of single time units.  Every run
of ``r`` may be read as consecutive periods of different kinds, so the
scan keeps the set of reachable summaries ``(cd, pending, day, dd, ext)``:

* ``cd`` is the driving time since the last break or rest that resets it,
* ``pending`` records the first part of a split break,
* ``day`` is the time since the end of the last daily rest,
* ``dd`` is the driving time since then, and ``ext`` counts extended days.

The weekly articles only add per-calendar-week sums.  The articles covered
are those whose article closure has no weekly rest states.
"""

from __future__ import annotations

from itertools import groupby
from typing import Sequence

from .errors import InputError
from .reg561 import ALPHABET, Reg561Constants

SUPPORTED = ("Art7", "Art8.1-2", "Art6.1", "Art6.2", "Art6.3")


def _blocks(w: Sequence[str]) -> list[tuple[str, int]]:
    bad = sorted(set(w) - set(ALPHABET))
    if bad:
        raise InputError(f"letters {bad} are not in the alphabet {list(ALPHABET)}")
    return [(ch, len(list(g))) for ch, g in groupby(w)]


def _check_constants(c: Reg561Constants, daily: bool) -> None:
    # zero-length periods would need extra cases; the scan excludes them
    if c.t2 < 1 or c.t1 - c.t2 < 1:
        raise InputError("direct check needs t2 >= 1 and t1 - t2 >= 1")
    if daily and (c.t5 < 1 or c.t5 >= c.t4):
        raise InputError("direct check needs 1 <= t5 < t4")
    if c.t10 < 1:
        raise InputError("direct check needs t10 >= 1")


class _Scan:
    def __init__(self, c: Reg561Constants, daily: bool, extended: bool):
        self.c, self.daily, self.extended = c, daily, extended

    def work(self, s, length: int, driving: bool):
        c = self.c
        cd, pending, day, dd, ext = s
        if driving:
            cd += length
            if cd > c.t0:
                return None
            dd = min(dd + length, c.t8 + 1)
        return (cd, pending, min(day + length, c.t3 + 1), dd, ext)

    def after_break(self, s, length: int) -> set:
        """Summaries after a break of ``length`` that may or may not count."""
        c = self.c
        cd, pending, day, dd, ext = s
        day = min(day + length, c.t3 + 1)
        counted = min(length, c.t16_break)
        out = {(cd, pending, day, dd, ext)}
        if counted >= c.t1:
            out.add((0, pending, day, dd, ext))
        if c.t2 <= counted < c.t1:
            out.add((cd, 1, day, dd, ext))
        if pending and counted >= c.t1 - c.t2:
            out.add((0, 0, day, dd, ext))
        return out

    def after_daily(self, s, length: int, regular: bool):
        c = self.c
        cd, pending, day, dd, ext = s
        if pending:
            return None
        if day > (max(c.t3 - c.t4, 0) if regular else max(c.t3 - c.t5, 0)):
            return None
        if not (length >= c.t4 if regular else c.t5 <= length < c.t4):
            return None
        if self.extended:
            if dd > c.t8:
                return None
            if dd > c.t9:
                ext = min(ext + 1, 3)
            if ext > 2:
                return None
        return (0, 0, 0, 0, ext)

    def rest_block(self, states: set, length: int) -> set:
        """All ways of reading ``length`` rest units as consecutive periods."""
        at = {0: set(states)}
        for j in range(length):
            for s in at.pop(j, ()):
                for k in range(j + 1, length + 1):
                    got = at.setdefault(k, set())
                    got |= self.after_break(s, k - j)
                    if self.daily:
                        for regular in (True, False):
                            t = self.after_daily(s, k - j, regular)
                            if t is not None:
                                got.add(t)
        return at.get(length, set())

    def run(self, w: Sequence[str]) -> bool:
        c = self.c
        states = {(0, 0, 0, 0, 0)}
        for ch, n in _blocks(w):
            if ch == "r":
                states = self.rest_block(states, n)
            else:
                states = {t for s in states if (t := self.work(s, n, ch == "d")) is not None}
            if not states:
                return False
        if self.daily:
            return any(day <= c.t3 for _, _, day, _, _ in states)
        return bool(states)


def _weekly_ok(c: Reg561Constants, w: Sequence[str], two_weeks: bool) -> bool:
    previous = 0
    for k in range(0, max(len(w), 1), c.t10):
        chunk = w[k:k + c.t10]
        d, work = chunk.count("d"), chunk.count("w")
        if d > c.t11 or d + work > c.t12:
            return False
        if two_weeks and previous + d > c.t13:
            return False
        previous = d
    return True


def direct_check_article(art: str, c: Reg561Constants, w: Sequence[str]) -> bool:
    """Compliance of ``w`` with the fragment made of ``art`` and what it needs."""
    if art not in SUPPORTED:
        raise InputError(f"no direct check for {art!r}; supported: {SUPPORTED}")
    daily = art in ("Art8.1-2", "Art6.1")
    _check_constants(c, daily)
    w = "".join(w)
    ok = _Scan(c, daily, art == "Art6.1").run(w)
    if ok and art in ("Art6.2", "Art6.3"):
        ok = _weekly_ok(c, w, art == "Art6.3")
    return ok
