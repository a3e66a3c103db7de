"""Stopwatch automaton for the EU driving-time regulation 561/2006.

The automaton is assembled article by article.  First every article
contributes the bare transitions it needs (the skeleton); then, in article
order, each article attaches guards and actions to the skeleton
transitions its rules select, possibly duplicating them into variants.
Every guard atom and action step records the article that introduced it,
which gives the manifest.

Transitions into and out of ``week`` only carry week-specific guards and
actions: the detour through ``week`` takes no time and returns to the state
it left, so entry and exit rules of that state must not fire again.
"""

from __future__ import annotations

import copy
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Iterable, Mapping, Sequence

from .core import Stopwatch, Swa, Transition
from .errors import InputError
from .expr import Action, Atom, Guard, format_expr, parse_action, parse_guard
from .modelcheck import Verdict, model_check
from .schedule import ScheduleResult, schedule

ALPHABET = ("d", "r", "w")

DRIVE, BREAK, WORK = "drive", "break", "other_work"
REG_DAILY, RED_DAILY = "regular_daily", "reduced_daily"
REG_WEEKLY, RED_WEEKLY = "regular_weekly", "reduced_weekly"
COMP1, COMP2 = "compensate1", "compensate2"
WEEK, START, ACCEPT = "week", "start", "accept"

STATES = (DRIVE, BREAK, WORK, RED_DAILY, REG_DAILY, RED_WEEKLY, REG_WEEKLY, COMP1, COMP2, WEEK, START, ACCEPT)
LABELS = {q: "r" for q in STATES} | {WORK: "w", DRIVE: "d"}

DAILY = (REG_DAILY, RED_DAILY)
WEEKLY = (REG_WEEKLY, RED_WEEKLY)
RESTS = DAILY + WEEKLY
COMPS = (COMP1, COMP2)

ARTICLES = (
    "Art7", "Art8.1-2", "Art4g-split", "Art6.1", "Week", "Art6.2", "Art6.3",
    "Art8.6.3", "Art8.3", "Art8.4", "Art8.9", "Art8.6.1", "Art8.6.2+8.7",
)
# weekly rest definitions; pulled in automatically by the articles using them
WEEKLY_DEFS = "Art4h"
BASE = "base"

REQUIRES = {
    "Art7": (),
    "Art8.1-2": ("Art7",),
    "Art4g-split": ("Art8.1-2",),
    "Art6.1": ("Art8.1-2",),
    "Week": ("Art7",),
    "Art6.2": ("Week",),
    "Art6.3": ("Art6.2",),
    WEEKLY_DEFS: ("Art8.1-2", "Week"),
    "Art8.6.3": (WEEKLY_DEFS,),
    "Art8.3": (WEEKLY_DEFS,),
    "Art8.4": ("Art8.1-2",),
    "Art8.9": (WEEKLY_DEFS,),
    "Art8.6.1": (WEEKLY_DEFS,),
    "Art8.6.2+8.7": ("Art8.6.1",),
}
ORDER = ARTICLES[:7] + (WEEKLY_DEFS,) + ARTICLES[7:]


@dataclass(frozen=True)
class Reg561Constants:
    """Durations in minutes."""

    t0: int = 270  # continuous driving before a break
    t1: int = 45  # break
    t2: int = 15  # first part of a split break
    t3: int = 1440  # day
    t4: int = 660  # regular daily rest
    t5: int = 540  # reduced daily rest
    t6: int = 180  # first part of a split daily rest
    t7: int = 540  # second part of a split daily rest
    t8: int = 600  # extended daily driving
    t9: int = 540  # daily driving
    t10: int = 10080  # week
    t11: int = 3360  # weekly driving
    t12: int = 3600  # weekly working
    t13: int = 5400  # driving in two consecutive weeks
    t14: int = 2700  # regular weekly rest
    t15: int = 1440  # reduced weekly rest
    t16_break: int = 540  # rest that compensation may attach to
    t17_pw: int = 8640  # six days between weekly rests

    def __post_init__(self):
        bad = [f.name for f in fields(self) if not isinstance(getattr(self, f.name), int) or getattr(self, f.name) < 0]
        if bad:
            raise InputError(f"constants must be natural numbers: {bad}")
        if self.t14 < self.t15:
            raise InputError("t14 must be at least t15")
        if self.t2 > self.t1:
            raise InputError("t2 must not exceed t1")

    def as_dict(self) -> dict[str, int]:
        return asdict(self)

    @classmethod
    def from_mapping(cls, values: Mapping[str, int]) -> Reg561Constants:
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise InputError(f"unknown constants {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in values.items()})

    def with_(self, **changes) -> Reg561Constants:
        return replace(self, **changes)


DEFAULTS = Reg561Constants()


def article_closure(arts: Iterable[str]) -> frozenset[str]:
    """Check that ``arts`` is dependency closed; the weekly definitions are added implicitly."""
    arts = set(arts)
    unknown = arts - set(REQUIRES)
    if unknown:
        raise InputError(f"unknown articles {sorted(unknown)}")
    if any(WEEKLY_DEFS in REQUIRES[a] for a in arts):
        arts.add(WEEKLY_DEFS)
    for a in sorted(arts):
        missing = [r for r in REQUIRES[a] if r not in arts]
        if missing:
            raise InputError(f"{a} requires {missing}")
    return frozenset(arts)


def closure_of(arts: Iterable[str]) -> frozenset[str]:
    """Smallest dependency-closed set containing ``arts``."""
    out, todo = set(), list(arts)
    while todo:
        a = todo.pop()
        if a not in REQUIRES:
            raise InputError(f"unknown article {a!r}")
        if a not in out:
            out.add(a)
            todo.extend(REQUIRES[a])
    return frozenset(out)


ALL_ARTICLES = article_closure(ARTICLES)


# -- the skeleton ------------------------------------------------------------

NORMAL, TO_WEEK, FROM_WEEK = "normal", "to_week", "from_week"


@dataclass
class _Tr:
    src: str
    dst: str
    tag: str
    kind: str = NORMAL
    marks: set[str] = field(default_factory=set)
    atoms: list[tuple[Atom, str]] = field(default_factory=list)
    steps: list[tuple[tuple, str]] = field(default_factory=list)

    def has_step(self, target: str) -> bool:
        return any(s[0] == target for s, _ in self.steps)


def _atoms(text: str) -> list[Atom]:
    return list(parse_guard(text).atoms)


def _steps(text: str) -> list[tuple]:
    return list(parse_action(text).steps)


@dataclass
class Manifest:
    """Article tags of every transition, guard atom and action step."""

    transitions: list[str]
    atoms: list[list[str]]
    steps: list[list[str]]
    stopwatches: dict[str, str]

    def articles(self) -> set[str]:
        return set(self.transitions) | {t for ts in self.atoms + self.steps for t in ts} | set(self.stopwatches.values())


@dataclass
class Reg561Automaton:
    automaton: Swa
    manifest: Manifest
    articles: frozenset[str]
    constants: Reg561Constants

    def describe(self, i: int) -> str:
        t = self.automaton.transitions[i]
        parts = [f"{t.src} -> {t.dst} [{self.manifest.transitions[i]}]"]
        for (at, tag) in zip(t.guard.atoms, self.manifest.atoms[i]):
            parts.append(f"  guard {format_expr(at.left)} {at.op} {format_expr(at.right)} [{tag}]")
        for ((x, e), tag) in zip(t.action.steps, self.manifest.steps[i]):
            parts.append(f"  action {x} := {format_expr(e)} [{tag}]")
        return "\n".join(parts)


class _Builder:
    def __init__(self, c: Reg561Constants, arts: frozenset[str]):
        self.c = c
        self.arts = arts
        self.trs: list[_Tr] = []
        self.stopwatches: dict[str, tuple[int, str]] = {}
        self.active: set[tuple[str, str]] = set()
        live = {START, ACCEPT, DRIVE, BREAK, WORK}
        if "Art8.1-2" in arts:
            live |= set(DAILY)
        if WEEKLY_DEFS in arts:
            live |= set(WEEKLY)
        if "Art8.6.2+8.7" in arts:
            live |= set(COMPS)
        if "Week" in arts:
            live.add(WEEK)
        self.live = live
        self.timed = [q for q in STATES if q in live and q not in (START, ACCEPT)]

    # skeleton and rule helpers
    def add(self, src, dst, tag, kind=NORMAL, marks=()):
        if src in self.live and dst in self.live:
            self.trs.append(_Tr(src, dst, tag, kind, set(marks)))

    def watch(self, name, bound, tag, active=()):
        self.stopwatches[name] = (bound, tag)
        self.active |= {(name, q) for q in active if q in self.live}

    def select(self, src=None, dst=None, kind=NORMAL, marks=(), without=(), tag=None):
        def ok(t: _Tr) -> bool:
            return (
                (src is None or t.src in src)
                and (dst is None or t.dst in dst)
                and (kind is None or t.kind == kind)
                and set(marks) <= t.marks
                and not set(without) & t.marks
                and (tag is None or t.tag == tag)
            )

        return [t for t in self.trs if ok(t)]

    def guard(self, trs, text, tag):
        for t in trs:
            t.atoms += [(a, tag) for a in _atoms(text)]

    def act(self, trs, text, tag, before=None):
        for t in trs:
            new = [(s, tag) for s in _steps(text)]
            if before is not None:
                idx = next((i for i, (s, _) in enumerate(t.steps) if s[0] == before), len(t.steps))
                t.steps[idx:idx] = new
            else:
                t.steps += new

    def split(self, trs, variants, tag):
        """Replace each transition by copies; a variant is (guard text, action text, mark, drop)."""
        for t in trs:
            i = self.trs.index(t)
            copies = []
            for g, a, mark, drop in variants:
                u = copy.deepcopy(t)
                if drop:
                    u.atoms = [(at, tg) for at, tg in u.atoms if (at, tg) not in drop(u)]
                if g:
                    u.atoms += [(at, tag) for at in _atoms(g)]
                if a:
                    u.steps += [(s, tag) for s in _steps(a)]
                if mark:
                    u.marks.add(mark)
                copies.append(u)
            self.trs[i:i + 1] = copies

    # -- skeleton -----------------------------------------------------------

    def skeleton(self):
        arts = self.arts
        for q in STATES:
            if q not in (WEEK, START):
                self.add(START, q, BASE)
        for p, q in [(DRIVE, BREAK), (DRIVE, WORK), (WORK, DRIVE), (WORK, BREAK), (BREAK, DRIVE), (BREAK, WORK)]:
            self.add(p, q, "Art7")
        for p in (DRIVE, BREAK, WORK):
            self.add(p, ACCEPT, "Art7")
        if "Art8.1-2" in arts:
            for p in (DRIVE, BREAK, WORK):
                for r in DAILY:
                    self.add(p, r, "Art8.1-2")
                    self.add(r, p, "Art8.1-2")
        if "Art4g-split" in arts:
            for p in (DRIVE, WORK):
                self.add(REG_DAILY, p, "Art4g-split", marks=["partial"])
        if "Week" in arts:
            for q in self.timed:
                if q != WEEK:
                    self.add(q, WEEK, "Week", kind=TO_WEEK)
                    self.add(WEEK, q, "Week", kind=FROM_WEEK)
            # no week -> accept: the run returns to the state it left and
            # accepts from there, so that state's exit guards still apply
        if WEEKLY_DEFS in arts:
            for p in (DRIVE, WORK):
                for r in WEEKLY:
                    self.add(p, r, WEEKLY_DEFS)
                    self.add(r, p, WEEKLY_DEFS)
            for r in WEEKLY:
                self.add(r, ACCEPT, WEEKLY_DEFS)
        if "Art8.6.2+8.7" in arts:
            for comp in COMPS:
                for p in RESTS + (BREAK,):
                    self.add(p, comp, "Art8.6.2+8.7")
                for p in (DRIVE, WORK, ACCEPT):
                    self.add(comp, p, "Art8.6.2+8.7")

    # -- rules, one method per article ---------------------------------------

    def rules_base(self):
        self.watch("x_start", 1, BASE, [START])
        self.guard(self.select(src=[START]), "x_start = 0", BASE)

    def rules_art7(self):
        c, tag = self.c, "Art7"
        self.watch("x_cd", c.t0 + 1, tag, [DRIVE])
        self.watch("x_break", c.t16_break, tag, [BREAK])
        self.watch("b_rb", 1, tag)
        self.guard(self.select(src=[DRIVE]), f"x_cd <= {c.t0}", tag)
        self.act(self.select(dst=[BREAK]), "x_break := 0", tag)
        self.split(
            self.select(src=[BREAK], dst=[DRIVE, WORK], tag=tag),
            [
                ("", "", "plain", None),
                (f"x_break >= {c.t1}", "x_break := 0; x_cd := 0", "full", None),
                (f"x_break >= {c.t2}; x_break < {c.t1}", "b_rb := 1; x_break := 0", "split1", None),
                (f"b_rb = 1; x_break >= {c.t1 - c.t2}", "b_rb := 0; x_cd := 0; x_break := 0", "split2", None),
            ],
            tag,
        )
        self.act(self.select(dst=RESTS), "x_cd := 0; b_rb := 0", tag)

    def _day_resets(self):
        return self.select(src=RESTS, without=["partial"])

    def rules_art8_1_2(self):
        c, tag = self.c, "Art8.1-2"
        self.watch("x_day", c.t3 + 1, tag, self.timed)
        self.watch("x_dr", c.t4, tag, DAILY)
        self.guard(self.select(dst=[REG_DAILY]), f"x_day <= {c.t3 - c.t4}; b_rb = 0", tag)
        self.guard(self.select(dst=[RED_DAILY]), f"x_day <= {c.t3 - c.t5}; b_rb = 0", tag)
        self.guard(self.select(src=[REG_DAILY], without=["partial"]), f"x_dr >= {c.t4}", tag)
        self.guard(self.select(src=[RED_DAILY]), f"x_dr >= {c.t5}; x_dr < {c.t4}", tag)
        self.act(self.select(src=DAILY), "x_dr := 0", tag)
        self.act(self.select(src=DAILY, without=["partial"]), "x_day := 0", tag)
        self.guard(self.select(dst=[ACCEPT], kind=None), f"x_day <= {c.t3}", tag)

    def rules_art4g_split(self):
        c, tag = self.c, "Art4g-split"
        self.watch("b_dr", 1, tag)
        definitorial = _atoms(f"x_dr >= {c.t4}")[0]

        def drop(t):
            return {(definitorial, "Art8.1-2")}

        self.split(
            self.select(src=[REG_DAILY], without=["partial"]),
            [("", "", None, None), (f"x_dr >= {c.t7}; b_dr = 1", "", "second_part", drop)],
            tag,
        )
        partial = self.select(src=[REG_DAILY], marks=["partial"])
        self.guard(partial, f"b_dr = 0; x_dr >= {c.t6}; x_dr < {c.t4}", tag)
        self.act(partial, "b_dr := 1", tag)
        self.act(self._day_resets(), "b_dr := 0", tag)

    def rules_art6_1(self):
        c, tag = self.c, "Art6.1"
        self.watch("x_dd", c.t8 + 1, tag, [DRIVE])
        self.watch("c_dd", 3, tag)
        self._extension_split(self.select(dst=DAILY), tag)
        self.guard(self.select(src=RESTS), "c_dd <= 2", tag)
        self.act(self._day_resets(), "x_dd := 0", tag)
        self.act(self.select(src=[WEEK], kind=FROM_WEEK), "c_dd := 0", tag)

    def _extension_split(self, trs, tag):
        c = self.c
        self.split(
            trs,
            [
                (f"x_dd <= {c.t9}", "", None, None),
                (f"x_dd > {c.t9}; x_dd <= {c.t8}", "c_dd := c_dd + 1", "extended", None),
            ],
            tag,
        )

    def rules_week(self):
        c, tag = self.c, "Week"
        self.watch("x_week", c.t10 + 1, tag, self.timed)
        self.guard(self.select(dst=[ACCEPT], kind=None), f"x_week <= {c.t10}", tag)
        for t in self.select(kind=TO_WEEK):
            self.guard([t], f"x_week = {c.t10}", tag)
            self.act([t], f"b_{t.src} := 1", tag)
        for t in self.select(kind=FROM_WEEK):
            self.guard([t], f"x_week = {c.t10}", tag)
            if t.dst != ACCEPT:
                self.guard([t], f"b_{t.dst} = 1", tag)
        # x_week is reset first so that the week counters below act on fresh values
        for t in self.select(kind=FROM_WEEK):
            t.steps[0:0] = [(s, tag) for s in _steps("x_week := 0")]
            if t.dst != ACCEPT:
                self.act([t], f"b_{t.dst} := 0", tag)
        for q in self.timed:
            if q != WEEK:
                self.watch(f"b_{q}", 1, tag)

    def rules_art6_2(self):
        c, tag = self.c, "Art6.2"
        self.watch("x_ww", c.t12 + 1, tag, [DRIVE, WORK])
        self.watch("x_dw", c.t11 + 1, tag, [DRIVE])
        limits = f"x_dw <= {c.t11}; x_ww <= {c.t12}"
        self.guard(self.select(kind=TO_WEEK), limits, tag)
        self.guard(self.select(dst=[ACCEPT], kind=None), limits, tag)
        self.act(self.select(kind=FROM_WEEK), "x_dw := 0; x_ww := 0", tag)

    def rules_art6_3(self):
        c, tag = self.c, "Art6.3"
        self.watch("x_dw'", c.t11 + 1, tag)
        self.act(self.select(kind=FROM_WEEK), "x_dw' := x_dw", tag, before="x_dw")
        self.guard(self.select(kind=TO_WEEK), f"x_dw' + x_dw <= {c.t13}", tag)
        self.guard(self.select(dst=[ACCEPT], kind=None), f"x_dw' + x_dw <= {c.t13}", tag)

    def rules_art4h(self):
        c, tag = self.c, WEEKLY_DEFS
        self.watch("x_wr", c.t14, tag, WEEKLY)
        self.guard(self.select(src=[REG_WEEKLY]), f"x_wr >= {c.t14}", tag)
        self.guard(self.select(src=[RED_WEEKLY]), f"x_wr >= {c.t15}; x_wr < {c.t14}", tag)
        outs = self.select(src=WEEKLY)
        self.act(outs, "x_wr := 0; x_day := 0", tag)

    def rules_art8_6_3(self):
        c, tag = self.c, "Art8.6.3"
        self.watch("x_pw", c.t17_pw + 1, tag, self.timed)
        self.guard(self.select(dst=WEEKLY), f"x_pw <= {c.t17_pw}", tag)
        self.act(self.select(src=WEEKLY), "x_pw := 0", tag)

    def rules_art8_3(self):
        c, tag = self.c, "Art8.3"
        into = self.select(src=[DRIVE, WORK], dst=WEEKLY)
        self.guard(into, f"x_day <= {c.t3 - c.t4}; b_rb = 0", tag)
        if "Art6.1" in self.arts:
            self._extension_split(into, tag)

    def rules_art8_4(self):
        tag = "Art8.4"
        self.watch("c_rd", 4, tag)
        self.guard(self.select(dst=[RED_DAILY]), "c_rd <= 2", tag)
        self.act(self.select(dst=[RED_DAILY]), "c_rd := c_rd + 1", tag)
        self.act(self.select(src=WEEKLY), "c_rd := 0", tag)

    def rules_art8_9(self):
        tag = "Art8.9"
        self.watch("b_wr", 1, tag)
        self.watch("b_used", 1, tag)
        self.split(
            self.select(src=[DRIVE, WORK], dst=WEEKLY),
            [("b_wr = 0", "b_used := 1; b_wr := 1", "counted", None), ("", "", None, None)],
            tag,
        )
        self.act(self.select(src=WEEKLY), "b_used := 0", tag)
        self.guard(self.select(kind=TO_WEEK), "b_wr = 1", tag)
        self.split(
            self.select(src=[WEEK], dst=WEEKLY, kind=FROM_WEEK),
            [
                ("b_used = 1", "b_used := 0; b_wr := 0", None, None),
                ("b_used = 0", "b_wr := 0", None, None),
                ("b_used = 0", "b_used := 1; b_wr := 1", None, None),
            ],
            tag,
        )
        others = [t for t in self.select(src=[WEEK], kind=FROM_WEEK) if t.dst not in WEEKLY + (ACCEPT,)]
        self.act(others, "b_wr := 0", tag)

    def rules_art8_6_1(self):
        tag = "Art8.6.1"
        self.watch("b_rw", 1, tag)
        into_reduced = self.select(dst=[RED_WEEKLY])
        self.guard(into_reduced, "b_rw = 0", tag)
        self.act(into_reduced, "b_rw := 1", tag)
        self.act(self.select(dst=[REG_WEEKLY]), "b_rw := 0", tag)

    def rules_art8_6_2(self):
        c, tag = self.c, "Art8.6.2+8.7"
        span = c.t14 - c.t15
        for name in ("x_c1", "x_c2"):
            self.watch(name, span, tag)
        self.watch("x_cr", span, tag, COMPS)
        self.watch("c_c1", 4, tag)
        self.watch("c_c2", 4, tag)
        # the obligation is read off x_wr, so it is recorded before x_wr is reset
        exits = [t for t in self.select(src=[RED_WEEKLY]) if t.dst != ACCEPT]
        for t in exits:
            self.split(
                [t],
                [
                    ("x_c1 = 0", "", "obligation1", None),
                    ("x_c1 > 0; x_c2 = 0", "", "obligation2", None),
                ],
                tag,
            )
        for t in self.select(src=[RED_WEEKLY], marks=()):
            if t.dst == ACCEPT:
                continue
            target = "x_c1" if "obligation1" in t.marks else "x_c2"
            self.act([t], f"{target} := {c.t14} - x_wr", tag, before="x_wr")
        self.act(
            self.select(src=[WEEK], kind=FROM_WEEK),
            "c_c1 := c_c1 + sgn(x_c1); c_c2 := c_c2 + sgn(x_c2)",
            tag,
        )
        self.guard(self.select(kind=TO_WEEK), "c_c1 <= 3; c_c2 <= 3", tag)
        for comp, reg, cnt in ((COMP1, "x_c1", "c_c1"), (COMP2, "x_c2", "c_c2")):
            self.guard(self.select(src=[BREAK], dst=[comp]), f"x_break >= {c.t16_break}", tag)
            self.act(self.select(dst=[comp]), "x_cr := 0", tag)
            outs = self.select(src=[comp])
            self.guard(outs, f"x_cr >= {reg}", tag)
            self.act(outs, f"{reg} := 0; {cnt} := 0", tag)
            self.split(
                self.select(src=[comp], kind=TO_WEEK),
                [
                    (f"x_cr < {reg}", "", None, None),
                    (f"x_cr >= {reg}", f"{reg} := 0; {cnt} := 0", None, None),
                ],
                tag,
            )

    RULES = {
        "Art7": rules_art7,
        "Art8.1-2": rules_art8_1_2,
        "Art4g-split": rules_art4g_split,
        "Art6.1": rules_art6_1,
        "Week": rules_week,
        "Art6.2": rules_art6_2,
        "Art6.3": rules_art6_3,
        WEEKLY_DEFS: rules_art4h,
        "Art8.6.3": rules_art8_6_3,
        "Art8.3": rules_art8_3,
        "Art8.4": rules_art8_4,
        "Art8.9": rules_art8_9,
        "Art8.6.1": rules_art8_6_1,
        "Art8.6.2+8.7": rules_art8_6_2,
    }

    def build(self) -> Reg561Automaton:
        self.skeleton()
        self.rules_base()
        for art in ORDER:
            if art in self.arts:
                self.RULES[art](self)
        transitions = tuple(
            Transition(t.src, t.dst, Guard(tuple(a for a, _ in t.atoms)), Action(tuple(s for s, _ in t.steps)))
            for t in self.trs
        )
        manifest = Manifest(
            transitions=[t.tag for t in self.trs],
            atoms=[[tag for _, tag in t.atoms] for t in self.trs],
            steps=[[tag for _, tag in t.steps] for t in self.trs],
            stopwatches={x: tag for x, (_, tag) in self.stopwatches.items()},
        )
        swa = Swa(
            states=STATES,
            alphabet=ALPHABET,
            stopwatches=tuple(Stopwatch(x, b) for x, (b, _) in self.stopwatches.items()),
            labels=LABELS,
            active=frozenset(self.active),
            transitions=transitions,
            start=START,
            accept=ACCEPT,
            name="reg561",
        )
        return Reg561Automaton(swa, manifest, self.arts, self.c)


def build_reg561(c: Reg561Constants = DEFAULTS, arts: Iterable[str] = ARTICLES) -> Reg561Automaton:
    return _Builder(c, article_closure(arts)).build()


def reg561_check(c: Reg561Constants, w: Sequence[str], arts: Iterable[str] = ARTICLES, *, witness: bool = False) -> Verdict:
    return model_check(build_reg561(c, arts).automaton, w, witness=witness)


def reg561_schedule(c: Reg561Constants, w: str, letter: str, n: int, arts: Iterable[str] = ARTICLES) -> ScheduleResult:
    return schedule(build_reg561(c, arts).automaton, w, letter, n)
