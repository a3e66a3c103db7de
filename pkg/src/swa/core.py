"""Stopwatch automata: data model, validation, metrics and delabeling."""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .errors import StructuralError
from .expr import (
    IDENTITY,
    TRUE,
    Action,
    BoundOf,
    Const,
    Guard,
    Min,
    Monus,
    Sgn,
    Sum,
    Var,
    action_exprs,
    action_source,
    all_names,
    expr_size,
    guard_exprs,
    guard_source,
    subexprs,
)


@dataclass(frozen=True)
class Stopwatch:
    name: str
    bound: int


@dataclass(frozen=True)
class Transition:
    src: str
    dst: str
    guard: Guard = TRUE
    action: Action = IDENTITY


@dataclass(frozen=True, eq=False)
class Swa:
    """A specific stopwatch automaton.

    ``labels`` maps each state to one letter, ``active`` holds
    ``(stopwatch, state)`` pairs.  Instances are treated as immutable; the
    compiled form used by the checkers is cached on first use.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    stopwatches: tuple[Stopwatch, ...]
    labels: Mapping[str, object]
    active: frozenset[tuple[str, str]]
    transitions: tuple[Transition, ...]
    start: str = "start"
    accept: str = "accept"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "stopwatches", tuple(self.stopwatches))
        object.__setattr__(self, "labels", dict(self.labels))
        object.__setattr__(self, "active", frozenset(self.active))
        object.__setattr__(self, "transitions", tuple(self.transitions))

    def letters_of(self, state: str) -> frozenset[str]:
        return frozenset((self.labels[state],))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(x.name for x in self.stopwatches)

    @property
    def bounds(self) -> dict[str, int]:
        return {x.name: x.bound for x in self.stopwatches}

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.stopwatches)

    def as_dict(self, values: Sequence[int]) -> dict[str, int]:
        return dict(zip(self.names, values))

    def active_in(self, state: str) -> frozenset[str]:
        return frozenset(x for x, q in self.active if q == state)

    def replace(self, **changes) -> "Swa":
        fields = dict(
            states=self.states, alphabet=self.alphabet, stopwatches=self.stopwatches,
            labels=self.labels, active=self.active, transitions=self.transitions,
            start=self.start, accept=self.accept, name=self.name,
        )
        fields.update(changes)
        return type(self)(**fields)

    # -- metrics ------------------------------------------------------------

    @property
    def bound_product(self) -> int:
        return bound_product(self)

    @property
    def stopwatch_count(self) -> int:
        return len(self.stopwatches)

    @property
    def max_bound(self) -> int:
        return max((x.bound for x in self.stopwatches), default=0)

    @property
    def assignment_bits(self) -> int:
        # ceil(log2(b + 1)) == b.bit_length() for every natural b
        return sum(x.bound.bit_length() for x in self.stopwatches)

    @property
    def size(self) -> int:
        nodes = 0
        for t in self.transitions:
            nodes += sum(expr_size(e) for e in guard_exprs(t.guard))
            nodes += sum(expr_size(e) for e in action_exprs(t.action))
        return len(self.states) + len(self.transitions) + nodes + self.assignment_bits

    @property
    def parameter(self) -> int:
        """|Q| + |Σ| + |X| + |Δ|, the fixed parameter of bounded-value-free analysis."""
        return len(self.states) + len(self.alphabet) + len(self.stopwatches) + len(self.transitions)

    @cached_property
    def compiled(self) -> "Compiled":
        problems = validate(self)
        if problems:
            raise StructuralError("invalid automaton: " + "; ".join(problems))
        return Compiled(self)

    @cached_property
    def reduced(self) -> "Compiled":
        """Compiled form that zeroes dead stopwatch values; same language, fewer nodes."""
        self.compiled  # validates
        return Compiled(self, reduce=True)


@dataclass(frozen=True, eq=False)
class PLabeledSwa(Swa):
    """Variant whose states carry non-empty sets of letters."""

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(
            self, "labels", {q: frozenset(v) for q, v in self.labels.items()}
        )

    def letters_of(self, state: str) -> frozenset[str]:
        return self.labels[state]


def bound_product(a: Swa) -> int:
    return math.prod(x.bound + 1 for x in a.stopwatches)


def validate(a: Swa) -> list[str]:
    """Return every violated structural invariant; empty means valid."""
    problems: list[str] = []
    if not a.alphabet:
        problems.append("alphabet is empty")
    if len(set(a.alphabet)) != len(a.alphabet):
        problems.append("alphabet has duplicate letters")
    for letter in a.alphabet:
        if not isinstance(letter, str) or len(letter) != 1:
            problems.append(f"letter {letter!r} is not a single character")
    states = set(a.states)
    if len(states) != len(a.states):
        problems.append("duplicate state names")
    for special in ("start", "accept"):
        if getattr(a, special) not in states:
            problems.append(f"{special} state {getattr(a, special)!r} is not declared")
    if a.start == a.accept:
        problems.append("start and accept coincide")
    alphabet = set(a.alphabet)
    for q in a.states:
        if q not in a.labels:
            problems.append(f"state {q!r} has no label")
            continue
        letters = a.letters_of(q)
        if not letters:
            problems.append(f"state {q!r} has an empty label set")
        elif not letters <= alphabet:
            problems.append(f"label of state {q!r} is outside the alphabet")
    for q in a.labels:
        if q not in states:
            problems.append(f"label given for undeclared state {q!r}")
    names = [x.name for x in a.stopwatches]
    if len(set(names)) != len(names):
        problems.append("duplicate stopwatch names")
    for x in a.stopwatches:
        if not isinstance(x.bound, int) or x.bound < 0:
            problems.append(f"stopwatch {x.name!r} has invalid bound {x.bound!r}")
    declared = set(names)
    for x, q in a.active:
        if x not in declared:
            problems.append(f"activity refers to undeclared stopwatch {x!r}")
        if q not in states:
            problems.append(f"activity refers to undeclared state {q!r}")
    for i, t in enumerate(a.transitions):
        where = f"transition #{i} {t.src} -> {t.dst}"
        if t.src not in states:
            problems.append(f"{where}: undeclared source state")
        if t.dst not in states:
            problems.append(f"{where}: undeclared target state")
        used = all_names(guard_exprs(t.guard)) | all_names(action_exprs(t.action))
        used |= {target for target, _ in t.action.steps}
        for name in sorted(used - declared):
            problems.append(f"{where}: undeclared stopwatch {name!r}")
    return problems


class Compiled:
    """Integer-indexed form with guards, actions and elapse steps as Python code.

    Nodes are ``(state_index, values)`` with ``values`` a tuple ordered like
    ``Swa.stopwatches``.
    """

    def __init__(self, a: Swa, reduce: bool = False):
        self.swa = a
        self.reduce = reduce
        self.state_names = a.states
        self.state_index = {q: i for i, q in enumerate(a.states)}
        self.start = self.state_index[a.start]
        self.accept = self.state_index[a.accept]
        names = a.names
        self.index = {x: i for i, x in enumerate(names)}
        bounds = a.bounds
        self.bounds = tuple(bounds[x] for x in names)
        self.letters = tuple(a.letters_of(q) for q in a.states)
        self.zero = a.zero()

        live = live_stopwatches(a) if reduce else {q: set(names) for q in a.states}
        dead = {q: [i for i, x in enumerate(names) if x not in live[q]] for q in a.states}
        self.live = {q: frozenset(xs) for q, xs in live.items()}
        mono = lower_is_better(a) if reduce else set()
        self.monotone = tuple(i for i, x in enumerate(names) if x in mono)
        rest = [i for i, x in enumerate(names) if x not in mono]
        self._rest = (lambda v: ()) if not rest else (
            (lambda v, i=rest[0]: (v[i],)) if len(rest) == 1 else operator.itemgetter(*rest))
        self._mono = (lambda v: ()) if not self.monotone else (
            (lambda v, i=self.monotone[0]: (v[i],)) if len(self.monotone) == 1 else operator.itemgetter(*self.monotone))

        ns: dict[str, object] = {}
        src: list[str] = []
        for q_i, q in enumerate(a.states):
            act = a.active_in(q) & live[q]
            if not act or all(bounds[x] == 0 for x in act):
                continue
            parts = []
            for x_i, x in enumerate(names):
                if x in act:
                    b = self.bounds[x_i]
                    parts.append(f"(v[{x_i}] + 1 if v[{x_i}] < {b} else {b})")
                else:
                    parts.append(f"v[{x_i}]")
            body = "(" + ", ".join(parts) + ("," if len(parts) == 1 else "") + ")"
            src.append(f"def elapse_{q_i}(v):\n    return {body}\n")
        for t_i, t in enumerate(a.transitions):
            if not t.guard.trivial:
                src.append(f"def guard_{t_i}(v):\n    return {guard_source(t.guard, self.index, bounds)}\n")
            extra = sorted(set(dead[t.dst]) - set(dead[t.src]))
            if not t.action.trivial or extra:
                lines = action_source(t.action, self.index, bounds)
                lines += [f"v[{i}] = 0" for i in dead[t.dst]]
                body = "\n".join("    " + ln for ln in lines)
                src.append(f"def action_{t_i}(v):\n    v = list(v)\n{body}\n    return tuple(v)\n")
        exec(compile("\n".join(src), f"<swa {a.name or id(a)}>", "exec"), ns)

        ident: Callable = lambda v: v
        self.elapse_fns = tuple(ns.get(f"elapse_{i}", ident) for i in range(len(a.states)))
        out: list[list[tuple]] = [[] for _ in a.states]
        for t_i, t in enumerate(a.transitions):
            out[self.state_index[t.src]].append(
                (ns.get(f"guard_{t_i}"), ns.get(f"action_{t_i}"), self.state_index[t.dst], t_i)
            )
        # accept is halting: nothing leaves it
        out[self.accept] = []
        self.out = tuple(tuple(o) for o in out)
        self.by_index = {e[3]: (q, e) for q, o in enumerate(self.out) for e in o}

    def prune(self, nodes) -> set:
        """Drop nodes dominated by another node of ``nodes`` (only in reduced mode)."""
        if not self.monotone:
            return nodes if isinstance(nodes, set) else set(nodes)
        rest, mono = self._rest, self._mono
        groups: dict = {}
        for n in nodes:
            groups.setdefault((n[0], rest(n[1])), []).append(n)
        out = set()
        for members in groups.values():
            if len(members) == 1:
                out.add(members[0])
                continue
            keys = sorted((sum(k), k, n) for n in members for k in [mono(n[1])])
            kept: list = []
            for _, k, n in keys:
                if not any(all(x <= y for x, y in zip(j, k)) for j in kept):
                    kept.append(k)
                    out.add(n)
        return out

    def successors(self, node):
        q, v = node
        for g, act, dst, _ in self.out[q]:
            if g is None or g(v):
                yield (dst, v if act is None else act(v))

    def closure(self, seeds: Iterable) -> set:
        seen = set(seeds)
        stack = list(seen)
        out = self.out
        while stack:
            q, v = stack.pop()
            for g, act, dst, _ in out[q]:
                if g is None or g(v):
                    n = (dst, v if act is None else act(v))
                    if n not in seen:
                        seen.add(n)
                        stack.append(n)
        return seen


ABSTRACT_LIMIT = 50_000


def _flag_bits(a: Swa) -> list[str]:
    """Bits that are never active, only assigned constants and only compared with constants."""
    ok = {x.name for x in a.stopwatches if x.bound == 1}
    ok -= {x for x, _ in a.active}
    for t in a.transitions:
        for target, e in t.action.steps:
            if not isinstance(e, Const):
                ok.discard(target)
            ok -= {s.name for s in subexprs(e) if isinstance(s, (Var, BoundOf))}
        for at in t.guard.atoms:
            sides = (at.left, at.right)
            simple = all(isinstance(e, (Var, Const)) for e in sides) and sum(isinstance(e, Var) for e in sides) == 1
            if not simple:
                for e in sides:
                    ok -= {s.name for s in subexprs(e) if isinstance(s, (Var, BoundOf))}
    return sorted(ok)


def live_stopwatches(a: Swa) -> dict[str, set[str]]:
    """Stopwatches whose value in a state may be read before it is overwritten.

    Backward dataflow to a fixpoint: a transition reads its guard, its
    action steps read their right-hand sides, and a step kills its target
    for everything after it.  Elapse keeps a value live or dead.  Nothing is
    live in accept.  Zeroing dead values merges nodes with equal futures.

    The graph is refined by the values of flag bits (see :func:`_flag_bits`),
    explored forward from the initial node, so that paths blocked by a flag
    guard make nothing live except the flags that guard reads.  Without
    refinement a hub state that always returns to where it came from would
    make everything live everywhere.
    """
    names = a.names
    bit = {x: 1 << i for i, x in enumerate(names)}
    flags = _flag_bits(a)
    fpos = {x: i for i, x in enumerate(flags)}

    def reads(e) -> int:
        m = 0
        for s in subexprs(e):
            if isinstance(s, Var):
                m |= bit[s.name]
        return m

    def compare(x: int, op: str, y: int) -> bool:
        return {"=": x == y, "!=": x != y, "<": x < y, "<=": x <= y, ">": x > y, ">=": x >= y}[op]

    prepared = []
    for t in a.transitions:
        if t.src == a.accept:
            continue
        checks, sets = [], []
        for at in t.guard.atoms:
            l, r = at.left, at.right
            if isinstance(l, Var) and l.name in fpos and isinstance(r, Const):
                checks.append((fpos[l.name], at.op, r.value, False))
            elif isinstance(r, Var) and r.name in fpos and isinstance(l, Const):
                checks.append((fpos[r.name], at.op, l.value, True))
        for target, e in t.action.steps:
            if target in fpos:
                sets.append((fpos[target], min(e.value, 1)))
        guard_reads = 0
        for e in guard_exprs(t.guard):
            guard_reads |= reads(e)
        steps = [(bit[target], reads(e)) for target, e in reversed(t.action.steps)]
        prepared.append((t.src, t.dst, checks, sets, guard_reads, steps))

    def enabled(checks, fv):
        for i, op, k, flipped in checks:
            v = (fv >> i) & 1
            if not (compare(k, op, v) if flipped else compare(v, op, k)):
                return False
        return True

    def after(sets, fv):
        for i, v in sets:
            fv = fv | (1 << i) if v else fv & ~(1 << i)
        return fv

    by_src: dict[str, list] = {}
    for p in prepared:
        by_src.setdefault(p[0], []).append(p)
    start = (a.start, 0)
    seen = {start}
    todo = [start]
    edges = []
    blocked: dict = {}
    while todo:
        q, fv = todo.pop()
        for p in by_src.get(q, ()):
            # a failing flag check still reads its flags
            blocked[(q, fv)] = blocked.get((q, fv), 0) | sum(bit[flags[i]] for i, *_ in p[2])
            if enabled(p[2], fv):
                n = (p[1], after(p[3], fv))
                edges.append(((q, fv), n, p))
                if n not in seen:
                    if len(seen) >= ABSTRACT_LIMIT:
                        return {q: set(names) for q in a.states}
                    seen.add(n)
                    todo.append(n)

    live = {n: blocked.get(n, 0) for n in seen}
    changed = True
    while changed:
        changed = False
        for src, dst, p in edges:
            need = live[dst]
            for target, rd in p[5]:
                need = (need & ~target) | rd
            need |= p[4]
            if need & ~live[src]:
                live[src] |= need
                changed = True
    out: dict[str, set[str]] = {q: set() for q in a.states}
    for (q, _), m in live.items():
        out[q] |= {x for x in names if m & bit[x]}
    return out


def _mentions(e, names) -> bool:
    return any(isinstance(s, Var) and s.name in names for s in subexprs(e))


def _monotone_in(e, names) -> bool:
    """``e`` does not decrease when values of ``names`` increase."""
    if isinstance(e, Monus):
        return _monotone_in(e.left, names) and not _mentions(e.right, names)
    if isinstance(e, (Sum, Min)):
        return _monotone_in(e.left, names) and _monotone_in(e.right, names)
    if isinstance(e, Sgn):
        return _monotone_in(e.arg, names)
    return True


def lower_is_better(a: Swa) -> set[str]:
    """Stopwatches for which a smaller value can always mimic a larger one.

    Largest set ``M`` such that every guard atom mentioning ``M`` has the
    form ``lhs <= rhs`` (or ``<``, or mirrored) with ``lhs`` monotone in
    ``M`` and ``rhs`` free of ``M``, every assignment to a member is
    monotone in ``M``, and no other stopwatch is assigned from ``M``.
    Elapse with clamping is monotone, so from two nodes that agree outside
    ``M`` the one that is componentwise smaller on ``M`` accepts at least
    the same continuations.
    """
    m = set(a.names)
    changed = True
    while changed:
        changed = False
        bad: set[str] = set()
        for t in a.transitions:
            for at in t.guard.atoms:
                lo, hi = at.left, at.right
                if at.op in (">", ">="):
                    lo, hi = hi, lo
                elif at.op not in ("<", "<="):
                    for e in (lo, hi):
                        bad |= {s.name for s in subexprs(e) if isinstance(s, Var) and s.name in m}
                    continue
                if _mentions(hi, m) or not _monotone_in(lo, m):
                    for e in (lo, hi):
                        bad |= {s.name for s in subexprs(e) if isinstance(s, Var) and s.name in m}
            for target, e in t.action.steps:
                if target in m and not _monotone_in(e, m):
                    bad.add(target)
                    bad |= {s.name for s in subexprs(e) if isinstance(s, Var) and s.name in m}
                if target not in m and _mentions(e, m):
                    bad |= {s.name for s in subexprs(e) if isinstance(s, Var) and s.name in m}
        if bad & m:
            m -= bad
            changed = True
    return m


class SwaBuilder:
    """Incremental construction helper used by the library's constructions."""

    def __init__(self, alphabet: Iterable[str], start: str = "start", accept: str = "accept"):
        self.alphabet = tuple(alphabet)
        self.start = start
        self.accept = accept
        self.states: list[str] = []
        self.labels: dict[str, object] = {}
        self.stopwatches: dict[str, int] = {}
        self.active: set[tuple[str, str]] = set()
        self.transitions: list[Transition] = []

    def state(self, name: str, label) -> str:
        if name not in self.labels:
            self.states.append(name)
        self.labels[name] = label
        return name

    def stopwatch(self, name: str, bound: int, active: Iterable[str] = ()) -> str:
        self.stopwatches[name] = bound
        self.active |= {(name, q) for q in active}
        return name

    def trans(self, src: str, dst: str, g: Guard = TRUE, act: Action = IDENTITY) -> Transition:
        t = Transition(src, dst, g, act)
        self.transitions.append(t)
        return t

    def build(self, cls=Swa, name: str = "") -> Swa:
        return cls(
            states=tuple(self.states),
            alphabet=self.alphabet,
            stopwatches=tuple(Stopwatch(x, b) for x, b in self.stopwatches.items()),
            labels=self.labels,
            active=frozenset(self.active),
            transitions=tuple(self.transitions),
            start=self.start,
            accept=self.accept,
            name=name,
        )


def delabel(a: PLabeledSwa) -> Swa:
    """Equivalent automaton with one letter per state and the same bound product.

    A state ``q`` with several letters becomes one copy ``q.a`` per letter,
    joined by trivial letter-switch transitions.  The accept state is kept as
    a single copy: a second, non-accepting copy of it would not be halting.
    """
    if not isinstance(a, PLabeledSwa):
        return a
    alphabet_order = {c: i for i, c in enumerate(a.alphabet)}

    def copies(q: str) -> list[str]:
        letters = sorted(a.letters_of(q), key=alphabet_order.__getitem__)
        if q == a.accept:
            return [q]
        if len(letters) == 1:
            return [q]
        return [f"{q}.{c}" for c in letters]

    def letters(q: str) -> list[str]:
        letters_ = sorted(a.letters_of(q), key=alphabet_order.__getitem__)
        return letters_[:1] if q == a.accept else letters_

    states, labels, active = [], {}, set()
    where: dict[str, list[str]] = {}
    for q in a.states:
        where[q] = copies(q)
        for copy, c in zip(where[q], letters(q)):
            states.append(copy)
            labels[copy] = c
    for x, q in a.active:
        for copy in where[q]:
            active.add((x, copy))
    transitions = []
    for t in a.transitions:
        if t.src == a.accept:
            continue
        for s in where[t.src]:
            for d in where[t.dst]:
                transitions.append(Transition(s, d, t.guard, t.action))
    for q in a.states:
        group = where[q]
        for s in group:
            for d in group:
                if s != d:
                    transitions.append(Transition(s, d))
    return Swa(
        states=tuple(states),
        alphabet=a.alphabet,
        stopwatches=a.stopwatches,
        labels=labels,
        active=frozenset(active),
        transitions=tuple(transitions),
        start=where[a.start][0],
        accept=a.accept,
        name=a.name,
    )
