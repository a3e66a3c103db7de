"""Finite-automaton bridges, products and emptiness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .core import Stopwatch, Swa, SwaBuilder, Transition
from .errors import CapacityError, InputError
from .expr import Action, Atom, Const, Guard, Var, action, guard
from .modelcheck import advance, front_accepts, initial_front


@dataclass(frozen=True)
class Nfa:
    states: tuple
    alphabet: tuple[str, ...]
    initial: frozenset
    final: frozenset
    transitions: frozenset  # of (src, letter, dst)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "transitions", frozenset(self.transitions))

    def validate(self) -> list[str]:
        problems = []
        states = set(self.states)
        if not self.initial <= states:
            problems.append("initial states not declared")
        if not self.final <= states:
            problems.append("final states not declared")
        for s, c, d in self.transitions:
            if s not in states or d not in states:
                problems.append(f"transition {s!r} -{c}-> {d!r} uses undeclared states")
            if c not in self.alphabet:
                problems.append(f"transition letter {c!r} not in alphabet")
        return problems

    def step(self, current: Iterable, letter: str) -> frozenset:
        current = set(current)
        return frozenset(d for s, c, d in self.transitions if s in current and c == letter)

    def accepts(self, word: Sequence[str]) -> bool:
        current = self.initial
        for letter in word:
            current = self.step(current, letter)
            if not current:
                return False
        return bool(current & self.final)


# -- normalisation and products ----------------------------------------------

@dataclass(frozen=True)
class NormalizedPair:
    first: Swa
    second: Swa


def _same_alphabet(a: Swa, b: Swa) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise InputError(f"alphabets differ: {a.alphabet} vs {b.alphabet}")


def _fresh(name: str, taken: set[str]) -> str:
    candidate, i = name, 1
    while candidate in taken:
        candidate = f"{name}_{i}"
        i += 1
    return candidate


def rename_stopwatches(a: Swa, mapping: dict[str, str]) -> Swa:
    from .expr import BoundOf, Min, Monus, Sgn, Sum

    def ren(e):
        if isinstance(e, Var):
            return Var(mapping.get(e.name, e.name))
        if isinstance(e, BoundOf):
            return BoundOf(mapping.get(e.name, e.name))
        if isinstance(e, (Sum, Monus, Min)):
            return type(e)(ren(e.left), ren(e.right))
        if isinstance(e, Sgn):
            return Sgn(ren(e.arg))
        return e

    transitions = tuple(
        Transition(
            t.src, t.dst,
            Guard(tuple(Atom(ren(at.left), at.op, ren(at.right)) for at in t.guard.atoms)),
            Action(tuple((mapping.get(x, x), ren(e)) for x, e in t.action.steps)),
        )
        for t in a.transitions
    )
    return a.replace(
        stopwatches=tuple(Stopwatch(mapping.get(x.name, x.name), x.bound) for x in a.stopwatches),
        active=frozenset((mapping.get(x, x), q) for x, q in a.active),
        transitions=transitions,
    )


def _normalize_one(a: Swa) -> Swa:
    kept = [t for t in a.transitions if t.src != a.accept]
    loops = {t.src for t in kept if t.src == t.dst and t.guard.trivial and t.action.trivial}
    kept += [Transition(q, q) for q in a.states if q != a.accept and q not in loops]
    return a.replace(transitions=tuple(kept))


def normalize_pair(a: Swa, b: Swa) -> NormalizedPair:
    """Disjoint stopwatches, nothing leaving accept, trivial self-loops everywhere else."""
    _same_alphabet(a, b)
    taken = set(a.names)
    mapping = {}
    for x in b.names:
        if x in taken:
            mapping[x] = _fresh(x, taken | set(b.names) | set(mapping.values()))
        taken.add(mapping.get(x, x))
    if mapping:
        b = rename_stopwatches(b, mapping)
    return NormalizedPair(_normalize_one(a), _normalize_one(b))


def product(a: Swa, b: Swa) -> Swa:
    """Automaton for the intersection of the two languages.

    States are pairs; both components move together (the self-loops added
    by :func:`normalize_pair` let one side idle).  A synchronisation
    stopwatch of bound 1, active everywhere and reset by every transition,
    blocks leaving any pair whose components disagree on the letter once
    time has passed there.
    """
    pair = normalize_pair(a, b)
    a, b = pair.first, pair.second
    sync = _fresh("sync", set(a.names) | set(b.names))

    def pname(p: str, q: str) -> str:
        return f"{p}*{q}"

    states, labels, active = [], {}, set()
    for p in a.states:
        for q in b.states:
            n = pname(p, q)
            states.append(n)
            labels[n] = a.labels[p]
            active.add((sync, n))
    for x, p in a.active:
        active |= {(x, pname(p, q)) for q in b.states}
    for x, q in b.active:
        active |= {(x, pname(p, q)) for p in a.states}
    reset = Action(((sync, Const(0)),))
    mismatch = Guard((Atom(Var(sync), "=", Const(0)),))
    transitions = []
    for s in a.transitions:
        for t in b.transitions:
            g = s.guard & t.guard
            if a.labels[s.src] != b.labels[t.src]:
                g = g & mismatch
            transitions.append(
                Transition(pname(s.src, t.src), pname(s.dst, t.dst), g, s.action + t.action + reset)
            )
    return Swa(
        states=tuple(states),
        alphabet=a.alphabet,
        stopwatches=a.stopwatches + b.stopwatches + (Stopwatch(sync, 1),),
        labels=labels,
        active=frozenset(active),
        transitions=tuple(transitions),
        start=pname(a.start, b.start),
        accept=pname(a.accept, b.accept),
        name=f"{a.name}*{b.name}",
    )


# -- translations --------------------------------------------------------------

def node_name(a: Swa, q: str, values: Sequence[int]) -> str:
    return f"{q}[{','.join(map(str, values))}]"


def to_nfa(a: Swa, capacity: int = 100_000) -> Nfa:
    """Finite automaton over the nodes of the transition system.

    A transition reads ``c`` from node ``u`` to ``(q, xi')`` when some
    ``(q, xi'')`` with label ``c`` is 0-reachable from ``u`` and elapses to
    ``(q, xi')`` in one unit; ``q`` is never accept, which halts.  Final
    nodes are those that 0-reach accept.
    """
    import itertools

    total = len(a.states) * a.bound_product
    if total > capacity:
        raise CapacityError(f"{total} nodes exceed the capacity {capacity}")
    c = a.compiled
    assignments = list(itertools.product(*(range(b + 1) for b in c.bounds)))
    nodes = [(q, v) for q in range(len(a.states)) for v in assignments]
    name = {n: node_name(a, c.state_names[n[0]], n[1]) for n in nodes}
    final, transitions = set(), set()
    for n in nodes:
        closure = c.closure([n])
        if any(q == c.accept for q, _ in closure):
            final.add(name[n])
        for q, v in closure:
            if q == c.accept:
                continue
            m = (q, c.elapse_fns[q](v))
            for letter in c.letters[q]:
                transitions.add((name[n], letter, name[m]))
    return Nfa(
        states=tuple(name[n] for n in nodes),
        alphabet=a.alphabet,
        initial={name[(c.start, c.zero)]},
        final=final,
        transitions=transitions,
    )


def from_nfa(nfa: Nfa) -> Swa:
    """Stopwatch automaton with states ``S x Sigma`` and one stopwatch of bound 2."""
    problems = nfa.validate()
    if problems:
        raise InputError("invalid NFA: " + "; ".join(problems))
    pair = {(s, c): f"{s}.{c}" for s in nfa.states for c in nfa.alphabet}
    taken = set(pair.values())
    start, accept = _fresh("start", taken), _fresh("accept", taken | {"start"})
    b = SwaBuilder(nfa.alphabet, start=start, accept=accept)
    b.state(start, nfa.alphabet[0])
    b.state(accept, nfa.alphabet[0])
    for (s, c), n in pair.items():
        b.state(n, c)
    b.stopwatch("x", 2, active=b.states)
    one, zero, reset = guard("x = 1"), guard("x = 0"), action("x := 0")
    for s, c, d in sorted(nfa.transitions, key=repr):
        for c2 in nfa.alphabet:
            b.trans(pair[(s, c)], pair[(d, c2)], one, reset)
    for s in sorted(nfa.initial, key=repr):
        for c in nfa.alphabet:
            b.trans(start, pair[(s, c)], zero)
    for s in sorted(nfa.final, key=repr):
        for c in nfa.alphabet:
            b.trans(pair[(s, c)], accept, zero)
    return b.build(name="from-nfa")


# -- emptiness -------------------------------------------------------------------

def is_nonempty(a: Swa, node_budget: int | None = None) -> tuple[bool, str | None]:
    """Decide ``L(a) != {}`` and return the shortest, lexicographically least witness.

    Breadth first over words: the set of nodes reached after a word is kept
    per distinct node (first discovery wins).  Expanding each layer in
    discovery order and letters in alphabet order makes discovery order
    equal lexicographic order of the words.
    """
    c = a.reduced
    start = (c.start, c.zero)
    parent: dict = {start: None}
    layer = [start]
    explored = 0
    order = {ch: i for i, ch in enumerate(a.alphabet)}
    while layer:
        nxt: list = []
        for n in layer:
            closure = _sorted_closure(c, n)
            explored += len(closure)
            if node_budget is not None and explored > node_budget:
                raise CapacityError(f"node budget {node_budget} exceeded")
            if any(q == c.accept for q, _ in closure):
                return True, _word_to(parent, n)
            moves = []
            for q, v in closure:
                if q == c.accept:
                    continue
                m = (q, c.elapse_fns[q](v))
                for letter in c.letters[q]:
                    moves.append((order[letter], m, letter))
            for _, m, letter in sorted(moves):
                if m not in parent:
                    parent[m] = (n, letter)
                    nxt.append(m)
        layer = nxt
    return False, None


def _sorted_closure(c, n) -> list:
    return sorted(c.closure([n]))


def _word_to(parent: dict, n) -> str:
    letters = []
    while parent[n] is not None:
        n, letter = parent[n]
        letters.append(letter)
    return "".join(reversed(letters))


def intersect_nonempty(a: Swa, b: Swa, node_budget: int | None = None) -> tuple[bool, str | None]:
    return is_nonempty(product(a, b), node_budget)


def succinct_family(k: int) -> Swa:
    """Accepts ``a^s b^s c^m`` for ``s < k`` with three stopwatches of bound ``k``."""
    if k < 1:
        raise InputError("k must be at least 1")
    from .extensions import BoundFn, nonregular_family

    return nonregular_family(BoundFn.const(k)).instantiate(0)


def accepts_by_fronts(a: Swa, word: str) -> bool:
    c = a.compiled
    front = initial_front(c)
    for letter in word:
        front = advance(c, front, letter)
    return front_accepts(c, front)
