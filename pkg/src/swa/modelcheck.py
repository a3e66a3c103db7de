"""Word membership by layered reachability over the transition system.

Layer ``i`` holds every node reachable by a computation reading ``w[:i]``:
it is the 0-closure of the layer's seeds.  The seeds of layer ``i + 1``
are the unit-elapse successors of the layer-``i`` nodes whose state is not
accept and is labelled ``w[i]``.  Only reachable nodes are ever built, so
fronts stay far below the ``|Q| * B`` worst case on typical inputs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .core import Compiled, Swa
from .errors import InputError
from .semantics import Edge, Node

ELAPSE = "elapse"


@dataclass
class Verdict:
    accepted: bool
    explored: int
    witness: list[Edge] | None = None
    layer_sizes: list[int] = field(default_factory=list)

    @property
    def peak_front(self) -> int:
        return max(self.layer_sizes, default=0)

    def __bool__(self):
        return self.accepted


def check_letters(a: Swa, w: Sequence[str]) -> None:
    bad = sorted(set(w) - set(a.alphabet))
    if bad:
        raise InputError(f"letters {bad} are not in the alphabet {list(a.alphabet)}")


def initial_front(c: Compiled) -> set:
    return c.closure([(c.start, c.zero)])


def advance(c: Compiled, front, letter: str) -> set:
    """Front after reading one more ``letter``."""
    accept, letters, elapse = c.accept, c.letters, c.elapse_fns
    seeds = {(q, elapse[q](v)) for q, v in front if q != accept and letter in letters[q]}
    return c.closure(c.prune(seeds))


def front_accepts(c: Compiled, front) -> bool:
    return any(q == c.accept for q, _ in front)


def layer_fronts(a: Swa, w: Sequence[str]) -> Iterator[set[Node]]:
    """Yield the fronts of layers ``0..|w|`` as sets of :class:`Node`."""
    check_letters(a, w)
    c = a.compiled
    front = initial_front(c)
    yield {Node(c.state_names[q], v) for q, v in front}
    for letter in w:
        front = advance(c, front, letter)
        yield {Node(c.state_names[q], v) for q, v in front}


ENGINES = ("auto", "python", "native")


def _native_check(c: Compiled, w: Sequence[str]) -> Verdict:
    from .kernel import lowered

    low = lowered(c)
    front = low.initial()
    sizes = [len(front)]
    for letter in w:
        front = low.advance(front, letter)
        sizes.append(len(front))
        if not len(front):
            sizes.extend([0] * (len(w) + 1 - len(sizes)))
            break
    return Verdict(bool((front[:, 0] == c.accept).any()), sum(sizes), None, sizes)


def model_check(
    a: Swa, w: Sequence[str], *, witness: bool = True, reduce: bool = True, engine: str = "auto"
) -> Verdict:
    """Decide ``w in L(a)``.

    With ``reduce`` the search runs on nodes whose dead stopwatch values
    are zeroed (see :func:`swa.core.live_stopwatches`), which leaves the
    verdict unchanged and can shrink fronts dramatically.  A witness is
    always an exact computation of ``a``: the back-pointers record which
    transition or elapse step was taken and the path is replayed on exact
    values.

    Ties are broken deterministically: every layer's seeds are expanded in
    ascending (state index, assignment) order, breadth first, and each node
    keeps the first predecessor that discovered it.
    """
    check_letters(a, w)
    if engine not in ENGINES:
        raise InputError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    c = a.reduced if reduce else a.compiled
    if not witness and engine != "python":
        from .kernel import AVAILABLE

        if AVAILABLE:
            return _native_check(c, w)
        if engine == "native":
            raise InputError("the native engine needs numba")
    if not witness:
        front = initial_front(c)
        sizes = [len(front)]
        for letter in w:
            front = advance(c, front, letter)
            sizes.append(len(front))
            if not front:
                sizes.extend([0] * (len(w) + 1 - len(sizes)))
                break
        return Verdict(front_accepts(c, front), sum(sizes), None, sizes)

    start = (c.start, c.zero)
    layers = [_closure_with_parents(c, {start: None})]
    for letter in w:
        prev = layers[-1]
        seeds: dict = {}
        for node in sorted(prev):
            q, v = node
            if q == c.accept or letter not in c.letters[q]:
                continue
            nxt = (q, c.elapse_fns[q](v))
            if nxt not in seeds:
                seeds[nxt] = (node, ELAPSE)
        kept = c.prune(seeds)
        if len(kept) < len(seeds):
            seeds = {n: p for n, p in seeds.items() if n in kept}
        layers.append(_closure_with_parents(c, seeds))
    sizes = [len(layer) for layer in layers]
    final = sorted(n for n in layers[-1] if n[0] == c.accept)
    if not final:
        return Verdict(False, sum(sizes), None, sizes)
    steps = _trace(layers, final[0])
    return Verdict(True, sum(sizes), _replay_exact(a.compiled, steps), sizes)


def _closure_with_parents(c: Compiled, seeds: dict) -> dict:
    parents = dict(seeds)
    queue = deque(sorted(seeds))
    out = c.out
    while queue:
        node = queue.popleft()
        q, v = node
        for g, act, dst, t_i in out[q]:
            if g is None or g(v):
                n = (dst, v if act is None else act(v))
                if n not in parents:
                    parents[n] = (node, t_i)
                    queue.append(n)
    return parents


def _trace(layers: list[dict], node) -> list:
    """Steps (``ELAPSE`` or a transition index) from the initial node to ``node``."""
    steps = []
    i = len(layers) - 1
    while True:
        link = layers[i][node]
        if link is None:
            break
        pred, step = link
        steps.append(step)
        if step == ELAPSE:
            i -= 1
        node = pred
    steps.reverse()
    return steps


def _replay_exact(c: Compiled, steps: list) -> list[Edge]:
    def as_node(n):
        return Node(c.state_names[n[0]], n[1])

    node = (c.start, c.zero)
    edges: list[Edge] = []
    for step in steps:
        q, v = node
        if step == ELAPSE:
            nxt = (q, c.elapse_fns[q](v))
            edges.append(Edge(as_node(node), 1, as_node(nxt)))
        else:
            src, (g, act, dst, _) = c.by_index[step]
            assert src == q and (g is None or g(v)), "witness step not enabled"
            nxt = (dst, v if act is None else act(v))
            edges.append(Edge(as_node(node), 0, as_node(nxt)))
        node = nxt
    return edges


def check_report(
    a: Swa, w: Sequence[str], *, witness: bool = False, reduce: bool = True, engine: str = "auto"
) -> Verdict:
    """:func:`model_check` plus the worst-case bound assertion on the explored count."""
    verdict = model_check(a, w, witness=witness, reduce=reduce, engine=engine)
    worst = (len(w) + 1) * len(a.states) * a.bound_product
    assert verdict.explored <= worst, (verdict.explored, worst)
    return verdict


def compress(witness: Sequence[Edge]) -> list[tuple[str, int]]:
    """Collapse a computation into ``(state, dwell time)`` pairs."""
    out: list[tuple[str, int]] = []
    if not witness:
        return out
    out.append((witness[0].src.state, 0))
    for e in witness:
        if e.duration:
            state, t = out[-1]
            out[-1] = (state, t + e.duration)
        else:
            out.append((e.dst.state, 0))
    return out


def language_upto(a: Swa, max_length: int) -> set[str]:
    """All accepted words of length at most ``max_length``, sharing work across prefixes."""
    c = a.reduced
    accepted: set[str] = set()

    def walk(prefix: str, front):
        if front_accepts(c, front):
            accepted.add(prefix)
        if len(prefix) == max_length:
            return
        for letter in a.alphabet:
            nxt = advance(c, front, letter)
            if nxt:
                walk(prefix + letter, nxt)

    walk("", initial_front(c))
    return accepted
