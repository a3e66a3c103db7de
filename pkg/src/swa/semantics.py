"""Transition system of an automaton and a brute-force acceptance oracle.

Everything here evaluates guards and actions through the interpreter in
:mod:`swa.expr`; the model checker uses the compiled form instead, so the
two can be checked against each other.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .core import Swa
from .errors import CapacityError, InputError, InvalidDurationError, StructuralError
from .expr import apply_action, holds


class Node(NamedTuple):
    state: str
    values: tuple[int, ...]


class Edge(NamedTuple):
    src: Node
    duration: int
    dst: Node


Computation = list[Edge]

ORACLE_MAX_NODES = 10_000
ORACLE_MAX_LENGTH = 8


def initial_node(a: Swa) -> Node:
    return Node(a.start, a.zero())


def elapse(a: Swa, n: Node, t: int) -> Node:
    if t < 1:
        raise InvalidDurationError(f"elapse edges need a positive duration, got {t}")
    act = a.active_in(n.state)
    vals = tuple(
        min(v + t, x.bound) if x.name in act else v
        for v, x in zip(n.values, a.stopwatches)
    )
    return Node(n.state, vals)


def zero_successors(a: Swa, n: Node) -> set[Node]:
    if n.state == a.accept:
        return set()
    bounds = a.bounds
    xi = a.as_dict(n.values)
    out = set()
    for t in a.transitions:
        if t.src != n.state or not holds(t.guard, xi, bounds):
            continue
        after = apply_action(t.action, xi, bounds)
        out.add(Node(t.dst, tuple(after[x] for x in a.names)))
    return out


def zero_closure(a: Swa, nodes: Iterable[Node]) -> set[Node]:
    seen = set(nodes)
    todo = list(seen)
    while todo:
        for m in zero_successors(a, todo.pop()):
            if m not in seen:
                seen.add(m)
                todo.append(m)
    return seen


def _check_word(a: Swa, w: Sequence[str]) -> None:
    bad = sorted(set(w) - set(a.alphabet))
    if bad:
        raise InputError(f"letters {bad} are not in the alphabet {list(a.alphabet)}")


def oracle_accepts(
    a: Swa,
    w: Sequence[str],
    *,
    unit_elapse: bool = True,
    max_nodes: int = ORACLE_MAX_NODES,
    max_length: int = ORACLE_MAX_LENGTH,
) -> bool:
    """Exhaustive depth-first search for an initial accepting computation reading ``w``.

    With ``unit_elapse`` every elapse edge lasts one time unit; otherwise any
    duration that fits the remaining (uniformly labelled) letters is tried.
    Revisits of a (position, node) pair are cut, so cyclic 0-edges terminate.
    """
    _check_word(a, w)
    if len(a.states) * a.bound_product > max_nodes or len(w) > max_length:
        raise CapacityError(
            f"oracle limited to |Q|*B <= {max_nodes} and |w| <= {max_length}"
        )
    w = tuple(w)
    start = (0, initial_node(a))
    seen = {start}
    stack = [start]
    while stack:
        pos, node = stack.pop()
        if node.state == a.accept:
            if pos == len(w):
                return True
            continue
        nxt = [(pos, m) for m in zero_successors(a, node)]
        if pos < len(w) and w[pos] in a.letters_of(node.state):
            longest = 1
            if not unit_elapse:
                letters = a.letters_of(node.state)
                while pos + longest < len(w) and w[pos + longest] in letters:
                    longest += 1
            nxt += [(pos + t, elapse(a, node, t)) for t in range(1, longest + 1)]
        for item in nxt:
            if item not in seen:
                seen.add(item)
                stack.append(item)
    return False


def replay(a: Swa, computation: Sequence[Edge]) -> str:
    """Validate a computation edge by edge and return the word it reads.

    Raises :class:`StructuralError` on any edge that is not in the
    transition system or on a broken chain.
    """
    word: list[str] = []
    for i, (src, t, dst) in enumerate(computation):
        if src.state == a.accept:
            raise StructuralError(f"edge {i} leaves the accept state")
        if i and computation[i - 1].dst != src:
            raise StructuralError(f"edge {i} does not continue edge {i - 1}")
        if t == 0:
            if dst not in zero_successors(a, src):
                raise StructuralError(f"edge {i} is not an enabled transition")
        else:
            if elapse(a, src, t) != dst:
                raise StructuralError(f"edge {i} is not a valid elapse step")
            letters = sorted(a.letters_of(src.state))
            word.extend(letters[0] * t)
    return "".join(word)


def is_initial_accepting(a: Swa, computation: Sequence[Edge]) -> bool:
    if not computation:
        return False
    return computation[0].src == initial_node(a) and computation[-1].dst.state == a.accept
