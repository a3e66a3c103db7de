"""Guard and action expressions over stopwatch values.

Expressions evaluate to natural numbers.  Subtraction is monus
(``max(a - b, 0)``) so no intermediate value is ever negative.  The same
trees are evaluated two ways: interpreted (:func:`eval_expr`, used by the
reference semantics) and compiled to Python source (:func:`expr_source`,
used by the model checker).

Textual syntax, as used in automaton files::

    expr  := term (("+" | "-") term)*        left associative, "-" is monus
    term  := NAT | NAME | "bound(" NAME ")" | "sgn(" expr ")"
           | "min(" expr "," expr ")" | "(" expr ")"
    atom  := expr ("=" | "!=" | "<" | "<=" | ">" | ">=") expr
    guard := atom (";" atom)*                 empty string means true
    action:= NAME ":=" expr (";" NAME ":=" expr)*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import ParseError, StructuralError


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise StructuralError(f"negative constant {self.value}")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BoundOf:
    name: str


@dataclass(frozen=True)
class Sum:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Monus:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sgn:
    arg: "Expr"


@dataclass(frozen=True)
class Min:
    left: "Expr"
    right: "Expr"


Expr = Union[Const, Var, BoundOf, Sum, Monus, Sgn, Min]

OPS = ("=", "!=", "<", "<=", ">", ">=")
_PY_OPS = {"=": "==", "!=": "!=", "<": "<", "<=": "<=", ">": ">", ">=": ">="}


@dataclass(frozen=True)
class Atom:
    left: Expr
    op: str
    right: Expr

    def __post_init__(self):
        if self.op not in OPS:
            raise StructuralError(f"unknown comparison {self.op!r}")


@dataclass(frozen=True)
class Guard:
    atoms: tuple[Atom, ...] = ()

    def __and__(self, other: "Guard") -> "Guard":
        return Guard(self.atoms + other.atoms)

    def __bool__(self):  # a guard object is never falsy; use .trivial
        return True

    @property
    def trivial(self) -> bool:
        return not self.atoms


@dataclass(frozen=True)
class Action:
    steps: tuple[tuple[str, Expr], ...] = ()

    def __add__(self, other: "Action") -> "Action":
        return Action(self.steps + other.steps)

    def __bool__(self):
        return True

    @property
    def trivial(self) -> bool:
        return not self.steps


TRUE = Guard()
IDENTITY = Action()


# -- traversal -------------------------------------------------------------

def subexprs(e: Expr) -> Iterator[Expr]:
    yield e
    if isinstance(e, (Sum, Monus, Min)):
        yield from subexprs(e.left)
        yield from subexprs(e.right)
    elif isinstance(e, Sgn):
        yield from subexprs(e.arg)


def names_in(e: Expr) -> set[str]:
    return {s.name for s in subexprs(e) if isinstance(s, (Var, BoundOf))}


def expr_size(e: Expr) -> int:
    return sum(1 for _ in subexprs(e))


def guard_exprs(g: Guard) -> Iterator[Expr]:
    for atom in g.atoms:
        yield atom.left
        yield atom.right


def action_exprs(a: Action) -> Iterator[Expr]:
    for _, e in a.steps:
        yield e


# -- interpreted evaluation -------------------------------------------------

def eval_expr(e: Expr, values: Mapping[str, int], bounds: Mapping[str, int]) -> int:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return values[e.name]
        except KeyError:
            raise StructuralError(f"undeclared stopwatch {e.name!r}") from None
    if isinstance(e, BoundOf):
        try:
            return bounds[e.name]
        except KeyError:
            raise StructuralError(f"undeclared stopwatch {e.name!r}") from None
    if isinstance(e, Sum):
        return eval_expr(e.left, values, bounds) + eval_expr(e.right, values, bounds)
    if isinstance(e, Monus):
        return max(eval_expr(e.left, values, bounds) - eval_expr(e.right, values, bounds), 0)
    if isinstance(e, Sgn):
        return 1 if eval_expr(e.arg, values, bounds) > 0 else 0
    if isinstance(e, Min):
        return min(eval_expr(e.left, values, bounds), eval_expr(e.right, values, bounds))
    raise StructuralError(f"not an expression: {e!r}")


def _compare(a: int, op: str, b: int) -> bool:
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    return a >= b


def holds(g: Guard, values: Mapping[str, int], bounds: Mapping[str, int]) -> bool:
    return all(
        _compare(eval_expr(at.left, values, bounds), at.op, eval_expr(at.right, values, bounds))
        for at in g.atoms
    )


def apply_action(
    act: Action, values: Mapping[str, int], bounds: Mapping[str, int]
) -> dict[str, int]:
    """Run the steps left to right, clamping each target to its bound at once."""
    out = dict(values)
    for target, e in act.steps:
        if target not in bounds:
            raise StructuralError(f"action assigns undeclared stopwatch {target!r}")
        out[target] = min(eval_expr(e, out, bounds), bounds[target])
    return out


# -- compilation -------------------------------------------------------------

def expr_source(e: Expr, index: Mapping[str, int], bounds: Mapping[str, int]) -> str:
    """Python source for ``e`` reading stopwatch values from a tuple ``v``."""
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        if e.name not in index:
            raise StructuralError(f"undeclared stopwatch {e.name!r}")
        return f"v[{index[e.name]}]"
    if isinstance(e, BoundOf):
        if e.name not in bounds:
            raise StructuralError(f"undeclared stopwatch {e.name!r}")
        return str(bounds[e.name])
    if isinstance(e, Sum):
        return f"({expr_source(e.left, index, bounds)} + {expr_source(e.right, index, bounds)})"
    if isinstance(e, Monus):
        return f"max({expr_source(e.left, index, bounds)} - {expr_source(e.right, index, bounds)}, 0)"
    if isinstance(e, Sgn):
        return f"(1 if {expr_source(e.arg, index, bounds)} > 0 else 0)"
    if isinstance(e, Min):
        return f"min({expr_source(e.left, index, bounds)}, {expr_source(e.right, index, bounds)})"
    raise StructuralError(f"not an expression: {e!r}")


def guard_source(g: Guard, index: Mapping[str, int], bounds: Mapping[str, int]) -> str:
    if g.trivial:
        return "True"
    return " and ".join(
        f"{expr_source(a.left, index, bounds)} {_PY_OPS[a.op]} {expr_source(a.right, index, bounds)}"
        for a in g.atoms
    )


def action_source(act: Action, index: Mapping[str, int], bounds: Mapping[str, int]) -> list[str]:
    """Statement lines mutating a list ``v``; each target is clamped immediately."""
    lines = []
    for target, e in act.steps:
        if target not in index:
            raise StructuralError(f"action assigns undeclared stopwatch {target!r}")
        b = bounds[target]
        if isinstance(e, Const):
            lines.append(f"v[{index[target]}] = {min(e.value, b)}")
        else:
            lines.append(f"v[{index[target]}] = min({expr_source(e, index, bounds)}, {b})")
    return lines


# -- text syntax -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(:=|!=|<=|>=|[=<>+\-(),;]))")


def _tokenize(text: str, line: int, col0: int) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line, col0 + pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("nat", m.group(1), col0 + start))
        elif m.group(2):
            toks.append(("name", m.group(2), col0 + start))
        else:
            toks.append(("op", m.group(3), col0 + start))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, line: int = 0, col0: int = 1):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.line = line
        self.end_col = col0 + len(text)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg):
        tok = self.peek()
        raise ParseError(msg, self.line, tok[2] if tok else self.end_col)

    def take(self, value=None):
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            self.error(f"expected {value!r}" if value else "unexpected end of input")
        self.i += 1
        return tok

    def at_end(self):
        return self.i >= len(self.toks)

    def expr(self) -> Expr:
        e = self.term()
        while (tok := self.peek()) and tok[1] in ("+", "-"):
            self.i += 1
            rhs = self.term()
            e = Sum(e, rhs) if tok[1] == "+" else Monus(e, rhs)
        return e

    def term(self) -> Expr:
        tok = self.peek()
        if tok is None:
            self.error("expected an expression")
        kind, val, _ = tok
        if kind == "nat":
            self.i += 1
            return Const(int(val))
        if kind == "name":
            self.i += 1
            nxt = self.peek()
            if nxt and nxt[1] == "(" and val in ("bound", "sgn", "min"):
                self.i += 1
                if val == "bound":
                    name = self.take()
                    if name[0] != "name":
                        self.error("bound() takes a stopwatch name")
                    self.take(")")
                    return BoundOf(name[1])
                if val == "sgn":
                    arg = self.expr()
                    self.take(")")
                    return Sgn(arg)
                left = self.expr()
                self.take(",")
                right = self.expr()
                self.take(")")
                return Min(left, right)
            return Var(val)
        if val == "(":
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        self.error(f"unexpected {val!r}")

    def atom(self) -> Atom:
        left = self.expr()
        tok = self.peek()
        if tok is None or tok[1] not in OPS:
            self.error("expected a comparison operator")
        self.i += 1
        return Atom(left, tok[1], self.expr())


def parse_expr(text: str, line: int = 0, col: int = 1) -> Expr:
    p = _Parser(text, line, col)
    e = p.expr()
    if not p.at_end():
        p.error("trailing input")
    return e


def parse_guard(text: str, line: int = 0, col: int = 1) -> Guard:
    p = _Parser(text, line, col)
    atoms = []
    while not p.at_end():
        atoms.append(p.atom())
        if not p.at_end():
            p.take(";")
    return Guard(tuple(atoms))


def parse_action(text: str, line: int = 0, col: int = 1) -> Action:
    p = _Parser(text, line, col)
    steps = []
    while not p.at_end():
        name = p.take()
        if name[0] != "name":
            p.error("expected a stopwatch name")
        p.take(":=")
        steps.append((name[1], p.expr()))
        if not p.at_end():
            p.take(";")
    return Action(tuple(steps))


def guard(*atoms: str) -> Guard:
    """Shorthand for constructions: ``guard("x <= 3", "y = 0")``."""
    return Guard(tuple(a for text in atoms for a in parse_guard(text).atoms))


def action(*steps: str) -> Action:
    return Action(tuple(s for text in steps for s in parse_action(text).steps))


def format_expr(e: Expr) -> str:
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, BoundOf):
        return f"bound({e.name})"
    if isinstance(e, Sgn):
        return f"sgn({format_expr(e.arg)})"
    if isinstance(e, Min):
        return f"min({format_expr(e.left)}, {format_expr(e.right)})"
    op = "+" if isinstance(e, Sum) else "-"
    right = format_expr(e.right)
    if isinstance(e.right, (Sum, Monus)):
        right = f"({right})"
    return f"{format_expr(e.left)} {op} {right}"


def format_guard(g: Guard) -> str:
    return "; ".join(f"{format_expr(a.left)} {a.op} {format_expr(a.right)}" for a in g.atoms)


def format_action(act: Action) -> str:
    return "; ".join(f"{t} := {format_expr(e)}" for t, e in act.steps)


def all_names(items: Iterable[Expr]) -> set[str]:
    out: set[str] = set()
    for e in items:
        out |= names_in(e)
    return out
