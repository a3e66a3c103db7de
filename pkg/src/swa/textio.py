"""Plain-text formats: automata, run-length words, LCS instances and constant files.

Automaton files are line oriented::

    # comment
    alphabet a b
    state start label a start
    state q label {a,b}
    state accept label a accept
    stopwatch x bound 2 active start q
    trans start -> q guard "x = 0" action "x := 0"

A bound may also be a function of the word length (``ceil(n/3)``,
``ceil(n/3)+1``, ``min(n,4)``); the file then describes a
:class:`BetaBoundedSwa`.  Words are whitespace separated tokens
``letter:count`` or raw letter strings, e.g. ``d:270 r:45``.
"""

from __future__ import annotations

import re
from itertools import groupby
from typing import Sequence

from .core import PLabeledSwa, Stopwatch, Swa, Transition, validate
from .errors import InputError, ParseError, StructuralError
from .expr import format_action, format_guard, parse_action, parse_guard
from .extensions import BetaBoundedSwa, BoundFn
from .langops import Nfa
from .lcsred import LcsInstance
from .reg561 import Reg561Constants

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_'.,()\[\]~-]*$")
# state names also cover product pairs (p*q) and NFA-derived names (0.a)
_STATE = re.compile(r"[A-Za-z0-9_'.,()\[\]~*+|-]+$")


def _col(line: str, tok: str, after: int = 0) -> int:
    i = line.find(tok, after)
    return (i if i >= 0 else after) + 1


_LEXEME = re.compile(r'\s*(?:"([^"]*)"|(#.*)|([^\s"#]+)|(")|$)')


def _split(text: str, lineno: int) -> list[str]:
    # sets may be written with spaces, "{a, b}"; they must form one token
    text = re.sub(r"\{[^}]*\}", lambda m: re.sub(r"\s+", "", m[0]), text)
    toks, pos = [], 0
    while pos < len(text):
        m = _LEXEME.match(text, pos)
        if m[4]:
            raise ParseError("unterminated quotation", lineno, m.start(4) + 1)
        if m[2] is not None or m.end() == pos:
            break
        toks.append(m[1] if m[1] is not None else m[3])
        pos = m.end()
    return toks


def _name(tok: str, line: str, lineno: int, what: str) -> str:
    ok = _STATE.match(tok) and tok != "->" if what == "state" else _NAME.match(tok)
    if not ok:
        raise ParseError(f"bad {what} name {tok!r}", lineno, _col(line, tok))
    return tok


def _label(tok: str, line: str, lineno: int):
    if tok.startswith("{"):
        if not tok.endswith("}"):
            raise ParseError("unterminated letter set", lineno, _col(line, tok))
        letters = [x for x in tok[1:-1].split(",") if x]
        if not letters:
            raise ParseError("empty letter set", lineno, _col(line, tok))
        return frozenset(letters)
    return tok


def parse_automaton(text: str) -> Swa | BetaBoundedSwa:
    alphabet: tuple[str, ...] | None = None
    states: list[str] = []
    labels: dict[str, object] = {}
    start = accept = None
    stopwatches: list[Stopwatch] = []
    fns: dict[str, BoundFn] = {}
    active: set[tuple[str, str]] = set()
    transitions: list[Transition] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _split(line, lineno)
        if not toks:
            continue
        head = toks[0]
        if head == "alphabet":
            if alphabet is not None:
                raise ParseError("alphabet given twice", lineno, 1)
            if len(toks) < 2:
                raise ParseError("alphabet needs at least one letter", lineno, len(line) + 1)
            alphabet = tuple(toks[1:])
        elif head == "state":
            if len(toks) < 4 or toks[2] != "label":
                raise ParseError("expected: state <name> label <letter|{set}> [start|accept]", lineno, 1)
            q = _name(toks[1], line, lineno, "state")
            if q in labels:
                raise ParseError(f"state {q!r} declared twice", lineno, _col(line, q))
            states.append(q)
            labels[q] = _label(toks[3], line, lineno)
            for flag in toks[4:]:
                if flag == "start":
                    if start is not None:
                        raise ParseError("two start states", lineno, _col(line, flag))
                    start = q
                elif flag == "accept":
                    if accept is not None:
                        raise ParseError("two accept states", lineno, _col(line, flag))
                    accept = q
                else:
                    raise ParseError(f"unknown state flag {flag!r}", lineno, _col(line, flag))
        elif head == "stopwatch":
            if len(toks) < 4 or toks[2] != "bound":
                raise ParseError("expected: stopwatch <name> bound <bound> [active <state...>]", lineno, 1)
            x = _name(toks[1], line, lineno, "stopwatch")
            if x in fns:
                raise ParseError(f"stopwatch {x!r} declared twice", lineno, _col(line, x))
            try:
                fn = BoundFn.parse(toks[3])
            except InputError as e:
                raise ParseError(str(e), lineno, _col(line, toks[3], len("stopwatch"))) from None
            fns[x] = fn
            stopwatches.append(Stopwatch(x, fn(0) if fn.kind != "const" else fn.c))
            rest = toks[4:]
            if rest:
                if rest[0] != "active":
                    raise ParseError(f"expected 'active', got {rest[0]!r}", lineno, _col(line, rest[0]))
                active |= {(x, q) for q in rest[1:]}
        elif head == "trans":
            if len(toks) < 4 or toks[2] != "->":
                raise ParseError("expected: trans <from> -> <to> [guard \"...\"] [action \"...\"]", lineno, 1)
            g = a = None
            rest = toks[4:]
            while rest:
                if len(rest) < 2 or rest[0] not in ("guard", "action"):
                    raise ParseError(f"unexpected {rest[0]!r}", lineno, _col(line, rest[0], line.find(toks[3])))
                col = line.find('"', line.find(rest[0], line.find("->"))) + 2
                if rest[0] == "guard":
                    g = parse_guard(rest[1], lineno, col)
                else:
                    a = parse_action(rest[1], lineno, col)
                rest = rest[2:]
            t = Transition(toks[1], toks[3])
            if g is not None:
                t = Transition(t.src, t.dst, g, t.action)
            if a is not None:
                t = Transition(t.src, t.dst, t.guard, a)
            transitions.append(t)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, _col(line, head))
    if alphabet is None:
        raise ParseError("missing alphabet line", 1, 1)
    start = start or ("start" if "start" in labels else None)
    accept = accept or ("accept" if "accept" in labels else None)
    if start is None or accept is None:
        raise ParseError("the automaton needs a start and an accept state", 1, 1)
    plabeled = any(isinstance(v, frozenset) for v in labels.values())
    if plabeled:
        labels = {q: v if isinstance(v, frozenset) else frozenset((v,)) for q, v in labels.items()}
    cls = PLabeledSwa if plabeled else Swa
    a = cls(
        states=tuple(states), alphabet=alphabet, stopwatches=tuple(stopwatches), labels=labels,
        active=frozenset(active), transitions=tuple(transitions), start=start, accept=accept,
    )
    problems = validate(a)
    if problems:
        raise StructuralError("invalid automaton: " + "; ".join(problems))
    if all(f.kind == "const" for f in fns.values()):
        return a
    return BetaBoundedSwa(a, fns)


def _quote(s: str) -> str:
    return '"' + s + '"'


def serialize_automaton(a: Swa | BetaBoundedSwa) -> str:
    fns = a.bound_fns if isinstance(a, BetaBoundedSwa) else None
    t = a.template if isinstance(a, BetaBoundedSwa) else a
    order = {c: i for i, c in enumerate(t.alphabet)}
    lines = ["alphabet " + " ".join(t.alphabet)]
    for q in t.states:
        lab = t.labels[q]
        if isinstance(t, PLabeledSwa):
            lab = "{" + ",".join(sorted(lab, key=order.__getitem__)) + "}"
        flags = (" start" if q == t.start else "") + (" accept" if q == t.accept else "")
        lines.append(f"state {q} label {lab}{flags}")
    for x in t.stopwatches:
        bound = str(fns[x.name]) if fns else str(x.bound)
        act = [q for q in t.states if (x.name, q) in t.active]
        lines.append(f"stopwatch {x.name} bound {bound}" + (" active " + " ".join(act) if act else ""))
    for tr in t.transitions:
        s = f"trans {tr.src} -> {tr.dst}"
        if tr.guard.atoms:
            s += " guard " + _quote(format_guard(tr.guard))
        if tr.action.steps:
            s += " action " + _quote(format_action(tr.action))
        lines.append(s)
    return "\n".join(lines) + "\n"


# -- words -------------------------------------------------------------------

_RUN = re.compile(r"([^\s:]+):(\S*)$")


def parse_word(text: str) -> str:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        for m in re.finditer(r"\S+", body):
            tok = m[0]
            run = _RUN.match(tok)
            if run is None:
                if ":" in tok:
                    raise ParseError(f"bad token {tok!r}", lineno, m.start() + 1)
                out.append(tok)
                continue
            letter, count = run[1], run[2]
            if not count.isdigit() or int(count) < 1:
                raise ParseError(f"count in {tok!r} must be a natural number >= 1", lineno, m.start() + len(letter) + 2)
            if len(letter) != 1:
                raise ParseError(f"run-length tokens take a single letter, got {letter!r}", lineno, m.start() + 1)
            out.append(letter * int(count))
    return "".join(out)


def serialize_word(w: Sequence[str]) -> str:
    parts = []
    for c, g in groupby(w):
        n = len(list(g))
        parts.append(c if n == 1 else f"{c}:{n}")
    return " ".join(parts)


# -- NFAs ----------------------------------------------------------------------

def parse_nfa(text: str) -> Nfa:
    """Lines ``alphabet a b``, ``states p q``, ``initial p``, ``final q`` and ``p a q``."""
    fields: dict[str, tuple[str, ...]] = {}
    trans = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] in ("alphabet", "states", "initial", "final"):
            if toks[0] in fields:
                raise ParseError(f"{toks[0]} given twice", lineno, 1)
            fields[toks[0]] = tuple(toks[1:])
        elif len(toks) == 3:
            trans.add(tuple(toks))
        else:
            raise ParseError("expected 'src letter dst' or a declaration", lineno, 1)
    for key in ("alphabet", "states"):
        if key not in fields:
            raise ParseError(f"missing {key} line", 1, 1)
    nfa = Nfa(fields["states"], fields["alphabet"], frozenset(fields.get("initial", ())),
              frozenset(fields.get("final", ())), frozenset(trans))
    problems = nfa.validate()
    if problems:
        raise StructuralError("invalid NFA: " + "; ".join(problems))
    return nfa


def serialize_nfa(nfa: Nfa) -> str:
    order = {q: i for i, q in enumerate(nfa.states)}
    lines = [
        "alphabet " + " ".join(nfa.alphabet),
        "states " + " ".join(map(str, nfa.states)),
        "initial " + " ".join(sorted(map(str, nfa.initial), key=lambda q: order.get(q, 0))),
        "final " + " ".join(sorted(map(str, nfa.final), key=lambda q: order.get(q, 0))),
    ]
    for src, c, dst in sorted(nfa.transitions, key=lambda t: (order[t[0]], t[1], order[t[2]])):
        lines.append(f"{src} {c} {dst}")
    return "\n".join(lines) + "\n"


# -- LCS instances and constants -------------------------------------------------

def parse_lcs(text: str) -> LcsInstance:
    lines = [ln.rstrip("\r") for ln in text.rstrip("\n").split("\n")]
    if len(lines) < 3:
        raise ParseError("an LCS instance needs an alphabet line, at least one word and m", len(lines), 1)
    head = lines[0].split()
    alphabet = tuple(head) if len(head) > 1 else tuple(lines[0].strip())
    m_text = lines[-1].strip()
    if not m_text.isdigit():
        raise ParseError(f"last line must be the target length, got {m_text!r}", len(lines), 1)
    words = tuple(ln.strip() for ln in lines[1:-1])
    try:
        return LcsInstance(alphabet, words, int(m_text))
    except InputError as e:
        raise ParseError(str(e), 1, 1) from None


def serialize_lcs(inst: LcsInstance) -> str:
    return "\n".join(["".join(inst.alphabet), *inst.words, str(inst.m)]) + "\n"


def parse_constants(text: str, base: Reg561Constants | None = None) -> Reg561Constants:
    """``name = value`` lines (``#`` comments); unspecified names keep ``base``'s values."""
    values: dict[str, int] = dict((base or Reg561Constants()).as_dict())
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*[=:]?\s*(\d+)", body)
        if not m:
            raise ParseError(f"expected 'name = value', got {body!r}", lineno, 1)
        values[m[1]] = int(m[2])
    return Reg561Constants.from_mapping(values)


def serialize_constants(c: Reg561Constants) -> str:
    return "".join(f"{k} = {v}\n" for k, v in c.as_dict().items())


def _unbounded(a: Swa) -> Swa:
    # template bounds are placeholders
    return a.replace(stopwatches=tuple(Stopwatch(x.name, 0) for x in a.stopwatches))


def same_automaton(a: Swa | BetaBoundedSwa, b: Swa | BetaBoundedSwa) -> bool:
    """Structural equality (names included; transition order matters)."""
    if isinstance(a, BetaBoundedSwa) or isinstance(b, BetaBoundedSwa):
        return (
            isinstance(a, BetaBoundedSwa) and isinstance(b, BetaBoundedSwa)
            and a.bound_fns == b.bound_fns
            and same_automaton(_unbounded(a.template), _unbounded(b.template))
        )
    return (
        type(a) is type(b) and a.states == b.states and a.alphabet == b.alphabet
        and a.stopwatches == b.stopwatches and dict(a.labels) == dict(b.labels)
        and a.active == b.active and a.transitions == b.transitions
        and a.start == b.start and a.accept == b.accept
    )
