"""Automata whose stopwatch bounds depend on the length of the input word."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import Stopwatch, Swa, SwaBuilder
from .errors import InputError
from .expr import action, guard
from .modelcheck import Verdict, model_check


@dataclass(frozen=True)
class BoundFn:
    """One of ``c``, ``ceil(n/d)``, ``ceil(n/d)+c`` or ``min(n,c)``."""

    kind: str
    c: int = 0
    d: int = 1

    def __post_init__(self):
        if self.kind not in ("const", "ceil", "ceil+", "min"):
            raise InputError(f"unknown bound form {self.kind!r}")
        if self.c < 0 or self.d < 1:
            raise InputError(f"bad bound parameters c={self.c}, d={self.d}")

    @classmethod
    def const(cls, c: int) -> BoundFn:
        return cls("const", c)

    @classmethod
    def ceil(cls, d: int, c: int = 0) -> BoundFn:
        return cls("ceil+" if c else "ceil", c, d)

    @classmethod
    def min_n(cls, c: int) -> BoundFn:
        return cls("min", c)

    def __call__(self, n: int) -> int:
        if n < 0:
            raise InputError("word length must be non-negative")
        if self.kind == "const":
            return self.c
        if self.kind == "min":
            return min(n, self.c)
        return -(-n // self.d) + self.c

    @property
    def bounded(self) -> bool:
        return self.kind in ("const", "min")

    def stabilizes_at(self) -> int | None:
        """Smallest ``n0`` after which the value never changes, if any."""
        return {"const": 0, "min": self.c}.get(self.kind)

    def __str__(self):
        if self.kind == "const":
            return str(self.c)
        if self.kind == "min":
            return f"min(n,{self.c})"
        base = f"ceil(n/{self.d})"
        return f"{base}+{self.c}" if self.kind == "ceil+" else base

    @classmethod
    def parse(cls, text: str) -> BoundFn:
        t = re.sub(r"\s+", "", text)
        if re.fullmatch(r"\d+", t):
            return cls.const(int(t))
        m = re.fullmatch(r"ceil\(n/(\d+)\)(?:\+(\d+))?", t)
        if m:
            return cls.ceil(int(m[1]), int(m[2] or 0))
        m = re.fullmatch(r"min\(n,(\d+)\)", t)
        if m:
            return cls.min_n(int(m[1]))
        raise InputError(f"unsupported bound function {text!r}")


@dataclass(frozen=True, eq=False)
class BetaBoundedSwa:
    """A template automaton plus one bound function per stopwatch.

    The template's numeric bounds are placeholders; :meth:`instantiate`
    replaces them by the function values at the word length.
    """

    template: Swa
    bound_fns: Mapping[str, BoundFn]

    def __post_init__(self):
        missing = set(self.template.names) - set(self.bound_fns)
        extra = set(self.bound_fns) - set(self.template.names)
        if missing or extra:
            raise InputError(f"bound functions do not match stopwatches: missing {sorted(missing)}, extra {sorted(extra)}")
        object.__setattr__(self, "bound_fns", dict(self.bound_fns))

    @property
    def alphabet(self):
        return self.template.alphabet

    def bounds_at(self, n: int) -> dict[str, int]:
        return {x: f(n) for x, f in self.bound_fns.items()}

    def bound_product_at(self, n: int) -> int:
        return math.prod(f(n) + 1 for f in self.bound_fns.values())

    def instantiate(self, n: int) -> Swa:
        bounds = self.bounds_at(n)
        t = self.template
        return t.replace(
            stopwatches=tuple(Stopwatch(x.name, bounds[x.name]) for x in t.stopwatches),
            name=f"{t.name}({n})",
        )


def instantiate(a: BetaBoundedSwa | Swa, n: int) -> Swa:
    return a if isinstance(a, Swa) else a.instantiate(n)


def beta_model_check(a: BetaBoundedSwa | Swa, w: Sequence[str], *, witness: bool = True) -> Verdict:
    return model_check(instantiate(a, len(w)), w, witness=witness)


def _with_fns(b: SwaBuilder, fns: dict[str, BoundFn], name: str) -> BetaBoundedSwa:
    return BetaBoundedSwa(b.build(name=name), fns)


def fraction_automaton() -> BetaBoundedSwa:
    """Words over ``ab`` in which at least a third of the letters are ``a``.

    ``x`` counts time spent in the ``a`` state and is clamped at
    ``ceil(n/3)``, so ``x = bound(x)`` at the end holds exactly when
    ``#a >= ceil(n/3)``, which for integers is ``#a >= n/3``.
    """
    f = BoundFn.ceil(3)
    b = SwaBuilder("ab")
    b.state("start", "b")
    b.state("qa", "a")
    b.state("qb", "b")
    b.state("accept", "a")
    b.stopwatch("x", f(0), active=["qa"])
    full = guard("x = bound(x)")
    for q in ("start", "qa", "qb"):
        b.trans(q, "accept", full)
    b.trans("start", "qa")
    b.trans("start", "qb")
    b.trans("qa", "qb")
    b.trans("qb", "qa")
    # start carries qb's label, so time spent there just counts as b
    return _with_fns(b, {"x": f}, "fraction")


def nonregular_family(f: BoundFn) -> BetaBoundedSwa:
    """Accepts the long words of the form ``a^s b^s c^*`` with ``s < f(n)``."""
    b = SwaBuilder("abc")
    b.state("start", "a")
    b.state("q_a", "a")
    b.state("q_b", "b")
    b.state("q_c", "c")
    b.state("accept", "a")
    for x in ("x_a", "y_a"):
        b.stopwatch(x, f(0), active=["start", "q_a"])
    b.stopwatch("x_b", f(0), active=["q_b"])
    b.trans("start", "q_a", guard("x_a = 0"), action("y_a := 1"))
    b.trans("q_a", "q_b", guard("x_a < y_a"))
    b.trans("q_b", "q_c", guard("x_a = x_b"))
    b.trans("q_c", "accept")
    return _with_fns(b, {"x_a": f, "y_a": f, "x_b": f}, f"anbn[{f}]")

