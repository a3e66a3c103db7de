from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swa.core import PLabeledSwa, Stopwatch, Swa, SwaBuilder, Transition, bound_product, delabel, validate
from swa.errors import StructuralError
from swa.expr import (
    IDENTITY, Const, Min, Monus, Sgn, Sum, Var, action, apply_action, eval_expr, guard, holds,
)
from swa.samples import e1, random_swa
from swa.semantics import oracle_accepts

from conftest import words_upto


def two_states() -> Swa:
    b = SwaBuilder("a")
    b.state("start", "a")
    b.state("accept", "a")
    b.stopwatch("x", 1, active=["start"])
    b.trans("start", "accept", guard("x = 1"))
    return b.build()


def test_validate_clean():
    assert validate(two_states()) == []
    assert validate(e1()) == []


def test_validate_undeclared_stopwatch():
    a = two_states()
    bad = a.replace(transitions=(Transition("start", "accept", guard("y = 0")),))
    problems = validate(bad)
    assert len(problems) == 1
    assert "transition #0" in problems[0] and "'y'" in problems[0]


def test_validate_missing_label():
    a = two_states()
    bad = a.replace(labels={"start": "a"})
    assert validate(bad) == ["state 'accept' has no label"]


def test_validate_other_violations():
    a = two_states()
    assert validate(a.replace(accept="start"))
    assert validate(a.replace(alphabet=("a", "a")))
    assert validate(a.replace(stopwatches=(Stopwatch("x", -1),)))
    assert validate(a.replace(active=frozenset({("x", "nowhere")})))
    with pytest.raises(StructuralError):
        a.replace(labels={"start": "a"}).compiled


def test_eval_examples():
    assert eval_expr(Monus(Const(2), Const(5)), {}, {}) == 0
    assert eval_expr(Sgn(Var("x")), {"x": 7}, {"x": 9}) == 1
    assert eval_expr(Sgn(Var("x")), {"x": 0}, {"x": 9}) == 0
    assert eval_expr(Sum(Var("y"), Const(1)), {"y": 2}, {"y": 3}) == 3
    assert eval_expr(Min(Var("y"), Const(1)), {"y": 2}, {"y": 3}) == 1
    with pytest.raises(StructuralError):
        eval_expr(Var("nope"), {}, {})


def test_apply_action_examples():
    bounds = {"x": 3, "y": 3}
    assert apply_action(action("x := y + 1", "y := x"), {"x": 0, "y": 2}, bounds) == {"x": 3, "y": 3}
    assert apply_action(action("x := y + 5"), {"x": 0, "y": 2}, bounds)["x"] == 3
    assert apply_action(IDENTITY, {"x": 1, "y": 2}, bounds) == {"x": 1, "y": 2}


def test_guard_conjunction():
    g = guard("x <= 2", "x + y > 3")
    assert holds(g, {"x": 2, "y": 2}, {})
    assert not holds(g, {"x": 3, "y": 2}, {})
    assert holds(guard(), {}, {})


def _with_bounds(bounds) -> Swa:
    b = SwaBuilder("a")
    b.state("start", "a")
    b.state("accept", "a")
    for i, x in enumerate(bounds):
        b.stopwatch(f"x{i}", x)
    return b.build()


def test_bound_product_examples():
    assert bound_product(_with_bounds([2, 7])) == 24
    assert bound_product(_with_bounds([])) == 1
    assert bound_product(_with_bounds([1, 1, 1])) == 8
    # arbitrary precision
    assert bound_product(_with_bounds([10**30, 10**30])) == (10**30 + 1) ** 2


def test_metrics():
    a = _with_bounds([2, 7, 0])
    assert a.stopwatch_count == 3 and a.max_bound == 7
    assert a.assignment_bits == 2 + 3 + 0
    assert _with_bounds([]).max_bound == 0
    # guard atoms contribute both operands, action steps their right-hand side
    assert e1().size == 4 + 3 + (2 + 3 + 2) + 2


@given(st.lists(st.integers(0, 5), max_size=4))
def test_bound_product_counts_assignments(bounds):
    a = _with_bounds(bounds)
    assert bound_product(a) == len(list(product(*(range(b + 1) for b in bounds))))


@settings(max_examples=300)
@given(st.randoms(use_true_random=False), st.data())
def test_actions_stay_in_bounds(rng, data):
    a = random_swa(rng, max_stopwatches=3)
    bounds = a.bounds
    values = {x: data.draw(st.integers(0, b)) for x, b in bounds.items()}
    for t in a.transitions:
        out = apply_action(t.action, values, bounds)
        assert all(0 <= out[x] <= bounds[x] for x in bounds)


def test_delabel_singletons_isomorphic():
    a = e1()
    p = PLabeledSwa(
        states=a.states, alphabet=a.alphabet, stopwatches=a.stopwatches,
        labels={q: {c} for q, c in a.labels.items()}, active=a.active,
        transitions=a.transitions, start=a.start, accept=a.accept,
    )
    d = delabel(p)
    assert d.states == a.states and len(d.transitions) == len(a.transitions)
    for w in words_upto("ab", 5):
        assert oracle_accepts(d, w) == oracle_accepts(a, w)


def test_delabel_letter_set():
    b = SwaBuilder("ab")
    b.state("start", {"a"})
    b.state("q", {"a", "b"})
    b.state("accept", {"a"})
    b.stopwatch("x", 2, active=["start", "q"])
    b.trans("start", "q", guard("x = 0"))
    b.trans("q", "accept", guard("x = 1"))
    p = b.build(PLabeledSwa)
    d = delabel(p)
    accepted = {w for w in words_upto("ab", 3) if oracle_accepts(d, w)}
    assert accepted == {"a", "b"}
    assert {w for w in words_upto("ab", 3) if oracle_accepts(p, w)} == {"a", "b"}
    assert d.bound_product == p.bound_product


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_delabel_preserves_language(rng):
    p = random_swa(rng, max_bound=2, plabeled=True)
    d = delabel(p)
    assert d.bound_product == p.bound_product
    assert validate(d) == []
    for w in words_upto("ab", 5):
        assert oracle_accepts(p, w) == oracle_accepts(d, w), w
