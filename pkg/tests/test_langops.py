from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swa.core import SwaBuilder
from swa.errors import CapacityError, InputError
from swa.expr import guard
from swa.langops import (
    Nfa, from_nfa, intersect_nonempty, is_nonempty, normalize_pair, product, succinct_family, to_nfa,
)
from swa.modelcheck import language_upto
from swa.samples import e1, exact_word, length_exactly, random_nfa, random_swa, universal
from swa.semantics import oracle_accepts

from conftest import words_upto


def lang(a, n=4, alphabet="ab"):
    return {w for w in words_upto(alphabet, n) if oracle_accepts(a, w)}


def nfa_star():
    return Nfa(("p",), ("a",), {"p"}, {"p"}, {("p", "a", "p")})


def nfa_ab_star():
    return Nfa(("p", "q"), ("a", "b"), {"p"}, {"p"}, {("p", "a", "q"), ("q", "b", "p")})


def test_normalize_renames_apart():
    pair = normalize_pair(e1(), e1())
    assert not set(pair.first.names) & set(pair.second.names)
    for a in (pair.first, pair.second):
        assert all(t.src != a.accept for t in a.transitions)
        for q in a.states:
            if q != a.accept:
                assert any(t.src == t.dst == q and t.guard.trivial and t.action.trivial for t in a.transitions)


def test_normalize_drops_accept_transitions():
    b = SwaBuilder("ab")
    for q, c in (("start", "a"), ("q", "b"), ("accept", "a")):
        b.state(q, c)
    b.stopwatch("x", 2, active=["start", "q"])
    b.trans("start", "q", guard("x = 1"))
    b.trans("q", "accept", guard("x = 2"))
    b.trans("accept", "start")
    a = b.build()
    n = normalize_pair(a, e1()).first
    assert all(t.src != "accept" for t in n.transitions)
    # x is clamped at 2, so q may read any number of b
    assert lang(a, 5) == lang(n, 5) == {"a" + "b" * k for k in range(1, 5)}


def test_normalize_already_normal():
    a = universal("ab")
    n = normalize_pair(a, a)
    assert n.first.names == a.names
    assert lang(n.first) == lang(a) and lang(n.second) == lang(a)


def test_normalize_alphabet_mismatch():
    with pytest.raises(InputError):
        normalize_pair(e1(), universal("abc"))


def test_product_examples():
    p = product(e1(), length_exactly(2, "ab"))
    assert lang(p) == {"ab"}
    assert lang(product(e1(), exact_word("ba", "ab"))) == set()
    a, b = e1(), length_exactly(2, "ab")
    assert p.bound_product <= 2 * a.bound_product * b.bound_product


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_product_is_intersection(rng):
    a, b = random_swa(rng, max_states=2, max_bound=2), random_swa(rng, max_states=2, max_bound=2)
    p = product(a, b)
    assert p.bound_product <= 2 * a.bound_product * b.bound_product
    for w in words_upto("ab", 4):
        assert oracle_accepts(p, w) == (oracle_accepts(a, w) and oracle_accepts(b, w)), w


def test_to_nfa_examples():
    n = to_nfa(e1())
    assert {w for w in words_upto("ab", 4) if n.accepts(w)} == {"ab"}
    assert len(n.states) <= len(e1().states) * e1().bound_product
    b = SwaBuilder("a")
    b.state("start", "a")
    b.state("accept", "a")
    b.stopwatch("x", 2, active=["start"])
    b.trans("start", "accept", guard("x > bound(x)"))
    empty = b.build()
    n = to_nfa(empty)
    reached = set(n.initial)
    while True:
        more = {d for s, _, d in n.transitions if s in reached} - reached
        if not more:
            break
        reached |= more
    assert not reached & n.final
    assert is_nonempty(empty) == (False, None)
    with pytest.raises(CapacityError):
        to_nfa(length_exactly(50, "ab"), capacity=100)


def test_from_nfa_examples():
    a = from_nfa(nfa_star())
    assert all(oracle_accepts(a, w) for w in ("", "a", "aaa"))
    assert a.bound_product == 3
    a2 = from_nfa(nfa_ab_star())
    for w in words_upto("ab", 6):
        assert oracle_accepts(a2, w) == nfa_ab_star().accepts(w)


@settings(max_examples=120, deadline=None)
@given(st.randoms(use_true_random=False))
def test_nfa_round_trip(rng):
    n = random_nfa(rng)
    a = from_nfa(n)
    back = to_nfa(a)
    for w in words_upto("ab", 6):
        assert back.accepts(w) == n.accepts(w), w


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_swa_to_nfa_preserves_language(rng):
    a = random_swa(rng)
    n = to_nfa(a)
    for w in words_upto("ab", 6):
        assert n.accepts(w) == oracle_accepts(a, w), w


def test_is_nonempty_examples():
    assert is_nonempty(e1()) == (True, "ab")
    assert is_nonempty(product(e1(), exact_word("ba", "ab")))[0] is False
    with pytest.raises(CapacityError):
        is_nonempty(length_exactly(30, "ab"), node_budget=5)


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_is_nonempty_pumping_bound(rng):
    a = random_swa(rng, max_states=2, max_stopwatches=1, max_bound=2)
    nodes = len(a.states) * a.bound_product
    nonempty, w = is_nonempty(a)
    accepted = language_upto(a, nodes)
    assert nonempty == bool(accepted)
    if nonempty:
        shortest = min(accepted, key=lambda u: (len(u), u))
        assert w == shortest
        if len(w) <= 8:
            assert oracle_accepts(a, w)


def test_intersect_nonempty_examples():
    assert intersect_nonempty(e1(), length_exactly(2, "ab")) == (True, "ab")
    assert intersect_nonempty(e1(), exact_word("ba", "ab"))[0] is False
    rng = random.Random(3)
    for _ in range(20):
        a = random_swa(rng, max_states=2, max_bound=2)
        if is_nonempty(a)[0]:
            assert intersect_nonempty(a, a)[0]


def test_succinct_family_language():
    a = succinct_family(3)
    ok = lambda w: any(w == "a" * s + "b" * s + "c" * (len(w) - 2 * s) for s in range(3))
    for w in words_upto("abc", 6):
        assert oracle_accepts(a, w) == ok(w), w
    assert oracle_accepts(a, "") and oracle_accepts(a, "c")


def test_succinct_family_size_logarithmic():
    sizes = [succinct_family(2**e).size for e in (4, 8, 16, 20)]
    # grows with the bit length of k, not with k
    assert sizes[-1] - sizes[0] <= 3 * 16 + 16
    with pytest.raises(InputError):
        succinct_family(0)
