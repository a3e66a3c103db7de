from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swa.core import SwaBuilder
from swa.errors import InputError
from swa.expr import guard
from swa.modelcheck import model_check
from swa.samples import e1, e3, random_swa
from swa.schedule import ScheduleQuery, schedule, schedule_bruteforce


def test_e3_count():
    r = schedule(e3(), "", "a", 4)
    assert r.legal and r.count == 2 and len(r.extension) == 4
    assert schedule_bruteforce(e3(), "", "a", 4).count == 2
    # ties: the lexicographically least optimal extension
    assert r.extension == "aabb"


def test_e1_cases():
    r = schedule(e1(), "ab", "a", 0)
    assert r.legal and r.extension == "" and r.count == 1
    assert not schedule(e1(), "ab", "a", 1).legal
    assert schedule_bruteforce(e1(), "ab", "a", 0) == r
    assert schedule(e1(), "", "b", 2).extension == "ab"


def test_empty_language_illegal():
    b = SwaBuilder("ab")
    b.state("start", "a")
    b.state("accept", "a")
    b.stopwatch("x", 1)
    b.trans("start", "accept", guard("x > 1"))
    a = b.build()
    for n in range(4):
        assert not schedule(a, "", "a", n).legal
        assert not schedule_bruteforce(a, "", "a", n).legal


def test_bad_queries():
    with pytest.raises(InputError):
        schedule(e1(), "", "c", 1)
    with pytest.raises(InputError):
        schedule(e1(), "", "a", -1)
    with pytest.raises(InputError):
        ScheduleQuery(e1(), "xy", "a", 1).validate()


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False), st.text("ab", max_size=3), st.integers(0, 5), st.sampled_from("ab"))
def test_matches_bruteforce(rng, prefix, n, letter):
    a = random_swa(rng)
    r = schedule(a, prefix, letter, n)
    brute = schedule_bruteforce(a, prefix, letter, n)
    assert r.legal == brute.legal
    if r.legal:
        assert r.count == brute.count
        assert len(r.extension) == n
        w = prefix + r.extension
        assert model_check(a, w).accepted
        assert r.count == w.count(letter)
