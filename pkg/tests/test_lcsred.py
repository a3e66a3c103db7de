from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from swa.errors import CapacityError, InputError
from swa.lcsred import (
    LcsInstance, lcs_dp, lcs_length, lcs_model_check, lcs_reduce, lcs_verdict, parameter_envelope,
)
from swa.modelcheck import model_check
from swa.semantics import replay


def is_subsequence(s: str, w: str) -> bool:
    it = iter(w)
    return all(ch in it for ch in s)


def brute_lcs(words) -> int:
    w0 = words[0]
    for n in range(len(w0), -1, -1):
        for idx in combinations(range(len(w0)), n):
            s = "".join(w0[i] for i in idx)
            if all(is_subsequence(s, w) for w in words[1:]):
                return n
    return 0


def random_instance(rng: random.Random, alphabet="abc") -> LcsInstance:
    sigma = alphabet[: rng.randint(1, len(alphabet))]
    k = rng.randint(1, 3)
    words = ["".join(rng.choice(sigma) for _ in range(rng.randint(0, 6))) for _ in range(k)]
    return LcsInstance(tuple(sigma), tuple(words), rng.randint(0, 4))


EXAMPLE = LcsInstance(("a", "b", "c"), ("abbaaccb", "bbacccacbb"), 6)


def test_dp_example():
    ok, sub = lcs_dp(EXAMPLE)
    assert ok and len(sub) == 6
    assert all(is_subsequence(sub, w) for w in EXAMPLE.words)
    for s in ("bbaccb", "bbaacb"):
        assert all(is_subsequence(s, w) for w in EXAMPLE.words)
    assert lcs_length(EXAMPLE)[0] == 6
    assert not lcs_dp(LcsInstance(("a", "b", "c"), EXAMPLE.words, 7))[0]


def test_dp_trivial_cases():
    assert lcs_dp(LcsInstance(("a", "b"), ("ab", "ba"), 0)) == (True, "")
    assert lcs_dp(LcsInstance(("a", "b"), ("a", "b"), 1))[0] is False


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dp_matches_brute_force(seed):
    inst = random_instance(random.Random(seed))
    n, sub = lcs_length(inst)
    assert n == brute_lcs(inst.words) == len(sub)
    assert all(is_subsequence(sub, w) for w in inst.words)


def test_instance_validation():
    with pytest.raises(InputError):
        LcsInstance(("a",), (), 1)
    with pytest.raises(InputError):
        LcsInstance(("a",), ("a",), -1)
    with pytest.raises(InputError):
        LcsInstance(("a",), ("ab",), 1)
    with pytest.raises(InputError):
        LcsInstance(("a", "a"), ("a",), 1)


def test_dp_capacity():
    big = LcsInstance(("a",), ("a" * 200,) * 3, 1)
    with pytest.raises(CapacityError):
        lcs_dp(big, capacity=1000)
    # two words never hit the capacity limit
    assert lcs_dp(LcsInstance(("a",), ("a" * 400,) * 2, 5), capacity=10)[0]


def test_reduction_example():
    red = lcs_reduce(EXAMPLE)
    assert red.word == "".join(EXAMPLE.words) * 6
    v = model_check(red.automaton, red.word)
    assert v.accepted and replay(red.automaton, v.witness) == red.word
    assert lcs_verdict(EXAMPLE).accepted


def test_reduction_small_cases():
    inst = LcsInstance(("a", "b"), ("ab", "ab"), 2)
    assert lcs_model_check(inst)
    with pytest.raises(InputError):
        lcs_reduce(LcsInstance(("a", "b"), ("ab", "ab"), 3))
    assert not lcs_model_check(LcsInstance(("a", "b"), ("ab", "ab"), 3))
    assert not lcs_model_check(LcsInstance(("a", "b"), ("a", "b"), 1))
    assert lcs_model_check(LcsInstance(("a", "b"), ("a", "b"), 0))
    # a guess at position 0 of every word
    assert lcs_model_check(LcsInstance(("a", "b"), ("ab", "ba"), 1))


def test_reduction_structure():
    red = lcs_reduce(LcsInstance(("a", "b"), ("aab", "ba"), 2))
    lab = red.labeled
    assert lab.start == "start0"
    assert {"x0", "x1", "y0", "y1", "z", "x_letter", "y_round"} == set(lab.names)
    assert lab.bounds["x0"] == 4 and lab.bounds["y1"] == 3 and lab.bounds["x_letter"] == 1 and lab.bounds["y_round"] == 2


def test_reduction_agrees_with_dp():
    rng = random.Random(2024)
    for _ in range(120):
        inst = random_instance(rng)
        assert lcs_model_check(inst) == lcs_dp(inst)[0], inst


@pytest.mark.parametrize("alphabet", [("0", "1"), ("a", "b", "c"), tuple("abcde")])
def test_parameter_depends_only_on_k_and_sigma(alphabet):
    rng = random.Random(7)
    for k in (1, 2, 3, 4):
        seen = set()
        for n in (2, 5, 9):
            words = tuple("".join(rng.choice(alphabet) for _ in range(n)) for _ in range(k))
            for m in (1, 2):
                p = lcs_reduce(LcsInstance(alphabet, words, m)).parameter
                assert p <= parameter_envelope(k, len(alphabet))
                seen.add(p)
        assert len(seen) == 1
