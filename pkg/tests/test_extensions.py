from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swa.errors import InputError
from swa.extensions import BoundFn, beta_model_check, fraction_automaton, instantiate, nonregular_family
from swa.langops import succinct_family
from swa.modelcheck import model_check
from swa.samples import e1
from swa.semantics import oracle_accepts

from conftest import words_upto

FORMS = [BoundFn.const(4), BoundFn.ceil(3), BoundFn.ceil(2, 1), BoundFn.min_n(5)]


def test_bound_forms():
    assert BoundFn.ceil(3)(7) == 3
    assert BoundFn.ceil(3, 2)(7) == 5
    assert BoundFn.min_n(4)(2) == 2 and BoundFn.min_n(4)(9) == 4
    for f in FORMS:
        assert f(6) <= f(9)
        assert BoundFn.parse(str(f)) == f
    with pytest.raises(InputError):
        BoundFn.parse("n*n")
    with pytest.raises(InputError):
        BoundFn("ceil", 0, 0)


@given(st.sampled_from(FORMS), st.integers(0, 200), st.integers(0, 200))
def test_bounds_monotone(f, n, m):
    lo, hi = sorted((n, m))
    assert f(lo) <= f(hi)


def test_instantiate_constant_is_identity():
    a = e1()
    for n in range(5):
        assert instantiate(a, n) is a
    t = fraction_automaton()
    assert instantiate(t, 7).bounds == {"x": 3}
    assert t.bound_product_at(7) == 4


def test_fraction_examples():
    t = fraction_automaton()
    assert beta_model_check(t, "abb").accepted
    assert not beta_model_check(t, "abbb").accepted
    assert beta_model_check(t, "").accepted
    assert beta_model_check(t, "aaa").accepted
    assert not beta_model_check(t, "bbb").accepted


def test_fraction_matches_counting():
    t = fraction_automaton()
    for w in words_upto("ab", 9):
        assert beta_model_check(t, w, witness=False).accepted == (3 * w.count("a") >= len(w)), w


def test_nonregular_examples():
    a = nonregular_family(BoundFn.ceil(3))
    for w, expected in (("aabbcc", False), ("aabbcccc", True), ("ba", False), ("bbcc", False)):
        assert beta_model_check(a, w).accepted == expected, w
        assert oracle_accepts(instantiate(a, len(w)), w) == expected, w


def test_constant_family_is_succinct_family():
    for k in (1, 2, 3):
        a = nonregular_family(BoundFn.const(k))
        s = succinct_family(k)
        for w in words_upto("abc", 6):
            assert beta_model_check(a, w).accepted == model_check(s, w).accepted, (k, w)


def test_bounded_beta_stabilizes():
    f = BoundFn.min_n(3)
    a = nonregular_family(f)
    fixed = instantiate(a, f.stabilizes_at())
    for w in words_upto("abc", 6):
        if len(w) >= f.stabilizes_at():
            assert beta_model_check(a, w).accepted == model_check(fixed, w).accepted, w


def test_accepted_block_length_grows():
    a = nonregular_family(BoundFn.ceil(3))
    for s in (1, 2, 3):
        # s < ceil(n/3) needs n > 3s; pad with c
        w = "a" * s + "b" * s + "c" * (s + 1 + s)
        assert beta_model_check(a, w).accepted, w
        assert not beta_model_check(a, "a" * s + "b" * s).accepted
