from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from swa.errors import ParseError, StructuralError
from swa.extensions import fraction_automaton, instantiate
from swa.lcsred import LcsInstance
from swa.modelcheck import language_upto
from swa.reg561 import DEFAULTS, build_reg561
from swa.samples import e1, random_nfa, random_swa
from swa.textio import (
    parse_automaton, parse_constants, parse_lcs, parse_nfa, parse_word, same_automaton, serialize_automaton,
    serialize_constants, serialize_lcs, serialize_nfa, serialize_word,
)

from conftest import words_upto

E1_TEXT = """\
alphabet a b
state start label a start
state q_a label a
state q_b label b
state accept label a accept   # halting
stopwatch x bound 2 active start q_a q_b
trans start -> q_a guard "x = 0"
trans q_a -> q_b guard "x = 1" action "x := 0"
trans q_b -> accept guard "x = 1"
"""


def test_parse_e1():
    a = parse_automaton(E1_TEXT)
    assert same_automaton(a, e1())
    assert language_upto(a, 4) == {"ab"}


def test_word_examples():
    assert parse_word("d:3 r:2") == "dddrr"
    assert parse_word("d") == "d"
    assert parse_word("abba") == "abba"
    assert parse_word("d:2\nr:1 # rest\n") == "ddr"
    assert parse_word("") == ""
    with pytest.raises(ParseError) as e:
        parse_word("d:3 d:0")
    assert (e.value.line, e.value.column) == (1, 7)
    with pytest.raises(ParseError):
        parse_word("dr:2")


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="drw", max_size=40))
def test_word_round_trip(w):
    assert parse_word(serialize_word(w)) == w


def test_word_serialization_is_run_length():
    assert serialize_word("d" * 270 + "r" * 45 + "d") == "d:270 r:45 d"


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_automaton_round_trip(seed, plabeled):
    a = random_swa(random.Random(seed), plabeled=plabeled)
    text = serialize_automaton(a)
    b = parse_automaton(text)
    assert same_automaton(a, b)
    assert serialize_automaton(b) == text


def test_reg561_round_trip():
    a = build_reg561(DEFAULTS).automaton
    b = parse_automaton(serialize_automaton(a))
    assert same_automaton(a, b) and b.bounds["x_dw'"] == DEFAULTS.t11 + 1


def test_beta_round_trip():
    a = fraction_automaton()
    b = parse_automaton(serialize_automaton(a))
    assert same_automaton(a, b)
    for n in (3, 7):
        assert instantiate(b, n).bounds == instantiate(a, n).bounds


@pytest.mark.parametrize(
    "text,line",
    [
        ("alphabet a\nstate s label a start\nstate t label a accept\nbogus\n", 4),
        ("alphabet a\nstate s label a start\nstate s label a accept\n", 3),
        ("alphabet a\nstate s label {a start\n", 2),
        ('alphabet a\nstate s label a start\nstate t label a accept\ntrans s -> t guard "x = 0\n', 4),
        ("alphabet a\nstate s label a start\nstate t label a accept\nstopwatch x bound 2 sideways s\n", 4),
        ("state s label a start\n", 1),
    ],
)
def test_automaton_syntax_errors(text, line):
    with pytest.raises(ParseError) as e:
        parse_automaton(text)
    assert e.value.line == line and e.value.column >= 1


def test_automaton_validation_relayed():
    text = "alphabet a\nstate s label b start\nstate t label a accept\ntrans s -> t\n"
    with pytest.raises(StructuralError):
        parse_automaton(text)
    with pytest.raises(ParseError):
        parse_automaton("alphabet a\nstate s label a start\n")


def test_nfa_round_trip():
    rng = random.Random(9)
    for _ in range(50):
        nfa = random_nfa(rng)
        back = parse_nfa(serialize_nfa(nfa))
        assert back == nfa
        for w in words_upto("ab", 4):
            assert back.accepts(w) == nfa.accepts(w)
    text = "alphabet a b\nstates p q\ninitial p\nfinal q\np a q\nq b q\n"
    nfa = parse_nfa(text)
    assert nfa.accepts("abb") and not nfa.accepts("b")
    with pytest.raises(ParseError):
        parse_nfa("alphabet a\nstates p\ninitial p\np a\n")


def test_lcs_format():
    inst = parse_lcs("a b c\nabbaaccb\nbbacccacbb\n6\n")
    assert inst == LcsInstance(("a", "b", "c"), ("abbaaccb", "bbacccacbb"), 6)
    assert parse_lcs(serialize_lcs(inst)) == inst
    with pytest.raises(ParseError):
        parse_lcs("a b\nab\nsix\n")


def test_constants_format():
    c = parse_constants("# scaled\nt0 = 4\nt16_break=5\n")
    assert c == DEFAULTS.with_(t0=4, t16_break=5)
    assert parse_constants(serialize_constants(c)) == c
    with pytest.raises(ParseError):
        parse_constants("t0 = four\n")


def test_derived_state_names_round_trip():
    from swa.langops import Nfa, from_nfa, product

    for a in (product(e1(), e1()), from_nfa(Nfa(("0", "1"), ("a",), {"0"}, {"1"}, {("0", "a", "1")}))):
        assert same_automaton(a, parse_automaton(serialize_automaton(a)))
