from __future__ import annotations

import random
from itertools import product

import pytest

from swa.core import SwaBuilder
from swa.errors import InputError
from swa.expr import guard
from swa.langops import is_nonempty, product as swa_product
from swa.modelcheck import compress, language_upto, model_check
from swa.reg561 import (
    ALPHABET, ARTICLES, BASE, DEFAULTS, ORDER, Reg561Constants, STATES, build_reg561, closure_of, reg561_check,
    reg561_schedule,
)
from swa.reg561_direct import SUPPORTED, direct_check_article
from swa.semantics import replay

# scaled constants under which every article can fire within a few letters
SCALED = DEFAULTS.with_(
    t0=3, t1=2, t2=1, t3=12, t4=4, t5=3, t6=1, t7=3, t8=4, t9=3, t10=24, t11=8, t12=10, t13=14,
    t14=6, t15=4, t16_break=3, t17_pw=18,
)

# per-article scale for the exhaustive agreement with the direct checkers
FRAGMENT_SCALES = {
    "Art7": DEFAULTS.with_(t0=4, t1=3, t2=1, t16_break=5),
    "Art6.2": DEFAULTS.with_(t0=4, t1=3, t2=1, t16_break=5, t10=4, t11=2, t12=3, t13=6),
    "Art6.3": DEFAULTS.with_(t0=4, t1=3, t2=1, t16_break=5, t10=3, t11=3, t12=3, t13=4),
    "Art8.1-2": DEFAULTS.with_(t0=3, t1=2, t2=1, t16_break=3, t3=8, t4=3, t5=2, t6=1, t7=2),
    "Art6.1": DEFAULTS.with_(t0=3, t1=2, t2=1, t16_break=3, t3=8, t4=3, t5=2, t6=1, t7=2, t8=4, t9=3),
}

W1 = "d" * 270 + "r" * 45 + "d" * 270 + "r" * 660


def words(n: int) -> list[str]:
    return ["".join(p) for k in range(n + 1) for p in product(ALPHABET, repeat=k)]


def test_constants():
    assert DEFAULTS.t0 == 270 and DEFAULTS.t16_break == 540 and DEFAULTS.t17_pw == 8640
    with pytest.raises(InputError):
        Reg561Constants(t14=10, t15=20)
    with pytest.raises(InputError):
        Reg561Constants(t1=10, t2=20)
    with pytest.raises(InputError):
        Reg561Constants(t0=-1)
    with pytest.raises(InputError):
        Reg561Constants.from_mapping({"t99": 1})


def test_states_and_labels():
    a = build_reg561().automaton
    assert set(a.states) == set(STATES) and len(a.states) == 12
    for q in a.states:
        assert a.labels[q] == {"other_work": "w", "drive": "d"}.get(q, "r")


def test_bounds_table():
    c = DEFAULTS
    b = build_reg561().automaton.bounds
    expected = {
        "x_break": c.t16_break, "x_cd": c.t0 + 1, "x_day": c.t3 + 1, "x_dr": c.t4, "x_dd": c.t8 + 1,
        "x_week": c.t10 + 1, "x_ww": c.t12 + 1, "x_dw": c.t11 + 1, "x_dw'": c.t11 + 1, "x_wr": c.t14,
        "x_pw": c.t17_pw + 1, "x_c1": c.t14 - c.t15, "x_c2": c.t14 - c.t15, "x_cr": c.t14 - c.t15,
        "x_start": 1, "c_dd": 3, "c_rd": 4, "c_c1": 4, "c_c2": 4,
    }
    for x, bound in expected.items():
        assert b[x] == bound, x
    bits = {x for x in b if x.startswith("b_")}
    assert {"b_rb", "b_dr", "b_wr", "b_used", "b_rw"} <= bits
    assert all(b[x] == 1 for x in bits)
    assert set(b) == set(expected) | bits


def test_manifest_complete():
    r = build_reg561()
    a, m = r.automaton, r.manifest
    tags = set(ORDER) | {BASE}
    assert len(m.transitions) == len(a.transitions)
    for i, t in enumerate(a.transitions):
        assert m.transitions[i] in tags
        assert len(m.atoms[i]) == len(t.guard.atoms) and set(m.atoms[i]) <= tags
        assert len(m.steps[i]) == len(t.action.steps) and set(m.steps[i]) <= tags
    assert set(m.stopwatches) == set(a.names) and set(m.stopwatches.values()) <= tags
    assert "Art8.6.2+8.7" in r.describe(next(i for i, t in enumerate(a.transitions) if t.dst == "compensate1"))


def test_article_sets():
    with pytest.raises(InputError):
        build_reg561(DEFAULTS, ["Art6.2"])
    with pytest.raises(InputError):
        build_reg561(DEFAULTS, ["Art99"])
    assert closure_of(["Art6.3"]) == {"Art6.3", "Art6.2", "Week", "Art7"}


def test_article7_anchors():
    a = build_reg561(DEFAULTS, ["Art7"]).automaton
    assert model_check(a, "dr" * 270).accepted
    assert not model_check(a, "d" * 271).accepted
    assert model_check(a, "d" * 270).accepted
    assert direct_check_article("Art7", DEFAULTS, "dr" * 270)
    assert not direct_check_article("Art7", DEFAULTS, "d" * 271)


def test_w1_full():
    assert reg561_check(DEFAULTS, W1).accepted
    v = reg561_check(DEFAULTS, W1, witness=True)
    assert replay(v.witness and build_reg561().automaton, v.witness) == W1


def test_daily_driving_cap():
    # the cap is checked when the daily rest is taken; the trailing drive pushes past 24h so it must be
    day = lambda last: "d" * 270 + "r" * 45 + "d" * 270 + "r" * 45 + "d" * last + "r" * 660 + "d" * 100
    assert not reg561_check(DEFAULTS, "d" * 601).accepted
    assert reg561_check(DEFAULTS, day(60)).accepted
    assert not reg561_check(DEFAULTS, day(61)).accepted


def test_zero_time_in_start_and_week():
    a = build_reg561(SCALED).automaton
    rng = random.Random(5)
    found = weekly = 0
    for _ in range(300):
        w = "".join(rng.choice("ddrrw") for _ in range(rng.randint(1, 40)))
        v = model_check(a, w)
        if not v.accepted:
            continue
        found += 1
        assert replay(a, v.witness) == w
        dwell = compress(v.witness)
        weekly += any(q == "week" for q, _ in dwell)
        for q, t in dwell:
            if q in ("start", "week"):
                assert t == 0
    assert found > 5 and weekly > 0


def _chains():
    yield ["Art7"], ["Art7", "Art8.1-2"]
    yield ["Art7", "Art8.1-2"], ["Art7", "Art8.1-2", "Art6.1"]
    yield ["Art7", "Week"], ["Art7", "Week", "Art6.2"]
    yield ["Art7", "Week", "Art6.2"], ["Art7", "Week", "Art6.2", "Art6.3"]
    yield ARTICLES[:7], ARTICLES


@pytest.mark.parametrize("small,big", list(_chains()))
def test_monotone_restriction(small, big):
    a, b = build_reg561(SCALED, small).automaton, build_reg561(SCALED, big).automaton
    rng = random.Random(11)
    for _ in range(150):
        w = "".join(rng.choice("dddrrrrw") for _ in range(rng.randint(0, 30)))
        if model_check(b, w, witness=False).accepted:
            assert model_check(a, w, witness=False).accepted, w


@pytest.mark.parametrize("art", SUPPORTED)
def test_fragments_agree_with_direct_checkers(art):
    c = FRAGMENT_SCALES[art]
    a = build_reg561(c, closure_of([art])).automaton
    lang = language_upto(a, 7)
    for w in words(7):
        assert (w in lang) == direct_check_article(art, c, w), w


def test_direct_checker_errors():
    with pytest.raises(InputError):
        direct_check_article("Art8.9", DEFAULTS, "d")
    with pytest.raises(InputError):
        direct_check_article("Art7", DEFAULTS, "dx")
    with pytest.raises(InputError):
        direct_check_article("Art7", DEFAULTS.with_(t2=0), "d")


def test_schedule_matches_enumeration():
    c = FRAGMENT_SCALES["Art8.1-2"]
    arts = closure_of(["Art8.1-2"])
    a = build_reg561(c, arts).automaton
    for prefix in ("", "dd", "ddrr", "dddrr"):
        for n in range(5):
            r = reg561_schedule(c, prefix, "d", n, arts)
            legal = [v for v in map("".join, product(ALPHABET, repeat=n)) if model_check(a, prefix + v, witness=False).accepted]
            assert r.legal == bool(legal)
            if legal:
                best = max((prefix + v).count("d") for v in legal)
                assert r.count == best and model_check(a, prefix + r.extension).accepted


def _starts_with_d():
    b = SwaBuilder("drw")
    b.state("start", "r")
    b.state("d1", "d")
    for q, lab in (("any_d", "d"), ("any_r", "r"), ("any_w", "w"), ("accept", "r")):
        b.state(q, lab)
    b.stopwatch("x", 1, active=["start", "d1"])
    b.trans("start", "d1", guard("x = 0"))
    for s in ("d1", "any_d", "any_r", "any_w"):
        g = guard("x = 1") if s == "d1" else guard()
        b.trans(s, "accept", g)
        for d in ("any_d", "any_r", "any_w"):
            b.trans(s, d, g)
    return b.build()


def test_consistency_scaled():
    a = build_reg561(SCALED).automaton
    assert is_nonempty(a) == (True, "")
    ok, w = is_nonempty(swa_product(a, _starts_with_d()), node_budget=5_000_000)
    assert ok and w == "d"
    v = model_check(a, w)
    assert v.accepted and replay(a, v.witness) == w


def test_reduction_keeps_flag_bits():
    # a zeroed flag bit once enabled a guard the full automaton blocks
    a = build_reg561(SCALED).automaton
    w = "rdrrrrrdwwrrrrrdrrrrdrddwrdr"
    v = model_check(a, w)
    assert v.accepted and replay(a, v.witness) == w
    rng = random.Random(3)
    for _ in range(150):
        w = "".join(rng.choice("ddrrw") for _ in range(rng.randint(0, 30)))
        assert model_check(a, w, witness=False).accepted == model_check(a, w, engine="python", reduce=False).accepted, w
