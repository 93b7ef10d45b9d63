import random
import string

import pytest
from hypothesis import given, strategies as st

from samas.errors import EmptyReference
from samas.metrics import ChrfParams, chrf, corpus_chrf

from oracles import chrf_bruteforce


def test_identity():
    assert chrf("the cat sat", "the cat sat") == pytest.approx(100.0, abs=1e-9)


def test_empty_hypothesis():
    assert chrf("", "abc") == 0.0


def test_empty_reference():
    with pytest.raises(EmptyReference):
        chrf("abc", "")
    with pytest.raises(EmptyReference):
        chrf("abc", "   ")


def test_hand_computed_pair():
    # 1-grams P=R=3/4, 2-grams P=R=2/3 -> F2 = 17/24
    expected = 100 * 17 / 24
    assert chrf_bruteforce("abcd", "abce", max_n=2) == pytest.approx(expected, abs=1e-12)
    assert chrf("abcd", "abce", ChrfParams(max_n=2)) == pytest.approx(expected, abs=1e-6)


def test_disjoint_is_zero():
    assert chrf("xyz", "abc") == 0.0


def test_order_longer_than_both_skipped():
    # max_n=6 but strings of length 2: orders 3..6 are skipped, not zero
    assert chrf("ab", "ab") == pytest.approx(100.0)


def test_whitespace_handling():
    assert chrf("a b c", "abc") == pytest.approx(100.0)
    assert chrf("a b", "ab", ChrfParams(include_whitespace=True)) < 100.0


def test_params_validation():
    with pytest.raises(ValueError):
        ChrfParams(max_n=0)
    with pytest.raises(ValueError):
        ChrfParams(beta=0)


@given(st.text(min_size=0, max_size=30), st.text(min_size=1, max_size=30).filter(lambda s: s.split()))
def test_matches_bruteforce_and_range(hyp, ref):
    got = chrf(hyp, ref)
    assert 0.0 <= got <= 100.0
    assert got == pytest.approx(chrf_bruteforce(hyp, ref), abs=1e-9)


def test_monotone_degradation():
    rnd = random.Random(11)
    for _ in range(20):
        ref = "".join(rnd.choice(string.ascii_lowercase + " ") for _ in range(rnd.randint(10, 40))).strip() or "x"
        garbage = "".join(rnd.choice("0123456789#@") for _ in range(rnd.randint(1, 10)))
        assert chrf(ref + garbage, ref) < chrf(ref, ref)


def test_corpus_mean():
    rep = corpus_chrf([("a", "abc", "abc"), ("b", "", "abc")])
    assert rep["segments"] == {"a": pytest.approx(100.0), "b": 0.0}
    assert rep["mean"] == pytest.approx(50.0)
