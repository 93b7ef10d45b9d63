import pytest
from hypothesis import given, strategies as st

from samas.errors import EmptySegment, SignalTooShort
from samas.text_signal import (
    TextSegment,
    WordLengthSignal,
    prepare_for_wpt,
    segment_signal,
    to_signal,
    tokenize,
)


def seg(text, id="s"):
    return TextSegment(id=id, text=text)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("The old man and the sea.", ["The", "old", "man", "and", "the", "sea"]),
        ("don't stop", ["don", "t", "stop"]),
        ("  tabs\tand\nnewlines  ", ["tabs", "and", "newlines"]),
        ("route 66, exit 3b", ["route", "66", "exit", "3b"]),
        ("Привет, мир!", ["Привет", "мир"]),
        ("Größe—Maß", ["Größe", "Maß"]),
    ],
)
def test_tokenize(text, expected):
    assert tokenize(seg(text)) == expected


def test_tokenize_cjk_is_per_character():
    assert tokenize(seg("我爱你。")) == ["我", "爱", "你"]
    assert tokenize(seg("東京へ行く")) == ["東", "京", "へ", "行", "く"]


def test_tokenize_mixed_scripts():
    assert tokenize(seg("GPT模型很好")) == ["GPT", "模", "型", "很", "好"]


def test_combining_marks_stay_in_word():
    # "e" + COMBINING ACUTE ACCENT counts as two scalar values in one word
    toks = tokenize(seg("café noir"))
    assert toks == ["café", "noir"]
    assert to_signal(toks).values == (5, 4)


@pytest.mark.parametrize("text", ["!!! …", "   ", "— -- ?!"])
def test_tokenize_rejects_punctuation_only(text):
    with pytest.raises(EmptySegment):
        tokenize(seg(text))


@pytest.mark.parametrize(
    "tokens, values",
    [
        (["The", "old", "man"], (3, 3, 3)),
        (["a", "beautiful", "day"], (1, 9, 3)),
        (["ab", "abcd"], (2, 4)),
    ],
)
def test_to_signal(tokens, values):
    sig = to_signal(tokens, "x")
    assert sig.values == values
    assert sig.original_len == len(tokens)
    assert sig.segment_id == "x"


def test_to_signal_empty():
    with pytest.raises(EmptySegment):
        to_signal([])


def test_prepare_mirrors_tail():
    sig = WordLengthSignal(tuple(range(1, 11)), 10)
    out = prepare_for_wpt(sig, 2)
    assert out.values == (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 9)
    assert out.original_len == 10


def test_prepare_leaves_aligned_signal_alone():
    sig = WordLengthSignal(tuple([3] * 16), 16)
    assert prepare_for_wpt(sig, 4).values == sig.values


def test_prepare_rejects_short():
    with pytest.raises(SignalTooShort):
        prepare_for_wpt(WordLengthSignal((1,) * 7, 7), 4)


def test_prepare_pads_up_to_block():
    # 8 words at level 4 -> 16, needing a full mirror of the signal
    sig = WordLengthSignal(tuple(range(1, 9)), 8)
    assert prepare_for_wpt(sig, 4).values == tuple(range(1, 9)) + tuple(range(8, 0, -1))


@given(st.lists(st.integers(1, 30), min_size=8, max_size=300), st.integers(1, 6))
def test_prepare_properties(values, level):
    sig = WordLengthSignal(tuple(values), len(values))
    out = prepare_for_wpt(sig, level)
    block = 2**level
    assert len(out.values) % block == 0
    assert len(out.values) >= max(len(values), block)
    assert len(out.values) - max(len(values), block) < block
    assert out.values[: len(values)] == tuple(values)
    assert out.original_len == len(values)
    assert min(out.values) >= 1


@given(st.text(min_size=1, max_size=200))
def test_tokenize_deterministic_and_order_preserving(text):
    try:
        a = tokenize(text)
    except EmptySegment:
        return
    assert a == tokenize(text)
    sig = to_signal(a)
    assert list(sig.values) == [len(t) for t in a]
    assert all(v >= 1 for v in sig.values)


def test_segment_signal_pipeline():
    s = seg("one two three four five six seven eight nine", "p")
    out = segment_signal(s, 4)
    assert out.values[:9] == (3, 3, 5, 4, 4, 3, 5, 5, 4)
    assert len(out.values) == 16
    assert out.segment_id == "p"


def test_segment_roundtrip_dict():
    s = TextSegment("a", "hi", "en", "de", "faulkner")
    assert TextSegment.from_dict(s.to_dict()) == s
