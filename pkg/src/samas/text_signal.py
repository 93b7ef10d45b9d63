"""Text segments and the word-length signals extracted from them."""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Optional

from .errors import EmptySegment, SignalTooShort

MIN_SIGNAL_LEN = 8


@dataclass(frozen=True)
class TextSegment:
    id: str
    text: str
    source_lang: str = "en"
    target_lang: Optional[str] = None
    style_label: Optional[str] = None

    @classmethod
    def from_dict(cls, obj: dict) -> "TextSegment":
        return cls(
            id=str(obj["id"]),
            text=obj["text"],
            source_lang=obj.get("source_lang", "en"),
            target_lang=obj.get("target_lang"),
            style_label=obj.get("style_label"),
        )

    def to_dict(self) -> dict:
        out = {"id": self.id, "text": self.text, "source_lang": self.source_lang}
        if self.target_lang is not None:
            out["target_lang"] = self.target_lang
        if self.style_label is not None:
            out["style_label"] = self.style_label
        return out


@dataclass(frozen=True)
class WordLengthSignal:
    values: tuple[int, ...]
    original_len: int
    segment_id: str = ""

    def __post_init__(self):
        if any(v < 1 for v in self.values):
            raise ValueError("word lengths must be >= 1")
        if self.original_len > len(self.values):
            raise ValueError("original_len exceeds signal length")

    def __len__(self):
        return len(self.values)


def _is_word_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("L", "N")


def _is_unsegmented(ch: str) -> bool:
    # Scripts written without spaces between words: each letter is a token.
    cp = ord(ch)
    return (
        0x3040 <= cp <= 0x30FF  # hiragana, katakana
        or 0x3400 <= cp <= 0x4DBF  # CJK extension A
        or 0x4E00 <= cp <= 0x9FFF  # CJK unified
        or 0xF900 <= cp <= 0xFAFF  # CJK compatibility
        or 0x20000 <= cp <= 0x2FA1F  # CJK extensions B+
        or 0x31F0 <= cp <= 0x31FF  # katakana phonetic extensions
        or 0xFF66 <= cp <= 0xFF9D  # halfwidth katakana
        or 0x0E00 <= cp <= 0x0E7F  # thai
        or 0x0E80 <= cp <= 0x0EFF  # lao
        or 0x1000 <= cp <= 0x109F  # myanmar
        or 0x1780 <= cp <= 0x17FF  # khmer
    )


def tokenize(segment: TextSegment | str) -> list[str]:
    """Split text into maximal runs of letters/digits.

    Everything else (whitespace, punctuation, symbols) separates tokens and is
    dropped. Letters from scripts without word delimiters (Chinese, Japanese,
    Thai, ...) become one token each. Combining marks stay attached to the run
    they follow.
    """
    text = segment.text if isinstance(segment, TextSegment) else segment
    tokens: list[str] = []
    run: list[str] = []
    for ch in text:
        if _is_word_char(ch):
            if _is_unsegmented(ch):
                if run:
                    tokens.append("".join(run))
                    run = []
                tokens.append(ch)
            else:
                run.append(ch)
        elif run and unicodedata.category(ch) in ("Mn", "Mc"):
            run.append(ch)
        elif run:
            tokens.append("".join(run))
            run = []
    if run:
        tokens.append("".join(run))
    if not tokens:
        seg_id = segment.id if isinstance(segment, TextSegment) else "?"
        raise EmptySegment(f"segment {seg_id!r} contains no word tokens")
    return tokens


def to_signal(tokens: list[str], segment_id: str = "") -> WordLengthSignal:
    if not tokens:
        raise EmptySegment(f"segment {segment_id!r} has no tokens")
    values = tuple(len(tok) for tok in tokens)
    return WordLengthSignal(values=values, original_len=len(values), segment_id=segment_id)


def prepare_for_wpt(signal: WordLengthSignal, level: int) -> WordLengthSignal:
    """Pad ``signal`` by mirroring its tail up to a multiple of ``2**level``.

    The first ``original_len`` values are untouched. Signals shorter than
    ``MIN_SIGNAL_LEN`` words are rejected.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    if not signal.values:
        raise EmptySegment(f"segment {signal.segment_id!r} has an empty signal")
    if signal.original_len < MIN_SIGNAL_LEN:
        raise SignalTooShort(
            f"segment {signal.segment_id!r} has {signal.original_len} words, "
            f"need at least {MIN_SIGNAL_LEN}"
        )
    block = 2**level
    n = len(signal.values)
    target = max(n, block)
    target = -(-target // block) * block
    values = list(signal.values)
    while len(values) < target:
        # symmetric reflection of whatever has been built so far
        values.extend(reversed(values[-min(len(values), target - len(values)):]))
    return WordLengthSignal(
        values=tuple(values[:target]),
        original_len=signal.original_len,
        segment_id=signal.segment_id,
    )


def segment_signal(segment: TextSegment, level: int) -> WordLengthSignal:
    """tokenize -> to_signal -> prepare_for_wpt."""
    return prepare_for_wpt(to_signal(tokenize(segment), segment.id), level)
