"""chrF: character n-gram F-score between a hypothesis and a reference."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import EmptyReference


@dataclass(frozen=True)
class ChrfParams:
    max_n: int = 6
    beta: float = 2.0
    include_whitespace: bool = False

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        if self.beta <= 0:
            raise ValueError("beta must be > 0")


def char_ngrams(text: str, n: int) -> Counter:
    return Counter(text[i:i + n] for i in range(len(text) - n + 1))


def chrf(hypothesis: str, reference: str, params: ChrfParams = ChrfParams()) -> float:
    """Sentence-level chrF on a 0-100 scale.

    Precision and recall are averaged over n-gram orders 1..max_n; an order
    that neither string is long enough for is left out of the average.
    """
    if not reference or (not params.include_whitespace and not "".join(reference.split())):
        raise EmptyReference("reference is empty")
    if not params.include_whitespace:
        hypothesis = "".join(hypothesis.split())
        reference = "".join(reference.split())
    if not hypothesis:
        return 0.0

    precisions, recalls = [], []
    for n in range(1, params.max_n + 1):
        hyp, ref = char_ngrams(hypothesis, n), char_ngrams(reference, n)
        hyp_total, ref_total = sum(hyp.values()), sum(ref.values())
        if hyp_total == 0 and ref_total == 0:
            continue
        matches = sum((hyp & ref).values())
        precisions.append(matches / hyp_total if hyp_total else 0.0)
        recalls.append(matches / ref_total if ref_total else 0.0)

    p = sum(precisions) / len(precisions)
    r = sum(recalls) / len(recalls)
    if p + r == 0:
        return 0.0
    b2 = params.beta**2
    return 100.0 * (1 + b2) * p * r / (b2 * p + r)


def corpus_chrf(pairs, params: ChrfParams = ChrfParams()) -> dict:
    """Per-segment scores and their mean for ``(id, hypothesis, reference)`` triples."""
    scores = {seg_id: chrf(hyp, ref, params) for seg_id, hyp, ref in pairs}
    mean = sum(scores.values()) / len(scores) if scores else 0.0
    return {"segments": scores, "mean": mean}
