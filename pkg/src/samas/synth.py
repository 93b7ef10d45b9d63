"""Synthetic word-length corpora with planted Faulkner/Hemingway signatures.

Every generated signal is checked against the real classifier before it is
returned, so a corpus always exercises both routing branches.

Faulkner-esque signals need a nearly flat sub-band energy profile with more
than 60% of the energy in the lowest quarter of the spectrum. Word lengths
are positive, so the mean alone tends to swamp sub-band 1. The generator
starts from a slow drift plus broadband noise and then pulls it toward a
target energy profile by alternating projections. Each round rescales every
sub-band to its target share, inverts the transform, and rounds the result
back to integers in ``[1, MAX_WORD_LEN]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ProfileUnachievable
from .roles import StyleClass
from .router import RoutingThresholds, classify
from .sfs import compute_sfs
from .text_signal import WordLengthSignal, prepare_for_wpt
from .wpt import WaveletFilter, WptDecomposition, get_filter, wpt_decompose, wpt_reconstruct

MIN_LENGTH = 16
MAX_WORD_LEN = 40
MAX_ATTEMPTS = 10
SHAPING_ROUNDS = 60
# how far inside the default Faulkner region shaping aims before stopping
SHAPING_MARGIN = 0.01


@dataclass(frozen=True)
class StyleProfile:
    target_class: StyleClass
    mean_word_len: float = 4.5
    len_variance: float = 1.0
    sentence_period: int = 4
    noise_level: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.mean_word_len < 1:
            raise ValueError("mean_word_len must be >= 1")
        if self.sentence_period < 2:
            raise ValueError("sentence_period must be >= 2")
        if not 0.0 <= self.noise_level <= 1.0:
            raise ValueError("noise_level must lie in [0, 1]")
        if self.len_variance < 0:
            raise ValueError("len_variance must be >= 0")


def faulkner_profile(seed: int = 0, **kw) -> StyleProfile:
    params = dict(mean_word_len=5.0, len_variance=9.0, sentence_period=48, noise_level=0.6)
    params.update(kw)
    return StyleProfile(StyleClass.FAULKNER_ESQUE, seed=seed, **params)


def hemingway_profile(seed: int = 0, **kw) -> StyleProfile:
    params = dict(mean_word_len=4.2, len_variance=1.0, sentence_period=4, noise_level=0.2)
    params.update(kw)
    return StyleProfile(StyleClass.HEMINGWAY_ESQUE, seed=seed, **params)


def _faulkner_target(n_bands: int) -> np.ndarray:
    """Relative energies with ~63% in the lowest quarter, the rest spread flat."""
    n_low = max(1, n_bands // 4)
    if n_low < 4:
        # few bands: the only workable shape splits the low quarter evenly
        target = np.full(n_bands, 0.385 / (n_bands - n_low))
        target[:n_low] = 0.615 / n_low
        return target
    target = np.full(n_bands, 0.37 / (n_bands - n_low))
    target[0] = 0.14
    target[1:n_low] = (0.63 - 0.14) / max(1, n_low - 1)
    return target / target.sum()


def _shape_spectrum(x: np.ndarray, filt: WaveletFilter, level: int, thresholds: RoutingThresholds) -> np.ndarray:
    n_bands = 2**level
    n_low = max(1, n_bands // 4)
    target = _faulkner_target(n_bands)
    for _ in range(SHAPING_ROUNDS):
        decomp = wpt_decompose(x, filt, level)
        energy = np.array([b @ b for b in decomp.subbands])
        total = energy.sum()
        rwe = energy / total
        nz = rwe[rwe > 0]
        h = float(-(nz * np.log2(nz)).sum()) / level
        if (h > thresholds.h_threshold + SHAPING_MARGIN
                and rwe[:n_low].sum() > thresholds.e_low_threshold + SHAPING_MARGIN):
            break
        gains = np.sqrt(target * total / np.maximum(energy, 1e-12))
        bands = tuple(b * g for b, g in zip(decomp.subbands, gains))
        y = wpt_reconstruct(WptDecomposition(level, bands, len(x), filt.name), filt)
        x = np.clip(np.round(y), 1, MAX_WORD_LEN)
    return x


def _raw_signal(profile: StyleProfile, length: int, rng: np.random.Generator, amplitude: float) -> np.ndarray:
    n = np.arange(length)
    std = np.sqrt(profile.len_variance) * amplitude
    phase = rng.uniform(0, 2 * np.pi)
    rhythm = np.sin(2 * np.pi * n / profile.sentence_period + phase)
    noise = rng.standard_normal(length)
    x = profile.mean_word_len + std * ((1 - profile.noise_level) * rhythm + profile.noise_level * noise)
    return np.clip(np.round(x), 1, MAX_WORD_LEN)


def generate_signal(
    profile: StyleProfile,
    length: int = 256,
    filt: WaveletFilter | None = None,
    level: int = 4,
    thresholds: RoutingThresholds = RoutingThresholds(),
    segment_id: str = "",
) -> WordLengthSignal:
    """Draw a signal for ``profile`` that the classifier routes to its target class.

    Up to ``MAX_ATTEMPTS`` draws are made; Faulkner attempts grow the drift
    amplitude, Hemingway attempts shrink it.
    """
    if length < MIN_LENGTH:
        raise ValueError(f"length must be >= {MIN_LENGTH}, got {length}")
    filt = filt or get_filter("db4")
    rng = np.random.Generator(np.random.PCG64(profile.seed))
    faulkner = profile.target_class is StyleClass.FAULKNER_ESQUE
    for attempt in range(MAX_ATTEMPTS):
        amplitude = 1.3**attempt if faulkner else 0.7**attempt
        x = _raw_signal(profile, length, rng, amplitude)
        if faulkner:
            block = 2**level
            if length % block == 0:
                x = _shape_spectrum(x, filt, level, thresholds)
        signal = WordLengthSignal(tuple(int(v) for v in x), length, segment_id)
        sfs = compute_sfs(prepare_for_wpt(signal, level), filt, level)
        if classify(sfs, thresholds) is profile.target_class:
            return signal
    raise ProfileUnachievable(
        f"could not plant a {profile.target_class.value} signature in {MAX_ATTEMPTS} attempts "
        f"(seed={profile.seed}, length={length})"
    )


def generate_corpus(
    n_per_class: int,
    seed: int = 0,
    length: int = 256,
    filt: WaveletFilter | None = None,
    level: int = 4,
) -> list[tuple[WordLengthSignal, StyleClass]]:
    """Balanced labeled corpus, Faulkner-esque signals first."""
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    children = np.random.SeedSequence(seed).spawn(2 * n_per_class)
    corpus = []
    for i, child in enumerate(children):
        style = StyleClass.FAULKNER_ESQUE if i < n_per_class else StyleClass.HEMINGWAY_ESQUE
        param_rng = np.random.Generator(np.random.PCG64(child))
        sig_seed = int(child.generate_state(1, dtype=np.uint64)[0])
        if style is StyleClass.FAULKNER_ESQUE:
            profile = faulkner_profile(
                seed=sig_seed,
                mean_word_len=float(param_rng.uniform(4.0, 6.0)),
                len_variance=float(param_rng.uniform(4.0, 16.0)),
                sentence_period=int(param_rng.integers(32, 97)),
                noise_level=float(param_rng.uniform(0.4, 0.8)),
            )
        else:
            profile = hemingway_profile(
                seed=sig_seed,
                mean_word_len=float(param_rng.uniform(3.5, 5.0)),
                len_variance=float(param_rng.uniform(0.5, 2.0)),
                sentence_period=int(param_rng.integers(3, 7)),
                noise_level=float(param_rng.uniform(0.1, 0.4)),
            )
        idx = i if i < n_per_class else i - n_per_class
        seg_id = f"{style.value}-{idx:04d}"
        corpus.append((generate_signal(profile, length, filt, level, segment_id=seg_id), style))
    return corpus


_ALPHABET = "etaoinshrdlucmfwypvbgkjqxz"


def render_text(signal: WordLengthSignal) -> str:
    """Placeholder prose whose tokenization reproduces ``signal`` exactly."""
    words = []
    for i, n in enumerate(signal.values):
        start = (7 * i) % len(_ALPHABET)
        letters = (_ALPHABET[start:] + _ALPHABET[:start]) * (n // len(_ALPHABET) + 1)
        words.append(letters[:n])
    return " ".join(words) + "."


def corpus_records(corpus, source_lang: str = "en", target_lang: str = "de") -> list[dict]:
    """JSONL-ready records: signal values inline plus a rendered placeholder text."""
    return [
        {
            "id": sig.segment_id,
            "style_label": style.value,
            "signal": list(sig.values),
            "text": render_text(sig),
            "source_lang": source_lang,
            "target_lang": target_lang,
        }
        for sig, style in corpus
    ]


__all__ = [
    "StyleProfile",
    "faulkner_profile",
    "hemingway_profile",
    "generate_signal",
    "generate_corpus",
    "render_text",
    "corpus_records",
]
