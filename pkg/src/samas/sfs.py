"""Stylistic Feature Spectrum: per-sub-band statistics of a word-length WPT."""
from __future__ import annotations

import math
from typing import Callable
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDistribution, ZeroEnergy
from .text_signal import WordLengthSignal
from .wpt import WaveletFilter, subband_energies, wpt_decompose

SCHEMA_VERSION = 1
FEATURE_KINDS = ("rwe", "means", "stds", "skewness", "kurtosis")
DEGENERATE_STD = 1e-12


@dataclass(frozen=True)
class StylisticFeatureSpectrum:
    """81 numbers for L=4: five features per sub-band plus one global entropy.

    ``flatten()`` layout is grouped by feature kind, then by sub-band in
    ascending frequency: ``[rwe..., means..., stds..., skewness..., kurtosis..., H]``.
    """

    rwe: np.ndarray
    means: np.ndarray
    stds: np.ndarray
    skewness: np.ndarray
    kurtosis: np.ndarray
    global_entropy: float
    level: int = 4
    filter_name: str = "db4"
    segment_id: str = ""
    # per-sub-band entropies; diagnostic only, not part of the vector
    subband_entropies: np.ndarray | None = field(default=None, compare=False, repr=False)

    @property
    def n_bands(self) -> int:
        return 2**self.level

    @property
    def low_frequency_energy(self) -> float:
        return low_frequency_energy(self)

    def flatten(self) -> np.ndarray:
        return np.concatenate(
            [self.rwe, self.means, self.stds, self.skewness, self.kurtosis, [self.global_entropy]]
        )

    def to_json(self) -> dict:
        return {
            "segment_id": self.segment_id,
            "level": self.level,
            "filter": self.filter_name,
            "rwe": self.rwe.tolist(),
            "means": self.means.tolist(),
            "stds": self.stds.tolist(),
            "skewness": self.skewness.tolist(),
            "kurtosis": self.kurtosis.tolist(),
            "global_entropy": self.global_entropy,
            "schema_version": SCHEMA_VERSION,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StylisticFeatureSpectrum":
        version = obj.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported SFS schema_version {version}")
        level = int(obj["level"])
        arrays = {k: np.asarray(obj[k], dtype=float) for k in FEATURE_KINDS}
        for k, arr in arrays.items():
            if arr.shape != (2**level,):
                raise ValueError(f"{k} must have {2**level} entries")
        return cls(
            global_entropy=float(obj["global_entropy"]),
            level=level,
            filter_name=obj.get("filter", "db4"),
            segment_id=str(obj.get("segment_id", "")),
            **arrays,
        )

    @classmethod
    def from_flat(cls, vector, level: int = 4, **meta) -> "StylisticFeatureSpectrum":
        v = np.asarray(vector, dtype=float)
        nb = 2**level
        if v.shape != (5 * nb + 1,):
            raise ValueError(f"expected {5 * nb + 1} entries, got {v.shape}")
        parts = {k: v[i * nb:(i + 1) * nb] for i, k in enumerate(FEATURE_KINDS)}
        return cls(global_entropy=float(v[-1]), level=level, **parts, **meta)


def relative_wavelet_energy(energies) -> np.ndarray:
    e = np.asarray(energies, dtype=float)
    if np.any(e < 0):
        raise ValueError("energies must be non-negative")
    total = e.sum()
    if total <= 0:
        raise ZeroEnergy("total energy is zero; an all-zero signal has no style")
    return e / total


def _entropy_bits(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def subband_entropy(coeffs) -> float:
    """Shannon entropy (bits) of the coefficient energy distribution in one band."""
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0:
        raise ValueError("sub-band is empty")
    sq = c * c
    total = sq.sum()
    if total == 0:
        return 0.0
    return _entropy_bits(sq / total)


def global_wavelet_entropy(rwe) -> float:
    """Entropy of the sub-band energy distribution, normalized to [0, 1]."""
    p = np.asarray(rwe, dtype=float)
    if abs(p.sum() - 1.0) > 1e-6 or np.any(p < 0):
        raise InvalidDistribution(f"relative energies sum to {p.sum()!r}, expected 1")
    bits = math.log2(len(p))
    if bits == 0:
        return 0.0
    return min(1.0, _entropy_bits(p) / bits)


def subband_moments(coeffs) -> tuple[float, float, float, float]:
    """Population mean, std, skewness and excess kurtosis of one sub-band."""
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0:
        raise ValueError("sub-band is empty")
    mu = float(c.mean())
    dev = c - mu
    sigma = math.sqrt(float(np.mean(dev * dev)))
    if sigma < DEGENERATE_STD:
        return mu, sigma, 0.0, 0.0
    z = dev / sigma
    z2 = z * z
    return mu, sigma, float(np.mean(z2 * z)), float(np.mean(z2 * z2)) - 3.0


def energy_entropy(rwe, band_entropies, band_len: int) -> float:
    """Default global entropy: the normalized entropy of the RWE distribution."""
    return global_wavelet_entropy(rwe)


def mean_subband_entropy(rwe, band_entropies, band_len: int) -> float:
    """Alternative global entropy: mean per-band entropy, each scaled by log2 of the band length."""
    if band_len < 2:
        return 0.0
    return float(np.mean(band_entropies)) / math.log2(band_len)


def compute_sfs(
    signal: WordLengthSignal,
    filt: WaveletFilter,
    level: int = 4,
    entropy: Callable[[np.ndarray, np.ndarray, int], float] = energy_entropy,
) -> StylisticFeatureSpectrum:
    """Feature spectrum of a prepared signal.

    ``entropy`` maps (rwe, per-band entropies, band length) to the global
    value; swap it to experiment with other aggregates.
    """
    values = signal.values if isinstance(signal, WordLengthSignal) else signal
    seg_id = signal.segment_id if isinstance(signal, WordLengthSignal) else ""
    decomp = wpt_decompose(np.asarray(values, dtype=float), filt, level)
    rwe = relative_wavelet_energy(subband_energies(decomp))
    moments = np.array([subband_moments(b) for b in decomp.subbands])
    band_h = np.array([subband_entropy(b) for b in decomp.subbands])
    return StylisticFeatureSpectrum(
        rwe=rwe,
        means=moments[:, 0],
        stds=moments[:, 1],
        skewness=moments[:, 2],
        kurtosis=moments[:, 3],
        global_entropy=entropy(rwe, band_h, len(decomp.subbands[0])),
        level=level,
        filter_name=filt.name,
        segment_id=seg_id,
        subband_entropies=band_h,
    )


def low_frequency_energy(sfs: StylisticFeatureSpectrum, n_bands: int | None = None) -> float:
    """Cumulative relative energy of the lowest-frequency sub-bands.

    Defaults to the lowest quarter of the spectrum, i.e. the first 4 of 16
    sub-bands at level 4.
    """
    if n_bands is None:
        n_bands = max(1, len(sfs.rwe) // 4)
    return float(np.sum(sfs.rwe[:n_bands]))
