"""Periodic orthogonal wavelet packet transform.

Leaves are returned in ascending-frequency (Gray-code) order: sub-band 0 holds
the lowest frequencies and sub-band ``2**level - 1`` the highest.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IndivisibleLength, OddLength, ShapeMismatch, UnsupportedLevel

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT_HALF = 1.0 / _SQRT2

# Daubechies orthonormal scaling filters; dbN has 2N taps.
_LOWPASS = {
    "haar": (_SQRT_HALF, _SQRT_HALF),
    "db1": (_SQRT_HALF, _SQRT_HALF),
    "db2": (
        (1 + _SQRT3) / (4 * _SQRT2),
        (3 + _SQRT3) / (4 * _SQRT2),
        (3 - _SQRT3) / (4 * _SQRT2),
        (1 - _SQRT3) / (4 * _SQRT2),
    ),
    "db4": (
        0.2303778133088965,
        0.7148465705529157,
        0.6308807679298589,
        -0.027983769416859854,
        -0.18703481171909309,
        0.030841381835560764,
        0.0328830116668852,
        -0.010597401785069032,
    ),
}


@dataclass(frozen=True)
class WaveletFilter:
    name: str
    lowpass: np.ndarray
    highpass: np.ndarray

    @classmethod
    def from_lowpass(cls, name: str, lowpass) -> "WaveletFilter":
        lo = np.asarray(lowpass, dtype=float)
        if lo.ndim != 1 or len(lo) == 0 or len(lo) % 2:
            raise ValueError("lowpass filter must be a non-empty even-length sequence")
        k = np.arange(len(lo))
        hi = (-1.0) ** k * lo[::-1]
        lo.setflags(write=False)
        hi.setflags(write=False)
        return cls(name=name, lowpass=lo, highpass=hi)

    def __len__(self):
        return len(self.lowpass)


def get_filter(name: str) -> WaveletFilter:
    try:
        return WaveletFilter.from_lowpass(name, _LOWPASS[name.lower()])
    except KeyError:
        raise ValueError(
            f"unknown wavelet {name!r}; available: {', '.join(sorted(_LOWPASS))}"
        ) from None


def available_filters() -> list[str]:
    return sorted(_LOWPASS)


@dataclass(frozen=True)
class WptDecomposition:
    level: int
    subbands: tuple  # of np.ndarray, frequency ordered
    signal_len: int
    filter_name: str

    def as_array(self) -> np.ndarray:
        """Sub-bands stacked into a ``(2**level, signal_len // 2**level)`` array."""
        return np.vstack(self.subbands)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "filter": self.filter_name,
            "signal_len": self.signal_len,
            "subbands": [band.tolist() for band in self.subbands],
        }


def _wrap_index(n_out: int, n_in: int, taps: int) -> np.ndarray:
    # idx[n, k] = (2n + k) mod N
    return (2 * np.arange(n_out)[:, None] + np.arange(taps)[None, :]) % n_in


def analysis_step(signal, filt: WaveletFilter) -> tuple[np.ndarray, np.ndarray]:
    """One periodic DWT step: ``approx[n] = sum_k lo[k] * x[(2n+k) mod N]``."""
    x = np.asarray(signal, dtype=float)
    n = len(x)
    if n % 2:
        raise OddLength(f"signal length {n} is odd")
    windows = x[_wrap_index(n // 2, n, len(filt))]
    return windows @ filt.lowpass, windows @ filt.highpass


def synthesis_step(approx, detail, filt: WaveletFilter) -> np.ndarray:
    """Adjoint (= inverse, for orthonormal filters) of :func:`analysis_step`."""
    a = np.asarray(approx, dtype=float)
    d = np.asarray(detail, dtype=float)
    if a.shape != d.shape:
        raise ShapeMismatch(f"approx {a.shape} and detail {d.shape} differ")
    n = 2 * len(a)
    out = np.zeros(n)
    idx = _wrap_index(len(a), n, len(filt))
    contrib = np.outer(a, filt.lowpass) + np.outer(d, filt.highpass)
    np.add.at(out, idx.ravel(), contrib.ravel())
    return out


def _decompose(x: np.ndarray, filt: WaveletFilter, depth: int) -> list[np.ndarray]:
    if depth == 0:
        return [x]
    a, d = analysis_step(x, filt)
    # downsampling the highpass branch mirrors its spectrum, so the detail
    # subtree comes out in reverse frequency order
    return _decompose(a, filt, depth - 1) + _decompose(d, filt, depth - 1)[::-1]


def _reconstruct(bands: list[np.ndarray], filt: WaveletFilter) -> np.ndarray:
    if len(bands) == 1:
        return bands[0]
    half = len(bands) // 2
    a = _reconstruct(bands[:half], filt)
    d = _reconstruct(bands[half:][::-1], filt)
    return synthesis_step(a, d, filt)


def wpt_decompose(signal, filt: WaveletFilter, level: int) -> WptDecomposition:
    """Full wavelet packet tree to depth ``level``, leaves in frequency order."""
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1:
        raise ValueError("signal must be one-dimensional")
    if level < 1:
        raise UnsupportedLevel(f"level must be >= 1, got {level}")
    block = 2**level
    if block > len(x):
        raise UnsupportedLevel(f"2**{level} exceeds signal length {len(x)}")
    if len(x) % block:
        raise IndivisibleLength(f"signal length {len(x)} is not divisible by {block}")
    bands = _decompose(x, filt, level)
    for b in bands:
        b.setflags(write=False)
    return WptDecomposition(
        level=level, subbands=tuple(bands), signal_len=len(x), filter_name=filt.name
    )


def wpt_reconstruct(decomp: WptDecomposition, filt: WaveletFilter) -> np.ndarray:
    bands = [np.asarray(b, dtype=float) for b in decomp.subbands]
    if len(bands) != 2**decomp.level:
        raise ShapeMismatch(f"expected {2**decomp.level} sub-bands, got {len(bands)}")
    width = decomp.signal_len // 2**decomp.level
    if any(b.shape != (width,) for b in bands):
        raise ShapeMismatch(f"every sub-band must have {width} coefficients")
    return _reconstruct(bands, filt)


def subband_energies(decomp: WptDecomposition) -> np.ndarray:
    return np.array([float(np.dot(b, b)) for b in decomp.subbands])
