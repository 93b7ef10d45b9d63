import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from samas.errors import IndivisibleLength, OddLength, ShapeMismatch, UnsupportedLevel
from samas.wpt import (
    WaveletFilter,
    WptDecomposition,
    analysis_step,
    available_filters,
    get_filter,
    subband_energies,
    wpt_decompose,
    wpt_reconstruct,
)

from oracles import dft_magnitudes, wpt_by_matrices

FILTERS = ["haar", "db2", "db4"]


@pytest.mark.parametrize("name", FILTERS)
def test_filter_invariants(name):
    f = get_filter(name)
    lo, hi = f.lowpass, f.highpass
    assert len(lo) == len(hi) and len(lo) % 2 == 0
    assert abs(np.sum(lo**2) - 1) < 1e-12
    assert abs(np.sum(lo) - math.sqrt(2)) < 1e-12
    k = np.arange(len(lo))
    assert np.allclose(hi, (-1.0) ** k * lo[::-1], atol=1e-12, rtol=0)
    # orthogonality to even shifts
    for m in range(1, len(lo) // 2):
        assert abs(np.dot(lo[: len(lo) - 2 * m], lo[2 * m:])) < 1e-12


def test_db4_vanishing_moments():
    # dbN highpass annihilates polynomials of degree < N
    hi = get_filter("db4").highpass
    k = np.arange(len(hi), dtype=float)
    for p in range(4):
        assert abs(np.sum(hi * k**p)) < 1e-9 * max(1.0, np.sum(np.abs(k**p)))


def test_unknown_filter():
    with pytest.raises(ValueError, match="unknown wavelet"):
        get_filter("sym9")
    assert set(FILTERS) <= set(available_filters())


def test_haar_step_constant(haar):
    a, d = analysis_step([1, 1, 1, 1], haar)
    assert np.allclose(a, [math.sqrt(2)] * 2, atol=1e-15)
    assert np.allclose(d, [0, 0], atol=1e-15)


def test_haar_step_alternating(haar):
    a, d = analysis_step([1, -1, 1, -1], haar)
    assert np.allclose(a, [0, 0], atol=1e-15)
    assert np.allclose(d, [math.sqrt(2)] * 2, atol=1e-15)


def test_step_energy_db4(db4, rng):
    x = rng.standard_normal(16)
    a, d = analysis_step(x, db4)
    assert abs(np.sum(a**2) + np.sum(d**2) - np.sum(x**2)) < 1e-12


def test_step_short_signal_wraps(db4):
    # 8 taps on 4 samples: periodic wraparound, still orthogonal
    x = np.array([1.0, 2.0, -1.0, 0.5])
    a, d = analysis_step(x, db4)
    assert abs(np.sum(a**2) + np.sum(d**2) - np.sum(x**2)) < 1e-12


def test_step_odd_length(haar):
    with pytest.raises(OddLength):
        analysis_step([1, 2, 3], haar)


def test_constant_concentrates_in_first_band(haar):
    c = 2.5
    dec = wpt_decompose([c] * 16, haar, 4)
    assert np.allclose(dec.subbands[0], [4 * c], atol=1e-12)
    for band in dec.subbands[1:]:
        assert np.allclose(band, 0, atol=1e-12)


def test_nyquist_concentrates_in_last_band(haar):
    c = 1.5
    x = [c * (-1) ** n for n in range(16)]
    mags = dft_magnitudes(x)
    assert mags[8] == pytest.approx(16 * c)
    assert max(m for k, m in enumerate(mags) if k != 8) < 1e-9
    dec = wpt_decompose(x, haar, 4)
    energies = subband_energies(dec)
    assert energies[15] == pytest.approx(sum(v * v for v in x), abs=1e-12)
    assert np.all(energies[:15] < 1e-24)


@pytest.mark.parametrize("k", range(16))
def test_frequency_order_of_pure_tones(k, db4):
    # a tone at the centre of band k peaks in sub-band k (filters leak, so
    # only the argmax is checked)
    n = 256
    x = np.cos(np.pi * (k + 0.5) / 16 * np.arange(n))
    energies = subband_energies(wpt_decompose(x, db4, 4))
    assert int(np.argmax(energies)) == k


@pytest.mark.parametrize("name", FILTERS)
@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_matches_matrix_oracle(name, level, rng):
    f = get_filter(name)
    x = rng.integers(1, 12, 32).astype(float)
    dec = wpt_decompose(x, f, level)
    expected = wpt_by_matrices(x, list(f.lowpass), level)
    assert len(dec.subbands) == 2**level
    for got, want in zip(dec.subbands, expected):
        assert np.allclose(got, want, atol=1e-12, rtol=0)


def test_shape_contract(db4, rng):
    dec = wpt_decompose(rng.standard_normal(64), db4, 4)
    assert len(dec.subbands) == 16
    assert all(b.shape == (4,) for b in dec.subbands)
    assert dec.as_array().shape == (16, 4)
    assert dec.signal_len == 64 and dec.filter_name == "db4"


def test_decompose_errors(haar):
    with pytest.raises(IndivisibleLength):
        wpt_decompose(np.ones(24), haar, 4)
    with pytest.raises(UnsupportedLevel):
        wpt_decompose(np.ones(8), haar, 4)
    with pytest.raises(UnsupportedLevel):
        wpt_decompose(np.ones(8), haar, 0)


@pytest.mark.parametrize("name", ["haar", "db4"])
@pytest.mark.parametrize("level", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [16, 32, 64, 256])
def test_perfect_reconstruction(name, level, n, rng):
    f = get_filter(name)
    x = rng.standard_normal(n) * 5
    y = wpt_reconstruct(wpt_decompose(x, f, level), f)
    assert np.max(np.abs(y - x)) < 1e-9


def test_reconstruct_constant_exact(haar, db4):
    for f in (haar, db4):
        y = wpt_reconstruct(wpt_decompose(np.full(32, 3.0), f, 4), f)
        assert np.max(np.abs(y - 3.0)) < 1e-12


def test_reconstruct_shape_mismatch(haar):
    dec = wpt_decompose(np.arange(16.0), haar, 2)
    bad = WptDecomposition(2, dec.subbands[:3], 16, "haar")
    with pytest.raises(ShapeMismatch):
        wpt_reconstruct(bad, haar)
    bad = WptDecomposition(2, dec.subbands[:3] + (np.zeros(3),), 16, "haar")
    with pytest.raises(ShapeMismatch):
        wpt_reconstruct(bad, haar)


def test_energies_zero_and_parseval(db4, rng):
    assert np.all(subband_energies(wpt_decompose(np.zeros(32), db4, 4)) == 0)
    x = rng.standard_normal(64)
    e = subband_energies(wpt_decompose(x, db4, 4))
    assert abs(e.sum() - np.sum(x**2)) / np.sum(x**2) < 1e-9


signals = st.integers(1, 4).flatmap(
    lambda lvl: st.tuples(
        st.just(lvl),
        st.integers(1, 16).flatmap(
            lambda m: arrays(np.float64, m * 2**lvl, elements=st.floats(-1e3, 1e3))
        ),
    )
)


@settings(max_examples=200, deadline=None)
@given(signals, st.sampled_from(FILTERS))
def test_parseval_property(case, name):
    level, x = case
    if len(x) < 2**level:
        return
    f = get_filter(name)
    dec = wpt_decompose(x, f, level)
    norm = float(np.dot(x, x))
    total = float(subband_energies(dec).sum())
    assert abs(total - norm) <= 1e-9 * max(norm, 1e-300)
    assert np.max(np.abs(wpt_reconstruct(dec, f) - x), initial=0) <= 1e-9 * max(1.0, np.max(np.abs(x)))


@settings(max_examples=100, deadline=None)
@given(
    st.floats(-10, 10), st.floats(-10, 10),
    arrays(np.float64, 64, elements=st.floats(-100, 100)),
    arrays(np.float64, 64, elements=st.floats(-100, 100)),
)
def test_linearity(a, b, x, y):
    f = get_filter("db4")
    lhs = wpt_decompose(a * x + b * y, f, 4).as_array()
    rhs = a * wpt_decompose(x, f, 4).as_array() + b * wpt_decompose(y, f, 4).as_array()
    assert np.max(np.abs(lhs - rhs)) < 1e-9 * max(1.0, np.max(np.abs(lhs)))


def test_custom_filter_from_lowpass():
    f = WaveletFilter.from_lowpass("mine", [1 / math.sqrt(2)] * 2)
    assert np.allclose(f.highpass, [1 / math.sqrt(2), -1 / math.sqrt(2)])
    with pytest.raises(ValueError):
        WaveletFilter.from_lowpass("odd", [1.0, 2.0, 3.0])


def test_json_dump(haar):
    obj = wpt_decompose([1.0] * 8, haar, 2).to_json()
    assert obj["level"] == 2 and len(obj["subbands"]) == 4
