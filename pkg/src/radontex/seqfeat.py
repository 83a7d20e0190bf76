"""Column-occupancy bit sequence and its autocorrelation, plus the Step sweep."""
from dataclasses import dataclass

import numpy as np

from .errors import RadontexError, TooShort, ZeroVariance
from .imageio import reshape_strip

RESAMPLE_POINTS = 128
# below this length the direct O(N^2) sum is cheap enough
_DIRECT_MAX = 2048


@dataclass(frozen=True)
class BitSequence:
    bits: np.ndarray
    step: int
    source_cols: int


@dataclass(frozen=True)
class AutocorrCurve:
    lags: np.ndarray
    values: np.ndarray
    step: int


@dataclass(frozen=True)
class AutocorrMatrix:
    steps: tuple
    curves: np.ndarray


def column_bits(m, step):
    """Bit per column of the joined strip: 1 iff the column is at least half ink.

    The comparison ``Val < step/2`` is done as ``2*Val < step`` so the
    boundary ``Val == step/2`` lands on 1.
    """
    m = np.asarray(m)
    joined = reshape_strip(m, step)
    val = joined.sum(axis=0, dtype=np.int64)
    bits = np.where(2 * val < step, 0, 1).astype(np.uint8)
    return BitSequence(bits=bits, step=int(step), source_cols=m.shape[1])


def _lagged_products(d, max_lag):
    n = len(d)
    if n <= _DIRECT_MAX:
        return np.array([np.dot(d[: n - k], d[k:]) for k in range(max_lag + 1)])
    size = 1 << (2 * n - 1).bit_length()
    spec = np.fft.rfft(d, size)
    return np.fft.irfft(spec * np.conj(spec), size)[: max_lag + 1]


def autocorrelation(s):
    """Mean-removed autocorrelation normalized to 1 at lag 0, lags 0..N//2."""
    bits = np.asarray(getattr(s, "bits", s), dtype=np.float64).ravel()
    step = getattr(s, "step", 0)
    n = len(bits)
    if n < 4:
        raise TooShort(f"sequence has {n} bits, need at least 4")
    ones = int(np.count_nonzero(bits))
    if ones == 0 or ones == n:
        raise ZeroVariance("bit sequence is constant; autocorrelation is undefined")
    d = bits - ones / n
    energy = float(np.dot(d, d))
    max_lag = n // 2
    values = _lagged_products(d, max_lag) / energy
    values[0] = 1.0
    np.clip(values, -1.0, 1.0, out=values)
    return AutocorrCurve(lags=np.arange(max_lag + 1), values=values, step=int(step))


def resample(curve, points=RESAMPLE_POINTS):
    """Linear resampling of a curve onto ``points`` evenly spaced lags."""
    positions = np.linspace(0.0, float(curve.lags[-1]), points)
    return np.interp(positions, curve.lags.astype(np.float64), curve.values)


def step_sweep(m, steps):
    """Resampled autocorrelation for each Step, stacked in ascending Step order."""
    ordered = tuple(sorted(int(s) for s in steps))
    if not ordered:
        raise ValueError("step list is empty")
    rows = []
    for step in ordered:
        try:
            rows.append(resample(autocorrelation(column_bits(m, step))))
        except RadontexError as exc:
            exc.step = step
            raise exc.annotate(f"step {step}")
    return AutocorrMatrix(steps=ordered, curves=np.vstack(rows))
