"""Deterministic synthetic strips of parallel slanted strokes with known angle.

Strokes are rasterized with :func:`radontex.radon.offset_index`, so every
pixel of a stroke column lands on one projection offset at the true angle.

Layout: strokes are placed left to right in text lines ``stroke_len`` rows
tall, separated by ``max(1, stroke_len // 2)`` blank rows, the first line
starting at row 0. Within a line, stroke anchors (top-row column)
are ``gap_period`` apart, each shifted by a uniform integer in
``[-jitter, jitter]``. A stroke is ``stroke_width`` adjacent offsets wide.

Jitter comes from a 64-bit linear congruential generator (Knuth's MMIX
constants ``a = 6364136223846793005``, ``c = 1442695040888963407``,
modulus ``2**64``). The state starts at ``seed mod 2**64``; each draw
advances the state once and takes ``(state >> 33) % (2*jitter + 1) - jitter``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import StrokeOverflow
from .radon import check_angle, cot_deg, offset_index, round_half_away

_LCG_A = 6364136223846793005
_LCG_C = 1442695040888963407
_MASK64 = (1 << 64) - 1
# extra blank space between words, in units of gap_period
WORD_SPACE = 2


class Lcg64:
    def __init__(self, seed):
        self.state = int(seed) & _MASK64

    def next_u64(self):
        self.state = (_LCG_A * self.state + _LCG_C) & _MASK64
        return self.state

    def uniform_int(self, lo, hi):
        """Integer in [lo, hi]."""
        return lo + (self.next_u64() >> 33) % (hi - lo + 1)


@dataclass(frozen=True)
class SynthConfig:
    angle: float
    rows: int = 300
    cols: int = 3000
    stroke_len: int = 45
    stroke_count: int = 1000
    gap_period: int = 5
    jitter: int = 1
    seed: int = 1
    stroke_width: int = 3
    word_size: int = 8

    def __post_init__(self):
        check_angle(self.angle)
        for name in ("rows", "cols", "stroke_len", "stroke_count", "gap_period",
                     "stroke_width"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.word_size < 0:
            raise ValueError(f"word_size must be >= 0, got {self.word_size}")
        if self.jitter < 0:
            raise ValueError(f"jitter must be >= 0, got {self.jitter}")


def _stroke_columns(rows, xs, angle):
    """Column on line ``xs[i]`` in row ``rows[i]`` (unique for each pair)."""
    base = xs + round_half_away(rows * cot_deg(angle))
    out = np.full(base.shape, np.iinfo(np.int64).min)
    for delta in (0, -1, 1):
        cand = base + delta
        hit = (offset_index(rows, cand, angle) == xs) & (out == np.iinfo(np.int64).min)
        out[hit] = cand[hit]
    return out


def stroke_anchors(cfg):
    """(top_row, anchor_col) for every stroke, in placement order."""
    cot = cot_deg(cfg.angle)
    dx = (cfg.stroke_len - 1) * cot
    margin = cfg.jitter + 1
    first = margin + max(0, math.ceil(-dx))
    last = cfg.cols - margin - cfg.stroke_width - max(0, math.ceil(dx))
    if last < first:
        raise StrokeOverflow(
            f"a {cfg.stroke_len}-row stroke at {cfg.angle} deg spans ~{abs(dx):.1f} "
            f"columns and does not fit in {cfg.cols} columns")
    gap = max(1, cfg.stroke_len // 2)
    pitch = cfg.stroke_len + gap
    rng = Lcg64(cfg.seed)

    def word_length():
        if not cfg.word_size:
            return cfg.stroke_count
        return rng.uniform_int((cfg.word_size + 1) // 2, cfg.word_size)

    placed = []  # (line, nominal column)
    line, pos, left_in_word = 0, first, word_length()
    for _ in range(cfg.stroke_count):
        if left_in_word == 0:
            pos += WORD_SPACE * cfg.gap_period
            left_in_word = word_length()
        if pos > last:
            line, pos = line + 1, first
        placed.append((line, pos))
        pos += cfg.gap_period
        left_in_word -= 1

    n_lines = placed[-1][0] + 1
    needed = n_lines * cfg.stroke_len + (n_lines - 1) * gap
    if needed > cfg.rows:
        raise StrokeOverflow(
            f"{cfg.stroke_count} strokes need {n_lines} lines ({needed} rows) "
            f"but the strip has {cfg.rows} rows")
    anchors = []
    for line, col in placed:
        shift = rng.uniform_int(-cfg.jitter, cfg.jitter) if cfg.jitter else 0
        anchors.append((line * pitch, col + shift))
    return anchors


def synth_strokes(cfg):
    """Binary strip (1 = ink) drawn from ``cfg``."""
    anchors = np.array(stroke_anchors(cfg), dtype=np.int64)
    r0, a = anchors[:, 0], anchors[:, 1]
    x0 = np.atleast_1d(offset_index(r0, a, cfg.angle))
    dr = np.arange(cfg.stroke_len)
    dx = np.arange(cfg.stroke_width)
    # (stroke, row, width) grids
    rows = np.broadcast_to(r0[:, None, None] + dr[None, :, None],
                           (len(r0), cfg.stroke_len, cfg.stroke_width)).ravel()
    xs = np.broadcast_to(x0[:, None, None] + dx[None, None, :],
                         (len(r0), cfg.stroke_len, cfg.stroke_width)).ravel()
    cols = _stroke_columns(rows, xs, cfg.angle)
    bad = (cols < 0) | (cols >= cfg.cols)
    if bad.any():
        i = int(np.argmax(bad))
        raise StrokeOverflow(f"stroke pixel ({rows[i]}, {cols[i]}) leaves the image")
    m = np.zeros((cfg.rows, cfg.cols), dtype=np.uint8)
    m[rows, cols] = 1
    return m
