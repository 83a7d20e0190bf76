"""Projection entropy over an angle grid and the strip-level slant it implies."""
import math
from dataclasses import dataclass

import numpy as np

from .errors import AspectTooSquare, CurveTooShort, EmptyImage, NotNormalized
from .imageio import reshape_strip
from .radon import project_pixels

NORMALIZATION_TOL = 1e-9
MIN_ASPECT = 5


@dataclass(frozen=True)
class AngleGrid:
    start: float = 30.0
    stop: float = 150.0
    step: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.start < self.stop < 180.0:
            raise ValueError(
                f"angle grid needs 0 < start < stop < 180, got {self.start}:{self.stop}")
        if not self.step > 0:
            raise ValueError(f"angle step must be positive, got {self.step}")

    @classmethod
    def parse(cls, text):
        """``"start:stop:step"`` in degrees."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like start:stop:step, got {text!r}")
        return cls(*(float(p) for p in parts))

    def angles(self):
        n = math.floor((self.stop - self.start) / self.step + 1e-9)
        return self.start + self.step * np.arange(n + 1, dtype=np.float64)

    def __str__(self):
        return f"{self.start:g}:{self.stop:g}:{self.step:g}"


@dataclass(frozen=True)
class EntropyCurve:
    angles: np.ndarray
    values: np.ndarray
    sub_strip_height: int


@dataclass(frozen=True)
class SlantEstimate:
    angle: float
    grid_angle: float
    entropy_at_min: float


def entropy(p):
    """Shannon entropy (nats) of a normalized profile.

    Accepts a :class:`~radontex.radon.ProjectionProfile` or a bare
    probability vector. Zero bins contribute nothing.
    """
    f = np.asarray(getattr(p, "normalized", p), dtype=np.float64).ravel()
    total = math.fsum(f)
    if f.size == 0 or abs(total - 1.0) > NORMALIZATION_TOL or np.any(f < 0):
        raise NotNormalized(f"profile sums to {total!r}, expected 1")
    nz = f[f > 0]
    # fsum keeps the result independent of bin order
    return -math.fsum(nz * np.log(nz)) + 0.0


def check_aspect(rows, cols, h):
    """Raise AspectTooSquare unless the reshaped strip is >= 5x wider than tall."""
    width = (rows // h) * cols
    if width < MIN_ASPECT * h:
        raise AspectTooSquare(
            f"reshaped strip is {h}x{width}; width must be at least "
            f"{MIN_ASPECT} x height ({MIN_ASPECT * h})")


def entropy_curve(m, grid, sub_strip_height):
    """Projection entropy at every grid angle of the reshaped strip."""
    m = np.asarray(m)
    h = int(sub_strip_height)
    joined = reshape_strip(m, h)
    check_aspect(m.shape[0], m.shape[1], h)
    rows, cols = np.nonzero(joined)
    if rows.size == 0:
        raise EmptyImage("strip has no ink pixels in its retained rows")
    angles = grid.angles()
    values = np.array([entropy(project_pixels(rows, cols, t)) for t in angles])
    return EntropyCurve(angles=angles, values=values, sub_strip_height=h)


def estimate_slant(curve):
    """Grid argmin of the entropy curve refined by a three-point parabola."""
    angles = np.asarray(curve.angles, dtype=np.float64)
    values = np.asarray(curve.values, dtype=np.float64)
    if len(values) < 3:
        raise CurveTooShort(f"need at least 3 curve points, got {len(values)}")
    i = int(np.argmin(values))  # first occurrence = smallest angle on ties
    grid_angle = float(angles[i])
    refined = grid_angle
    if 0 < i < len(values) - 1:
        step = float(angles[i + 1] - angles[i])
        v0, v1, v2 = values[i - 1], values[i], values[i + 1]
        curvature = v0 - 2.0 * v1 + v2
        if curvature > 0:
            shift = step * (v0 - v2) / (2.0 * curvature)
            shift = min(max(shift, -step), step)
            refined = grid_angle + float(shift)
    return SlantEstimate(angle=refined, grid_angle=grid_angle,
                         entropy_at_min=float(values[i]))
