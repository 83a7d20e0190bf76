"""Feature vectors, their serialization, and a provisional distance/ranking.

The distance is placeholder plumbing: slant gap scaled by the 120 degree
default grid span, plus RMS gaps of the entropy curves and of the
resampled autocorrelation matrices, each weighted.
"""
import json
import math
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigMismatch, EmptyGallery, RadontexError
from .seqfeat import AutocorrMatrix, step_sweep
from .slant import AngleGrid, SlantEstimate, entropy_curve, estimate_slant

SCHEMA_VERSION = 1
SLANT_SPAN_DEG = 120.0
DEFAULT_WEIGHTS = (1.0, 1.0, 1.0)


@dataclass(frozen=True)
class ExtractionConfig:
    grid: AngleGrid = field(default_factory=AngleGrid)
    heights: tuple = (30, 50)
    steps: tuple = (5, 10, 15, 20, 25, 30)
    binarization: str = "otsu"

    def __post_init__(self):
        if not self.heights:
            raise ValueError("at least one sub-strip height is required")
        if not self.steps:
            raise ValueError("at least one Step is required")
        object.__setattr__(self, "heights", tuple(int(h) for h in self.heights))
        object.__setattr__(self, "steps", tuple(sorted(int(s) for s in self.steps)))

    @property
    def primary_height(self):
        return self.heights[0]

    def fingerprint(self):
        return (f"grid={self.grid};heights={','.join(map(str, self.heights))};"
                f"steps={','.join(map(str, self.steps))};binarize={self.binarization}")


@dataclass(frozen=True)
class FeatureVector:
    slant: SlantEstimate
    entropy_values: np.ndarray
    autocorr: AutocorrMatrix
    config_fingerprint: str

    def to_dict(self):
        return {
            "version": SCHEMA_VERSION,
            "config_fingerprint": self.config_fingerprint,
            "slant": {
                "angle": self.slant.angle,
                "grid_angle": self.slant.grid_angle,
                "entropy_at_min": self.slant.entropy_at_min,
            },
            "entropy_values": [float(v) for v in self.entropy_values],
            "autocorr": {
                "steps": list(self.autocorr.steps),
                "curves": [[float(v) for v in row] for row in self.autocorr.curves],
            },
        }

    def dumps(self):
        # json writes floats with repr, which round-trips exactly
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, doc):
        version = doc.get("version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported feature vector version {version!r}")
        s = doc["slant"]
        ac = doc["autocorr"]
        return cls(
            slant=SlantEstimate(angle=float(s["angle"]),
                                grid_angle=float(s["grid_angle"]),
                                entropy_at_min=float(s["entropy_at_min"])),
            entropy_values=np.array(doc["entropy_values"], dtype=np.float64),
            autocorr=AutocorrMatrix(steps=tuple(int(x) for x in ac["steps"]),
                                    curves=np.array(ac["curves"], dtype=np.float64)),
            config_fingerprint=doc["config_fingerprint"],
        )

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))


@contextmanager
def _stage(name):
    try:
        yield
    except RadontexError as exc:
        exc.stage = name
        raise exc.annotate(name)


def feature_vector(m, cfg=None):
    """Slant, entropy curve (primary height) and Step sweep of a binary strip."""
    cfg = cfg or ExtractionConfig()
    with _stage("slant"):
        curve = entropy_curve(m, cfg.grid, cfg.primary_height)
        slant = estimate_slant(curve)
    with _stage("autocorr"):
        matrix = step_sweep(m, cfg.steps)
    return FeatureVector(slant=slant, entropy_values=curve.values,
                         autocorr=matrix, config_fingerprint=cfg.fingerprint())


def _rms(a, b):
    d = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    return math.sqrt(float(np.mean(d * d)))


def distance(a, b, weights=DEFAULT_WEIGHTS):
    if a.config_fingerprint != b.config_fingerprint:
        raise ConfigMismatch(
            f"feature vectors were extracted with different configs: "
            f"{a.config_fingerprint!r} vs {b.config_fingerprint!r}")
    w_slant, w_entropy, w_auto = weights
    return (w_slant * abs(a.slant.angle - b.slant.angle) / SLANT_SPAN_DEG
            + w_entropy * _rms(a.entropy_values, b.entropy_values)
            + w_auto * _rms(a.autocorr.curves, b.autocorr.curves))


def nearest(query, gallery, weights=DEFAULT_WEIGHTS):
    """Gallery ``(id, vector)`` pairs ranked by distance to ``query``; ties by id."""
    gallery = list(gallery)
    if not gallery:
        raise EmptyGallery("gallery is empty")
    scored = [(distance(query, vec, weights), ident) for ident, vec in gallery]
    scored.sort()
    return [(ident, d) for d, ident in scored]
