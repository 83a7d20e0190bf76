"""Radon-projection texture features of handwritten document strips."""
from .classify import ExtractionConfig, FeatureVector, distance, feature_vector, nearest
from .imageio import binarize, load_netpbm, reshape_strip
from .radon import ProjectionProfile, mass_check, offset_index, project
from .seqfeat import autocorrelation, column_bits, step_sweep
from .slant import AngleGrid, entropy, entropy_curve, estimate_slant
from .synth import SynthConfig, synth_strokes

__version__ = "0.1.0"
