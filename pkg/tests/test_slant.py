import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radontex.errors import AspectTooSquare, CurveTooShort, EmptyImage, NotNormalized
from radontex.radon import project
from radontex.slant import (AngleGrid, EntropyCurve, entropy, entropy_curve,
                            estimate_slant)
from radontex.synth import SynthConfig, synth_strokes

probabilities = st.lists(st.floats(0, 1), min_size=1, max_size=40).filter(
    lambda v: sum(v) > 1e-3).map(lambda v: np.array(v) / sum(v))


def entropy_oracle(p):
    return -sum(x * math.log(x) for x in p if x > 0)


def test_delta_entropy_is_zero():
    assert entropy(np.array([1.0])) == 0.0
    assert math.copysign(1.0, entropy(np.array([0.0, 1.0, 0.0]))) == 1.0


def test_uniform_entropy():
    assert abs(entropy(np.full(8, 1 / 8)) - math.log(8)) < 1e-12
    assert abs(entropy(np.array([0.5, 0.5])) - 0.6931471805599453) < 1e-12


def test_entropy_of_profile():
    m = np.zeros((3, 4), np.uint8)
    m[0, 0] = m[0, 3] = 1
    assert abs(entropy(project(m, 90)) - math.log(2)) < 1e-12


def test_not_normalized():
    with pytest.raises(NotNormalized):
        entropy(np.array([0.5, 0.4]))


@settings(max_examples=100, deadline=None)
@given(probabilities, st.randoms(use_true_random=False))
def test_entropy_bounds_oracle_and_permutation(p, rnd):
    h = entropy(p)
    assert -1e-12 <= h <= math.log(len(p)) + 1e-12
    assert abs(h - entropy_oracle(p)) < 1e-12
    q = list(p)
    rnd.shuffle(q)
    assert abs(entropy(np.array(q)) - h) < 1e-12


def test_grid():
    g = AngleGrid(30, 150, 1)
    a = g.angles()
    assert len(a) == 121 and a[0] == 30 and a[-1] == 150
    assert len(AngleGrid(30, 31, 0.25).angles()) == 5
    assert len(AngleGrid(30, 150, 7).angles()) == 18  # stop not aligned
    assert AngleGrid.parse("40:140:0.5") == AngleGrid(40, 140, 0.5)
    for bad in ("0:150:1", "30:180:1", "150:30:1", "30:150:0", "30:150"):
        with pytest.raises(ValueError):
            AngleGrid.parse(bad)


def curve(values, angles=None):
    angles = np.arange(56, 56 + len(values), dtype=float) if angles is None else angles
    return EntropyCurve(np.asarray(angles, float), np.asarray(values, float), 30)


def test_symmetric_parabola_refines_to_center():
    est = estimate_slant(curve([3, 1, 3]))
    assert est.grid_angle == 57 and est.angle == 57.0 and est.entropy_at_min == 1


def test_asymmetric_parabola_matches_polyfit_vertex():
    est = estimate_slant(curve([3, 1, 2]))
    a, b, _ = np.polyfit([56, 57, 58], [3, 1, 2], 2)
    vertex = -b / (2 * a)
    assert abs(vertex - (57 + 1 / 6)) < 1e-9
    assert est.grid_angle == 57
    assert abs(est.angle - vertex) < 1e-9
    assert 57 < est.angle < 58


def test_monotone_curve_stays_at_endpoint():
    est = estimate_slant(curve([5, 4, 3, 2, 1]))
    assert est.grid_angle == est.angle == 60


def test_tie_takes_smallest_angle():
    assert estimate_slant(curve([2, 1, 3, 1, 2])).grid_angle == 57


def test_refinement_is_clamped_to_one_step():
    est = estimate_slant(curve([1.0, 1.0, 1.0 + 1e-12]))
    assert est.grid_angle == 56  # endpoint: no refinement
    est = estimate_slant(curve([5, 1.0, 1.0 + 1e-9, 9], angles=[10, 12, 14, 16]))
    assert abs(est.angle - est.grid_angle) <= 2


def test_curve_too_short():
    with pytest.raises(CurveTooShort):
        estimate_slant(curve([1, 2]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 10, allow_subnormal=False), min_size=3, max_size=30),
       st.sampled_from([0.25, 0.5, 2.0, 4.0, 3.0, 0.1]))
def test_scale_invariance(values, c):
    a = estimate_slant(curve(values))
    b = estimate_slant(curve([c * v for v in values]))
    assert a.grid_angle == b.grid_angle
    assert abs(a.angle - b.angle) < 1e-9
    assert abs(a.angle - a.grid_angle) <= 1.0


def test_aspect_rule():
    m = np.ones((30, 100), np.uint8)
    with pytest.raises(AspectTooSquare):
        entropy_curve(m, AngleGrid(), 30)  # width 100 < 5 * 30
    entropy_curve(np.ones((30, 150), np.uint8), AngleGrid(), 30)


def test_empty_strip():
    with pytest.raises(EmptyImage):
        entropy_curve(np.zeros((60, 600), np.uint8), AngleGrid(), 30)


@pytest.mark.parametrize("shift", [1, 7, 40])
def test_translation_invariance_of_curve(shift):
    rng = np.random.default_rng(11)
    m = np.zeros((60, 340), np.uint8)
    m[:, :300] = rng.random((60, 300)) < 0.05
    moved = np.roll(m, shift, axis=1)
    g = AngleGrid(40, 140, 5)
    a, b = entropy_curve(m, g, 30), entropy_curve(moved, g, 30)
    np.testing.assert_array_equal(a.values, b.values)


def test_curve_values_bounded_by_log_bins():
    m = synth_strokes(SynthConfig(angle=70, rows=90, cols=900, stroke_count=100))
    c = entropy_curve(m, AngleGrid(30, 150, 3), 30)
    assert len(c.angles) == len(c.values) == 41
    assert c.sub_strip_height == 30
    for t, v in zip(c.angles, c.values):
        from radontex.imageio import reshape_strip
        bins = len(project(reshape_strip(m, 30), t).raw)
        assert 0 <= v <= math.log(bins) + 1e-12


@pytest.mark.parametrize("angle", [57, 90])
def test_synthetic_strip_argmin(angle):
    m = synth_strokes(SynthConfig(angle=angle, seed=1))
    est = estimate_slant(entropy_curve(m, AngleGrid(30, 150, 1), 30))
    assert abs(est.grid_angle - angle) <= 2
    assert abs(est.angle - angle) <= 2


@pytest.mark.parametrize("angle", [50, 65, 110])
def test_heights_agree_on_synthetic_strips(angle):
    m = synth_strokes(SynthConfig(angle=angle, seed=4))
    g = AngleGrid(30, 150, 1)
    a = estimate_slant(entropy_curve(m, g, 30))
    b = estimate_slant(entropy_curve(m, g, 50))
    assert abs(a.grid_angle - b.grid_angle) <= 3
