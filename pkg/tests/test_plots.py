import numpy as np

from radontex.plots import (save_autocorr_matrix_plot, save_autocorr_plot,
                            save_entropy_plot)
from radontex.seqfeat import AutocorrMatrix, autocorrelation
from radontex.slant import EntropyCurve


def curves():
    a = np.arange(30.0, 151.0)
    return [EntropyCurve(a, 5 + ((a - 57) / 40) ** 2, 30),
            EntropyCurve(a, 4.5 + ((a - 57) / 40) ** 2, 50)]


def test_entropy_svg_is_reproducible(tmp_path):
    save_entropy_plot(curves(), tmp_path / "a.svg")
    save_entropy_plot(curves(), tmp_path / "b.svg")
    a = (tmp_path / "a.svg").read_bytes()
    assert a == (tmp_path / "b.svg").read_bytes()
    assert b"<dc:date>" not in a
    assert a.count(b"<polyline") + a.count(b"<path") > 2


def test_first_two_heights_blue_then_red(tmp_path):
    save_entropy_plot(curves(), tmp_path / "c.svg")
    svg = (tmp_path / "c.svg").read_text()
    assert svg.index("#1f77b4") < svg.index("#d62728")


def test_autocorr_plots(tmp_path):
    c = autocorrelation(np.array([1, 0, 0, 0] * 16))
    save_autocorr_plot(c, tmp_path / "one.png")
    m = AutocorrMatrix(steps=(5, 10), curves=np.tile(np.linspace(1, -1, 128), (2, 1)))
    save_autocorr_matrix_plot(m, tmp_path / "many.svg")
    assert (tmp_path / "one.png").read_bytes()[:4] == b"\x89PNG"
    assert (tmp_path / "many.svg").stat().st_size > 0
