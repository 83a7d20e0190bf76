"""Figure rendering for the CLI report path.

Figures are built on a bare :class:`~matplotlib.figure.Figure` (no pyplot
state). SVG output is made byte-reproducible by fixing the id hash salt and
dropping the date metadata.
"""
import matplotlib
from matplotlib.figure import Figure

# figure 4/5 convention: first height blue, second red
HEIGHT_COLORS = ("tab:blue", "tab:red", "tab:green", "tab:purple", "tab:orange")

_RC = {
    "svg.hashsalt": "radontex",
    "svg.fonttype": "path",
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
}


def _save(fig, path):
    path = str(path)
    fmt = path.rsplit(".", 1)[-1].lower() if "." in path else "svg"
    if fmt == "svg":
        metadata = {"Date": None}
    elif fmt == "png":
        metadata = {"Software": None}
    else:
        metadata = None
    with matplotlib.rc_context(_RC):
        fig.savefig(path, format=fmt, metadata=metadata)


def entropy_figure(curves, title=None):
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(6.4, 4.0))
        ax = fig.add_subplot()
        for i, curve in enumerate(curves):
            ax.plot(curve.angles, curve.values, lw=1.2,
                    color=HEIGHT_COLORS[i % len(HEIGHT_COLORS)],
                    label=f"h = {curve.sub_strip_height} px")
        ax.set_xlabel("angle (deg)")
        ax.set_ylabel("entropy (nats)")
        ax.legend(loc="best", frameon=False)
        if title:
            ax.set_title(title)
        fig.tight_layout()
    return fig


def autocorr_figure(curve, title=None):
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(6.4, 3.6))
        ax = fig.add_subplot()
        ax.plot(curve.lags, curve.values, lw=0.8, color="tab:blue")
        ax.axhline(0.0, color="0.5", lw=0.6)
        ax.set_xlabel("lag (columns)")
        ax.set_ylabel("autocorrelation")
        ax.set_title(title or f"Step = {curve.step}")
        fig.tight_layout()
    return fig


def autocorr_matrix_figure(matrix, title=None):
    """One small panel per Step, lag axis rescaled to [0, 1] of max lag."""
    n = len(matrix.steps)
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(6.4, 1.2 + 1.1 * n))
        axes = fig.subplots(n, 1, sharex=True, squeeze=False)[:, 0]
        x = [i / (matrix.curves.shape[1] - 1) for i in range(matrix.curves.shape[1])]
        for ax, step, row in zip(axes, matrix.steps, matrix.curves):
            ax.plot(x, row, lw=0.8, color="tab:blue")
            ax.set_ylim(-1.05, 1.05)
            ax.set_ylabel(f"Step {step}", fontsize=8)
        axes[-1].set_xlabel("lag / max lag")
        if title:
            axes[0].set_title(title)
        fig.tight_layout()
    return fig


def save_entropy_plot(curves, path, title=None):
    _save(entropy_figure(curves, title), path)


def save_autocorr_plot(curve, path, title=None):
    _save(autocorr_figure(curve, title), path)


def save_autocorr_matrix_plot(matrix, path, title=None):
    _save(autocorr_matrix_figure(matrix, title), path)
