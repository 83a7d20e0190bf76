"""Command-line interface.

Exit codes: 0 success, 2 I/O or unreadable image, 3 precondition/domain
error (including bad flag values), 4 feature-config mismatch.
"""
import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from . import imageio
from .classify import (DEFAULT_WEIGHTS, ExtractionConfig, FeatureVector,
                       feature_vector, nearest)
from .errors import (BadHeight, ConfigMismatch, DegenerateHistogram, DomainError,
                     EmptyImage, FormatError, RadontexError)
from .seqfeat import autocorrelation, column_bits, step_sweep
from .slant import AngleGrid, check_aspect, entropy_curve, estimate_slant
from .synth import SynthConfig, synth_strokes

log = logging.getLogger("radontex")

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_MISMATCH = 0, 2, 3, 4
FALLBACK_THRESHOLD = 128
IMAGE_SUFFIXES = {".pgm", ".pbm", ".pnm"}
FEATURE_SUFFIXES = {".fv", ".json"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"values must be positive integers, got {text!r}")
    return values


def _int_range(text):
    """``a:b:c`` inclusive integer range, or a comma list."""
    if ":" not in text:
        return _int_list(text)
    try:
        a, b, c = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:c, got {text!r}")
    if a < 1 or b < a or c < 1:
        raise argparse.ArgumentTypeError(f"range must satisfy 1 <= a <= b, c >= 1: {text!r}")
    return list(range(a, b + 1, c))


def _grid(text):
    try:
        return AngleGrid.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _weights(text):
    try:
        w = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be three numbers, got {text!r}")
    if len(w) != 3 or min(w) < 0:
        raise argparse.ArgumentTypeError(f"need three non-negative weights, got {text!r}")
    return w


def _binarization(text):
    try:
        return imageio.parse_binarization(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _method_label(method):
    return method if method == "otsu" else f"fixed:{method}"


def load_binary(path, method):
    """Read and binarize an image; a flat image falls back to a fixed threshold."""
    gray = imageio.read_image(path)
    try:
        return imageio.binarize(gray, method)
    except DegenerateHistogram:
        log.warning("%s: uniform image, falling back to fixed:%d", path, FALLBACK_THRESHOLD)
        return imageio.binarize(gray, FALLBACK_THRESHOLD)


def _check_heights(m, heights, what):
    rows, cols = m.shape
    for h in heights:
        if not 1 <= h <= rows:
            raise BadHeight(f"{what} {h} exceeds image height {rows}")


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def _extraction_config(args):
    return ExtractionConfig(grid=args.grid, heights=tuple(args.heights),
                            steps=tuple(args.steps),
                            binarization=_method_label(args.binarize))


def _validate_extraction(m, cfg):
    _check_heights(m, cfg.heights, "sub-strip height")
    _check_heights(m, cfg.steps, "Step")
    check_aspect(m.shape[0], m.shape[1], cfg.primary_height)
    if not m.any():
        raise EmptyImage("image has no ink pixels")


def cmd_slant(args):
    m = load_binary(args.input, args.binarize)
    _check_heights(m, args.heights, "sub-strip height")
    for h in args.heights:
        check_aspect(m.shape[0], m.shape[1], h)
    if not m.any():
        raise EmptyImage("image has no ink pixels")

    curves = [entropy_curve(m, args.grid, h) for h in args.heights]
    for curve in curves:
        est = estimate_slant(curve)
        print(f"h={curve.sub_strip_height}: slant {est.angle:.4f} deg "
              f"(grid {est.grid_angle:g} deg, entropy {est.entropy_at_min:.6f} nats)")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = _writer(fh)
            w.writerow(["angle_deg"] + [f"entropy_nats_h{c.sub_strip_height}" for c in curves])
            for i, angle in enumerate(curves[0].angles):
                w.writerow([float(angle)] + [float(c.values[i]) for c in curves])
    if args.svg:
        from .plots import save_entropy_plot
        save_entropy_plot(curves, args.svg, title=Path(args.input).name)
    return EXIT_OK


def cmd_autocorr(args):
    m = load_binary(args.input, args.binarize)
    if args.step is not None:
        _check_heights(m, [args.step], "Step")
        try:
            curve = autocorrelation(column_bits(m, args.step))
        except RadontexError as exc:
            raise exc.annotate(f"step {args.step}")
        print(f"step={args.step}: {len(curve.lags)} lags, "
              f"main peak at lag {_peak_lag(curve)}")
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                w = _writer(fh)
                w.writerow(["lag", "auto"])
                for lag, v in zip(curve.lags, curve.values):
                    w.writerow([int(lag), float(v)])
        if args.svg:
            from .plots import save_autocorr_plot
            save_autocorr_plot(curve, args.svg, title=f"{Path(args.input).name}, Step = {args.step}")
        return EXIT_OK

    steps = args.steps or [5, 10, 15, 20, 25, 30]
    _check_heights(m, steps, "Step")
    matrix = step_sweep(m, steps)
    print(f"steps {','.join(map(str, matrix.steps))}: {matrix.curves.shape[0]} x "
          f"{matrix.curves.shape[1]} resampled autocorrelation matrix")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = _writer(fh)
            w.writerow(["step"] + [f"v{i}" for i in range(matrix.curves.shape[1])])
            for step, row in zip(matrix.steps, matrix.curves):
                w.writerow([step] + [float(v) for v in row])
    if args.svg:
        from .plots import save_autocorr_matrix_plot
        save_autocorr_matrix_plot(matrix, args.svg, title=Path(args.input).name)
    return EXIT_OK


def _peak_lag(curve):
    """Lag of the highest autocorrelation past the first zero crossing."""
    negative = np.flatnonzero(curve.values < 0)
    if negative.size == 0:
        return 0
    k = int(negative[0])
    return int(curve.lags[k + int(np.argmax(curve.values[k:]))])


def _features_from_image(path, cfg, method):
    m = load_binary(path, method)
    _validate_extraction(m, cfg)
    return feature_vector(m, cfg)


def cmd_features(args):
    cfg = _extraction_config(args)
    fv = _features_from_image(args.input, cfg, args.binarize)
    text = fv.dumps()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    log.info("slant %.4f deg", fv.slant.angle)
    return EXIT_OK


def _load_any(path, cfg, method):
    path = Path(path)
    if path.suffix.lower() in IMAGE_SUFFIXES:
        return _features_from_image(path, cfg, method)
    return FeatureVector.loads(path.read_text())


def cmd_classify(args):
    cfg = _extraction_config(args)
    query = _load_any(args.query, cfg, args.binarize)
    gallery_dir = Path(args.gallery)
    if not gallery_dir.is_dir():
        raise FileNotFoundError(f"gallery directory not found: {gallery_dir}")
    entries = sorted(p for p in gallery_dir.iterdir()
                     if p.suffix.lower() in FEATURE_SUFFIXES | IMAGE_SUFFIXES)
    gallery = [(p.stem, _load_any(p, cfg, args.binarize)) for p in entries]
    ranking = nearest(query, gallery, args.weights)
    rows = [("id", "distance")] + [(ident, float(d)) for ident, d in ranking]
    w = _writer(sys.stdout)
    w.writerows(rows)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            _writer(fh).writerows(rows)
    return EXIT_OK


def cmd_synth(args):
    try:
        cfg = SynthConfig(angle=args.angle, rows=args.rows, cols=args.cols,
                          stroke_len=args.stroke_len, stroke_count=args.stroke_count,
                          gap_period=args.gap, jitter=args.jitter, seed=args.seed,
                          stroke_width=args.stroke_width, word_size=args.word_size)
    except ValueError as exc:
        raise DomainError(str(exc))
    m = synth_strokes(cfg)
    imageio.write_pgm(args.out, imageio.binary_to_gray(m))
    print(f"wrote {args.out}: {cfg.rows}x{cfg.cols}, {int(m.sum())} ink pixels, "
          f"angle {cfg.angle:g} deg")
    return EXIT_OK


def _add_binarize(p):
    p.add_argument("--binarize", type=_binarization, default="otsu",
                   help="'otsu' (default) or 'fixed:N' (ink = luminance < N)")


def _add_extraction(p):
    p.add_argument("--grid", type=_grid, default=AngleGrid(),
                   help="angle grid start:stop:step in degrees (default 30:150:1)")
    p.add_argument("--heights", type=_int_list, default=[30, 50],
                   help="sub-strip heights; the first one feeds the feature vector")
    p.add_argument("--steps", type=_int_range, default=[5, 10, 15, 20, 25, 30],
                   help="Step values as a:b:c or a comma list (default 5:30:5)")
    _add_binarize(p)


def build_parser():
    parser = _Parser(prog="radontex",
                     description="Radon-projection texture features of handwritten strips.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("slant", help="entropy curve and generalized slant per height")
    p.add_argument("input", help="P4/P5 image")
    p.add_argument("--heights", type=_int_list, default=[30, 50],
                   help="comma-separated sub-strip heights (default 30,50)")
    p.add_argument("--grid", type=_grid, default=AngleGrid(),
                   help="angle grid start:stop:step in degrees (default 30:150:1)")
    p.add_argument("--csv", help="write angle_deg,entropy_nats_h{H}... table")
    p.add_argument("--svg", help="write the entropy plot (format from extension)")
    _add_binarize(p)
    p.set_defaults(func=cmd_slant)

    p = sub.add_parser("autocorr", help="column-occupancy autocorrelation")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--step", type=int, help="single Step: write lag,auto")
    g.add_argument("--steps", type=_int_range, help="Step sweep a:b:c: write resampled matrix")
    p.add_argument("--csv", help="write the curve or matrix table")
    p.add_argument("--svg", help="write the plot (format from extension)")
    _add_binarize(p)
    p.set_defaults(func=cmd_autocorr)

    p = sub.add_parser("features", help="serialize the feature vector of a strip")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    _add_extraction(p)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("classify", help="rank gallery strips by distance to a query")
    p.add_argument("--query", required=True, help="feature file or image")
    p.add_argument("--gallery", required=True, help="directory of feature files or images")
    p.add_argument("--weights", type=_weights, default=DEFAULT_WEIGHTS,
                   help="slant,entropy,autocorr weights (default 1,1,1)")
    p.add_argument("--csv", help="also write the ranking table here")
    _add_extraction(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("synth", help="write a synthetic P5 strip with known slant")
    p.add_argument("--angle", type=float, required=True, help="stroke slant in degrees")
    p.add_argument("--out", required=True, help="output P5 path")
    defaults = SynthConfig(angle=90)
    p.add_argument("--rows", type=int, default=defaults.rows)
    p.add_argument("--cols", type=int, default=defaults.cols)
    p.add_argument("--stroke-len", type=int, default=defaults.stroke_len,
                   help="stroke height in rows (also the text line height)")
    p.add_argument("--stroke-count", type=int, default=defaults.stroke_count)
    p.add_argument("--stroke-width", type=int, default=defaults.stroke_width)
    p.add_argument("--gap", type=int, default=defaults.gap_period, help="stroke spacing (px)")
    p.add_argument("--word-size", type=int, default=defaults.word_size,
                   help="max strokes per word, 0 = no word gaps")
    p.add_argument("--jitter", type=int, default=defaults.jitter,
                   help="max horizontal displacement per stroke (px)")
    p.add_argument("--seed", type=int, default=defaults.seed, help="PRNG seed")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ConfigMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (FormatError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
