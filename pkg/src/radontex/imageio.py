"""Netpbm (P4/P5) loading, binarization and the sub-strip reshape.

Images are plain 2-D numpy arrays:

* gray images are ``uint8`` luminance, 0 = black, 255 = white;
* binary images are ``uint8`` with 1 = ink and 0 = background.
"""
from pathlib import Path

import numpy as np

from .errors import (BadHeader, BadHeight, BadMagic, DegenerateHistogram,
                     TruncatedPayload)

_WHITESPACE = b" \t\n\r\v\f"
_MAXVAL_LIMIT = 65535


def _header_tokens(data, count):
    """Read ``count`` whitespace separated header tokens after the magic.

    Returns the tokens and the index of the first payload byte (the single
    whitespace byte after the last token is consumed).
    """
    tokens = []
    pos = 2
    n = len(data)
    while len(tokens) < count:
        while pos < n and (data[pos] in _WHITESPACE or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                while pos < n and data[pos] not in b"\r\n":
                    pos += 1
            else:
                pos += 1
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        if start == pos:
            raise BadHeader("header ended before all fields were read")
        tokens.append(bytes(data[start:pos]))
    if pos >= n or data[pos] not in _WHITESPACE:
        raise BadHeader("missing whitespace byte before payload")
    return tokens, pos + 1


def _parse_int(token, name):
    if not token.isdigit():
        raise BadHeader(f"{name} is not a decimal integer: {token!r}")
    return int(token)


def load_netpbm(data):
    """Decode a binary P4 or P5 netpbm byte string into a gray image."""
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P4", b"P5"):
        raise BadMagic(f"unsupported netpbm magic {magic!r}; expected P4 or P5")

    ntok = 2 if magic == b"P4" else 3
    tokens, offset = _header_tokens(data, ntok)
    width = _parse_int(tokens[0], "width")
    height = _parse_int(tokens[1], "height")
    if width < 1 or height < 1:
        raise BadHeader(f"image dimensions must be positive, got {width}x{height}")
    payload = memoryview(data)[offset:]

    if magic == b"P4":
        row_bytes = (width + 7) // 8
        need = row_bytes * height
        if len(payload) < need:
            raise TruncatedPayload(f"P4 payload has {len(payload)} bytes, need {need}")
        packed = np.frombuffer(payload[:need], dtype=np.uint8).reshape(height, row_bytes)
        bits = np.unpackbits(packed, axis=1)[:, :width]
        return np.where(bits == 1, 0, 255).astype(np.uint8)

    maxval = _parse_int(tokens[2], "maxval")
    if not 1 <= maxval <= _MAXVAL_LIMIT:
        raise BadHeader(f"maxval must be in 1..{_MAXVAL_LIMIT}, got {maxval}")
    sample_bytes = 1 if maxval < 256 else 2
    need = width * height * sample_bytes
    if len(payload) < need:
        raise TruncatedPayload(f"P5 payload has {len(payload)} bytes, need {need}")
    dtype = np.uint8 if sample_bytes == 1 else np.dtype(">u2")
    values = np.frombuffer(payload[:need], dtype=dtype).reshape(height, width)
    if maxval == 255:
        return values.astype(np.uint8)
    # integer rounding: round(v * 255 / maxval), halves up
    v = values.astype(np.int64)
    scaled = (v * 255 * 2 + maxval) // (2 * maxval)
    return np.clip(scaled, 0, 255).astype(np.uint8)


def dump_pgm(img):
    """Serialize a gray image as a P5 file with maxval 255."""
    img = np.asarray(img, dtype=np.uint8)
    rows, cols = img.shape
    return b"P5\n%d %d\n255\n" % (cols, rows) + np.ascontiguousarray(img).tobytes()


def read_image(path):
    return load_netpbm(Path(path).read_bytes())


def write_pgm(path, img):
    Path(path).write_bytes(dump_pgm(img))


def binary_to_gray(m):
    """Render ink as black (0) on white (255)."""
    return np.where(np.asarray(m) != 0, 0, 255).astype(np.uint8)


def otsu_threshold(img):
    """Otsu threshold of a gray image.

    Returns the smallest luminance ``T`` such that pixels ``< T`` form the
    dark class maximizing the between-class variance of the 256-bin
    histogram.
    """
    img = np.asarray(img)
    hist = np.bincount(img.ravel().astype(np.int64), minlength=256)[:256]
    if np.count_nonzero(hist) < 2:
        raise DegenerateHistogram(
            "all pixels share one luminance; use a fixed threshold instead")
    levels = np.arange(256, dtype=np.int64)
    total = int(hist.sum())
    # class 0 = luminance <= k
    n0 = np.cumsum(hist)[:-1]
    s0 = np.cumsum(hist * levels)[:-1]
    n1 = total - n0
    s1 = int((hist * levels).sum()) - s0
    valid = (n0 > 0) & (n1 > 0)
    between = np.full(255, -1.0)
    w0 = n0[valid] / total
    w1 = n1[valid] / total
    mu0 = s0[valid] / n0[valid]
    mu1 = s1[valid] / n1[valid]
    between[valid] = w0 * w1 * (mu0 - mu1) ** 2
    return int(np.argmax(between)) + 1


def binarize(img, method="otsu"):
    """Threshold a gray image into ink (1) / background (0).

    ``method`` is ``"otsu"`` or an integer threshold; a pixel is ink iff its
    luminance is strictly below the threshold.
    """
    img = np.asarray(img)
    if img.ndim != 2 or img.size == 0:
        raise ValueError(f"expected a non-empty 2-D image, got shape {img.shape}")
    if isinstance(method, str):
        if method != "otsu":
            raise ValueError(f"unknown binarization method {method!r}")
        threshold = otsu_threshold(img)
    else:
        threshold = int(method)
    return (img < threshold).astype(np.uint8)


def parse_binarization(text):
    """Parse ``otsu`` or ``fixed:N`` into a :func:`binarize` method."""
    text = text.strip().lower()
    if text == "otsu":
        return "otsu"
    if text.startswith("fixed:"):
        value = int(text.split(":", 1)[1])
        if not 0 <= value <= 256:
            raise ValueError(f"fixed threshold must be in 0..256, got {value}")
        return value
    raise ValueError(f"binarization must be 'otsu' or 'fixed:N', got {text!r}")


def reshape_strip(m, h):
    """Cut ``m`` into height-``h`` bands and lay them side by side.

    Band ``i`` (source rows ``[i*h, (i+1)*h)``) lands in columns
    ``[i*cols, (i+1)*cols)``; leftover rows below ``K*h`` are dropped.
    """
    m = np.asarray(m)
    rows, cols = m.shape
    if not 1 <= h <= rows:
        raise BadHeight(f"sub-strip height must be in 1..{rows}, got {h}")
    k = rows // h
    bands = m[: k * h].reshape(k, h, cols)
    return bands.transpose(1, 0, 2).reshape(h, k * cols)
