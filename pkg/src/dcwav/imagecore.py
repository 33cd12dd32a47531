"""Image containers, file IO, luma conversion and resampling utilities.

Grayscale images are plain 2-D uint8 numpy arrays indexed [row, col];
RGB images are (H, W, 3) uint8.  Nothing in the package wraps them in a
class, so every module can hand arrays straight to numpy/scipy.
"""

import re

import numpy as np
from PIL import Image as _PILImage

from .errors import DimensionError, FormatError

__all__ = [
    "read_pgm",
    "write_pgm",
    "load_gray",
    "load_rgb",
    "save_gray",
    "rgb_to_luma",
    "pad_replicate",
    "bicubic_resize",
    "round_half_away",
]

# BT.601 luma weights, the classic CRT-era triple.
_LUMA_R = 0.299
_LUMA_G = 0.587
_LUMA_B = 0.114

_PGM_HEADER = re.compile(
    rb"^P5\s(?:\s*#.*?[\r\n])*"
    rb"\s*(\d+)\s(?:\s*#.*?[\r\n])*"
    rb"\s*(\d+)\s(?:\s*#.*?[\r\n])*"
    rb"\s*(\d+)\s"
)


def round_half_away(x):
    """Round to nearest integer, halves away from zero (so -1.5 -> -2).

    numpy's own round() ties to even, which is the wrong convention for
    everything in this package: quantization, pixel reconstruction and
    the averaging of recovery passes all want the half-away rule.
    """
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def _clip_u8(x):
    return np.clip(x, 0, 255).astype(np.uint8)


def quantize_pixels(x):
    """Real-valued plane -> uint8 pixels (round half away, clamp 0..255)."""
    return _clip_u8(round_half_away(x))


def read_pgm(path):
    """Read a binary (P5) PGM file with maxval 255 into a 2-D uint8 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    m = _PGM_HEADER.match(data)
    if m is None:
        raise FormatError(f"{path}: not a binary PGM (P5) header")
    width, height, maxval = (int(g) for g in m.groups())
    if maxval != 255:
        raise FormatError(f"{path}: only maxval 255 is supported, got {maxval}")
    if width <= 0 or height <= 0:
        raise FormatError(f"{path}: bad dimensions {width}x{height}")
    raster = data[m.end():]
    need = width * height
    if len(raster) < need:
        raise FormatError(
            f"{path}: raster truncated ({len(raster)} bytes, expected {need})"
        )
    return np.frombuffer(raster[:need], dtype=np.uint8).reshape(height, width)


def write_pgm(img, path):
    """Write a 2-D uint8 array as binary PGM: 'P5\\n{w} {h}\\n255\\n' + raster."""
    img = _as_gray(img)
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(img.tobytes())


def _as_gray(img):
    img = np.asarray(img)
    if img.ndim != 2:
        raise DimensionError(f"expected a 2-D grayscale array, got shape {img.shape}")
    if img.dtype != np.uint8:
        raise FormatError(f"expected uint8 pixels, got {img.dtype}")
    return img


def rgb_to_luma(rgb):
    """BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), as uint8."""
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise DimensionError(f"expected an (H, W, 3) array, got shape {rgb.shape}")
    y = (
        _LUMA_R * rgb[:, :, 0].astype(np.float64)
        + _LUMA_G * rgb[:, :, 1].astype(np.float64)
        + _LUMA_B * rgb[:, :, 2].astype(np.float64)
    )
    return quantize_pixels(y)


# 8-bit Pillow modes we accept; 16-bit/float inputs are out of scope.
_PIL_8BIT = {"1", "L", "LA", "P", "RGB", "RGBA"}


def _open_8bit(path):
    try:
        im = _PILImage.open(path)
    except (OSError, SyntaxError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if im.mode not in _PIL_8BIT:
        im.close()
        raise FormatError(f"{path}: unsupported bit depth (mode {im.mode})")
    return im


def load_rgb(path):
    """Load a PNG/JPEG/... file as an (H, W, 3) uint8 array via Pillow."""
    with _open_8bit(path) as im:
        return np.asarray(im.convert("RGB"))


def load_gray(path):
    """Load an image file as grayscale.

    PGM files go through our own strict parser so that save/load stays
    bit-exact; anything else is opened with Pillow and, if it has color,
    reduced with rgb_to_luma (Pillow's own 'L' conversion truncates
    instead of rounding, so we do the weighting ourselves).
    """
    path = str(path)
    if path.lower().endswith(".pgm"):
        return read_pgm(path)
    with _open_8bit(path) as im:
        if im.mode == "L":
            return np.asarray(im)
        return rgb_to_luma(np.asarray(im.convert("RGB")))


def save_gray(img, path):
    """Save a 2-D uint8 array; PGM through our writer, the rest via Pillow."""
    img = _as_gray(img)
    if str(path).lower().endswith(".pgm"):
        write_pgm(img, path)
    else:
        _PILImage.fromarray(img, mode="L").save(path)


def pad_replicate(img, multiple=8):
    """Pad right/bottom by edge replication to a multiple of `multiple`.

    Returns (padded, (orig_h, orig_w)).  Images already aligned come back
    unchanged (same object, no copy).
    """
    img = np.asarray(img)
    h, w = img.shape[:2]
    ph = (-h) % multiple
    pw = (-w) % multiple
    if ph == 0 and pw == 0:
        return img, (h, w)
    pad = [(0, ph), (0, pw)] + [(0, 0)] * (img.ndim - 2)
    return np.pad(img, pad, mode="edge"), (h, w)


# Keys cubic convolution kernel, a = -0.5 (the Catmull-Rom member).
def _cubic_kernel(t, a=-0.5):
    t = np.abs(t)
    out = np.zeros_like(t)
    near = t <= 1.0
    far = (t > 1.0) & (t < 2.0)
    tn = t[near]
    tf = t[far]
    out[near] = (a + 2.0) * tn**3 - (a + 3.0) * tn**2 + 1.0
    out[far] = a * tf**3 - 5.0 * a * tf**2 + 8.0 * a * tf - 4.0 * a
    return out


def _resize_weights(n_in, n_out):
    """Dense (n_out, n_in) bicubic weight matrix, half-pixel centers.

    Output pixel i samples source coordinate (i + 0.5) * n_in / n_out - 0.5;
    the four taps around it get Keys-kernel weights and out-of-range taps
    are clamped to the border (replication), which keeps each row summing
    to exactly the kernel's partition of unity.
    """
    scale = n_in / n_out
    src = (np.arange(n_out, dtype=np.float64) + 0.5) * scale - 0.5
    base = np.floor(src).astype(np.int64)
    frac = src - base
    w = np.zeros((n_out, n_in), dtype=np.float64)
    rows = np.arange(n_out)
    for k in range(-1, 3):
        taps = np.clip(base + k, 0, n_in - 1)
        w[rows, taps] += _cubic_kernel(frac - k)
    return w


def bicubic_resize(plane, out_shape):
    """Separable bicubic resampling of a 2-D real plane to out_shape.

    No clamping or rounding is applied; callers decide how to quantize.
    """
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2:
        raise DimensionError(f"expected a 2-D array, got shape {plane.shape}")
    out_h, out_w = out_shape
    if out_h <= 0 or out_w <= 0:
        raise DimensionError(f"bad target shape {out_shape}")
    wr = _resize_weights(plane.shape[0], out_h)
    wc = _resize_weights(plane.shape[1], out_w)
    return wr @ plane @ wc.T
