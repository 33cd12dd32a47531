"""Single-level 2-D db4 wavelet transform and BayesShrink denoising.

The filter bank is Daubechies-4 (8 taps), derived by spectral factorization
and rounded from 60-digit arithmetic, so sum(lo) - sqrt(2) and |lo|^2 - 1
are exactly 0.0 in float64.

Two boundary handling modes:

  symmetric      half-point mirror extension (default; what the denoiser
                 and the channel extension use).  A length-N signal yields
                 floor((N+7)/2) coefficients per subband, so the four
                 subbands together are redundant.
  periodization  circular, critically sampled (N/2 per subband, N even).
                 The transform matrix is orthogonal, which makes energy
                 bookkeeping exact; mostly useful for verification.
"""

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DimensionError
from .imagecore import quantize_pixels

__all__ = [
    "REC_LO",
    "DEC_LO",
    "REC_HI",
    "DEC_HI",
    "Subbands",
    "dwt1",
    "idwt1",
    "dwt2",
    "idwt2",
    "noise_sigma",
    "bayes_threshold",
    "soft_threshold",
    "wd_denoise",
]

REC_LO = np.array([
    0.2303778133088965,
    0.7148465705529157,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909309,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
])
DEC_LO = REC_LO[::-1].copy()
# Quadrature mirror: hi[n] = (-1)^(n+1) lo_rec[n], reversed for synthesis.
DEC_HI = np.array([(-1) ** (n + 1) * REC_LO[n] for n in range(8)])
REC_HI = DEC_HI[::-1].copy()
for _f in (REC_LO, DEC_LO, DEC_HI, REC_HI):
    _f.setflags(write=False)

_FLEN = 8
_MODES = ("symmetric", "periodization")

# MAD-to-sigma factor for a zero-mean Gaussian: 1/Phi^-1(3/4).
_MAD_SCALE = 0.6745


def _check_mode(mode):
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")


def _analyze_last(a, mode):
    """Filter + downsample along the last axis; returns (lo, hi)."""
    n = a.shape[-1]
    if mode == "symmetric":
        if n < _FLEN:
            raise DimensionError(f"need at least {_FLEN} samples, got {n}")
        ext = np.concatenate(
            [a[..., :_FLEN - 1][..., ::-1], a, a[..., -(_FLEN - 1):][..., ::-1]],
            axis=-1,
        )
        # windows @ reversed(dec) == valid convolution with dec
        win = sliding_window_view(ext, _FLEN, axis=-1)
        lo = (win @ REC_LO)[..., 1::2]
        hi = (win @ REC_HI)[..., 1::2]
        return lo, hi
    if n % 2 or n < _FLEN:
        raise DimensionError(f"periodization needs an even length >= {_FLEN}, got {n}")
    k = np.arange(n // 2)[:, None]
    idx = (2 * k + 1 - np.arange(_FLEN)[None, :]) % n
    g = a[..., idx]
    return g @ DEC_LO, g @ DEC_HI


def _synthesize_last(lo, hi, n, mode):
    """Upsample + filter + sum along the last axis, trimmed to length n."""
    m = lo.shape[-1]
    if mode == "symmetric":
        up_shape = lo.shape[:-1] + (2 * m + 2 * (_FLEN - 1),)
        ua = np.zeros(up_shape)
        ud = np.zeros(up_shape)
        ua[..., _FLEN - 1:_FLEN - 1 + 2 * m:2] = lo
        ud[..., _FLEN - 1:_FLEN - 1 + 2 * m:2] = hi
        y = (
            sliding_window_view(ua, _FLEN, axis=-1) @ DEC_LO
            + sliding_window_view(ud, _FLEN, axis=-1) @ DEC_HI
        )
        # y is the full convolution (length 2m + 7); the first FLEN-2
        # samples are boundary transients of the extension.
        return y[..., _FLEN - 2:_FLEN - 2 + n]
    k = np.arange(m)[:, None]
    idx = (2 * k + 1 - np.arange(_FLEN)[None, :]) % n
    flat_lo = lo.reshape(-1, m)
    flat_hi = hi.reshape(-1, m)
    out = np.zeros((flat_lo.shape[0], n))
    for r in range(flat_lo.shape[0]):
        np.add.at(out[r], idx, flat_lo[r][:, None] * DEC_LO[None, :])
        np.add.at(out[r], idx, flat_hi[r][:, None] * DEC_HI[None, :])
    return out.reshape(lo.shape[:-1] + (n,))


def dwt1(x, mode="symmetric"):
    """One analysis step of a 1-D signal; returns (approx, detail)."""
    _check_mode(mode)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionError(f"expected a 1-D signal, got shape {x.shape}")
    return _analyze_last(x, mode)


def idwt1(approx, detail, length, mode="symmetric"):
    """Inverse of dwt1; length selects the original signal size."""
    _check_mode(mode)
    a = np.asarray(approx, dtype=np.float64)
    d = np.asarray(detail, dtype=np.float64)
    if a.shape != d.shape:
        raise DimensionError(f"subband shape mismatch: {a.shape} vs {d.shape}")
    return _synthesize_last(a, d, length, mode)


@dataclass(frozen=True)
class Subbands:
    """One level of 2-D subbands.

    Letters give (vertical, horizontal) filtering: lh is vertically smooth
    but horizontally detailed (vertical edges), hl the transpose, hh the
    diagonal residue.  shape/mode remember what idwt2 needs.
    """

    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray
    shape: tuple
    mode: str = "symmetric"

    def details(self):
        return (self.lh, self.hl, self.hh)


def dwt2(plane, mode="symmetric"):
    """Single-level separable 2-D transform (rows, then columns)."""
    _check_mode(mode)
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2:
        raise DimensionError(f"expected a 2-D plane, got shape {plane.shape}")
    lo_h, hi_h = _analyze_last(plane, mode)
    ll, hl = _analyze_last(lo_h.T, mode)
    lh, hh = _analyze_last(hi_h.T, mode)
    return Subbands(ll.T, lh.T, hl.T, hh.T, plane.shape, mode)


def idwt2(sb):
    """Reconstruct the plane a Subbands object came from."""
    h, w = sb.shape
    lo_h = _synthesize_last(sb.ll.T, sb.hl.T, h, sb.mode).T
    hi_h = _synthesize_last(sb.lh.T, sb.hh.T, h, sb.mode).T
    return _synthesize_last(lo_h, hi_h, w, sb.mode)


def noise_sigma(hh):
    """Robust noise estimate: median(|HH|) / 0.6745."""
    hh = np.asarray(hh, dtype=np.float64)
    return float(np.median(np.abs(hh)) / _MAD_SCALE)


def bayes_threshold(subband, sigma):
    """BayesShrink threshold sigma^2 / sigma_x for one detail subband.

    sigma_x^2 is estimated as max(mean(subband^2) - sigma^2, 0); a zero
    noise estimate means nothing to shrink (threshold 0), and a zero
    signal estimate means the band is all noise (threshold inf).
    """
    if sigma == 0.0:
        return 0.0
    sb = np.asarray(subband, dtype=np.float64)
    var_y = float(np.mean(sb * sb))
    var_x = var_y - sigma * sigma
    if var_x <= 0.0:
        return np.inf
    return float(sigma * sigma / np.sqrt(var_x))


def soft_threshold(x, t):
    """Shrink toward zero: sign(x) * max(|x| - t, 0).  t=inf zeroes, t=0
    is the identity."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def wd_denoise(img, levels=1, mode="symmetric"):
    """BayesShrink wavelet denoising of an 8-bit grayscale image.

    The noise level is estimated once from the finest diagonal subband,
    every detail subband down `levels` levels is soft-thresholded with its
    own BayesShrink threshold, and the result is rounded back to uint8.
    """
    if levels < 1:
        raise ValueError("levels must be at least 1")
    plane = np.asarray(img, dtype=np.float64)

    stack = []
    for _ in range(levels):
        sb = dwt2(plane, mode)
        stack.append(sb)
        plane = sb.ll

    sigma = noise_sigma(stack[0].hh)
    for sb in reversed(stack):
        shrunk = tuple(
            soft_threshold(band, bayes_threshold(band, sigma))
            for band in sb.details()
        )
        rebuilt = Subbands(plane, *shrunk, sb.shape, sb.mode)
        plane = idwt2(rebuilt)
    return quantize_pixels(plane)
