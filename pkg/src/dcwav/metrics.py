"""Full-reference quality metrics for 8-bit grayscale images.

psnr(a, b)
    10*log10(255^2 / MSE) in dB, math.inf for identical inputs.

ssim(a, b)
    Mean structural similarity over an 11x11 Gaussian window (sigma 1.5),
    K1=0.01, K2=0.03, dynamic range fixed at 255.  Windows are evaluated
    only where they fit entirely inside the image, so both sides must be
    at least 11 pixels.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from .errors import DimensionError

__all__ = ["psnr", "ssim", "quality_report", "QualityReport",
           "SSIM_WINDOW", "SSIM_SIGMA"]

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
_K1 = 0.01
_K2 = 0.03
_L = 255.0


def _check_pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.ndim != 2:
        raise DimensionError(f"expected 2-D images, got shape {a.shape}")
    return a, b


def psnr(a, b):
    """Peak signal-to-noise ratio against a 255 peak, in dB."""
    a, b = _check_pair(a, b)
    mse = np.mean((a - b) ** 2)
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(_L * _L / mse)


def _gaussian_window(size, sigma):
    r = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    g = np.exp(-(r * r) / (2.0 * sigma * sigma))
    w = np.outer(g, g)
    return w / w.sum()


_WINDOW = _gaussian_window(SSIM_WINDOW, SSIM_SIGMA)


def _filter(img):
    # The window is symmetric, so convolution equals correlation.
    return convolve2d(img, _WINDOW, mode="valid")


def ssim(a, b):
    """Mean SSIM index; 1.0 for identical images."""
    a, b = _check_pair(a, b)
    if min(a.shape) < SSIM_WINDOW:
        raise DimensionError(
            f"images must be at least {SSIM_WINDOW}x{SSIM_WINDOW} for SSIM"
        )
    c1 = (_K1 * _L) ** 2
    c2 = (_K2 * _L) ** 2

    mu_a = _filter(a)
    mu_b = _filter(b)
    mu_aa = mu_a * mu_a
    mu_bb = mu_b * mu_b
    mu_ab = mu_a * mu_b
    var_a = _filter(a * a) - mu_aa
    var_b = _filter(b * b) - mu_bb
    cov = _filter(a * b) - mu_ab

    num = (2.0 * mu_ab + c1) * (2.0 * cov + c2)
    den = (mu_aa + mu_bb + c1) * (var_a + var_b + c2)
    return float(np.mean(num / den))


@dataclass(frozen=True)
class QualityReport:
    """Both metrics for one image pair.  psnr is math.inf when identical."""

    psnr: float
    ssim: float


def quality_report(a, b):
    return QualityReport(psnr(a, b), ssim(a, b))
