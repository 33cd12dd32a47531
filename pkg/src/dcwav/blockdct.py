"""8x8 block DCT, quantization, and the coefficient-grid container.

The transform is the orthonormal 2-D DCT-II (scipy's norm='ortho'), applied
after a -128 level shift.  With that normalization a flat block of value v
has DC = 8*(v - 128) and every basis function has unit l2 norm, so
sum(pixel_shifted**2) == sum(coeff**2) exactly up to float64 noise.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.fft import dctn, idctn

from .errors import DimensionError
from .imagecore import quantize_pixels, round_half_away

__all__ = [
    "QUANT_Q50",
    "CoeffGrid",
    "forward_dct",
    "inverse_dct",
    "quantize",
    "dequantize",
    "image_to_coeff_grid",
    "coeff_grid_to_image",
]

# ITU-T T.81 Annex K.1 luminance quantization table (quality 50).
QUANT_Q50 = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int32,
)
QUANT_Q50.setflags(write=False)


def forward_dct(block):
    """Level-shift by -128 and apply the orthonormal 2-D DCT-II."""
    block = np.asarray(block, dtype=np.float64)
    return dctn(block - 128.0, norm="ortho")


def inverse_dct(coeffs):
    """Inverse transform back to uint8 pixels (shift, round, clamp)."""
    pix = idctn(np.asarray(coeffs, dtype=np.float64), norm="ortho") + 128.0
    return quantize_pixels(pix)


def quantize(coeffs, quant=QUANT_Q50):
    """Divide by the quantization table, rounding halves away from zero."""
    q = round_half_away(np.asarray(coeffs, dtype=np.float64) / quant)
    return q.astype(np.int32)


def dequantize(levels, quant=QUANT_Q50):
    """Multiply quantized levels back up.  Exact: both factors are integers."""
    return np.asarray(levels, dtype=np.float64) * quant


@dataclass
class CoeffGrid:
    """Quantized DCT coefficients of a padded grayscale image.

    blocks has shape (v_n, h_n, 8, 8), int32, raster order; quant is the
    8x8 table the levels were divided by; size holds the pre-padding
    (height, width) so decoded images can be cropped back.
    """

    blocks: np.ndarray
    quant: np.ndarray = field(default_factory=lambda: QUANT_Q50)
    size: tuple | None = None

    @property
    def v_n(self):
        return self.blocks.shape[0]

    @property
    def h_n(self):
        return self.blocks.shape[1]

    @property
    def padded_shape(self):
        return (self.v_n * 8, self.h_n * 8)

    def dc(self):
        """The (v_n, h_n) plane of quantized DC levels."""
        return self.blocks[:, :, 0, 0]

    def copy(self):
        return CoeffGrid(self.blocks.copy(), np.array(self.quant), self.size)


def to_blocks(img):
    """(H, W) -> (H/8, W/8, 8, 8) view-reshape; H and W must be multiples of 8."""
    img = np.asarray(img)
    h, w = img.shape
    if h % 8 or w % 8 or h == 0 or w == 0:
        raise DimensionError(f"image shape {img.shape} is not a multiple of 8x8")
    return img.reshape(h // 8, 8, w // 8, 8).swapaxes(1, 2)


def from_blocks(blocks):
    """Inverse of to_blocks."""
    v, h = blocks.shape[:2]
    return blocks.swapaxes(1, 2).reshape(v * 8, h * 8)


def image_to_coeff_grid(img, quant=QUANT_Q50, size=None):
    """Transform + quantize a uint8 image whose sides are multiples of 8."""
    px = to_blocks(img).astype(np.float64) - 128.0
    coeffs = dctn(px, axes=(2, 3), norm="ortho")
    return CoeffGrid(quantize(coeffs, quant), np.asarray(quant), size)


def coeff_grid_to_image(grid, crop=True):
    """Dequantize + inverse transform a grid back to a uint8 image.

    With crop=True (default) the result is trimmed to grid.size when set.
    """
    coeffs = dequantize(grid.blocks, grid.quant)
    px = idctn(coeffs, axes=(2, 3), norm="ortho") + 128.0
    img = quantize_pixels(from_blocks(px))
    if crop and grid.size is not None:
        img = img[: grid.size[0], : grid.size[1]]
    return img
