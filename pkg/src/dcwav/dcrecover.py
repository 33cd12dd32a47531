"""Receiver-side recovery of dropped DC coefficients.

A block's DC only shifts its 64 pixels by a constant (quant[0,0]/8 gray
levels per quantization step with the orthonormal transform), so the AC-only
inverse can be computed once per block and every candidate DC tried as a
cheap brightness offset.  Candidates are scored by how smoothly the block's
first pixel row/column continues its already-decided neighbors, scanning in
raster order away from a transmitted corner block.

Losses, per 8-pixel seam between block b and its causal neighbor a:

    mse      mean((b0 - a7)^2)                boundary step size
    trend    mean(((b0 - a7) - (a7 - a6))^2)  change of the boundary gradient
    both     their sum

where b0 is the block's edge line facing a, and a7/a6 the neighbor's last
and second-to-last lines.  Ties pick the smallest candidate.
"""

from dataclasses import dataclass

import numpy as np
from scipy.fft import idctn

from .blockdct import CoeffGrid, coeff_grid_to_image, dequantize
from .errors import DimensionError, NoNeighborError
from .imagecore import round_half_away
from .jpegstream import decode_baseline, extract_corner_dcs

__all__ = [
    "RecoveryConfig",
    "boundary_mse",
    "gradient_trend_loss",
    "predict_block_dc",
    "recover_dc_grid",
    "recover_image",
    "apply_correction",
]

_LOSSES = ("mse", "trend", "both")
_SCANS = ("single", "avg4")


@dataclass(frozen=True)
class RecoveryConfig:
    """Knobs for the DC search.

    dc_min/dc_max bound the candidate range in quantized DC units; loss is
    one of 'mse', 'trend' or 'both'; scan is 'single' (one raster scan from
    the top-left corner) or 'avg4' (one scan from each transmitted corner,
    predictions averaged).  Transmitted corner DCs always override the
    search result in their own blocks.
    """

    dc_min: int = -64
    dc_max: int = 64
    loss: str = "mse"
    scan: str = "avg4"

    def __post_init__(self):
        if self.loss not in _LOSSES:
            raise ValueError(f"loss must be one of {_LOSSES}, got {self.loss!r}")
        if self.scan not in _SCANS:
            raise ValueError(f"scan must be one of {_SCANS}, got {self.scan!r}")
        if self.dc_min > self.dc_max:
            raise ValueError("dc_min must not exceed dc_max")


def _seam_lines(a, b, orientation):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != (8, 8) or b.shape != (8, 8):
        raise DimensionError("seam losses expect two 8x8 blocks")
    if orientation == "horizontal":     # a is the left neighbor of b
        return a[:, 7], a[:, 6], b[:, 0]
    if orientation == "vertical":       # a is the upper neighbor of b
        return a[7, :], a[6, :], b[0, :]
    raise ValueError(f"orientation must be 'horizontal' or 'vertical', got {orientation!r}")


def boundary_mse(a, b, orientation="horizontal"):
    """Mean squared pixel step across the seam between neighbor blocks.

    a sits left of b (horizontal) or above b (vertical); the loss is the
    mean over the 8 facing pixel pairs of their squared difference.
    """
    a_last, _, b_edge = _seam_lines(a, b, orientation)
    d = b_edge - a_last
    return float(np.mean(d * d))


def gradient_trend_loss(prev, cur, orientation="horizontal"):
    """Mean squared change of the across-seam gradient.

    Compares each crossing step cur_edge - prev_last with the gradient
    prev_last - prev_prev just inside the neighbor, so a linear ramp
    continuing through the seam scores 0.
    """
    a_last, a_prev, b_edge = _seam_lines(prev, cur, orientation)
    e = (b_edge - a_last) - (a_last - a_prev)
    return float(np.mean(e * e))


def _px(x):
    # Candidate pixels behave like decoded ones: rounded and clamped.
    return np.clip(round_half_away(x), 0.0, 255.0)


def _ac_base(blocks, quant):
    """AC-only pixel reconstruction (+128, unrounded) of every block."""
    coeffs = dequantize(blocks, quant)
    coeffs[:, :, 0, 0] = 0.0
    return idctn(coeffs, axes=(2, 3), norm="ortho") + 128.0


def _seam_losses(cand_edge, nb_last, nb_prev, mode):
    """Loss of each candidate edge (C, 8) against one decided neighbor."""
    d = cand_edge - nb_last
    if mode == "mse":
        return np.mean(d * d, axis=1)
    e = d - (nb_last - nb_prev)
    if mode == "trend":
        return np.mean(e * e, axis=1)
    return np.mean(d * d, axis=1) + np.mean(e * e, axis=1)


def _scan_from_origin(base, step, seed_dc, cands, mode):
    """Raster scan with the seed corner at (0, 0); returns the DC plane."""
    v_n, h_n = base.shape[:2]
    shifts = cands.astype(np.float64) * step
    col = shifts[:, None]

    dc = np.zeros((v_n, h_n), dtype=np.int64)
    right_last = np.empty((v_n, h_n, 8))   # pixel column 7 of decided blocks
    right_prev = np.empty((v_n, h_n, 8))   # pixel column 6
    bottom_last = np.empty((v_n, h_n, 8))  # pixel row 7
    bottom_prev = np.empty((v_n, h_n, 8))  # pixel row 6

    for i in range(v_n):
        for j in range(h_n):
            if i == 0 and j == 0:
                choice = int(seed_dc)
            else:
                total = np.zeros(len(cands))
                if j > 0:
                    cand = _px(base[i, j, :, 0][None, :] + col)
                    total += _seam_losses(
                        cand, right_last[i, j - 1], right_prev[i, j - 1], mode)
                if i > 0:
                    cand = _px(base[i, j, 0, :][None, :] + col)
                    total += _seam_losses(
                        cand, bottom_last[i - 1, j], bottom_prev[i - 1, j], mode)
                choice = int(cands[int(np.argmin(total))])

            dc[i, j] = choice
            shift = choice * step
            right_last[i, j] = _px(base[i, j, :, 7] + shift)
            right_prev[i, j] = _px(base[i, j, :, 6] + shift)
            bottom_last[i, j] = _px(base[i, j, 7, :] + shift)
            bottom_prev[i, j] = _px(base[i, j, 6, :] + shift)
    return dc


# (flip vertical, flip horizontal, which transmitted corner seeds the scan)
_ORIENTATIONS = (
    (False, False, "top_left"),
    (False, True, "top_right"),
    (True, False, "bottom_left"),
    (True, True, "bottom_right"),
)


def recover_dc_grid(grid, corners=None, cfg=RecoveryConfig()):
    """Predict the whole (v_n, h_n) DC plane of a dropped grid.

    corners defaults to whatever DC levels sit in the grid's own corner
    blocks.  The returned plane always carries the transmitted corner
    values at the four corners, whatever the search said.
    """
    if corners is None:
        corners = extract_corner_dcs(grid)
    base = _ac_base(np.asarray(grid.blocks, dtype=np.float64), grid.quant)
    step = float(grid.quant[0, 0]) / 8.0
    cands = np.arange(cfg.dc_min, cfg.dc_max + 1, dtype=np.int64)

    if cfg.scan == "single":
        dc = _scan_from_origin(base, step, corners.top_left, cands, cfg.loss)
    else:
        passes = []
        for flip_v, flip_h, corner in _ORIENTATIONS:
            b = base
            if flip_v:
                b = b[::-1, :, ::-1, :]
            if flip_h:
                b = b[:, ::-1, :, ::-1]
            d = _scan_from_origin(b, step, getattr(corners, corner), cands, cfg.loss)
            if flip_v:
                d = d[::-1, :]
            if flip_h:
                d = d[:, ::-1]
            passes.append(d)
        dc = round_half_away(np.mean(passes, axis=0)).astype(np.int64)

    dc[0, 0] = corners.top_left
    dc[0, -1] = corners.top_right
    dc[-1, 0] = corners.bottom_left
    dc[-1, -1] = corners.bottom_right
    return dc.astype(np.int32)


def predict_block_dc(ac_block, quant, left=None, up=None, cfg=RecoveryConfig()):
    """Search the DC of a single block against decoded neighbor blocks.

    ac_block holds the block's quantized levels (its DC entry is ignored);
    left/up are full quantized blocks of the already-reconstructed causal
    neighbors.  At least one must be given.
    """
    if left is None and up is None:
        raise NoNeighborError("DC prediction needs a left or an up neighbor")
    quant = np.asarray(quant)
    block = np.asarray(ac_block, dtype=np.float64)
    if block.shape != (8, 8):
        raise DimensionError(f"expected an 8x8 block, got {block.shape}")

    coeffs = dequantize(block, quant)
    coeffs[0, 0] = 0.0
    base = idctn(coeffs, norm="ortho") + 128.0
    step = float(quant[0, 0]) / 8.0
    cands = np.arange(cfg.dc_min, cfg.dc_max + 1, dtype=np.int64)
    col = (cands.astype(np.float64) * step)[:, None]

    total = np.zeros(len(cands))
    if left is not None:
        nb = _px(idctn(dequantize(np.asarray(left), quant), norm="ortho") + 128.0)
        cand = _px(base[:, 0][None, :] + col)
        total += _seam_losses(cand, nb[:, 7], nb[:, 6], cfg.loss)
    if up is not None:
        nb = _px(idctn(dequantize(np.asarray(up), quant), norm="ortho") + 128.0)
        cand = _px(base[0, :][None, :] + col)
        total += _seam_losses(cand, nb[7, :], nb[6, :], cfg.loss)
    return int(cands[int(np.argmin(total))])


def recover_image(encoded, cfg=RecoveryConfig()):
    """Decode a dropped stream (bytes or EncodedJpeg) and fill in its DCs."""
    data = encoded if isinstance(encoded, (bytes, bytearray)) else encoded.data
    grid = decode_baseline(bytes(data))
    dc = recover_dc_grid(grid, cfg=cfg)
    filled = grid.copy()
    filled.blocks[:, :, 0, 0] = dc
    return coeff_grid_to_image(filled)


def apply_correction(recovered, residual):
    """Add back a sender-provided residual plane scaled to [-1, 1].

    residual == (reference - recovered) / 255 restores the reference
    exactly; anything coarser degrades gracefully.
    """
    rec = np.asarray(recovered, dtype=np.float64)
    res = np.asarray(residual, dtype=np.float64)
    if rec.shape != res.shape:
        raise DimensionError(f"shape mismatch: {rec.shape} vs {res.shape}")
    out = round_half_away(rec + res * 255.0)
    return np.clip(out, 0, 255).astype(np.uint8)
