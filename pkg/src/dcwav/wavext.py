"""Wavelet-extension channels: a 6-channel tensor for downstream models.

Each RGB channel gets a companion plane built from its wavelet
approximation: take the db4 LL subband, crop it back to N/2 (the symmetric
extension makes it slightly larger), stretch its values to [0, 255], and
bicubically upsample to the original N x N.  The companion keeps coarse
structure while washing out fine detail and, thanks to the min-max stretch,
is invariant to constant brightness offsets.

Two tensor layouts share the channel order (RGB, then the three extension
planes), both scaled to [0, 1] float32:

  train      base channels are the image itself
  inference  base channels are wavelet-denoised, extensions still come
             from the untouched input
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .imagecore import bicubic_resize
from .wavelet import dwt2, wd_denoise

__all__ = [
    "ExtendedTensor",
    "wavelet_extension",
    "build_training_tensor",
    "build_inference_tensor",
    "export_tensor",
]


@dataclass(frozen=True)
class ExtendedTensor:
    """(N, N, 6) float32 in [0, 1]; mode records which layout built it."""

    data: np.ndarray
    mode: str


def _check_plane(channel):
    channel = np.asarray(channel, dtype=np.float64)
    if channel.ndim != 2 or channel.shape[0] != channel.shape[1]:
        raise DimensionError(f"expected a square plane, got shape {channel.shape}")
    n = channel.shape[0]
    if n < 16 or n % 2:
        raise DimensionError(f"side must be even and at least 16, got {n}")
    return channel, n


def _crop_centered(ll, target):
    """Trim an S x S subband to target x target, keeping the center.

    When S - target is odd the extra row/column comes off the leading side
    (the symmetric extension inflates that side by one output sample).
    """
    s = ll.shape[0]
    lead = (s - target + 1) // 2
    return ll[lead:lead + target, lead:lead + target]


def wavelet_extension(channel):
    """One channel's extension plane: LL -> crop -> stretch -> upsample.

    Returns an (N, N) float64 plane in [0, 255].  A flat channel has a
    degenerate value range and maps to all zeros.
    """
    channel, n = _check_plane(channel)
    ll = dwt2(channel).ll
    ll = _crop_centered(ll, n // 2)

    lo = ll.min()
    hi = ll.max()
    if hi == lo:
        norm = np.zeros_like(ll)
    else:
        norm = (ll - lo) * (255.0 / (hi - lo))
    return np.clip(bicubic_resize(norm, (n, n)), 0.0, 255.0)


def _check_rgb(img):
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise DimensionError(f"expected an (N, N, 3) image, got shape {img.shape}")
    _check_plane(img[:, :, 0])
    return img


def _assemble(base_channels, ext_channels, mode):
    data = np.stack(list(base_channels) + list(ext_channels), axis=-1)
    return ExtendedTensor((data / 255.0).astype(np.float32), mode)


def build_training_tensor(img):
    """Image channels plus their extensions, all from the input itself."""
    img = _check_rgb(img)
    base = [img[:, :, c].astype(np.float64) for c in range(3)]
    ext = [wavelet_extension(img[:, :, c]) for c in range(3)]
    return _assemble(base, ext, "train")


def build_inference_tensor(img):
    """Denoised base channels; extensions still taken from the raw input."""
    img = _check_rgb(img)
    base = [wd_denoise(img[:, :, c]).astype(np.float64) for c in range(3)]
    ext = [wavelet_extension(img[:, :, c]) for c in range(3)]
    return _assemble(base, ext, "inference")


def export_tensor(tensor, path):
    """Write the tensor as a .npy file (little-endian float32, C order)."""
    data = np.ascontiguousarray(tensor.data, dtype="<f4")
    if data.ndim != 3 or data.shape[2] != 6:
        raise DimensionError(f"expected an (N, N, 6) tensor, got {data.shape}")
    np.save(path, data, allow_pickle=False)
