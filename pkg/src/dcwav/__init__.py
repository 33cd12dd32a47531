"""JPEG transport without DC coefficients, plus a small db4 wavelet toolkit.

The codec side quantizes 8x8 DCT blocks, serializes them as ordinary
baseline JFIF, and can zero every DC coefficient except the four corner
blocks; the receiver searches the missing DCs back by preferring smooth
block seams.  The wavelet side provides the db4 transform, BayesShrink
denoising, and a 6-channel "wavelet extension" tensor export.
"""

from .blockdct import (
    QUANT_Q50,
    CoeffGrid,
    coeff_grid_to_image,
    dequantize,
    forward_dct,
    image_to_coeff_grid,
    inverse_dct,
    quantize,
)
from .dcrecover import (
    RecoveryConfig,
    apply_correction,
    boundary_mse,
    gradient_trend_loss,
    predict_block_dc,
    recover_dc_grid,
    recover_image,
)
from .errors import (
    CapacityError,
    DcwavError,
    DimensionError,
    FormatError,
    HuffmanError,
    NoNeighborError,
    ParseError,
    TruncationError,
)
from .imagecore import (
    bicubic_resize,
    load_gray,
    load_rgb,
    pad_replicate,
    quantize_pixels,
    read_pgm,
    rgb_to_luma,
    round_half_away,
    save_gray,
    write_pgm,
)
from .jpegstream import (
    CompressionRatio,
    CornerDcs,
    EncodedJpeg,
    compression_ratio,
    decode_baseline,
    drop_dc,
    encode_baseline,
    extract_corner_dcs,
)
from .metrics import QualityReport, psnr, quality_report, ssim
from .wavelet import (
    Subbands,
    bayes_threshold,
    dwt1,
    dwt2,
    idwt1,
    idwt2,
    noise_sigma,
    soft_threshold,
    wd_denoise,
)
from .wavext import (
    ExtendedTensor,
    build_inference_tensor,
    build_training_tensor,
    export_tensor,
    wavelet_extension,
)

__version__ = "0.1.0"
