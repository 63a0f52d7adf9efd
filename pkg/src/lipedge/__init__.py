"""Contour detection with contrast formulas of a bounded logarithmic image model."""

from .classical import (
    GX,
    GY,
    LAPLACE,
    Kernel3x3,
    ResponseMap,
    convolve3x3,
    gradient_magnitude,
    laplace_response,
    normalize_for_display,
)
from .contrast import (
    EIGHT_NEIGHBORHOOD,
    ContrastMap,
    LogImage,
    Neighborhood,
    PixelCoord,
    absolute_contrast,
    contrast_map,
    phi_domain_oracle_map,
    pixel_contrast,
    relative_contrast,
)
from .lip import (
    DomainError,
    GrayCodec,
    LipParams,
    decode,
    encode,
    lip_add,
    lip_neg,
    lip_scalar_mul,
    lip_sub,
    phi,
    phi_inv,
)
from .pgm import GrayImage, PGMError, load_pgm, read_pgm, save_pgm, write_pgm

__version__ = "0.1.0"
