"""Classical 3x3 gradient and Laplacian contour operators, plus display scaling."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contrast import ContrastMap
from .lip import GrayCodec, round_half_away
from .pgm import GrayImage

__all__ = [
    "Kernel3x3",
    "ResponseMap",
    "GX",
    "GY",
    "LAPLACE",
    "BORDER_POLICY",
    "convolve3x3",
    "gradient_magnitude",
    "laplace_response",
    "normalize_for_display",
]

BORDER_POLICY = "edge-replicate"


@dataclass(frozen=True)
class Kernel3x3:
    coefficients: tuple[tuple[float, float, float], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(float(c) for c in row) for row in self.coefficients)
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise ValueError("a 3x3 kernel needs exactly 9 coefficients")
        object.__setattr__(self, "coefficients", rows)


GX = Kernel3x3(((-1, 0, 1), (-1, 0, 1), (-1, 0, 1)))
GY = Kernel3x3(((-1, -1, -1), (0, 0, 0), (1, 1, 1)))
LAPLACE = Kernel3x3(((2, -1, 2), (-1, -4, -1), (2, -1, 2)))


@dataclass(frozen=True, eq=False)
class ResponseMap:
    """Non-negative operator response of unbounded scale, shape (height, width)."""

    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("response map must be 2-D")
        if np.any(arr < 0):
            raise ValueError("response values must be non-negative")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]


def _as_float(img) -> np.ndarray:
    if isinstance(img, GrayImage):
        img = img.data
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or 0 in arr.shape:
        raise ValueError("expected a non-empty 2-D image")
    return arr


def convolve3x3(img, k: Kernel3x3) -> np.ndarray:
    """Correlate ``img`` with ``k`` (no kernel flip), replicating edge pixels.

    Taps are accumulated in row-major kernel order starting from 0.0.
    """
    a = _as_float(img)
    H, W = a.shape
    p = np.pad(a, 1, mode="edge")
    out = np.zeros_like(a)
    for ky in range(3):
        for kx in range(3):
            out = out + k.coefficients[ky][kx] * p[ky:ky + H, kx:kx + W]
    return out


def gradient_magnitude(img) -> ResponseMap:
    gx = convolve3x3(img, GX)
    gy = convolve3x3(img, GY)
    return ResponseMap(np.sqrt(gx * gx + gy * gy))


def laplace_response(img) -> ResponseMap:
    return ResponseMap(np.abs(convolve3x3(img, LAPLACE)))


def normalize_for_display(r, mode: str = "max", codec: GrayCodec = GrayCodec()) -> GrayImage:
    """Scale a response or contrast map to physical levels {0..A}.

    ``max`` sends the largest value to A; ``absolute`` sends M to A and is
    only meaningful for a bounded :class:`ContrastMap`.
    """
    A = codec.params.A
    v = np.asarray(r.data, dtype=np.float64)
    if mode == "max":
        vmax = v.max()
        if vmax <= 0:
            return GrayImage(np.zeros(v.shape, dtype=np.int64), A)
        scaled = A * v / vmax
    elif mode == "absolute":
        if not isinstance(r, ContrastMap):
            raise ValueError("absolute scaling needs a bounded contrast map")
        scaled = A * v / r.params.M
    else:
        raise ValueError(f"unknown normalization mode {mode!r}")
    levels = np.clip(round_half_away(scaled), 0, A).astype(np.int64)
    return GrayImage(levels, A)
