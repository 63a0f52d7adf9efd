"""Pixel contrast in the logarithmic model and the contour image built from it.

The contour image of ``f`` is the map ``p -> C(p)``, where ``C(p)`` is the
LIP mean of absolute contrasts between ``p`` and its in-bounds neighbours.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .lip import DEFAULT_PARAMS, GrayCodec, LipParams, lip_mean, lip_scalar_mul, lip_sub, phi, phi_inv
from .pgm import GrayImage

__all__ = [
    "PixelCoord",
    "Neighborhood",
    "EIGHT_NEIGHBORHOOD",
    "BORDER_POLICY",
    "LogImage",
    "ContrastMap",
    "relative_contrast",
    "absolute_contrast",
    "pixel_contrast",
    "contrast_map",
    "phi_domain_oracle_map",
]

BORDER_POLICY = "in-bounds-neighbors"


class PixelCoord(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class Neighborhood:
    """Offsets ``(dx, dy, distance)`` around a pixel, scanned in stored order."""

    offsets: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        seen = set()
        for dx, dy, d in self.offsets:
            if (dx, dy) == (0, 0):
                raise ValueError("the centre offset (0, 0) is not a neighbour")
            if (dx, dy) in seen:
                raise ValueError(f"duplicate offset {(dx, dy)}")
            if d != math.sqrt(dx * dx + dy * dy):
                raise ValueError(f"distance {d} does not match offset {(dx, dy)}")
            seen.add((dx, dy))

    @classmethod
    def from_offsets(cls, pairs) -> "Neighborhood":
        return cls(tuple((dx, dy, math.sqrt(dx * dx + dy * dy)) for dx, dy in pairs))

    def __len__(self) -> int:
        return len(self.offsets)

    @property
    def radius(self) -> int:
        return max(max(abs(dx), abs(dy)) for dx, dy, _ in self.offsets)


# 3x3 window, row-major scan
EIGHT_NEIGHBORHOOD = Neighborhood.from_offsets(
    [(dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if (dx, dy) != (0, 0)]
)


@dataclass(frozen=True, eq=False)
class LogImage:
    """Logarithmic image: shape (height, width) of values strictly inside (-M, M)."""

    data: np.ndarray
    params: LipParams = DEFAULT_PARAMS

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.float64)
        if arr.ndim != 2 or 0 in arr.shape:
            raise ValueError(f"log image must be a non-empty 2-D grid, got shape {arr.shape}")
        self._validate(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    def _validate(self, arr: np.ndarray) -> None:
        if not np.all(np.abs(arr) < self.params.M):
            raise ValueError(f"log levels must lie strictly inside (-{self.params.M}, {self.params.M})")

    @classmethod
    def from_gray(cls, img: GrayImage, params: LipParams = DEFAULT_PARAMS) -> "LogImage":
        if img.maxval != params.A:
            raise ValueError(f"image maxval {img.maxval} does not match A={params.A}")
        return cls(GrayCodec(params).encode(img.data), params)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, p: PixelCoord) -> float:
        x, y = p
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel {tuple(p)} outside {self.width}x{self.height} image")
        return float(self.data[y, x])


class ContrastMap(LogImage):
    """A contour image; values lie in [0, M)."""

    def _validate(self, arr: np.ndarray) -> None:
        if not np.all((arr >= 0) & (arr < self.params.M)):
            raise ValueError(f"contrast values must lie in [0, {self.params.M})")


def relative_contrast(f: LogImage, p1, p2) -> float:
    """Signed contrast: (1/d) <x> (f(p1) <-> f(p2)), d the Euclidean distance."""
    p1, p2 = PixelCoord(*p1), PixelCoord(*p2)
    if p1 == p2:
        raise ValueError("relative contrast needs two distinct pixels")
    u, v = f[p1], f[p2]
    d = math.hypot(p1.x - p2.x, p1.y - p2.y)
    return lip_scalar_mul(1.0 / d, lip_sub(u, v, f.params), f.params)


def absolute_contrast(f: LogImage, p1, p2) -> float:
    return abs(relative_contrast(f, p1, p2))


def pixel_contrast(f: LogImage, p, nbhd: Neighborhood = EIGHT_NEIGHBORHOOD) -> float:
    """LIP mean of absolute contrasts between ``p`` and its in-bounds neighbours."""
    p = PixelCoord(*p)
    center = f[p]
    params = f.params
    terms = []
    for dx, dy, d in nbhd.offsets:
        x, y = p.x + dx, p.y + dy
        if 0 <= x < f.width and 0 <= y < f.height:
            terms.append(abs(lip_scalar_mul(1.0 / d, lip_sub(center, float(f.data[y, x]), params), params)))
    if not terms:
        return 0.0
    return lip_mean(np.array(terms), params)


def _contrast_rows(data: np.ndarray, lo: int, hi: int, nbhd: Neighborhood, params: LipParams) -> np.ndarray:
    """Contrast for rows [lo, hi) of ``data``; reads any rows it needs."""
    H, W = data.shape
    center = data[lo:hi]
    terms = np.empty((len(nbhd),) + center.shape)
    count = np.zeros(center.shape, dtype=np.int64)
    rows = np.arange(lo, hi)[:, None]
    cols = np.arange(W)[None, :]
    for i, (dx, dy, d) in enumerate(nbhd.offsets):
        ys, xs = rows + dy, cols + dx
        valid = (ys >= 0) & (ys < H) & (xs >= 0) & (xs < W)
        neighbor = np.where(valid, data[np.clip(ys, 0, H - 1), np.clip(xs, 0, W - 1)], center)
        # out-of-bounds slots compare the pixel with itself: exactly 0, the <+> neutral
        terms[i] = np.abs(lip_scalar_mul(1.0 / d, lip_sub(center, neighbor, params), params))
        count += valid
    return lip_mean(terms, params, count=count)


def contrast_map(f: LogImage, nbhd: Neighborhood = EIGHT_NEIGHBORHOOD, workers: int = 1) -> ContrastMap:
    """Contour image of ``f``: pixel contrast at every pixel.

    With ``workers > 1`` the rows are split into bands computed on a thread
    pool; every output pixel goes through the same element-wise arithmetic,
    so the result is bit-identical to the serial run.
    """
    H = f.height
    if workers <= 1 or H < 2:
        out = _contrast_rows(f.data, 0, H, nbhd, f.params)
    else:
        bounds = np.linspace(0, H, min(workers, H) + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                lambda lh: _contrast_rows(f.data, lh[0], lh[1], nbhd, f.params),
                zip(bounds[:-1], bounds[1:]),
            )
            out = np.vstack(list(parts))
    return ContrastMap(out, f.params)


def phi_domain_oracle_map(f: LogImage, nbhd: Neighborhood = EIGHT_NEIGHBORHOOD) -> ContrastMap:
    """Contour image computed in the real domain through the isomorphism.

    ``C(p) = phi_inv(mean_i |phi(f(p)) - phi(f(p_i))| / d_i)`` over in-bounds
    neighbours.  Shares no code with :func:`contrast_map` beyond phi/phi_inv.
    """
    params = f.params
    r = nbhd.radius
    g = np.pad(phi(f.data, params), r, mode="constant", constant_values=np.nan)
    H, W = f.data.shape
    center = g[r:r + H, r:r + W]
    terms = np.stack([
        np.abs(center - g[r + dy:r + dy + H, r + dx:r + dx + W]) / d
        for dx, dy, d in nbhd.offsets
    ])
    n = np.sum(~np.isnan(terms), axis=0)
    total = np.nansum(terms, axis=0)
    mean = np.divide(total, n, out=np.zeros_like(total), where=n > 0)
    return ContrastMap(phi_inv(mean, params), params)
