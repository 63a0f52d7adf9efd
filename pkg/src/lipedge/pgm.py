"""Portable graymap (PGM) reading and writing, ASCII P2 and binary P5."""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "GrayImage",
    "PGMError",
    "PGMHeaderError",
    "PGMMaxvalError",
    "PGMTruncatedError",
    "PGMSampleRangeError",
    "read_pgm",
    "write_pgm",
    "load_pgm",
    "save_pgm",
]


class PGMError(ValueError):
    pass


class PGMHeaderError(PGMError):
    pass


class PGMMaxvalError(PGMError):
    pass


class PGMTruncatedError(PGMError):
    pass


class PGMSampleRangeError(PGMError):
    pass


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Physical gray-level image; ``data`` has shape (height, width)."""

    data: np.ndarray
    maxval: int = 255

    def __post_init__(self) -> None:
        arr = np.asarray(self.data)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image data must be a non-empty 2-D grid, got shape {arr.shape}")
        if not 1 <= self.maxval <= 65535:
            raise ValueError(f"maxval must be in [1, 65535], got {self.maxval}")
        if arr.dtype.kind not in "iu":
            if not np.all(arr == np.round(arr)):
                raise ValueError("image samples must be integers")
        arr = arr.astype(np.int64)
        if arr.min() < 0 or arr.max() > self.maxval:
            raise ValueError(f"samples outside [0, {self.maxval}]")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.maxval == other.maxval and np.array_equal(self.data, other.data)


_TOKEN = re.compile(rb"\s*(?:#[^\n\r]*[\n\r]\s*)*")


def _header_tokens(buf: bytes, count: int) -> tuple[list[bytes], int]:
    """Pull ``count`` whitespace-separated tokens after the magic number.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last one.
    """
    pos = 2
    out = []
    for _ in range(count):
        m = _TOKEN.match(buf, pos)
        pos = m.end()
        start = pos
        while pos < len(buf) and buf[pos:pos + 1].isdigit():
            pos += 1
        if pos == start:
            raise PGMHeaderError(f"expected an integer in header at byte {start}")
        out.append(buf[start:pos])
        if pos < len(buf) and buf[pos:pos + 1] == b"#":
            # comment glued to the token
            pos = buf.find(b"\n", pos)
            if pos < 0:
                raise PGMHeaderError("header ends inside a comment")
        elif pos >= len(buf) or not buf[pos:pos + 1].isspace():
            raise PGMHeaderError(f"header token not followed by whitespace at byte {pos}")
    return out, pos + 1


def read_pgm(buf: bytes) -> GrayImage:
    magic = buf[:2]
    if magic not in (b"P2", b"P5"):
        raise PGMHeaderError(f"unsupported magic number {magic!r}")
    if len(buf) < 3 or not buf[2:3].isspace():
        raise PGMHeaderError("magic number not followed by whitespace")
    (w, h, mv), pos = _header_tokens(buf, 3)
    width, height, maxval = int(w), int(h), int(mv)
    if width < 1 or height < 1:
        raise PGMHeaderError(f"bad dimensions {width}x{height}")
    if maxval < 1 or maxval > 65535:
        raise PGMMaxvalError(f"maxval {maxval} outside [1, 65535]")
    n = width * height

    if magic == b"P5":
        dtype = np.dtype("u1") if maxval < 256 else np.dtype(">u2")
        need = n * dtype.itemsize
        raster = buf[pos:pos + need]
        if len(raster) < need:
            raise PGMTruncatedError(f"expected {need} raster bytes, found {len(raster)}")
        samples = np.frombuffer(raster, dtype=dtype).astype(np.int64)
    else:
        body = re.sub(rb"#[^\n\r]*", b"", buf[pos:])
        tokens = body.split()
        if len(tokens) < n:
            raise PGMTruncatedError(f"expected {n} samples, found {len(tokens)}")
        try:
            samples = np.array([int(t) for t in tokens[:n]], dtype=np.int64)
        except ValueError as exc:
            raise PGMHeaderError(f"non-integer sample: {exc}") from None
        if samples.min() < 0:
            raise PGMSampleRangeError("negative sample")

    if samples.max() > maxval:
        raise PGMSampleRangeError(f"sample {samples.max()} exceeds maxval {maxval}")
    return GrayImage(samples.reshape(height, width), maxval)


def write_pgm(img: GrayImage, fmt: str = "P5") -> bytes:
    header = f"{fmt}\n{img.width} {img.height}\n{img.maxval}\n".encode("ascii")
    if fmt == "P5":
        dtype = "u1" if img.maxval < 256 else ">u2"
        return header + img.data.astype(dtype).tobytes()
    if fmt == "P2":
        rows = (" ".join(map(str, row)) for row in img.data.tolist())
        return header + ("\n".join(rows) + "\n").encode("ascii")
    raise ValueError(f"unknown PGM format {fmt!r}")


def load_pgm(path) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def save_pgm(img: GrayImage, path, fmt: str = "P5") -> None:
    Path(path).write_bytes(write_pgm(img, fmt))
