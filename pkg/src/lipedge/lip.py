"""Bounded logarithmic gray-level algebra on the open interval E = (-M, M).

All operations accept Python floats or numpy arrays and broadcast like
ufuncs.  Inputs outside E raise :class:`DomainError`; the algebra never
clamps a caller's value silently.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "LipParams",
    "GrayCodec",
    "DEFAULT_PARAMS",
    "lip_add",
    "lip_sub",
    "lip_neg",
    "lip_scalar_mul",
    "lip_sum",
    "lip_mean",
    "phi",
    "phi_inv",
    "encode",
    "decode",
    "round_half_away",
]


class DomainError(ValueError):
    """A value lies outside the interval of logarithmic gray levels."""


@dataclass(frozen=True)
class LipParams:
    """Model constants: logarithmic bound ``M`` and physical maximum ``A``."""

    M: float = 1.0
    A: int = 255

    def __post_init__(self) -> None:
        if not np.isfinite(self.M) or self.M <= 0:
            raise ValueError(f"M must be a positive finite real, got {self.M!r}")
        if int(self.A) != self.A or self.A < 1:
            raise ValueError(f"A must be an integer >= 1, got {self.A!r}")


DEFAULT_PARAMS = LipParams()


def _check(x, params: LipParams, name: str = "value"):
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.abs(x) < params.M):
        raise DomainError(f"{name} outside (-{params.M}, {params.M})")
    return x


def _inside(x, M: float):
    # results that round onto +-M are pulled back to the nearest double inside E
    edge = np.nextafter(M, 0.0)
    return np.clip(x, -edge, edge)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def lip_add(u, v, params: LipParams = DEFAULT_PARAMS):
    """u <+> v = (u + v) / (1 + u*v / M**2)."""
    u = _check(u, params, "u")
    v = _check(v, params, "v")
    M = params.M
    return _out(_inside((u + v) / (1.0 + u * v / (M * M)), M))


def lip_sub(u, v, params: LipParams = DEFAULT_PARAMS):
    """u <-> v = (u - v) / (1 - u*v / M**2)."""
    u = _check(u, params, "u")
    v = _check(v, params, "v")
    M = params.M
    return _out(_inside((u - v) / (1.0 - u * v / (M * M)), M))


def lip_neg(u, params: LipParams = DEFAULT_PARAMS):
    """Additive opposite of ``u``; it is simply ``-u``."""
    return _out(-_check(u, params, "u"))


def _mag(q, M):
    # M (1 - q) / (1 + q) for q in [0, 1]; near q = 0 the result hugs M and
    # M - 2Mq/(1+q) rounds once instead of twice
    return np.where(q < 0.5, M - 2.0 * M * q / (1.0 + q), M * (1.0 - q) / (1.0 + q))


def lip_scalar_mul(lam, u, params: LipParams = DEFAULT_PARAMS):
    """lam <x> u = M * ((M+u)**lam - (M-u)**lam) / ((M+u)**lam + (M-u)**lam).

    Numerator and denominator are divided by the larger of the two powers,
    so the power actually evaluated lies in [0, 1] and nothing overflows.
    """
    u = _check(u, params, "u")
    lam = np.asarray(lam, dtype=np.float64)
    M = params.M
    plus, minus = M + u, M - u
    # divide through by the dominant power; its sign is the sign of lam*u
    grows = (lam * u) >= 0
    base = np.where(grows, minus / plus, plus / minus)
    with np.errstate(over="ignore", under="ignore"):
        r = base ** lam
    mag = _mag(r, M)
    return _out(_inside(np.where(grows, mag, -mag), M))


def _ratio(u, M):
    return (M - u) / (M + u)


def _from_ratio(r, M):
    # r = (M - s) / (M + s); the r > 1 branch uses 1/r so inf maps to -M cleanly
    with np.errstate(divide="ignore"):
        inv = 1.0 / r
    neg = r > 1
    mag = _mag(np.where(neg, inv, r), M)
    return _inside(np.where(neg, -mag, mag), M)


def _ratio_sum(values, M, axis):
    # (M - (u <+> v)) / (M + (u <+> v)) = ratio(u) * ratio(v); the product
    # carries the sum without rounding it onto +-M when it nears the bound
    values = np.moveaxis(values, axis, 0)
    r = np.ones(values.shape[1:])
    with np.errstate(over="ignore", under="ignore"):
        for v in values:
            r = r * _ratio(v, M)
    return r


def lip_sum(values, params: LipParams = DEFAULT_PARAMS, axis: int = 0):
    """<+>-sum of ``values`` along ``axis``, accumulated in index order.

    Equal to folding :func:`lip_add` over the axis, but evaluated on the
    complement ratio ``(M - u) / (M + u)``, which multiplies under ``<+>``.
    """
    values = _check(values, params, "values")
    return _out(_from_ratio(_ratio_sum(values, params.M, axis), params.M))


def lip_mean(values, params: LipParams = DEFAULT_PARAMS, axis: int = 0, count=None):
    """(1/n) <x> (<+>-sum of ``values``); ``count`` overrides n per element.

    Entries where ``count`` is 0 give 0.  Pad excluded slots with 0.0, the
    neutral element, so they do not disturb the sum.
    """
    values = _check(values, params, "values")
    M = params.M
    r = _ratio_sum(values, M, axis)
    n = np.asarray(values.shape[axis] if count is None else count, dtype=np.float64)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        scaled = r ** np.where(n > 0, 1.0 / np.where(n > 0, n, 1.0), 0.0)
    return _out(_from_ratio(scaled, M))


def phi(x, params: LipParams = DEFAULT_PARAMS):
    """Isomorphism E -> R: (M/2) * ln((M + x) / (M - x))."""
    x = _check(x, params, "x")
    M = params.M
    return _out(0.5 * M * np.log((M + x) / (M - x)))


def phi_inv(y, params: LipParams = DEFAULT_PARAMS):
    """Inverse isomorphism R -> E, the M-scaled hyperbolic tangent.

    Only ``exp(-2|y|/M)`` is ever formed, so large ``|y|`` saturates toward
    +-M instead of overflowing to inf/inf.
    """
    y = np.asarray(y, dtype=np.float64)
    M = params.M
    with np.errstate(over="ignore", under="ignore"):
        t = -2.0 * np.abs(y) / M
        e = np.expm1(t)
        # small |y|: expm1 keeps relative precision; large |y|: one rounding near M
        mag = np.where(t > -1.0, M * -e / (2.0 + e), _mag(np.exp(t), M))
    return _out(_inside(np.copysign(mag, y), M))


def round_half_away(x):
    """Round to nearest integer, ties away from zero (numpy rounds ties to even)."""
    x = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


@dataclass(frozen=True)
class GrayCodec:
    """Affine map between physical levels {0..A} and E.

    ``t(l) = M * (2l - A) / (A + 1)`` keeps both endpoints a margin of
    ``M / (A + 1)`` away from the singular bounds +-M.
    """

    params: LipParams = DEFAULT_PARAMS

    def encode(self, level):
        lv = np.asarray(level)
        if lv.dtype.kind not in "iu":
            if lv.dtype.kind != "f" or not np.all(lv == np.floor(lv)):
                raise ValueError("physical levels must be integers")
        if np.any(lv < 0) or np.any(lv > self.params.A):
            raise ValueError(f"physical level outside [0, {self.params.A}]")
        M, A = self.params.M, self.params.A
        return _out(M * (2.0 * lv.astype(np.float64) - A) / (A + 1))

    def decode(self, v):
        v = _check(v, self.params, "v")
        M, A = self.params.M, self.params.A
        lv = np.clip(round_half_away((v * (A + 1) / M + A) / 2.0), 0, A).astype(np.int64)
        return int(lv) if lv.ndim == 0 else lv


def encode(level, codec: GrayCodec = GrayCodec()):
    return codec.encode(level)


def decode(v, codec: GrayCodec = GrayCodec()):
    return codec.decode(v)
