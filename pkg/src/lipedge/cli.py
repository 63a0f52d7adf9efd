"""``lipedge`` command: contour images of a PGM file by LIP contrast and classical operators."""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classical, contrast
from .lip import GrayCodec, LipParams
from .pgm import PGMError, load_pgm, write_pgm

METHODS = ("lip", "gradient", "laplace")
A_LEVEL = 255

# exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNREADABLE = 3
EXIT_MALFORMED = 4
EXIT_MAXVAL = 5
EXIT_UNWRITABLE = 6
EXIT_BAD_M = 7


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    input: Path
    out_dir: Path = Path(".")
    methods: tuple[str, ...] = METHODS
    M: float = 1.0
    normalize: str = "max"
    emit_stats: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.methods:
            raise CliError("at least one method must be selected", EXIT_USAGE)
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise CliError(f"unknown method(s): {', '.join(bad)}", EXIT_USAGE)
        if not (math.isfinite(self.M) and self.M > 0):
            raise CliError(f"invalid M bound {self.M!r}: must be a positive finite number", EXIT_BAD_M)


def compute_maps(img, params: LipParams, methods, workers: int = 1) -> dict:
    """Raw (pre-display) map for each requested method."""
    maps = {}
    for method in methods:
        if method == "lip":
            f = contrast.LogImage.from_gray(img, params)
            maps[method] = contrast.contrast_map(f, workers=workers)
        elif method == "gradient":
            maps[method] = classical.gradient_magnitude(img)
        else:
            maps[method] = classical.laplace_response(img)
    return maps


def emit_stats(maps: dict, params: LipParams) -> bytes:
    report = {}
    for method, m in maps.items():
        data = m.data
        lip = method == "lip"
        report[method] = {
            "min": float(data.min()),
            "max": float(data.max()),
            "mean": float(data.mean()),
            "width": int(data.shape[1]),
            "height": int(data.shape[0]),
            "M": params.M,
            "A": params.A,
            "border_policy": contrast.BORDER_POLICY if lip else classical.BORDER_POLICY,
            "neighborhood_size": len(contrast.EIGHT_NEIGHBORHOOD) if lip else 9,
        }
    return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode("utf-8")


def run(config: RunConfig) -> list[Path]:
    """Execute one run; returns the written paths or raises :class:`CliError`."""
    params = LipParams(M=config.M, A=A_LEVEL)
    codec = GrayCodec(params)
    try:
        img = load_pgm(config.input)
    except PGMError as exc:
        raise CliError(f"malformed PGM {config.input}: {exc}", EXIT_MALFORMED) from None
    except OSError as exc:
        raise CliError(f"cannot read {config.input}: {exc.strerror or exc}", EXIT_UNREADABLE) from None
    if img.maxval != params.A:
        raise CliError(f"maxval {img.maxval} of {config.input} differs from A={params.A}", EXIT_MAXVAL)

    maps = compute_maps(img, params, config.methods, config.workers)
    outputs = {}
    for method, m in maps.items():
        mode = config.normalize if method == "lip" else "max"
        outputs[f"{config.input.stem}_{method}.pgm"] = write_pgm(classical.normalize_for_display(m, mode, codec))
    if config.emit_stats:
        outputs[f"{config.input.stem}_stats.json"] = emit_stats(maps, params)

    written = []
    try:
        config.out_dir.mkdir(parents=True, exist_ok=True)
        for name, blob in outputs.items():
            path = config.out_dir / name
            path.write_bytes(blob)
            written.append(path)
    except OSError as exc:
        raise CliError(f"cannot write to {config.out_dir}: {exc.strerror or exc}", EXIT_UNWRITABLE) from None
    return written


def _parse_methods(text: str) -> tuple[str, ...]:
    if text == "all":
        return METHODS
    return tuple(dict.fromkeys(m.strip() for m in text.split(",") if m.strip()))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lipedge", description=__doc__)
    p.add_argument("input", type=Path, help="input PGM (P2 or P5, maxval 255)")
    p.add_argument("--method", default="all", help="comma list of lip,gradient,laplace, or 'all' (default)")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory (default: current)")
    p.add_argument("--m-bound", type=float, default=1.0, help="logarithmic bound M > 0 (default 1.0)")
    p.add_argument("--normalize", choices=("max", "absolute"), default="max",
                   help="display scaling of the lip map (classical maps always use max)")
    p.add_argument("--stats", action="store_true", help="also write <stem>_stats.json")
    p.add_argument("--workers", type=int, default=1, help="threads for the lip contrast map")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            input=args.input,
            out_dir=args.out,
            methods=_parse_methods(args.method),
            M=args.m_bound,
            normalize=args.normalize,
            emit_stats=args.stats,
            workers=max(1, args.workers),
        )
        written = run(config)
    except CliError as exc:
        print(f"lipedge: error: {exc}", file=sys.stderr)
        return exc.code
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
