import json
import subprocess
import sys

import numpy as np
import pytest

from lipedge.cli import (
    EXIT_BAD_M,
    EXIT_MALFORMED,
    EXIT_MAXVAL,
    EXIT_UNREADABLE,
    EXIT_UNWRITABLE,
    EXIT_USAGE,
    main,
)
from lipedge.pgm import GrayImage, load_pgm, save_pgm

# frozen from 40-digit mpmath: d = |phi(t(192)) - phi(t(64))|, phi_inv((4d + 4d/sqrt2) / 8)
BRIGHT_CENTER_CONTRAST = 0.73418558414293353861


def test_constant_all_methods(constant_pgm, tmp_path):
    out = tmp_path / "out"
    assert main([str(constant_pgm), "--out", str(out), "--stats"]) == 0
    for method in ("lip", "gradient", "laplace"):
        img = load_pgm(out / f"flat_{method}.pgm")
        assert img.data.shape == (8, 8)
        assert np.all(img.data == 0)
    stats = json.loads((out / "flat_stats.json").read_text())
    assert sorted(stats) == ["gradient", "laplace", "lip"]
    for entry in stats.values():
        assert entry["min"] == entry["max"] == entry["mean"] == 0
        assert (entry["width"], entry["height"]) == (8, 8)
        assert entry["M"] == 1.0 and entry["A"] == 255


def test_center_bright_lip(center_bright_pgm, tmp_path):
    assert main([str(center_bright_pgm), "--method", "lip", "--out", str(tmp_path), "--stats"]) == 0
    img = load_pgm(tmp_path / "bright_lip.pgm")
    assert img.data[2, 2] == 255
    assert np.count_nonzero(img.data == 255) == 1
    assert not (tmp_path / "bright_gradient.pgm").exists()
    raw = (tmp_path / "bright_stats.json").read_bytes()
    stats = json.loads(raw)
    assert stats["lip"]["max"] == pytest.approx(BRIGHT_CENTER_CONTRAST, abs=1e-12)
    assert stats["lip"]["neighborhood_size"] == 8
    assert raw == json.dumps(stats, sort_keys=True, indent=2).encode() + b"\n"


def test_absolute_normalization(center_bright_pgm, tmp_path):
    assert main([str(center_bright_pgm), "--method", "lip", "--normalize", "absolute",
                 "--out", str(tmp_path)]) == 0
    img = load_pgm(tmp_path / "bright_lip.pgm")
    assert img.data[2, 2] == round(255 * BRIGHT_CENTER_CONTRAST)


def test_m_bound_changes_lip_only(center_bright_pgm, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main([str(center_bright_pgm), "--stats", "--out", str(a)])
    main([str(center_bright_pgm), "--stats", "--m-bound", "3", "--out", str(b)])
    sa = json.loads((a / "bright_stats.json").read_text())
    sb = json.loads((b / "bright_stats.json").read_text())
    assert sb["lip"]["M"] == 3.0
    assert sb["lip"]["max"] == pytest.approx(3 * sa["lip"]["max"], rel=1e-12)
    assert sa["gradient"]["max"] == sb["gradient"]["max"]


def test_workers_byte_identical(tmp_path):
    rng = np.random.default_rng(5)
    src = tmp_path / "noise.pgm"
    save_pgm(GrayImage(rng.integers(0, 256, (31, 17))), src)
    outs = []
    for w in ("1", "4"):
        d = tmp_path / w
        assert main([str(src), "--stats", "--workers", w, "--out", str(d)]) == 0
        outs.append({p.name: p.read_bytes() for p in d.iterdir()})
    assert outs[0] == outs[1]


@pytest.mark.parametrize("args, code", [
    (["--m-bound", "0"], EXIT_BAD_M),
    (["--m-bound", "-2"], EXIT_BAD_M),
    (["--m-bound", "nan"], EXIT_BAD_M),
    (["--method", "sobel"], EXIT_USAGE),
    (["--method", ","], EXIT_USAGE),
])
def test_bad_flags(center_bright_pgm, tmp_path, args, code):
    assert main([str(center_bright_pgm), "--out", str(tmp_path), *args]) == code


def test_unreadable_input(tmp_path, capsys):
    assert main([str(tmp_path / "missing.pgm")]) == EXIT_UNREADABLE
    assert "cannot read" in capsys.readouterr().err


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P5\n4 4\n255\n\x00")
    assert main([str(bad), "--out", str(tmp_path)]) == EXIT_MALFORMED
    assert "malformed" in capsys.readouterr().err


def test_maxval_mismatch(tmp_path):
    src = tmp_path / "deep.pgm"
    save_pgm(GrayImage(np.zeros((2, 2), int), maxval=1023), src)
    assert main([str(src), "--out", str(tmp_path)]) == EXIT_MAXVAL


def test_unwritable_output(center_bright_pgm, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main([str(center_bright_pgm), "--out", str(blocker / "sub")]) == EXIT_UNWRITABLE


def test_console_entry_point(center_bright_pgm, tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "lipedge.cli", str(center_bright_pgm), "--method", "gradient,laplace",
         "--out", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert sorted(p.name for p in tmp_path.glob("bright_*.pgm")) == ["bright_gradient.pgm", "bright_laplace.pgm"]
