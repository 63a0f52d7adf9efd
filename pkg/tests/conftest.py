import numpy as np
import pytest

from lipedge.pgm import GrayImage, save_pgm


@pytest.fixture
def center_bright_pgm(tmp_path):
    """5x5 physical image: 192 at the centre, 64 elsewhere."""
    a = np.full((5, 5), 64)
    a[2, 2] = 192
    path = tmp_path / "bright.pgm"
    save_pgm(GrayImage(a), path)
    return path


@pytest.fixture
def constant_pgm(tmp_path):
    path = tmp_path / "flat.pgm"
    save_pgm(GrayImage(np.full((8, 8), 90)), path)
    return path


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
