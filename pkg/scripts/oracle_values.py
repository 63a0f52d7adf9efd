"""Recompute the frozen constants used by the test suite at 40 digits.

    python scripts/oracle_values.py
"""
from mpmath import mp, mpf, log, sqrt, tanh

mp.dps = 40
M, A = mpf(1), 255


def phi(x):
    return M / 2 * log((M + x) / (M - x))


def phi_inv(y):
    return M * tanh(y / M)


def encode(level):
    return M * (2 * level - A) / (A + 1)


half = mpf("0.5")
rows = {
    "phi(0.5)": phi(half),
    "(1/sqrt2) <x> 0.5": phi_inv(phi(half) / sqrt(2)),
    "3x3 centre-bright, centre 0.5": phi_inv((4 * phi(half) + 4 * phi(half) / sqrt(2)) / 8),
    "2x2 corner 0.5, three neighbours": phi_inv((2 * phi(half) + phi(half) / sqrt(2)) / 3),
}
for a, b in [(10, 20), (120, 130)]:
    rows[f"C_A physical ({a}, {b}), d=1"] = phi_inv(abs(phi(encode(a)) - phi(encode(b))))
d = abs(phi(encode(192)) - phi(encode(64)))
rows["5x5 fixture 192 on 64, centre contrast"] = phi_inv((4 * d + 4 * d / sqrt(2)) / 8)

width = max(map(len, rows))
for name, value in rows.items():
    print(f"{name:<{width}}  {mp.nstr(value, 22)}")
