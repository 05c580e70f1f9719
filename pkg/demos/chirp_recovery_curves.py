"""Recovery curves for the chirp acquisition chain (small scale).

For Dirac-sparse signals the required number of measurements creeps up
slightly with the chirp rate; for Fourier-sparse signals the chirp is
the difference between needing nearly all rows and needing a few dozen.
"""

from spreadcs import recovery_curve

N, S, TRIALS = 128, 5, 15
M_GRID = [10, 15, 20, 30, 45, 65, 95, 128]


def curve(report, w_bar):
    cells = sorted((c for c in report.cells if c.w_bar == w_bar), key=lambda c: c.m)
    return " ".join(f"{c.probability:4.2f}" for c in cells)


print(f"N = {N}, s = {S}, {TRIALS} trials, m grid {M_GRID}")
for sparsity in ("dirac", "fourier"):
    print(f"\n== {sparsity}-sparse signals ==")
    report = recovery_curve(sparsity, N, S, [0.0, 0.25, 0.5], m_grid=M_GRID, trials=TRIALS, seed=33, workers=2)
    for w_bar in (0.0, 0.25, 0.5):
        print(f"rate {w_bar:4.2f}: {curve(report, w_bar)}")
