"""Unit-modulus modulations and the band-limited upsampler.

Shows the two random sequences, the deterministic chirp with its grid
growth, and how the zero-padding upsampler keeps spectra confined while
acting as an exact isometry.
"""

import numpy as np

from spreadcs import (
    make_chirp_modulation,
    make_random_modulation,
    make_upsampler,
    modulation_operator,
    upsampled_size,
)

rng = np.random.default_rng(1)

print("== random spreading sequences ==")
rad = make_random_modulation("rademacher", 12, seed=5)
ste = make_random_modulation("steinhaus", 12, seed=5)
print("rademacher:", np.round(rad.values.real, 0))
print("steinhaus phases/pi:", np.round(np.angle(ste.values) / np.pi, 3))

print()
print("== chirp on the upsampled grid ==")
for w_bar in (0.0, 0.1, 0.25, 0.5):
    print(f"rate {w_bar:4.2f}: grid {1024} -> {upsampled_size(w_bar, 1024)}")
chirp = make_chirp_modulation(0.5, 16)
print("unit modulus:", np.abs(chirp.values).min(), "-", np.abs(chirp.values).max())
print("phase symmetry c[k] == c[n-k]:", np.allclose(chirp.values[1:], chirp.values[1:][::-1]))

print()
print("== modulation preserves energy ==")
x = rng.standard_normal(chirp.n_upsampled) + 1j * rng.standard_normal(chirp.n_upsampled)
op = modulation_operator(chirp)
print("norm in/out:", np.linalg.norm(x), np.linalg.norm(op.forward(x)))

print()
print("== upsampler: isometric, band-confined ==")
n, n_up = 16, 24
up = make_upsampler(n, n_up)
x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
lifted = up.forward(x)
spectrum = np.fft.fftshift(np.fft.fft(lifted, norm="ortho"))
offset = (n_up - n) // 2
print("U*U x == x:", np.allclose(up.adjoint(lifted), x))
print("energy outside the original band:", float(np.abs(spectrum[:offset]).sum() + np.abs(spectrum[offset + n:]).sum()))
