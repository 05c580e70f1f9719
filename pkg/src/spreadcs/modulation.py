"""Unit-modulus pre-modulation sequences and the band-limited upsampler.

Random Rademacher/Steinhaus sequences implement the digital spreading
step; the deterministic linear chirp implements its analog counterpart
and lives on an upsampled grid so the widened band is represented
without aliasing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .operators import LinearOperator

MODULATION_KINDS = ("rademacher", "steinhaus", "chirp", "none")

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class ModulationSpec:
    """A unit-modulus diagonal sequence plus its grid metadata.

    ``values`` has length ``n_upsampled``; for every kind except
    ``chirp`` the grid is the signal grid (``n_upsampled == n_signal``).
    Rebuilding from the defining parameters is bit-identical.
    """

    kind: str
    n_signal: int
    n_upsampled: int
    chirp_rate: float
    seed: int | None
    values: np.ndarray = field(compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in MODULATION_KINDS:
            raise ValueError(f"unknown modulation kind {self.kind!r}")
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.n_upsampled,):
            raise ValueError("values length must equal n_upsampled")
        object.__setattr__(self, "values", vals)


def upsampled_size(w_bar: float, n: int) -> int:
    """Smallest even integer >= (1 + w_bar) * n."""
    n_up = math.ceil((1.0 + abs(w_bar)) * n)
    return n_up + (n_up % 2)


def make_random_modulation(kind: str, n: int, seed: int) -> ModulationSpec:
    """Seeded i.i.d. unit-modulus sequence on the signal grid.

    ``rademacher`` draws +-1 entries, ``steinhaus`` complex phases
    uniform on the unit circle.
    """
    if kind not in ("rademacher", "steinhaus"):
        raise ValueError(f"random modulation kind must be rademacher or steinhaus, got {kind!r}")
    n = int(n)
    if n < 1:
        raise ValueError("modulation length must be >= 1")
    rng = np.random.default_rng(seed & _SEED_MASK)
    if kind == "rademacher":
        values = (2.0 * rng.integers(0, 2, size=n) - 1.0).astype(np.complex128)
    else:
        values = np.exp(2j * np.pi * rng.random(n))
    return ModulationSpec(kind=kind, n_signal=n, n_upsampled=n, chirp_rate=0.0, seed=seed, values=values)


def make_chirp_modulation(w_bar: float, n: int) -> ModulationSpec:
    """Deterministic linear chirp sampled on the upsampled grid.

    The phase is quadratic across the centered field of view:
    ``c_k = exp(i pi w_bar n (k / n_up - 1/2)^2)``. Rate 0 gives the
    all-ones sequence on the original grid.
    """
    n = int(n)
    if n < 2 or n % 2:
        raise ValueError("chirp modulation needs an even signal length >= 2")
    if w_bar < 0:
        raise ValueError("chirp rate must be >= 0 (the sign convention is fixed)")
    n_up = upsampled_size(w_bar, n)
    k = np.arange(n_up)
    phase = np.pi * w_bar * n * (k / n_up - 0.5) ** 2
    return ModulationSpec(
        kind="chirp", n_signal=n, n_upsampled=n_up, chirp_rate=float(w_bar), seed=None,
        values=np.exp(1j * phase),
    )


def no_modulation(n: int) -> ModulationSpec:
    n = int(n)
    if n < 1:
        raise ValueError("modulation length must be >= 1")
    return ModulationSpec(
        kind="none", n_signal=n, n_upsampled=n, chirp_rate=0.0, seed=None,
        values=np.ones(n, dtype=np.complex128),
    )


def modulation_operator(spec: ModulationSpec) -> LinearOperator:
    """Diagonal operator multiplying entrywise by the sequence."""
    values = spec.values
    conj_values = values.conj()
    return LinearOperator(
        spec.n_upsampled,
        spec.n_upsampled,
        lambda x: x * values,
        lambda y: y * conj_values,
        label=f"{spec.kind}-diag{spec.n_upsampled}",
        unitary=True,
    )


def make_upsampler(n: int, n_up: int) -> LinearOperator:
    """Fourier zero-padding isometry from an n grid to an n_up grid.

    Embeds the n centered frequency bins (-n/2 ... n/2-1) into the
    centered n_up-bin spectrum and zeroes the rest, so the output
    spectrum is confined to the original band and U* U = I. The
    Nyquist bin is carried over as a single bin. Both sizes must be
    even and n_up >= n.
    """
    n = int(n)
    n_up = int(n_up)
    if n < 2 or n_up < 2 or n % 2 or n_up % 2:
        raise ValueError("upsampler sizes must be even and >= 2")
    if n_up < n:
        raise ValueError(f"cannot upsample from {n} to smaller grid {n_up}")
    offset = (n_up - n) // 2

    def fwd(x):
        spectrum = np.fft.fftshift(np.fft.fft(x, norm="ortho"))
        padded = np.zeros(n_up, dtype=np.complex128)
        padded[offset:offset + n] = spectrum
        return np.fft.ifft(np.fft.ifftshift(padded), norm="ortho")

    def adj(y):
        spectrum = np.fft.fftshift(np.fft.fft(y, norm="ortho"))
        return np.fft.ifft(np.fft.ifftshift(spectrum[offset:offset + n]), norm="ortho")

    return LinearOperator(n, n_up, fwd, adj, label=f"upsample{n}->{n_up}", unitary=n == n_up)
