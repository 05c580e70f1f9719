"""Coherence diagnostics for sensing/sparsity basis pairs.

Three quantities drive recovery performance here: the mutual coherence
(largest inner product between a sensing and a sparsity vector), the
modulus-coherence that replaces it once a random modulation is applied,
and, for the chirp acquisition chain, the product of the upsampled grid
size with the squared chain coherence. A Monte Carlo check of the
modulated-coherence tail bound rounds out the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._seeds import derive_seed
from .modulation import make_chirp_modulation, make_random_modulation, make_upsampler
from .operators import LinearOperator, dense_matrix, make_transform

DENSE_LIMIT = 4096


class UnsupportedSizeError(ValueError):
    """Raised when an entrywise computation would need too large a dense matrix."""


@dataclass(frozen=True)
class CoherenceReport:
    """Coherence summary for one acquisition chain.

    ``product_nw_mu2`` is the upsampled grid size times the squared
    coherence; it is the quantity whose growth or shrinkage with the
    chirp rate decides whether modulation pays off. ``argmax_pair``
    holds the (row, column) attaining the coherence, smallest indices
    first on ties (diagnostic only).
    """

    mu: float
    beta: float
    n_signal: int
    n_upsampled: int
    product_nw_mu2: float
    argmax_pair: tuple[int, int]


def _require_square_pair(sensing: LinearOperator, sparsity: LinearOperator) -> int:
    if sensing.in_dim != sensing.out_dim or sparsity.in_dim != sparsity.out_dim:
        raise ValueError("coherence needs square operators")
    if sensing.in_dim != sparsity.in_dim:
        raise ValueError(
            f"dimension mismatch: sensing is {sensing.in_dim}, sparsity is {sparsity.in_dim}"
        )
    return sensing.in_dim


def _max_entry_scan(analysis, synthesis, n_cols: int, n: int, weights=None):
    """Max |entry| of (analysis o diag(weights) o synthesis) scanned column-wise."""
    best = -1.0
    best_pair = (0, 0)
    basis = np.zeros(n, dtype=np.complex128)
    for j in range(n_cols):
        basis[j] = 1.0
        col = synthesis(basis)
        basis[j] = 0.0
        if weights is not None:
            col = col * weights
        mags = np.abs(analysis(col))
        i = int(np.argmax(mags))
        val = float(mags[i])
        if val > best or (val == best and (i, j) < best_pair):
            best = val
            best_pair = (i, j)
    return best, best_pair


def mutual_coherence(sensing: LinearOperator, sparsity: LinearOperator) -> float:
    """Largest |<sensing vector, sparsity vector>| over all pairs.

    Evaluated column by column with fast transforms (n synthesis plus n
    analysis applications), never materializing the Gram matrix.
    """
    n = _require_square_pair(sensing, sparsity)
    mu, _ = _max_entry_scan(sensing.adjoint, sparsity.forward, n, n)
    return mu


def modulated_coherence(sensing: LinearOperator, sparsity: LinearOperator, values: np.ndarray) -> float:
    """Mutual coherence after entrywise modulation by a unit-modulus sequence."""
    n = _require_square_pair(sensing, sparsity)
    if values.shape != (n,):
        raise ValueError("modulation sequence length must match the bases")
    mu, _ = _max_entry_scan(sensing.adjoint, sparsity.forward, n, n, weights=values)
    return mu


def modulus_coherence(sensing: LinearOperator, sparsity: LinearOperator) -> float:
    """Worst-case root sum of squared entry products between the bases.

    Needs entrywise access, so both bases are materialized densely;
    sizes above DENSE_LIMIT are rejected.
    """
    n = _require_square_pair(sensing, sparsity)
    if n > DENSE_LIMIT:
        raise UnsupportedSizeError(f"entrywise computation capped at {DENSE_LIMIT}, got {n}")
    phi_sq = np.abs(dense_matrix(sensing)) ** 2
    psi_sq = np.abs(dense_matrix(sparsity)) ** 2
    return float(np.sqrt((phi_sq.T @ psi_sq).max()))


def analog_coherence(sparsity_kind: str, n: int, w_bar: float) -> CoherenceReport:
    """Coherence of the chirp acquisition chain for one sparsity basis.

    Builds chirp, upsampler, and sparsity transform, then scans the
    n_up x n chain column by column; the maximum runs over all n_up
    frequency rows.
    """
    n = int(n)
    if n < 2 or n & (n - 1):
        raise ValueError("signal size must be an even power of two")
    chirp = make_chirp_modulation(w_bar, n)
    n_up = chirp.n_upsampled
    upsample = make_upsampler(n, n_up)
    sparsity = make_transform(sparsity_kind, n)
    values = chirp.values

    def modulated_column(alpha):
        return values * upsample.forward(sparsity.forward(alpha))

    analysis = lambda v: np.fft.fft(v, norm="ortho")

    best = -1.0
    best_pair = (0, 0)
    max_col_norm = 0.0
    basis = np.zeros(n, dtype=np.complex128)
    for j in range(n):
        basis[j] = 1.0
        col = modulated_column(basis)
        basis[j] = 0.0
        max_col_norm = max(max_col_norm, float(np.linalg.norm(col)))
        mags = np.abs(analysis(col))
        i = int(np.argmax(mags))
        val = float(mags[i])
        if val > best or (val == best and (i, j) < best_pair):
            best = val
            best_pair = (i, j)

    beta = max_col_norm / math.sqrt(n_up)
    return CoherenceReport(
        mu=best,
        beta=beta,
        n_signal=n,
        n_upsampled=n_up,
        product_nw_mu2=n_up * best**2,
        argmax_pair=best_pair,
    )


def tail_bound_violation_rate(
    sensing: LinearOperator,
    sparsity: LinearOperator,
    kind: str,
    epsilon: float,
    trials: int,
    seed: int = 0,
) -> float:
    """Monte Carlo check of the modulated-coherence tail bound.

    Draws independent random modulations and returns the fraction of
    trials whose modulated coherence exceeds
    ``beta * sqrt(2 log(2 n^2 / epsilon))``; the bound promises this
    fraction stays below epsilon.
    """
    n = _require_square_pair(sensing, sparsity)
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie strictly between 0 and 1")
    if trials < 1:
        raise ValueError("need at least one trial")
    beta = modulus_coherence(sensing, sparsity)
    threshold = beta * math.sqrt(2.0 * math.log(2.0 * n * n / epsilon))
    # The beta evaluation already forced dense materialization, so the
    # trials reuse the same matrices; one small product per draw.
    analysis = dense_matrix(sensing).conj().T
    columns = dense_matrix(sparsity)
    violations = 0
    for trial in range(trials):
        spec = make_random_modulation(kind, n, derive_seed(seed, trial))
        mu = np.abs(analysis @ (spec.values[:, None] * columns)).max()
        if mu > threshold:
            violations += 1
    return violations / trials
