"""Matrix-free orthonormal transforms and operator algebra.

Every acquisition matrix in this package is assembled from a handful of
fast unitary transforms (Fourier, Walsh-Hadamard, Haar, identity) plus
three combinators: composition, row restriction, and diagonal scaling
(the latter lives in :mod:`spreadcs.modulation`). Operators are plain
callable pairs (forward/adjoint) acting on 1-D complex vectors; nothing
is ever materialized as a dense matrix except for small test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TRANSFORM_KINDS = ("fourier", "hadamard", "haar", "dirac")

# Bases whose dense entries all share magnitude n**-0.5. For these the
# modulus-coherence is n**-0.5 regardless of the sparsity basis.
UNIVERSAL_KINDS = ("fourier", "hadamard")

INDEX_LAWS = ("iid_uniform", "uniform_without_replacement")

_SQRT2 = np.sqrt(2.0)
_SEED_MASK = (1 << 64) - 1


def is_universal(kind: str) -> bool:
    """True when every dense entry of the basis has equal magnitude."""
    return kind in UNIVERSAL_KINDS


class LinearOperator:
    """Matrix-free linear map with explicit forward and adjoint.

    Parameters
    ----------
    in_dim, out_dim : int
        Input and output vector lengths.
    forward, adjoint : callable
        Act on 1-D arrays of the declared lengths and allocate their
        own outputs. Both must be deterministic and side effect free.
    label : str
        Tag used in diagnostics and error messages.
    unitary : bool
        Set when the operator is square with ``adjoint`` its exact
        inverse. Propagated by :func:`compose` and used by the solver
        to pick a closed-form projection.
    """

    def __init__(self, in_dim, out_dim, forward, adjoint, label="", unitary=False):
        in_dim = int(in_dim)
        out_dim = int(out_dim)
        if in_dim < 1 or out_dim < 1:
            raise ValueError(f"operator dimensions must be positive, got {in_dim}x{out_dim}")
        self.in_dim = in_dim
        self.out_dim = out_dim
        self._forward = forward
        self._adjoint = adjoint
        self.label = label
        self.unitary = bool(unitary) and in_dim == out_dim

    def forward(self, x):
        x = np.asarray(x)
        if x.shape != (self.in_dim,):
            raise ValueError(f"{self.label or 'operator'}: forward expects shape ({self.in_dim},), got {x.shape}")
        return self._forward(x)

    def adjoint(self, y):
        y = np.asarray(y)
        if y.shape != (self.out_dim,):
            raise ValueError(f"{self.label or 'operator'}: adjoint expects shape ({self.out_dim},), got {y.shape}")
        return self._adjoint(y)

    @property
    def H(self) -> "LinearOperator":
        """The adjoint as an operator (forward and adjoint swapped)."""
        return LinearOperator(
            self.out_dim,
            self.in_dim,
            self._adjoint,
            self._forward,
            label=f"{self.label}^*",
            unitary=self.unitary,
        )

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return compose(self, other)

    def __repr__(self):
        return f"LinearOperator({self.label!r}, {self.out_dim}x{self.in_dim})"


@dataclass(frozen=True)
class IndexSet:
    """A reproducible draw of measurement row indices (0-based).

    ``law`` is either ``iid_uniform`` (with replacement, the default
    sampling model) or ``uniform_without_replacement``. Regenerating
    with the same ``(law, seed, m, n_total)`` is bit-identical.
    """

    indices: np.ndarray = field(compare=False)
    law: str
    seed: int
    n_total: int

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        if idx.ndim != 1 or idx.size < 1:
            raise ValueError("index set must be a non-empty 1-D sequence")
        if idx.min() < 0 or idx.max() >= self.n_total:
            raise ValueError(f"indices out of range [0, {self.n_total})")
        if self.law not in INDEX_LAWS:
            raise ValueError(f"unknown index law {self.law!r}")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return self.indices.size


def sample_indices(n_total: int, m: int, law: str = "iid_uniform", seed: int = 0) -> IndexSet:
    """Draw m row indices from {0, ..., n_total-1} under the given law."""
    if n_total < 1 or m < 1:
        raise ValueError("n_total and m must be positive")
    if law not in INDEX_LAWS:
        raise ValueError(f"unknown index law {law!r}")
    rng = np.random.default_rng(seed & _SEED_MASK)
    if law == "iid_uniform":
        idx = rng.integers(0, n_total, size=m, dtype=np.int64)
    else:
        if m > n_total:
            raise ValueError(f"cannot draw {m} distinct indices from {n_total}")
        idx = rng.choice(n_total, size=m, replace=False).astype(np.int64)
    return IndexSet(indices=idx, law=law, seed=seed, n_total=n_total)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _fwht(x):
    # Sylvester (natural) ordering, unnormalized butterfly.
    y = np.array(x, dtype=np.result_type(x.dtype, np.float64), copy=True)
    n = y.size
    h = 1
    while h < n:
        y = y.reshape(-1, 2 * h)
        left = y[:, :h].copy()
        right = y[:, h:].copy()
        y[:, :h] = left + right
        y[:, h:] = left - right
        y = y.reshape(n)
        h *= 2
    return y


def _haar_analysis(x):
    out = np.array(x, dtype=np.result_type(x.dtype, np.float64), copy=True)
    length = out.size
    while length > 1:
        half = length // 2
        evens = out[0:length:2].copy()
        odds = out[1:length:2].copy()
        out[:half] = (evens + odds) / _SQRT2
        out[half:length] = (evens - odds) / _SQRT2
        length = half
    return out


def _haar_synthesis(coeffs):
    out = np.array(coeffs, dtype=np.result_type(coeffs.dtype, np.float64), copy=True)
    n = out.size
    length = 2
    while length <= n:
        half = length // 2
        approx = out[:half].copy()
        detail = out[half:length].copy()
        out[0:length:2] = (approx + detail) / _SQRT2
        out[1:length:2] = (approx - detail) / _SQRT2
        length *= 2
    return out


def make_transform(kind: str, n: int) -> LinearOperator:
    """Unitary transform of size n.

    Forward is synthesis (coefficients -> signal), adjoint is analysis
    (signal -> coefficients). Fourier uses the unitary DFT, Hadamard
    the 1/sqrt(n)-scaled natural-order Walsh-Hadamard transform, Haar
    the fully decimated orthonormal wavelet pyramid with log2(n)
    levels (coarsest scaling coefficient first), and Dirac the
    identity. Hadamard and Haar require n to be a power of two.
    """
    n = int(n)
    if n < 1:
        raise ValueError("transform size must be >= 1")
    if kind == "fourier":
        return LinearOperator(
            n, n,
            lambda a: np.fft.ifft(a, norm="ortho"),
            lambda x: np.fft.fft(x, norm="ortho"),
            label=f"fourier{n}", unitary=True,
        )
    if kind == "hadamard":
        if not _is_power_of_two(n):
            raise ValueError(f"hadamard size must be a power of 2, got {n}")
        scale = 1.0 / np.sqrt(n)
        apply_wht = lambda v: _fwht(v) * scale
        return LinearOperator(n, n, apply_wht, apply_wht, label=f"hadamard{n}", unitary=True)
    if kind == "haar":
        if not _is_power_of_two(n):
            raise ValueError(f"haar size must be a power of 2, got {n}")
        return LinearOperator(n, n, _haar_synthesis, _haar_analysis, label=f"haar{n}", unitary=True)
    if kind == "dirac":
        copy_vec = lambda v: np.array(v, copy=True)
        return LinearOperator(n, n, copy_vec, copy_vec, label=f"dirac{n}", unitary=True)
    raise ValueError(f"unknown transform kind {kind!r}")


def identity(n: int) -> LinearOperator:
    return make_transform("dirac", n)


class RestrictedOperator(LinearOperator):
    """Row restriction of another operator.

    Keeps a handle on the base operator and the selected row indices so
    downstream code (the solver) can exploit structure, e.g. that the
    base is unitary.
    """

    def __init__(self, base: LinearOperator, indices: np.ndarray, label=""):
        self.base = base
        self.indices = indices

        def fwd(x):
            return base.forward(x)[indices]

        def adj(y):
            buf = np.zeros(base.out_dim, dtype=np.complex128)
            np.add.at(buf, indices, y)
            return base.adjoint(buf)

        super().__init__(base.in_dim, indices.size, fwd, adj, label=label)
        # Rows of a unitary matrix are orthonormal iff no index repeats.
        self.row_orthonormal = bool(base.unitary and np.unique(indices).size == indices.size)


def restrict_rows(op: LinearOperator, omega) -> LinearOperator:
    """Keep only the output rows selected by omega, in omega order.

    ``omega`` is an :class:`IndexSet` or a sequence of 0-based row
    indices into ``op``'s output; duplicates are kept and the adjoint
    scatter-adds repeated entries back onto the same row.
    """
    indices = omega.indices if isinstance(omega, IndexSet) else np.asarray(omega, dtype=np.int64)
    if indices.ndim != 1 or indices.size < 1:
        raise ValueError("row selection must be a non-empty 1-D sequence")
    if indices.min() < 0 or indices.max() >= op.out_dim:
        raise ValueError(f"row indices out of range [0, {op.out_dim})")
    return RestrictedOperator(op, indices, label=f"{op.label}[{indices.size} rows]")


def compose(outer: LinearOperator, inner: LinearOperator) -> LinearOperator:
    """Operator composition outer(inner(x)); adjoints compose in reverse."""
    if inner.out_dim != outer.in_dim:
        raise ValueError(
            f"cannot compose {outer.label or 'outer'} ({outer.out_dim}x{outer.in_dim}) with "
            f"{inner.label or 'inner'} ({inner.out_dim}x{inner.in_dim})"
        )
    return LinearOperator(
        inner.in_dim,
        outer.out_dim,
        lambda x: outer.forward(inner.forward(x)),
        lambda y: inner.adjoint(outer.adjoint(y)),
        label=f"({outer.label} . {inner.label})",
        unitary=outer.unitary and inner.unitary,
    )


def matrix_operator(mat: np.ndarray, label: str = "dense") -> LinearOperator:
    """Wrap a dense matrix; mostly for oracles and small experiments."""
    mat = np.asarray(mat)
    if mat.ndim != 2:
        raise ValueError("matrix_operator expects a 2-D array")
    out_dim, in_dim = mat.shape
    conj_t = mat.conj().T
    return LinearOperator(in_dim, out_dim, lambda x: mat @ x, lambda y: conj_t @ y, label=label)


def dense_matrix(op: LinearOperator) -> np.ndarray:
    """Materialize op column by column. Cost: in_dim forward applies."""
    cols = np.zeros((op.out_dim, op.in_dim), dtype=np.complex128)
    basis = np.zeros(op.in_dim, dtype=np.complex128)
    for j in range(op.in_dim):
        basis[j] = 1.0
        cols[:, j] = op.forward(basis)
        basis[j] = 0.0
    return cols


def dot_test(op: LinearOperator, seed: int = 0) -> float:
    """Relative adjoint-consistency error |<Ax,y> - <x,A*y>| on random data."""
    rng = np.random.default_rng(seed & _SEED_MASK)
    x = rng.standard_normal(op.in_dim) + 1j * rng.standard_normal(op.in_dim)
    y = rng.standard_normal(op.out_dim) + 1j * rng.standard_normal(op.out_dim)
    lhs = np.vdot(y, op.forward(x))
    rhs = np.vdot(op.adjoint(y), x)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return abs(lhs - rhs) / scale
