"""Shared test utilities: instance builders and the exhaustive-support oracle."""

from itertools import combinations

import numpy as np

from spreadcs.modulation import make_random_modulation, modulation_operator
from spreadcs.operators import compose, make_transform, restrict_rows, sample_indices


def random_complex(n, seed=0):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def sparse_vector(n, s, rng):
    support = rng.choice(n, s, replace=False)
    alpha = np.zeros(n, dtype=complex)
    alpha[support] = rng.random(s) * np.exp(2j * np.pi * rng.random(s))
    return alpha


def modulated_fourier_instance(n, s, m, seed, law="uniform_without_replacement", sparsity="dirac"):
    """One seeded basis-pursuit instance over a Rademacher-modulated Fourier chain."""
    rng = np.random.default_rng(seed)
    alpha = sparse_vector(n, s, rng)
    spec = make_random_modulation("rademacher", n, int(rng.integers(0, 2**32)))
    chain = compose(
        make_transform("fourier", n).H,
        compose(modulation_operator(spec), make_transform(sparsity, n)),
    )
    omega = sample_indices(n, m, law, int(rng.integers(0, 2**32)))
    op = restrict_rows(chain, omega)
    return op, op.forward(alpha), alpha


def exhaustive_support_oracle(a_dense, y, s, feas_tol=1e-8, l1_tie_tol=1e-6, vec_tol=1e-6):
    """Minimum-l1 s-sparse feasible point by brute force.

    Enumerates every size-s support, least-squares fits it, keeps
    feasible fits, and returns (best vector, unique flag). The flag is
    False when no support is feasible or when another feasible fit ties
    the minimal l1 norm with a materially different vector.
    """
    n = a_dense.shape[1]
    y_scale = max(np.linalg.norm(y), 1e-300)
    candidates = []
    best = None
    best_l1 = np.inf
    for support in combinations(range(n), s):
        sub = a_dense[:, support]
        coef, *_ = np.linalg.lstsq(sub, y, rcond=None)
        if np.linalg.norm(sub @ coef - y) > feas_tol * y_scale:
            continue
        vec = np.zeros(n, dtype=complex)
        vec[list(support)] = coef
        l1 = np.abs(vec).sum()
        candidates.append((l1, vec))
        if l1 < best_l1:
            best_l1, best = l1, vec
    if best is None:
        return None, False
    unique = True
    scale = max(np.linalg.norm(best), 1e-300)
    for l1, vec in candidates:
        if l1 <= best_l1 * (1.0 + l1_tie_tol) and np.linalg.norm(vec - best) > vec_tol * scale:
            unique = False
    return best, unique
