"""Tour of the matrix-free operator toolkit.

Builds each orthonormal transform, checks unitarity and adjoint
consistency, and assembles a restricted acquisition chain the way the
experiment harness does.
"""

import numpy as np

from spreadcs import (
    compose,
    dense_matrix,
    dot_test,
    make_transform,
    restrict_rows,
    sample_indices,
)

rng = np.random.default_rng(0)

print("== unitary transforms ==")
for kind in ("fourier", "hadamard", "haar", "dirac"):
    op = make_transform(kind, 64)
    x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    norm_ratio = np.linalg.norm(op.forward(x)) / np.linalg.norm(x)
    round_trip = np.linalg.norm(op.forward(op.adjoint(x)) - x)
    print(f"{kind:9s} norm ratio {norm_ratio:.12f}   round trip error {round_trip:.2e}   dot test {dot_test(op):.2e}")

print()
print("== the Haar pyramid in coordinates ==")
haar = make_transform("haar", 8)
print("analysis of the constant vector:", np.round(haar.adjoint(np.ones(8)).real, 6))
print("first two synthesis columns:")
print(np.round(dense_matrix(haar)[:, :2].real, 4))

print()
print("== assembling a measurement operator ==")
# analysis in the sensing basis composed with synthesis in the sparsity
# basis, then a random row restriction: y = (selected rows) F* Psi alpha
n, m = 64, 24
chain = compose(make_transform("fourier", n).H, make_transform("haar", n))
omega = sample_indices(n, m, "iid_uniform", seed=7)
acquisition = restrict_rows(chain, omega)
print("chain:", acquisition.label)
print("rows drawn with replacement, duplicates kept:", m - len(set(omega.indices.tolist())), "duplicates")
alpha = np.zeros(n, dtype=complex)
alpha[[3, 17, 40]] = [1.0, 0.5j, -0.25]
y = acquisition.forward(alpha)
print("measurement vector length:", y.size, " adjoint dot test:", f"{dot_test(acquisition):.2e}")
