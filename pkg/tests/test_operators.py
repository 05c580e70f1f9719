import numpy as np
import pytest
from numpy.testing import assert_allclose

from spreadcs.operators import (
    IndexSet,
    LinearOperator,
    compose,
    dense_matrix,
    dot_test,
    identity,
    is_universal,
    make_transform,
    matrix_operator,
    restrict_rows,
    sample_indices,
)

ALL_KINDS = ("fourier", "hadamard", "haar", "dirac")


def random_complex(n, seed=0):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def fourier_synthesis_dense(n):
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(2j * np.pi * j * k / n) / np.sqrt(n)


def hadamard_dense(n):
    h = np.array([[1.0]])
    while h.shape[0] < n:
        h = np.kron(np.array([[1.0, 1.0], [1.0, -1.0]]), h)
    return h / np.sqrt(n)


def haar_analysis_dense(n):
    if n == 1:
        return np.eye(1)
    avg = np.zeros((n // 2, n))
    diff = np.zeros((n // 2, n))
    for i in range(n // 2):
        avg[i, 2 * i] = avg[i, 2 * i + 1] = 1.0 / np.sqrt(2)
        diff[i, 2 * i] = 1.0 / np.sqrt(2)
        diff[i, 2 * i + 1] = -1.0 / np.sqrt(2)
    return np.vstack([haar_analysis_dense(n // 2) @ avg, diff])


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("n", [2, 8, 64, 512, 4096])
def test_unitarity(kind, n):
    op = make_transform(kind, n)
    x = random_complex(n, seed=n)
    assert_allclose(np.linalg.norm(op.forward(x)), np.linalg.norm(x), rtol=1e-10)
    assert_allclose(np.linalg.norm(op.adjoint(x)), np.linalg.norm(x), rtol=1e-10)
    assert_allclose(op.forward(op.adjoint(x)), x, atol=1e-10 * np.linalg.norm(x))


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("n", [2, 16, 128])
def test_adjoint_dot_test(kind, n):
    assert dot_test(make_transform(kind, n), seed=n) < 1e-10


def test_fourier_round_trip_small():
    op = make_transform("fourier", 4)
    x = random_complex(4, seed=1)
    assert_allclose(op.forward(op.adjoint(x)), x, atol=1e-12)


def test_hadamard_first_column():
    op = make_transform("hadamard", 2)
    e1 = np.array([1.0, 0.0])
    assert_allclose(op.adjoint(e1), np.array([1.0, 1.0]) / np.sqrt(2), atol=1e-15)


def test_haar_constant_vector_is_pure_scaling():
    op = make_transform("haar", 8)
    coeffs = op.adjoint(np.ones(8))
    expected = np.zeros(8)
    expected[0] = np.sqrt(8.0)
    assert_allclose(coeffs, expected, atol=1e-12)


def test_fourier_analysis_matches_dense_conjugate_transpose():
    op = make_transform("fourier", 8)
    x = random_complex(8, seed=3)
    dense = fourier_synthesis_dense(8)
    assert_allclose(op.adjoint(x), dense.conj().T @ x, atol=1e-12)


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("n", [2, 16, 64])
def test_dense_oracle_equivalence(kind, n):
    op = make_transform(kind, n)
    oracles = {
        "fourier": fourier_synthesis_dense,
        "hadamard": hadamard_dense,
        "haar": lambda n: haar_analysis_dense(n).conj().T,
        "dirac": np.eye,
    }
    assert_allclose(dense_matrix(op), oracles[kind](n), atol=1e-10)


@pytest.mark.parametrize("kind", ["fourier", "hadamard"])
@pytest.mark.parametrize("n", [4, 16, 64])
def test_universal_basis_entry_magnitudes(kind, n):
    assert is_universal(kind)
    entries = np.abs(dense_matrix(make_transform(kind, n)))
    assert np.abs(entries - n**-0.5).max() < 1e-12


def test_non_universal_kinds_flagged():
    assert not is_universal("haar")
    assert not is_universal("dirac")


@pytest.mark.parametrize("kind,n", [("hadamard", 12), ("haar", 3), ("hadamard", 0), ("fourier", 0)])
def test_make_transform_invalid_sizes(kind, n):
    with pytest.raises(ValueError):
        make_transform(kind, n)


def test_make_transform_unknown_kind():
    with pytest.raises(ValueError):
        make_transform("daubechies", 8)


class TestRestrictRows:
    def test_identity_selection(self):
        op = restrict_rows(identity(4), [1, 3])
        assert_allclose(op.forward(np.array([1.0, 2.0, 3.0, 4.0])), [2.0, 4.0])

    def test_full_selection_equals_operator(self):
        base = make_transform("fourier", 8)
        op = restrict_rows(base, np.arange(8))
        x = random_complex(8, seed=5)
        assert_allclose(op.forward(x), base.forward(x), atol=1e-14)
        assert_allclose(op.adjoint(x), base.adjoint(x), atol=1e-14)

    def test_duplicate_index_adjoint_accumulates(self):
        op = restrict_rows(identity(4), [1, 1])
        out = op.adjoint(np.array([2.0 + 1j, 3.0]))
        assert_allclose(out, [0, 5.0 + 1j, 0, 0])

    @pytest.mark.parametrize("indices", [[0, 2, 2, 5], [7, 0, 3]])
    def test_matches_dense_restriction_oracle(self, indices):
        base = make_transform("haar", 8)
        op = restrict_rows(base, indices)
        sub = dense_matrix(base)[indices, :]
        x = random_complex(8, seed=11)
        y = random_complex(len(indices), seed=13)
        assert_allclose(op.forward(x), sub @ x, atol=1e-12)
        assert_allclose(op.adjoint(y), sub.conj().T @ y, atol=1e-12)
        assert dot_test(op, seed=17) < 1e-10

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            restrict_rows(identity(4), [0, 4])
        with pytest.raises(ValueError):
            restrict_rows(identity(4), [-1])


class TestCompose:
    def test_identity_composition(self):
        op = compose(identity(6), identity(6))
        x = random_complex(6, seed=2)
        assert_allclose(op.forward(x), x)

    def test_unitary_times_its_adjoint_is_identity(self):
        f = make_transform("fourier", 8)
        op = compose(f, f.H)
        x = random_complex(8, seed=7)
        assert_allclose(op.forward(x), x, atol=1e-12)
        assert op.unitary

    def test_triple_product_matches_dense_oracle(self):
        rng = np.random.default_rng(23)
        mats = [rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)) for _ in range(3)]
        op = compose(matrix_operator(mats[0]), compose(matrix_operator(mats[1]), matrix_operator(mats[2])))
        x = random_complex(5, seed=29)
        assert_allclose(op.forward(x), mats[0] @ mats[1] @ mats[2] @ x, atol=1e-12)
        assert dot_test(op, seed=31) < 1e-10

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            compose(identity(4), identity(5))


def test_composed_restricted_chain_dot_test():
    chain = compose(make_transform("fourier", 16).H, make_transform("haar", 16))
    op = restrict_rows(chain, sample_indices(16, 9, "iid_uniform", seed=3))
    assert dot_test(op, seed=37) < 1e-10


def test_forward_allocates_fresh_output():
    op = identity(3)
    x = np.ones(3, dtype=complex)
    out = op.forward(x)
    out[0] = 99.0
    assert x[0] == 1.0


def test_operator_shape_validation():
    op = make_transform("fourier", 8)
    with pytest.raises(ValueError):
        op.forward(np.zeros(7))
    with pytest.raises(ValueError):
        op.adjoint(np.zeros(9))
    with pytest.raises(ValueError):
        LinearOperator(0, 4, lambda x: x, lambda y: y)


class TestIndexSets:
    def test_regeneration_is_bit_identical(self):
        a = sample_indices(100, 25, "iid_uniform", seed=99)
        b = sample_indices(100, 25, "iid_uniform", seed=99)
        assert np.array_equal(a.indices, b.indices)
        assert len(a) == 25

    def test_without_replacement_is_distinct(self):
        omega = sample_indices(64, 64, "uniform_without_replacement", seed=5)
        assert np.unique(omega.indices).size == 64

    def test_law_and_range_validation(self):
        with pytest.raises(ValueError):
            sample_indices(10, 3, "latin_hypercube", seed=0)
        with pytest.raises(ValueError):
            sample_indices(10, 11, "uniform_without_replacement", seed=0)
        with pytest.raises(ValueError):
            IndexSet(indices=np.array([10]), law="iid_uniform", seed=0, n_total=10)

    def test_different_seeds_differ(self):
        a = sample_indices(1000, 50, "iid_uniform", seed=1)
        b = sample_indices(1000, 50, "iid_uniform", seed=2)
        assert not np.array_equal(a.indices, b.indices)
