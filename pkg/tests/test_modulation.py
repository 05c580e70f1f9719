import numpy as np
import pytest
from numpy.testing import assert_allclose

from spreadcs.modulation import (
    make_chirp_modulation,
    make_random_modulation,
    make_upsampler,
    modulation_operator,
    no_modulation,
    upsampled_size,
)


def random_complex(n, seed=0):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def test_rademacher_entries_are_signs():
    spec = make_random_modulation("rademacher", 16, seed=7)
    assert spec.n_upsampled == 16
    assert np.all(np.isin(spec.values.real, [-1.0, 1.0]))
    assert np.all(spec.values.imag == 0.0)


def test_steinhaus_entries_unit_modulus():
    spec = make_random_modulation("steinhaus", 16, seed=7)
    assert np.abs(np.abs(spec.values) - 1.0).max() < 1e-12


@pytest.mark.parametrize("kind", ["rademacher", "steinhaus"])
def test_random_modulation_reproducible(kind):
    a = make_random_modulation(kind, 32, seed=123)
    b = make_random_modulation(kind, 32, seed=123)
    c = make_random_modulation(kind, 32, seed=124)
    assert np.array_equal(a.values, b.values)
    assert np.any(a.values != c.values)


def test_random_modulation_rejects_bad_inputs():
    with pytest.raises(ValueError):
        make_random_modulation("chirp", 8, seed=0)
    with pytest.raises(ValueError):
        make_random_modulation("rademacher", 0, seed=0)


class TestChirp:
    def test_zero_rate_is_all_ones_on_original_grid(self):
        spec = make_chirp_modulation(0.0, 64)
        assert spec.n_upsampled == 64
        assert_allclose(spec.values, np.ones(64), atol=1e-15)

    def test_grid_growth_and_unit_modulus(self):
        spec = make_chirp_modulation(0.5, 1024)
        assert spec.n_upsampled == 1536
        assert np.abs(np.abs(spec.values) - 1.0).max() < 1e-12

    def test_samples_match_direct_formula(self):
        spec = make_chirp_modulation(0.25, 8)
        assert spec.n_upsampled == 10
        k = np.arange(10)
        expected = np.exp(1j * np.pi * 0.25 * 8 * (k / 10 - 0.5) ** 2)
        assert_allclose(spec.values, expected, atol=1e-15)

    def test_even_symmetry_about_grid_center(self):
        spec = make_chirp_modulation(0.37, 32)
        c = spec.values
        n_up = spec.n_upsampled
        for k in range(1, n_up):
            assert c[k] == pytest.approx(c[n_up - k], abs=1e-14)

    def test_rounding_to_even(self):
        assert upsampled_size(0.1, 1024) == 1128
        assert upsampled_size(0.25, 8) == 10
        assert upsampled_size(0.0, 64) == 64

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            make_chirp_modulation(-0.1, 64)
        with pytest.raises(ValueError):
            make_chirp_modulation(0.5, 7)
        with pytest.raises(ValueError):
            make_chirp_modulation(0.5, 0)


class TestModulationOperator:
    def test_none_kind_is_identity(self):
        op = modulation_operator(no_modulation(16))
        x = random_complex(16, seed=3)
        assert_allclose(op.forward(x), x)

    @pytest.mark.parametrize(
        "spec",
        [
            make_random_modulation("rademacher", 32, seed=1),
            make_random_modulation("steinhaus", 32, seed=2),
            make_chirp_modulation(0.4, 32),
        ],
        ids=["rademacher", "steinhaus", "chirp"],
    )
    def test_isometry_and_inverse(self, spec):
        op = modulation_operator(spec)
        x = random_complex(spec.n_upsampled, seed=5)
        assert_allclose(np.linalg.norm(op.forward(x)), np.linalg.norm(x), rtol=1e-13)
        assert_allclose(op.adjoint(op.forward(x)), x, atol=1e-12)


class TestUpsampler:
    def test_same_size_is_identity(self):
        op = make_upsampler(16, 16)
        x = random_complex(16, seed=9)
        assert_allclose(op.forward(x), x, atol=1e-12)

    @pytest.mark.parametrize("n,n_up", [(8, 16), (16, 20), (32, 48)])
    def test_isometry(self, n, n_up):
        op = make_upsampler(n, n_up)
        x = random_complex(n, seed=n_up)
        assert_allclose(op.adjoint(op.forward(x)), x, atol=1e-10)
        assert_allclose(np.linalg.norm(op.forward(x)), np.linalg.norm(x), rtol=1e-12)

    def test_spectrum_confined_to_original_band(self):
        n, n_up = 8, 16
        op = make_upsampler(n, n_up)
        x = random_complex(n, seed=21)
        spectrum = np.fft.fftshift(np.fft.fft(op.forward(x), norm="ortho"))
        offset = (n_up - n) // 2
        outside = np.concatenate([spectrum[:offset], spectrum[offset + n:]])
        assert np.abs(outside).max() < 1e-12

    def test_invalid_sizes(self):
        with pytest.raises(ValueError):
            make_upsampler(16, 8)
        with pytest.raises(ValueError):
            make_upsampler(7, 14)
        with pytest.raises(ValueError):
            make_upsampler(8, 15)
