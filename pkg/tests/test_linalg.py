import numpy as np
import pytest

from infodist.errors import CapacityError, ContractError, PositivityError
from infodist.linalg import (
    eigendecompose_hermitian,
    hermitian_sqrt,
    matrix_exp_hermitian,
    operator_norm,
    tensor_product,
)

from conftest import random_hermitian

I2 = np.eye(2, dtype=complex)
SZ = np.diag([0.5, -0.5]).astype(complex)
P_UP = np.diag([1.0, 0.0]).astype(complex)
P_DOWN = np.diag([0.0, 1.0]).astype(complex)


class TestTensorProduct:
    def test_identity(self):
        np.testing.assert_array_equal(tensor_product(I2, I2), np.eye(4))

    def test_diagonal_with_identity(self):
        # hand expansion of the Kronecker product
        expected = np.diag([0.5, 0.5, -0.5, -0.5])
        np.testing.assert_allclose(tensor_product(SZ, I2), expected, atol=0)

    def test_rank_one_projectors(self):
        # |1><1| ⊗ |1><1| has a single 1 at the top-left corner
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        np.testing.assert_array_equal(tensor_product(P_UP, P_UP), expected)

    def test_capacity(self):
        big = np.eye(70)
        with pytest.raises(CapacityError):
            tensor_product(big, big)

    def test_rejects_non_square(self):
        with pytest.raises(ContractError):
            tensor_product(np.ones((2, 3)), I2)

    def test_rejects_non_finite(self):
        bad = np.array([[np.nan, 0], [0, 1]])
        with pytest.raises(ContractError):
            tensor_product(bad, I2)

    def test_mixed_product_property(self, rng):
        # (a⊗b)(c⊗d) = (ac)⊗(bd)
        for _ in range(50):
            a = random_hermitian(rng, 2)
            b = random_hermitian(rng, 3)
            c = random_hermitian(rng, 2)
            d = random_hermitian(rng, 3)
            left = tensor_product(a, b) @ tensor_product(c, d)
            right = tensor_product(a @ c, b @ d)
            assert np.linalg.norm(left - right) < 1e-12 * max(1, np.linalg.norm(right))


class TestEigendecompose:
    def test_identity(self):
        w, v = eigendecompose_hermitian(I2)
        np.testing.assert_allclose(w, [1.0, 1.0])
        np.testing.assert_allclose(v.conj().T @ v, I2, atol=1e-12)

    def test_diagonal(self):
        w, _ = eigendecompose_hermitian(SZ)
        np.testing.assert_allclose(w, [-0.5, 0.5])

    def test_pauli_x_closed_form(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        w, v = eigendecompose_hermitian(x)
        np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-12)
        s = 1 / np.sqrt(2)
        np.testing.assert_allclose(v[:, 0], [s, -s], atol=1e-12)
        np.testing.assert_allclose(v[:, 1], [s, s], atol=1e-12)

    def test_reconstruction_and_orthonormality(self, rng):
        for dim in (2, 3, 5, 8):
            for _ in range(50):
                h = random_hermitian(rng, dim)
                w, v = eigendecompose_hermitian(h)
                rebuilt = (v * w) @ v.conj().T
                rel = np.linalg.norm(rebuilt - h) / max(1, np.linalg.norm(h))
                assert rel < 1e-10
                assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) < 1e-10
                assert np.all(np.diff(w) >= -1e-12 * max(1, np.max(np.abs(w))))

    def test_phase_convention(self, rng):
        for _ in range(20):
            h = random_hermitian(rng, 4)
            _, v = eigendecompose_hermitian(h)
            for col in v.T:
                lead = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
                assert abs(lead.imag) < 1e-12
                assert lead.real > 0

    def test_deterministic_with_degeneracy(self):
        h = np.diag([1.0, 1.0, 2.0]).astype(complex)
        first = eigendecompose_hermitian(h)
        second = eigendecompose_hermitian(h)
        np.testing.assert_array_equal(first.eigenvalues, second.eigenvalues)
        np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)

    def test_rejects_non_hermitian(self):
        bad = np.array([[0, 1], [0, 0]], dtype=complex)
        with pytest.raises(ContractError, match="1.000e"):
            eigendecompose_hermitian(bad)


class TestMatrixExp:
    def test_zero_scale(self, rng):
        h = random_hermitian(rng, 3)
        np.testing.assert_allclose(matrix_exp_hermitian(h, 0.0), np.eye(3), atol=1e-12)

    def test_diagonal_phase(self):
        u = matrix_exp_hermitian(SZ, -1j * np.pi)
        np.testing.assert_allclose(u, np.diag([-1j, 1j]), atol=1e-12)

    def test_unitarity(self, rng):
        for _ in range(100):
            dim = int(rng.integers(2, 6))
            h = random_hermitian(rng, dim)
            t = rng.uniform(0.0, 10.0)
            u = matrix_exp_hermitian(h, -1j * t)
            assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) < 1e-10

    def test_generator_conservation(self, rng):
        # e^{-iHT} commutes with H
        for _ in range(50):
            h = random_hermitian(rng, 4)
            u = matrix_exp_hermitian(h, -1j * rng.uniform(0.0, 20.0))
            assert operator_norm(u @ h @ u.conj().T - h) < 1e-9

    def test_spin_demo_distributes_the_bit(self):
        # two-spin Hamiltonian with eps-weak interaction: at T = pi/(2 eps)
        # the B parts of the two evolved encodings are orthogonal
        eps = 0.1
        t = np.pi / (2 * eps)
        h = (
            tensor_product(SZ, I2)
            + tensor_product(I2, I2)
            + eps * (tensor_product(P_UP, P_UP) + tensor_product(P_DOWN, P_DOWN))
        )
        u = matrix_exp_hermitian(h, -1j * t)
        omega = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
        out1 = (u @ np.kron(np.array([1, 0]), omega)).reshape(2, 2)
        out0 = (u @ np.kron(np.array([0, 1]), omega)).reshape(2, 2)
        phi1 = out1[0] / np.linalg.norm(out1[0])  # A part stays |1>
        phi0 = out0[1] / np.linalg.norm(out0[1])  # A part stays |-1>
        assert np.linalg.norm(out1[1]) < 1e-12
        assert np.linalg.norm(out0[0]) < 1e-12
        assert abs(phi0.conj() @ phi1) < 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(ContractError):
            matrix_exp_hermitian(np.array([[0, 1], [0, 0]]), -1j)


class TestHermitianSqrt:
    def test_identity(self):
        np.testing.assert_allclose(hermitian_sqrt(I2), I2, atol=1e-12)

    def test_diagonal(self):
        np.testing.assert_allclose(
            hermitian_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-12
        )

    def test_projector_is_fixed_point(self):
        p = np.full((2, 2), 0.5, dtype=complex)
        np.testing.assert_allclose(hermitian_sqrt(p), p, atol=1e-12)

    def test_square_recovers_input(self, rng):
        for dim in (2, 3, 4, 6):
            for _ in range(50):
                g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
                p = g @ g.conj().T
                r = hermitian_sqrt(p)
                rel = np.linalg.norm(r @ r - p) / max(1, np.linalg.norm(p))
                assert rel < 1e-9

    def test_clips_roundoff_negatives(self):
        p = np.diag([1.0, -5e-11]).astype(complex)
        r = hermitian_sqrt(p)
        np.testing.assert_allclose(r, np.diag([1.0, 0.0]), atol=1e-12)

    def test_rejects_indefinite(self):
        with pytest.raises(PositivityError, match="-1"):
            hermitian_sqrt(np.diag([1.0, -1.0]))


class TestOperatorNorm:
    @pytest.mark.parametrize("dim", [1, 2, 5, 9])
    def test_identity(self, dim):
        assert operator_norm(np.eye(dim)) == pytest.approx(1.0, abs=1e-12)

    def test_hermitian_is_max_abs_eigenvalue(self):
        assert operator_norm(SZ) == pytest.approx(0.5, abs=1e-12)

    def test_spin_interaction_norm(self):
        for eps in (1.0, 0.1, 0.01):
            h_int = eps * (tensor_product(P_UP, P_UP) + tensor_product(P_DOWN, P_DOWN))
            assert operator_norm(h_int) == pytest.approx(eps, abs=1e-14)

    def test_non_hermitian(self):
        # singular values of [[0, 2], [0, 0]] are (2, 0)
        assert operator_norm(np.array([[0, 2], [0, 0]])) == pytest.approx(2.0, abs=1e-12)

    def test_submultiplicative_and_triangle(self, rng):
        for _ in range(100):
            dim = int(rng.integers(2, 5))
            a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            b = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) + 1e-12
            assert operator_norm(a + b) <= operator_norm(a) + operator_norm(b) + 1e-12
