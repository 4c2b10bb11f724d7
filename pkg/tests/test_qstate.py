import numpy as np
import pytest

from infodist.errors import ContractError
from infodist.linalg import matrix_exp_hermitian, tensor_product
from infodist.qstate import embed, evolve, partial_trace, projector, purify

from conftest import random_density, random_hermitian, random_pure_state

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([0.5, -0.5]).astype(complex)


def spin_unitary(eps, t):
    p_up = np.diag([1.0, 0.0]).astype(complex)
    p_down = np.diag([0.0, 1.0]).astype(complex)
    h = (
        tensor_product(SZ, I2)
        + tensor_product(I2, I2)
        + eps * (tensor_product(p_up, p_up) + tensor_product(p_down, p_down))
    )
    return matrix_exp_hermitian(h, -1j * t)


class TestEmbed:
    def test_identity(self):
        np.testing.assert_array_equal(embed(I2, "A", (2, 2)), np.eye(4))

    def test_side_a_diagonal(self):
        expected = np.diag([0.5, 0.5, -0.5, -0.5])
        np.testing.assert_allclose(embed(SZ, "A", (2, 2)), expected, atol=0)

    def test_side_b_action_on_product_basis(self):
        ket00 = np.array([1, 0, 0, 0], dtype=complex)
        ket01 = np.array([0, 1, 0, 0], dtype=complex)
        np.testing.assert_allclose(embed(X, "B", (2, 2)) @ ket00, ket01, atol=0)

    def test_dim_mismatch(self):
        with pytest.raises(ContractError):
            embed(np.eye(3), "A", (2, 2))
        with pytest.raises(ContractError):
            embed(I2, "C", (2, 2))


class TestPartialTrace:
    def test_product_state(self, rng):
        rho_a = random_density(rng, 3)
        rho_b = random_density(rng, 2)
        joint = np.kron(rho_a, rho_b)
        np.testing.assert_allclose(partial_trace(joint, (3, 2), "A"), rho_a, atol=1e-12)
        np.testing.assert_allclose(partial_trace(joint, (3, 2), "B"), rho_b, atol=1e-12)

    def test_bell_state(self):
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = 1 / np.sqrt(2)
        rho = projector(bell)
        np.testing.assert_allclose(partial_trace(rho, (2, 2), "A"), I2 / 2, atol=1e-12)
        np.testing.assert_allclose(partial_trace(rho, (2, 2), "B"), I2 / 2, atol=1e-12)

    def test_spin_demo_b_reductions(self):
        # at T = pi/(2 eps) the B sides end up in (|1> ± i|-1>)/sqrt(2)
        eps = 0.25
        u = spin_unitary(eps, np.pi / (2 * eps))
        omega = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
        psi1 = np.array([1.0, 0.0], dtype=complex)
        psi0 = np.array([0.0, -1.0], dtype=complex)
        rho1 = evolve(np.kron(projector(psi1), projector(omega)), u)
        rho0 = evolve(np.kron(projector(psi0), projector(omega)), u)
        rho1_b = partial_trace(rho1, (2, 2), "B")
        rho0_b = partial_trace(rho0, (2, 2), "B")
        plus_i = 0.5 * np.array([[1, -1j], [1j, 1]])
        minus_i = 0.5 * np.array([[1, 1j], [-1j, 1]])
        np.testing.assert_allclose(rho1_b, plus_i, atol=1e-10)
        np.testing.assert_allclose(rho0_b, minus_i, atol=1e-10)
        # orthogonal pure states: tr(rho0 rho1) = |<phi0|phi1>|^2 = 0
        assert abs(np.trace(rho0_b @ rho1_b)) < 1e-10

    def test_linearity_and_trace_preservation(self, rng):
        for _ in range(100):
            r1 = random_density(rng, 6)
            r2 = random_density(rng, 6)
            lam = rng.uniform(0, 1)
            mix = lam * r1 + (1 - lam) * r2
            direct = partial_trace(mix, (2, 3), "A")
            split = lam * partial_trace(r1, (2, 3), "A") + (1 - lam) * partial_trace(r2, (2, 3), "A")
            assert np.max(np.abs(direct - split)) < 1e-12
            assert abs(np.trace(direct) - 1) < 1e-12

    def test_reduction_consistency(self, rng):
        # tr((x ⊗ 1) rho) = tr(x rho_A)
        for _ in range(100):
            rho = random_density(rng, 6)
            x = random_hermitian(rng, 2)
            lhs = np.trace(embed(x, "A", (2, 3)) @ rho)
            rhs = np.trace(x @ partial_trace(rho, (2, 3), "A"))
            assert abs(lhs - rhs) < 1e-10

    def test_bad_factorization(self, rng):
        with pytest.raises(ContractError):
            partial_trace(random_density(rng, 6), (2, 2), "A")


class TestPurify:
    def test_pure_input_is_product(self, rng):
        phi = random_pure_state(rng, 3)
        omega = purify(projector(phi))
        table = omega.reshape(3, 3)
        # Schmidt rank 1, environment slot is where the unit eigenvalue sits
        # in ascending order, i.e. the last basis vector
        s = np.linalg.svd(table, compute_uv=False)
        np.testing.assert_allclose(s, [1.0, 0.0, 0.0], atol=1e-10)
        assert np.linalg.norm(table[:, :2]) < 1e-10
        np.testing.assert_allclose(np.abs(table[:, 2]), np.abs(phi), atol=1e-10)

    def test_maximally_mixed(self):
        omega = purify(I2 / 2)
        s = np.linalg.svd(omega.reshape(2, 2), compute_uv=False)
        np.testing.assert_allclose(s, [1 / np.sqrt(2)] * 2, atol=1e-12)

    def test_spectral_placement(self):
        omega = purify(np.diag([0.9, 0.1]).astype(complex))
        table = omega.reshape(2, 2)
        # ascending eigen-order: environment slot 0 holds sqrt(0.1)|v_0> with
        # v_0 = |1>, slot 1 holds sqrt(0.9)|v_1> with v_1 = |0>
        assert abs(table[1, 0]) == pytest.approx(np.sqrt(0.1), abs=1e-12)
        assert abs(table[0, 1]) == pytest.approx(np.sqrt(0.9), abs=1e-12)
        assert abs(table[0, 0]) < 1e-12
        assert abs(table[1, 1]) < 1e-12

    def test_round_trip(self, rng):
        for dim in (2, 3, 4):
            for _ in range(50):
                sigma = random_density(rng, dim)
                omega = purify(sigma)
                recovered = partial_trace(projector(omega), (dim, dim), "A")
                assert np.max(np.abs(recovered - sigma)) < 1e-10


class TestEvolve:
    def test_identity(self, rng):
        rho = random_density(rng, 3)
        np.testing.assert_allclose(evolve(rho, np.eye(3)), rho, atol=1e-12)

    def test_basis_flip(self):
        zero = np.diag([1.0, 0.0]).astype(complex)
        one = np.diag([0.0, 1.0]).astype(complex)
        np.testing.assert_allclose(evolve(zero, X), one, atol=1e-12)

    def test_spin_demo_keeps_encoding_on_a(self):
        eps = 0.1
        u = spin_unitary(eps, np.pi / (2 * eps))
        omega = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
        psi1 = np.array([1.0, 0.0], dtype=complex)
        rho = evolve(np.kron(projector(psi1), projector(omega)), u)
        np.testing.assert_allclose(
            partial_trace(rho, (2, 2), "A"), projector(psi1), atol=1e-10
        )

    def test_spectrum_preserved(self, rng):
        for _ in range(50):
            rho = random_density(rng, 4)
            h = random_hermitian(rng, 4)
            u = matrix_exp_hermitian(h, -1j * rng.uniform(0, 10))
            before = np.sort(np.linalg.eigvalsh(rho))
            after = np.sort(np.linalg.eigvalsh(evolve(rho, u)))
            assert np.max(np.abs(before - after)) < 1e-9

    def test_rejects_non_unitary(self, rng):
        rho = random_density(rng, 2)
        with pytest.raises(ContractError, match="not unitary"):
            evolve(rho, np.array([[1, 0], [0, 2]], dtype=complex))
