import math

import numpy as np
import pytest

from conftest import random_density, random_pure
from qiradar.errors import DegenerateInput, DimensionMismatch, NumericalDomain
from qiradar.qstate import (
    DensityOperator,
    PureState,
    bell_phi_plus,
    density_from_pure,
    eigendecompose_hermitian,
    partial_trace,
    pure_state,
    sqrt_psd,
    tensor,
)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def manual_reduced_state(rho, keep_second):
    """Independent partial-trace oracle for a 2x2-subsystem operator: direct
    summation over the traced-out basis, no reshape tricks."""
    out = np.zeros((2, 2), dtype=complex)
    for a in range(2):
        for b in range(2):
            for s in range(2):
                if keep_second:
                    out[a, b] += rho.matrix[2 * s + a, 2 * s + b]
                else:
                    out[a, b] += rho.matrix[2 * a + s, 2 * b + s]
    return out


class TestPureState:
    def test_basis_state(self):
        psi = pure_state([1, 0], [2])
        np.testing.assert_allclose(psi.amplitudes, [1.0, 0.0], atol=1e-15)
        assert psi.dims == (2,)

    def test_normalization_forced(self):
        psi = pure_state([2, 0, 0, 2], [2, 2])
        np.testing.assert_allclose(psi.amplitudes, [INV_SQRT2, 0, 0, INV_SQRT2], atol=1e-12)

    def test_complex_amplitudes_normalized(self):
        psi = pure_state([1, 1j], [2])
        norm_sq = float(np.vdot(psi.amplitudes, psi.amplitudes).real)
        assert abs(norm_sq - 1.0) <= 1e-12
        np.testing.assert_allclose(np.abs(psi.amplitudes), [INV_SQRT2, INV_SQRT2], atol=1e-12)

    def test_zero_vector_rejected(self):
        with pytest.raises(DegenerateInput):
            pure_state([0, 0], [2])

    def test_length_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            pure_state([1, 0, 0], [2, 2])

    def test_dimension_cap(self):
        with pytest.raises(DimensionMismatch):
            pure_state([1] + [0] * 31, [2] * 5)

    def test_unnormalized_constructor_rejected(self):
        # The dataclass itself validates; only pure_state() normalizes.
        with pytest.raises(DegenerateInput):
            PureState(np.array([1.0, 1.0]), (2,))


class TestBellPhiPlus:
    def test_amplitudes(self):
        psi = bell_phi_plus()
        np.testing.assert_allclose(psi.amplitudes, [0.7071067811865476, 0, 0, 0.7071067811865476],
                                   atol=1e-12)
        assert psi.dims == (2, 2)

    def test_reduced_idler_is_maximally_mixed(self):
        rho = density_from_pure(bell_phi_plus())
        reduced = partial_trace(rho, {1})
        np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-10)
        # Cross-check against the independent summation oracle.
        np.testing.assert_allclose(manual_reduced_state(rho, keep_second=True),
                                   np.eye(2) / 2, atol=1e-12)

    def test_self_overlap(self):
        psi = bell_phi_plus()
        assert abs(psi.overlap(psi) - 1.0) <= 1e-12


class TestDensityFromPure:
    def test_basis_projector(self):
        rho = density_from_pure(pure_state([1, 0], [2]))
        np.testing.assert_allclose(rho.matrix, np.diag([1.0, 0.0]), atol=1e-15)

    def test_bell_corners(self):
        rho = density_from_pure(bell_phi_plus())
        amps = bell_phi_plus().amplitudes
        np.testing.assert_allclose(rho.matrix, np.outer(amps, amps.conj()), atol=1e-15)
        for i, j in [(0, 0), (0, 3), (3, 0), (3, 3)]:
            assert abs(rho.matrix[i, j] - 0.5) <= 1e-12

    def test_purity(self):
        rng = np.random.default_rng(1351)
        for dims in [(2,), (2, 2), (2, 2, 2)]:
            for _ in range(8):
                rho = density_from_pure(random_pure(rng, dims))
                purity = float(np.trace(rho.matrix @ rho.matrix).real)
                assert abs(purity - 1.0) <= 1e-9


class TestTensor:
    def test_basis_product(self):
        a = DensityOperator(np.diag([1.0, 0.0]), (2,))
        b = DensityOperator(np.diag([0.0, 1.0]), (2,))
        out = tensor(a, b)
        np.testing.assert_allclose(out.matrix, np.diag([0.0, 1.0, 0.0, 0.0]), atol=1e-15)
        assert out.dims == (2, 2)

    def test_maximally_mixed_product(self):
        half = DensityOperator(np.eye(2) / 2, (2,))
        out = tensor(half, half)
        np.testing.assert_allclose(out.matrix, np.eye(4) / 4, atol=1e-15)

    def test_trace_multiplicative(self):
        rng = np.random.default_rng(90125)
        for _ in range(10):
            a = random_density(rng, 2)
            b = random_density(rng, 4, dims=(4,))
            out = tensor(a, b)
            assert abs(out.matrix.trace() - a.matrix.trace() * b.matrix.trace()) <= 1e-12

    def test_partial_trace_inverts_tensor(self):
        rng = np.random.default_rng(777)
        for _ in range(30):
            a = random_density(rng, 2)
            b = random_density(rng, 2)
            joint = tensor(a, b)
            np.testing.assert_allclose(partial_trace(joint, {0}).matrix, a.matrix, atol=1e-10)
            np.testing.assert_allclose(partial_trace(joint, {1}).matrix, b.matrix, atol=1e-10)


class TestPartialTrace:
    def test_product_basis_keep_second(self):
        ket01 = pure_state([0, 1, 0, 0], [2, 2])  # |0⟩ first, |1⟩ second
        rho = density_from_pure(ket01)
        out = partial_trace(rho, {1})
        np.testing.assert_allclose(out.matrix, np.diag([0.0, 1.0]), atol=1e-15)

    def test_three_subsystems(self):
        rng = np.random.default_rng(5621)
        a = random_density(rng, 2)
        b = random_density(rng, 2)
        c = random_density(rng, 2)
        joint = tensor(tensor(a, b), c)
        np.testing.assert_allclose(partial_trace(joint, {1}).matrix, b.matrix, atol=1e-10)
        two = partial_trace(joint, {0, 2})
        np.testing.assert_allclose(two.matrix, np.kron(a.matrix, c.matrix), atol=1e-10)

    def test_trace_preserved(self):
        rng = np.random.default_rng(33)
        rho = random_density(rng, 4, dims=(2, 2))
        out = partial_trace(rho, {0})
        assert abs(out.matrix.trace() - 1.0) <= 1e-12

    def test_invalid_index_rejected(self):
        rho = density_from_pure(bell_phi_plus())
        with pytest.raises(DimensionMismatch):
            partial_trace(rho, {2})
        with pytest.raises(DimensionMismatch):
            partial_trace(rho, set())


class TestEigendecomposeHermitian:
    def test_diagonal(self):
        spectrum = eigendecompose_hermitian(np.diag([0.3, 0.7]))
        np.testing.assert_allclose(spectrum.eigenvalues, [0.7, 0.3], atol=1e-15)

    def test_pauli_x(self):
        spectrum = eigendecompose_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(spectrum.eigenvalues, [1.0, -1.0], atol=1e-12)

    def test_reconstruction_roundtrip(self):
        rng = np.random.default_rng(4242)
        for _ in range(20):
            g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            herm = g + g.conj().T
            spectrum = eigendecompose_hermitian(herm)
            np.testing.assert_allclose(spectrum.reconstruct(), herm, atol=1e-8)
            assert np.all(np.diff(spectrum.eigenvalues) <= 1e-12)
            gram = spectrum.eigenvectors.conj().T @ spectrum.eigenvectors
            np.testing.assert_allclose(gram, np.eye(4), atol=1e-9)

    def test_eigenvalue_sum_is_trace(self):
        rng = np.random.default_rng(88)
        for _ in range(10):
            rho = random_density(rng, 4, dims=(4,))
            spectrum = eigendecompose_hermitian(rho)
            assert abs(spectrum.eigenvalues.sum() - 1.0) <= 1e-9

    def test_non_hermitian_rejected(self):
        with pytest.raises(NumericalDomain):
            eigendecompose_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestSqrtPsd:
    def test_scaled_identity(self):
        np.testing.assert_allclose(sqrt_psd(np.eye(4) / 4), np.eye(4) / 2, atol=1e-12)

    def test_diagonal(self):
        out = sqrt_psd(np.diag([0.25, 0.75]))
        np.testing.assert_allclose(out, np.diag([0.5, 0.8660254037844386]), atol=1e-12)

    def test_squaring_roundtrip(self):
        rng = np.random.default_rng(1999)
        for dim in (2, 4, 8):
            for _ in range(10):
                g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
                psd = g @ g.conj().T / dim
                root = sqrt_psd(psd)
                np.testing.assert_allclose(root @ root, psd, atol=1e-8)
                np.testing.assert_allclose(root, root.conj().T, atol=1e-12)

    def test_clamps_roundoff_negatives(self):
        root = sqrt_psd(np.diag([1.0, -5e-11]))
        assert root[1, 1] == 0.0

    def test_genuinely_negative_rejected(self):
        with pytest.raises(NumericalDomain):
            sqrt_psd(np.diag([1.0, -1e-6]))


class TestDensityOperatorInvariants:
    def test_non_hermitian_rejected(self):
        m = np.array([[0.5, 0.5], [0.0, 0.5]])
        with pytest.raises(NumericalDomain):
            DensityOperator(m, (2,))

    def test_bad_trace_rejected(self):
        with pytest.raises(NumericalDomain):
            DensityOperator(np.eye(2), (2,))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(NumericalDomain):
            DensityOperator(np.diag([1.5, -0.5]), (2,))

    def test_shape_dims_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            DensityOperator(np.eye(2) / 2, (2, 2))

    def test_random_constructions_pass(self):
        rng = np.random.default_rng(2024)
        for _ in range(20):
            rho = random_density(rng, 4, dims=(2, 2))
            m = rho.matrix
            assert float(np.max(np.abs(m - m.conj().T))) <= 1e-9
            assert abs(m.trace() - 1.0) <= 1e-9
            assert float(np.linalg.eigvalsh(m)[0]) >= -1e-9
