"""Tests for the truncated Fock-basis oracle."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.errors import DimensionError, RangeError, TruncationError
from src.domain.phasespace.schemas import SqueezingParams
from src.domain.phasespace.services import fock, gaussian


class TestLadderOperators:
    """Test the single-mode matrices."""

    def test_canonical_commutator_below_the_cutoff(self):
        """[c, c^dagger] = 1 except in the last row, where truncation shows."""
        c = fock.annihilation_matrix(6)
        comm = c.commutator(c.dagger()).entries
        assert np.allclose(np.diag(comm)[:-1], 1.0)
        assert np.diag(comm)[-1] == pytest.approx(-6.0)

    def test_number_operator(self):
        c = fock.annihilation_matrix(5)
        assert np.allclose((c.dagger() @ c).entries, fock.number_matrix(5).entries)

    def test_position_momentum_commutator(self):
        q, p = fock.position_momentum_matrices(8)
        comm = q.commutator(p).entries
        assert np.allclose(np.diag(comm)[:-1], 1j)

    @pytest.mark.parametrize("factory", [fock.annihilation_matrix, fock.identity_matrix, fock.number_matrix])
    def test_truncation_must_be_positive(self, factory):
        with pytest.raises(RangeError):
            factory(0)


class TestTwoModeSqueezedVacuum:
    """Test the TMSS vector and its truncation."""

    @pytest.mark.parametrize("r", [0.3, 1.0, 2.0])
    def test_truncation_is_minimal(self, r):
        """tanh^(2(N+1)) r < tol <= tanh^(2N) r."""
        tol = 1e-10
        N = fock.tmss_truncation(r, tail_tol=tol)
        t = math.tanh(r)
        assert t ** (2 * (N + 1)) < tol
        assert t ** (2 * N) >= tol

    def test_truncation_edge_cases(self):
        assert fock.tmss_truncation(0.0) == 1
        with pytest.raises(RangeError):
            fock.tmss_truncation(-0.1)
        with pytest.raises(RangeError):
            fock.tmss_truncation(1.0, tail_tol=1.5)

    def test_truncation_above_cap(self):
        with pytest.raises(TruncationError) as info:
            fock.tmss_truncation(5.0)
        assert info.value.required is not None and info.value.required > 600

    def test_amplitudes_and_phase(self):
        """Diagonal entries e^{-2 i n phi} tanh^n r / cosh r; nothing off the diagonal."""
        p = SqueezingParams(r=0.7, phi=0.4)
        state = fock.tmss_vector(p, tail_tol=1e-14)
        psi = state.as_matrix()
        n = np.arange(state.truncation + 1)
        expected = np.exp(-2j * 0.4 * n) * math.tanh(0.7) ** n / math.cosh(0.7)
        assert np.allclose(np.diag(psi), expected, atol=1e-7)
        assert np.allclose(psi - np.diag(np.diag(psi)), 0.0)
        assert state.tail_bound < 1e-14

    def test_explicit_truncation_too_small(self):
        with pytest.raises(TruncationError):
            fock.tmss_vector(SqueezingParams(r=1.0), N=5)

    def test_covariance_has_conjugate_angle(self):
        """Amplitudes e^{-2 i n phi} realize gamma(r, -phi)."""
        p = SqueezingParams(r=0.5, phi=0.3)
        from_fock = fock.fock_covariance(fock.tmss_vector(p, tail_tol=1e-14))
        expected = gaussian.covariance_from_squeezing(p.conjugate())
        assert np.allclose(from_fock.covariance, expected.covariance, atol=1e-8)

    def test_reduced_state_is_thermal(self):
        """Occupations (1 - t^2) t^{2n} with mean sinh^2 r."""
        r = 1.0
        state = fock.tmss_vector(SqueezingParams(r=r), tail_tol=1e-14)
        occupancy = fock.partial_trace_mode(state)
        n = np.arange(occupancy.size)
        t2 = math.tanh(r) ** 2
        assert np.allclose(occupancy, (1 - t2) * t2**n, atol=1e-12)
        assert float(n @ occupancy) == pytest.approx(math.sinh(r) ** 2, rel=1e-8)
        assert np.allclose(fock.partial_trace_mode(state, keep=1), occupancy)
        rho = fock.reduced_density_matrix(state)
        assert np.allclose(np.diag(rho.entries).real, occupancy)

    def test_two_mode_expectation(self):
        """<n_k> evaluated without forming the Kronecker product."""
        state = fock.tmss_vector(SqueezingParams(r=0.6), tail_tol=1e-14)
        op = fock.two_mode_operator(fock.number_matrix(state.truncation))
        assert fock.expectation(state, op).real == pytest.approx(math.sinh(0.6) ** 2, rel=1e-9)
        dense = op.to_matrix()
        assert fock.expectation(state, dense) == pytest.approx(fock.expectation(state, op))

    def test_partial_trace_needs_two_modes(self):
        single = fock.fock_basis_vector(1, 3)
        with pytest.raises(DimensionError):
            fock.partial_trace_mode(single)
        with pytest.raises(DimensionError):
            fock.reduced_density_matrix(single)
        with pytest.raises(DimensionError):
            fock.fock_covariance(single)


class TestSingleModeStates:
    """Test number and coherent states."""

    def test_basis_vector_bounds(self):
        with pytest.raises(RangeError):
            fock.fock_basis_vector(4, 3)

    def test_coherent_mean_occupation(self):
        alpha = 1.2 - 0.5j
        state = fock.coherent_vector(alpha, 40)
        assert fock.expectation(state, fock.number_matrix(40)).real == pytest.approx(abs(alpha) ** 2, rel=1e-10)
        c = fock.annihilation_matrix(40)
        assert fock.expectation(state, c) == pytest.approx(alpha, rel=1e-10)

    def test_expectation_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            fock.expectation(fock.fock_basis_vector(0, 3), fock.number_matrix(4))


class TestNumericWigner:
    """Test the quadrature Wigner transform."""

    def test_vacuum(self, phase_grid):
        q, p = phase_grid
        w = fock.wigner_numeric(fock.fock_basis_vector(0, 1), q, p)
        assert np.max(np.abs(w - np.exp(-(q**2) - p**2) / math.pi)) < 1e-12

    def test_first_excited_state_is_negative_at_origin(self):
        assert fock.wigner_numeric(fock.fock_basis_vector(1, 1), 0.0, 0.0) == pytest.approx(-1.0 / math.pi, abs=1e-12)

    def test_density_matrix_route(self):
        """The reduced TMSS state has a thermal Gaussian Wigner function."""
        r = 0.5
        rho = fock.reduced_density_matrix(fock.tmss_vector(SqueezingParams(r=r), tail_tol=1e-14))
        q = np.array([0.0, 0.7, -1.3])
        p = np.array([0.2, -0.4, 1.1])
        c = math.cosh(2.0 * r)
        expected = np.exp(-(q**2 + p**2) / c) / (math.pi * c)
        assert np.allclose(fock.wigner_numeric(rho, q, p), expected, atol=1e-10)

    def test_wavefunction_route(self):
        """A callable ground state reproduces the vacuum."""
        psi = lambda x: np.pi**-0.25 * np.exp(-0.5 * x**2)  # noqa: E731
        assert fock.wigner_numeric(psi, 0.3, -0.2) == pytest.approx(np.exp(-0.13) / math.pi, abs=1e-12)

    def test_two_mode_state_rejected(self):
        with pytest.raises(DimensionError):
            fock.wigner_numeric(fock.tmss_vector(SqueezingParams(r=0.2)), 0.0, 0.0)

    def test_hermite_wavefunction_range(self):
        assert fock.hermite_wavefunction(0, 0.0) == pytest.approx(np.pi**-0.25)
        with pytest.raises(RangeError):
            fock.hermite_wavefunction(fock.WAVEFUNCTION_MAX_N + 1, 0.0)
