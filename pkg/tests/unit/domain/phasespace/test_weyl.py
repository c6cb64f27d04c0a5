"""Tests for Weyl symbols and the quantum/stochastic equivalence."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.errors import DimensionError, RangeError
from src.domain.phasespace.entities import (
    GaussianState,
    OperatorMatrix,
    OrderedOperatorExpr,
    PhasePolynomial,
    PhaseVariable,
    PositionOperator,
    Weight,
)
from src.domain.phasespace.schemas import SqueezingParams
from src.domain.phasespace.services import fock, gaussian, weyl

Q, PI, QM, PIM = PhaseVariable.q_k, PhaseVariable.pi_k, PhaseVariable.q_mk, PhaseVariable.pi_mk


class TestWeylTransform:
    """Test symbols of ordered products."""

    def test_linear_symbols_are_variables(self):
        for var in PhaseVariable:
            symbol = weyl.weyl_transform(OrderedOperatorExpr.symbol(var))
            assert symbol.max_abs_difference(PhasePolynomial.variable(var)) == 0.0

    def test_ordering_shifts_by_half_i(self):
        """q pi -> q pi + i/2 and pi q -> q pi - i/2."""
        qp = weyl.weyl_transform(OrderedOperatorExpr.from_products([(1.0, [Q, PI])]))
        pq = weyl.weyl_transform(OrderedOperatorExpr.from_products([(1.0, [PI, Q])]))
        product = PhasePolynomial.variable(Q) * PhasePolynomial.variable(PI)
        assert qp.max_abs_difference(product + PhasePolynomial.constant(0.5j)) < 1e-15
        assert pq.max_abs_difference(product - PhasePolynomial.constant(0.5j)) < 1e-15

    def test_different_modes_commute(self):
        ab = weyl.weyl_transform(OrderedOperatorExpr.from_products([(1.0, [Q, PIM])]))
        ba = weyl.weyl_transform(OrderedOperatorExpr.from_products([(1.0, [PIM, Q])]))
        assert ab.max_abs_difference(ba) == 0.0

    def test_adjoint_conjugates_the_symbol(self, rng):
        expr = weyl.random_operator_expr(rng, max_degree=5, terms=4)
        symbol = weyl.weyl_transform(expr)
        adjoint = weyl.weyl_transform(expr.adjoint())
        conjugated = PhasePolynomial({e: c.conjugate() for e, c in symbol.coefficients.items()})
        assert adjoint.max_abs_difference(conjugated) < 1e-12
        assert weyl.weyl_transform(expr.symmetrized()).is_real()

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_zeta_powers_are_classical(self, n):
        """Powers of a linear combination are already Weyl ordered."""
        for k in (1.0, 0.3):
            quantum = weyl.weyl_transform(weyl.zeta_composite(n, k))
            assert quantum.max_abs_difference(weyl.zeta_classical(n, k)) < 1e-12

    def test_zeta_power_bounds(self):
        with pytest.raises(RangeError):
            weyl.zeta_composite(0)
        with pytest.raises(RangeError):
            weyl.zeta_classical(weyl.ZETA_MAX_POWER + 1)
        with pytest.raises(RangeError):
            weyl.zeta_composite(2, k=0.0)

    def test_random_expressions_respect_bounds(self, rng):
        expr = weyl.random_operator_expr(rng, max_degree=3, terms=5)
        assert len(expr.terms) == 5
        assert 1 <= expr.degree <= 3
        with pytest.raises(RangeError):
            weyl.random_operator_expr(rng, max_degree=0)


class TestAverages:
    """Test stochastic and Fock averages."""

    def test_vacuum_moments(self):
        vacuum = GaussianState.vacuum()
        assert weyl.gaussian_moment((2, 0, 0, 0), vacuum) == pytest.approx(0.5)
        assert weyl.gaussian_moment((4, 0, 0, 0), vacuum) == pytest.approx(0.75)
        assert weyl.gaussian_moment((2, 0, 2, 0), vacuum) == pytest.approx(0.25)
        assert weyl.gaussian_moment((1, 0, 0, 0), vacuum) == 0.0

    def test_vacuum_ordered_product(self):
        """<0| q pi |0> = i/2 on both sides."""
        expr = OrderedOperatorExpr.from_products([(1.0, [Q, PI])])
        quantum, stochastic = weyl.average_equivalence(expr, SqueezingParams(r=0.0))
        assert quantum == pytest.approx(0.5j, abs=1e-14)
        assert stochastic == pytest.approx(0.5j, abs=1e-14)

    @pytest.mark.parametrize("r, phi", [(0.0, 0.3), (0.7, -1.2), (1.0, 0.3)])
    def test_random_expressions_agree(self, rng, r, phi):
        state = SqueezingParams(r=r, phi=phi)
        for _ in range(6):
            quantum, stochastic = weyl.average_equivalence(weyl.random_operator_expr(rng), state)
            assert abs(quantum - stochastic) / max(1.0, abs(stochastic)) < 1e-7

    def test_zeta_average(self):
        """<zeta^2> in the squeezed state equals its stochastic average."""
        quantum, stochastic = weyl.average_equivalence(weyl.zeta_composite(2), SqueezingParams(r=0.8, phi=0.5))
        assert quantum == pytest.approx(stochastic, abs=1e-9)

    def test_quantum_average_needs_two_modes(self):
        with pytest.raises(DimensionError):
            weyl.quantum_average(OrderedOperatorExpr.symbol(Q), SqueezingParams(r=0.0), state=fock.fock_basis_vector(0, 2))

    def test_degree_limit(self):
        poly = PhasePolynomial.monomial((4, 0, 0, 0)) * PhasePolynomial.monomial((0, 4, 0, 0))
        assert poly.degree == 8
        assert weyl.stochastic_average(poly, GaussianState.vacuum()).real > 0.0


class TestSampling:
    """Test Monte Carlo samples from a Gaussian Wigner function."""

    def test_sample_covariance(self):
        state = gaussian.covariance_from_squeezing(SqueezingParams(r=0.5, phi=0.2))
        samples = weyl.sample_wigner(state, 40_000, seed=7)
        assert samples.shape == (40_000, 4)
        assert np.allclose(np.cov(samples.T), 0.5 * state.covariance, atol=0.03)

    def test_deterministic_for_a_seed(self):
        state = GaussianState.vacuum()
        assert np.array_equal(weyl.sample_wigner(state, 5, seed=3), weyl.sample_wigner(state, 5, seed=3))

    def test_count_must_be_positive(self):
        with pytest.raises(RangeError):
            weyl.sample_wigner(GaussianState.vacuum(), 0, seed=1)


class TestSingleModeSymbols:
    """Test numerical Weyl symbols and phase-space averages of one mode."""

    def test_projector_symbol(self, phase_grid):
        """|0><0| has symbol 2 exp(-q^2 - p^2)."""
        q, p = phase_grid
        projector = OperatorMatrix(np.diag([1.0, 0.0, 0.0]).astype(complex), hermitian=True)
        values = weyl.weyl_symbol_numeric(projector, q, p)
        assert np.max(np.abs(values - 2.0 * np.exp(-(q**2) - p**2))) < 1e-10

    def test_kernel_symbol(self):
        sign = PositionOperator.multiplication(Weight.sign())
        assert weyl.weyl_symbol_numeric(sign, 0.5, 3.0) == pytest.approx(1.0)
        assert weyl.weyl_symbol_numeric(sign, -0.5, 3.0) == pytest.approx(-1.0)

    def test_two_mode_matrix_rejected(self):
        with pytest.raises(DimensionError):
            weyl.weyl_symbol_numeric(OperatorMatrix(np.eye(4, dtype=complex), modes=2), 0.0, 0.0)

    @pytest.mark.parametrize("n, expected", [(0, 0.5), (1, 1.5)])
    def test_position_variance_of_number_states(self, n, expected):
        poly = PhasePolynomial.monomial((2, 0, 0, 0))
        assert weyl.wigner_average(poly, fock.fock_basis_vector(n, 1)).real == pytest.approx(expected, rel=1e-10)

    def test_energy_of_number_state(self):
        """(q^2 + p^2)/2 averages to n + 1/2."""
        poly = (PhasePolynomial.monomial((2, 0, 0, 0)) + PhasePolynomial.monomial((0, 2, 0, 0))).scaled(0.5)
        assert weyl.wigner_average(poly, fock.fock_basis_vector(3, 4)).real == pytest.approx(3.5, rel=1e-10)

    def test_partner_variables_rejected(self):
        with pytest.raises(DimensionError):
            weyl.wigner_average(PhasePolynomial.variable(QM), fock.fock_basis_vector(0, 1))


def test_symbol_of_squared_momentum():
    """pi^2 is its own symbol; its vacuum average is 1/2."""
    expr = OrderedOperatorExpr.from_products([(1.0, [PI, PI])])
    assert weyl.weyl_transform(expr).max_abs_difference(PhasePolynomial.monomial((0, 2, 0, 0))) == 0.0
    assert weyl.stochastic_average(weyl.weyl_transform(expr), GaussianState.vacuum()) == pytest.approx(0.5)
    assert math.isclose(weyl.quantum_average(expr, SqueezingParams(r=0.0)).real, 0.5, rel_tol=1e-14)
