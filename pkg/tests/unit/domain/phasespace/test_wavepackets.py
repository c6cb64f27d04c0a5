"""Tests for the cat, EPR, Bell-letter and Johansen wave packets."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.errors import BracketError
from src.core.numerics import Grid1D, integrate_tensor
from src.domain.phasespace.schemas import BellStateParams, CatParams, EprParams, JohansenParams, TimeSettings
from src.domain.phasespace.services import fock, semiclassical, wavepackets

TIME_PAIRS = [(0.0, 0.5), (0.3, 1.0), (1.0, 1.0), (-0.5, 2.0), (2.0, 3.0)]


class TestChshCombination:
    def test_constant_correlator(self):
        ts = TimeSettings(t1=0.0, t2=1.0, t1p=2.0, t2p=3.0)
        assert wavepackets.chsh_combination(lambda a, b: 1.0, ts) == 2.0

    def test_sign_of_the_last_term(self):
        ts = TimeSettings(t1=0.0, t2=1.0, t1p=2.0, t2p=3.0)
        value = wavepackets.chsh_combination(lambda a, b: 1.0 if (a, b) == (2.0, 3.0) else 0.0, ts)
        assert value == -1.0


class TestCatState:
    """Two separated packets and their interference fringe."""

    def test_normalized(self):
        assert wavepackets.cat_norm(CatParams(q0=6.0)) == pytest.approx(1.0, abs=1e-6)

    def test_negative_fringe(self):
        minimum, (q, p) = wavepackets.cat_negativity(CatParams(q0=6.0))
        assert minimum < 0.0
        assert abs(q) < 0.5
        assert wavepackets.cat_wigner(CatParams(q0=6.0), q, p) == pytest.approx(minimum)

    def test_single_packet_limit_is_positive(self):
        minimum, _ = wavepackets.cat_negativity(CatParams(q0=0.0))
        assert minimum > -1e-15

    def test_matches_numeric_transform(self):
        cat = CatParams(q0=1.5, p0=0.4, m=1.3)
        q = np.array([0.0, 1.2, -1.7, 0.4])
        p = np.array([0.3, -0.5, 0.9, 1.4])
        numeric = fock.wigner_numeric(lambda x: wavepackets.cat_wavefunction(cat, x), q, p)
        assert np.allclose(numeric, wavepackets.cat_wigner(cat, q, p), atol=1e-10)

    def test_destructive_superposition_rejected(self):
        with pytest.raises(ValueError):
            CatParams(q0=1e-8, p0=math.pi / 2e-8)


class TestEpr:
    """Gaussian EPR packet and its arcsine correlator."""

    @pytest.fixture
    def epr(self) -> EprParams:
        return EprParams(b=2.0, eps=0.5, q0=0.3)

    @pytest.mark.parametrize("t1, t2", TIME_PAIRS)
    def test_det_a_closed_form(self, epr, t1, t2):
        assert wavepackets.epr_det_a(epr, t1, t2) == pytest.approx(np.linalg.det(wavepackets.epr_a_matrix(epr, t1, t2)), rel=1e-12)

    @pytest.mark.parametrize("t1, t2", TIME_PAIRS)
    def test_closed_form_matches_quadrature(self, epr, t1, t2):
        closed = wavepackets.epr_correlator(epr, t1, t2)
        assert -1.0 <= closed <= 1.0
        assert closed == pytest.approx(wavepackets.epr_correlator_quadrature(epr, t1, t2), abs=1e-6)

    def test_two_time_density_is_normalized(self, epr):
        cov = wavepackets.epr_covariance_matrix(epr, 0.4, 1.1)
        s1, s2 = 10.0 * math.sqrt(cov[0, 0]), 10.0 * math.sqrt(cov[1, 1])
        grids = [Grid1D(-0.15 - s1, -0.15 + s1, 96), Grid1D(0.15 - s2, 0.15 + s2, 96)]
        total = integrate_tensor(lambda x, y: wavepackets.epr_rho(epr, 0.4, 1.1, x, y), grids)
        assert total == pytest.approx(1.0, rel=1e-10)

    def test_no_violation(self):
        scan = wavepackets.epr_bell_scan(EprParams(b=2.0, eps=0.5), t_max=5.0, points=12)
        assert scan.values.shape == (12, 12)
        assert scan.maximum < 2.0

    def test_weakly_correlated_widths_warn(self):
        with pytest.warns(UserWarning):
            EprParams(b=0.5, eps=1.0)

    @pytest.mark.slow
    def test_wigner_normalized(self, epr):
        assert wavepackets.epr_norm(epr) == pytest.approx(1.0, abs=1e-8)


class TestBellLetter:
    """Bell's letter state with its normalization as a free number."""

    def test_violation_threshold(self):
        assert wavepackets.bell_violation_threshold(BellStateParams()) == pytest.approx(0.989761, abs=1e-4)

    def test_threshold_scales_with_width(self):
        root = wavepackets.bell_violation_threshold(BellStateParams(a=2.0))
        assert root == pytest.approx(4.0 * wavepackets.bell_violation_threshold(BellStateParams()), rel=1e-10)

    @pytest.mark.parametrize("bracket", [(0.7, 1.2), (0.9, 1.1), (0.95, 1.05), (0.98, 1.0)])
    def test_threshold_is_independent_of_the_bracket(self, bracket):
        """Any bracket around the root returns the same threshold."""
        reference = wavepackets.bell_violation_threshold(BellStateParams())
        assert wavepackets.bell_violation_threshold(BellStateParams(), bracket=bracket) == pytest.approx(reference, abs=1e-6)

    def test_bracket_without_root(self):
        with pytest.raises(BracketError):
            wavepackets.bell_violation_threshold(BellStateParams(), bracket=(1.5, 3.0))

    @pytest.mark.parametrize("x", [0.5, 0.989761, 1.7])
    def test_chsh_matches_reduced_form(self, x):
        bp = BellStateParams(n_bell_sq=0.3)
        assert wavepackets.bell_chsh(bp, x) == pytest.approx(2.0 - bp.n_bell_sq * wavepackets.bell_chsh_reduced(bp, x))

    @pytest.mark.parametrize("t1, t2", TIME_PAIRS)
    def test_distribution_matches_quadrature(self, t1, t2):
        bp = BellStateParams(q0=0.4)
        delta = np.linspace(-4.0, 4.0, 17)
        assert np.allclose(wavepackets.bell_rho(bp, t1, t2, delta), wavepackets.bell_rho_quadrature(bp, t1, t2, delta), atol=1e-10)

    @pytest.mark.parametrize("t1, t2", TIME_PAIRS)
    def test_correlator_matches_quadrature(self, t1, t2):
        bp = BellStateParams()
        assert wavepackets.bell_correlator(bp, t1, t2) == pytest.approx(wavepackets.bell_correlator_quadrature(bp, t1, t2), abs=1e-6)

    @pytest.mark.slow
    def test_normalized_letter_state(self):
        assert wavepackets.normalized_bell_norm(1.0, 2.0, 0.3) == pytest.approx(1.0, abs=1e-8)


class TestJohansen:
    """Coherent x squeezed state with a positive Wigner function."""

    def test_reduces_to_epr(self):
        j = JohansenParams(q0=0.7, p0=0.0, s=1.3)
        e = j.as_epr()
        rng = np.random.default_rng(5)
        pts = rng.normal(size=(4, 25))
        assert np.allclose(wavepackets.johansen_wigner(j, *pts), wavepackets.epr_wigner(e, *pts), rtol=1e-12, atol=0.0)

    def test_nonzero_momentum_is_not_epr(self):
        with pytest.raises(ValueError):
            JohansenParams(p0=-1.0).as_epr()

    @pytest.mark.parametrize("t1, t2", TIME_PAIRS)
    def test_correlator_matches_quadrature(self, t1, t2):
        j = JohansenParams(q0=1.0, p0=-1.0)
        assert wavepackets.johansen_correlator(j, t1, t2) == pytest.approx(wavepackets.johansen_correlator_quadrature(j, t1, t2), abs=1e-6)

    def test_distribution_matches_quadrature(self):
        j = JohansenParams(q0=1.0, p0=-1.0)
        u = np.linspace(-5.0, 5.0, 21)
        assert np.allclose(wavepackets.johansen_rho(j, 0.5, 1.5, u), wavepackets.johansen_rho_quadrature(j, 0.5, 1.5, u), atol=1e-12)

    def test_naive_combination_goes_negative(self):
        """3F(x) - F(3x) dips below zero, the combination B measures does not."""
        rows = wavepackets.johansen_combinations(JohansenParams(q0=1.0, p0=-1.0), np.linspace(0.8, 3.0, 221))
        assert min(r.naive for r in rows) < 0.0
        assert min(r.correct for r in rows) >= -1e-12
        for row in rows:
            assert row.correct == pytest.approx(row.two_minus_b_over_k, abs=1e-9)

    @pytest.mark.slow
    def test_wigner_normalized(self):
        assert wavepackets.johansen_norm(JohansenParams(q0=1.0, p0=-1.0)) == pytest.approx(1.0, abs=1e-8)


class TestWignerSigns:
    """Sign of the phase-space densities at random points."""

    SAMPLES = 10_000

    def _points(self, rng, dims):
        return rng.uniform(-6.0, 6.0, size=(dims, self.SAMPLES))

    def test_epr_is_nonnegative(self, rng):
        q1, q2, p1, p2 = self._points(rng, 4)
        for e in (EprParams(b=2.0, eps=0.5, q0=0.3), EprParams(b=0.7, eps=3.0)):
            assert np.all(wavepackets.epr_wigner(e, q1, q2, p1, p2) >= 0.0)

    def test_johansen_full_form_is_nonnegative(self, rng):
        q1, q2, p1, p2 = self._points(rng, 4)
        for j in (JohansenParams(), JohansenParams(q0=-0.5, p0=2.0, s=0.2)):
            assert np.all(wavepackets.johansen_wigner(j, q1, q2, p1, p2) >= 0.0)

    @pytest.mark.parametrize("r", [0.25, 1.0, 2.0])
    def test_naive_wkb_is_nonnegative(self, rng, r):
        q, p = self._points(rng, 2)
        assert np.all(semiclassical.wkb_wigner_naive(r, q, p) >= 0.0)

    def test_normalized_letter_goes_negative(self):
        """The minimum sits on the difference plane at x^2 = (7 - sqrt 18) / 2, y = 0."""
        a, b, q0 = 1.0, 2.0, 0.3
        minimum, point = wavepackets.normalized_bell_negativity(a, b, q0)
        assert minimum < -1e-4
        assert wavepackets.normalized_bell_wigner(a, b, q0, *point) == pytest.approx(minimum)
        s = (7.0 - math.sqrt(18.0)) / 2.0
        expected = 4.0 / (11.0 * math.pi**2) * math.exp(-s) * (11.0 / 4.0 + s**2 - 5.0 * s)
        assert minimum == pytest.approx(expected, abs=1e-6)

    def test_normalized_letter_random_points_reach_negative_values(self, rng):
        q1, q2, p1, p2 = rng.uniform(-2.0, 2.0, size=(4, self.SAMPLES))
        values = wavepackets.normalized_bell_wigner(1.0, 2.0, 0.3, q1, q2, p1, p2)
        assert np.min(values) < -1e-4
