"""Tests for mode evolution and the inverted oscillator."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.errors import RangeError
from src.core.numerics import integrate_infinite
from src.domain.phasespace.entities import BogoliubovPair
from src.domain.phasespace.schemas import BackgroundModel, SqueezingConvention
from src.domain.phasespace.services import dynamics, fock


@pytest.fixture
def de_sitter() -> BackgroundModel:
    return BackgroundModel(beta=-2.0, eta_ini=-100.0, eta_end=-0.01)


class TestBackground:
    """Test the power-law pump field."""

    def test_z_normalization(self, de_sitter):
        assert dynamics.z_of_eta(de_sitter, de_sitter.eta_end) == pytest.approx(de_sitter.z_end)
        assert dynamics.z_ratio(de_sitter, -2.0) == pytest.approx(0.5)
        assert dynamics.z_second_ratio(de_sitter, -1.0) == pytest.approx(2.0)

    def test_time_order(self):
        with pytest.raises(ValueError):
            BackgroundModel(eta_ini=-0.01, eta_end=-1.0)

    def test_per_mode_start(self):
        bg = BackgroundModel(k_eta_ini=-200.0)
        assert bg.start_time(4.0) == pytest.approx(-50.0)
        with pytest.raises(ValueError):
            bg.start_time(1e6)


class TestBogoliubovEvolution:
    """Test the (u, v) integration."""

    def test_flat_space_stays_unsqueezed(self):
        """beta = -1 decouples u and v."""
        bg = BackgroundModel(beta=-1.0, eta_ini=-10.0, eta_end=-1.0)
        final = dynamics.evolve_bogoliubov(bg, 2.0).final
        assert abs(final.v) < 1e-12
        assert final.u == pytest.approx(np.exp(-2j * 9.0), abs=1e-8)

    def test_de_sitter_matches_closed_form(self, de_sitter):
        """The integrated mode follows the exact Hankel-function solution."""
        k = 1.0
        traj = dynamics.evolve_bogoliubov(de_sitter, k)
        eta = -np.geomspace(100.0, 0.01, 200)
        numeric = traj.mode(eta)
        exact = dynamics.de_sitter_exact_mode(k, de_sitter.eta_ini, eta)
        assert np.max(np.abs(numeric - exact) / np.abs(exact)) < 1e-6
        assert traj.wronskian_absolute < 1e-7
        assert traj.wronskian_relative < 10.0 * 1e-10

    def test_wronskian_defects_are_absolute_and_relative(self, de_sitter):
        """The absolute defect is unscaled; the relative one divides by |u|^2 + |v|^2."""
        traj = dynamics.evolve_bogoliubov(de_sitter, 1.0)
        u, v = traj.sample(traj.solution.t_nodes)
        drift = np.abs(np.abs(u) ** 2 - np.abs(v) ** 2 - 1.0)
        assert traj.wronskian_absolute == pytest.approx(float(np.max(drift)), rel=1e-12, abs=1e-300)
        assert traj.wronskian_relative == pytest.approx(
            float(np.max(drift / (np.abs(u) ** 2 + np.abs(v) ** 2))), rel=1e-12, abs=1e-300
        )
        assert abs(traj.final.v) ** 2 > 1e3
        assert traj.wronskian_absolute < 1e-7
        assert traj.wronskian_absolute >= traj.wronskian_relative

    def test_power_spectrum_records_carry_both_defects(self):
        record = dynamics.mode_function(BackgroundModel(k_eta_ini=-200.0), 1.0)
        assert record.wronskian_absolute >= record.wronskian_relative
        assert record.wronskian_absolute < 1e-7

    def test_squeezing_grows_after_horizon_exit(self, de_sitter):
        path = dynamics.squeezing_trajectory(de_sitter, 1.0, samples=400)
        assert path.r[-1] > 4.0
        assert path.r[0] == pytest.approx(0.0, abs=1e-12)

    def test_invalid_arguments(self, de_sitter):
        with pytest.raises(RangeError):
            dynamics.evolve_bogoliubov(de_sitter, 0.0)
        with pytest.raises(RangeError):
            dynamics.evolve_bogoliubov(de_sitter, 1.0, tol=1e-6)

    def test_squeezing_equations_hold(self, de_sitter):
        assert dynamics.squeezing_ode_residual(de_sitter, 1.0) < 1e-4

    @pytest.mark.slow
    def test_mode_equation_holds(self, de_sitter):
        assert dynamics.mode_equation_residual(de_sitter, 1.0) < 1e-4


class TestSqueezingExtraction:
    """Test (r, phi) read off Bogoliubov coefficients."""

    def test_conventions_on_inverted_oscillator(self):
        """Optical convention gives phi = -pi/4; cosmological gives +pi/4."""
        pair = dynamics.inverted_oscillator_bogoliubov(1.0, 0.7)
        optical = dynamics.squeezing_from_bogoliubov(pair, SqueezingConvention.optical)
        cosmological = dynamics.squeezing_from_bogoliubov(pair)
        assert optical.r == pytest.approx(0.7)
        assert optical.phi == pytest.approx(-math.pi / 4)
        assert cosmological.phi == pytest.approx(math.pi / 4)
        expected = dynamics.inverted_oscillator_state(1.0, 0.7)
        assert (expected.r, expected.phi) == pytest.approx((optical.r, optical.phi))

    def test_default_is_cosmological(self):
        """u = cosh 1, v = i sinh 1: +pi/4 by default, -pi/4 when asked for optical."""
        pair = BogoliubovPair(complex(math.cosh(1.0)), 1j * math.sinh(1.0))
        assert dynamics.squeezing_from_bogoliubov(pair).phi == pytest.approx(math.pi / 4)
        assert dynamics.squeezing_from_bogoliubov(pair, SqueezingConvention.optical).phi == pytest.approx(-math.pi / 4)
        assert dynamics.squeezing_from_bogoliubov(pair).r == pytest.approx(1.0)

    def test_no_squeezing(self):
        params = dynamics.squeezing_from_bogoliubov(dynamics.inverted_oscillator_bogoliubov(1.0, 0.0))
        assert params.r == 0.0 and params.phi == 0.0

    def test_negative_time(self):
        with pytest.raises(RangeError):
            dynamics.inverted_oscillator_state(1.0, -1.0)
        with pytest.raises(RangeError):
            dynamics.inverted_oscillator_bogoliubov(1.0, -1.0)


class TestPowerSpectrum:
    """Test the late-time spectrum and its tilt."""

    def test_de_sitter_is_scale_invariant(self):
        bg = BackgroundModel(k_eta_ini=-200.0)
        spectrum = dynamics.power_spectrum(bg, np.geomspace(0.1, 3.2, 4))
        assert abs(spectrum.tilt) < 0.01
        assert spectrum.flagged == []
        assert all(rec.wronskian_absolute < 1e-7 for rec in spectrum.records)
        assert all(rec.early_amplitude == pytest.approx(1.0, abs=0.05) for rec in spectrum.records)

    @pytest.mark.slow
    def test_power_law_tilt(self):
        """n_s - 1 = 2 beta + 4."""
        bg = BackgroundModel(beta=-2.02, k_eta_ini=-200.0)
        spectrum = dynamics.power_spectrum(bg, np.geomspace(0.1, 3.2, 5))
        assert spectrum.tilt == pytest.approx(-0.04, abs=0.01)

    def test_sub_hubble_modes_are_flagged(self):
        bg = BackgroundModel(k_eta_ini=-200.0, eta_end=-0.1)
        spectrum = dynamics.power_spectrum(bg, [0.1, 0.5, 3.0])
        assert spectrum.flagged == [3.0]

    @pytest.mark.parametrize("ks", [[0.5, 1.0, 2.0], [0.0, 1.0], []])
    def test_invalid_k_ranges(self, ks, de_sitter):
        with pytest.raises(RangeError):
            dynamics.power_spectrum(de_sitter, ks)


class TestOneModeSqueezedState:
    """Test the single-mode squeezed wavefunction and its Wigner function."""

    def test_normalized(self):
        r = 1.0
        norm = integrate_infinite(lambda q: np.abs(dynamics.onemode_wavefunction(r, q)) ** 2, scale=2.0)
        assert norm == pytest.approx(1.0, rel=1e-12)

    def test_wigner_matches_numeric_transform(self):
        r = 0.5
        q = np.array([0.0, 0.8, -1.5])
        p = np.array([0.1, 0.6, -0.9])
        numeric = fock.wigner_numeric(lambda x: dynamics.onemode_wavefunction(r, x), q, p)
        assert np.allclose(numeric, dynamics.onemode_wigner(r, q, p), atol=1e-10)

    def test_delta_representation_is_exact(self, phase_grid):
        """|C|^2 delta_eps(p - q tanh 2r) with eps = 1/(4 cosh 2r) is the Wigner function itself."""
        q, p = phase_grid
        for r in (0.2, 1.0, 2.0):
            assert np.allclose(dynamics.delta_eps_representation(r, q, p), dynamics.onemode_wigner(r, q, p), atol=1e-14)

    def test_wkb_quality(self):
        assert dynamics.wkb_quality(1.0) == pytest.approx(math.sinh(2.0))
        with pytest.raises(RangeError):
            dynamics.wkb_quality(-1.0)
