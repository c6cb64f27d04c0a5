"""Tests for pseudo-spin families and their CHSH values."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.errors import DimensionError, RangeError, TruncationError
from src.domain.phasespace.schemas import MeasurementSetting, OperatorClass, SpinFamily, SqueezingParams
from src.domain.phasespace.services import pseudospin
from src.infra.factory import create_spin_triple


class TestFamilies:
    """Construction and algebra of the three families."""

    @pytest.mark.parametrize("N", [9, 10])
    def test_bw_algebra_is_exact(self, N):
        triple = pseudospin.bw_triple(N)
        assert triple.handedness == 1
        assert pseudospin.spin_algebra_defect(triple) < 1e-14

    def test_bw_unpaired_level_breaks_the_algebra(self):
        """With even N the last level has sx = 0."""
        triple = pseudospin.bw_triple(8)
        assert pseudospin.spin_algebra_defect(triple, levels=9) >= 1.0
        assert pseudospin.spin_algebra_defect(triple) < 1e-14

    def test_gkmr_is_left_handed(self):
        triple = pseudospin.gkmr_triple(21)
        assert triple.handedness == -1
        assert np.allclose(np.diag(triple.sz.entries), [-((-1.0) ** n) for n in range(22)])
        assert pseudospin.kernel_algebra_defect(triple) < 1e-12

    def test_gkmr_sx_couples_opposite_parities(self):
        sx = pseudospin.gkmr_triple(11).sx.entries
        parity = np.add.outer(np.arange(12), np.arange(12)) % 2
        assert np.all(sx[parity == 0] == 0.0)
        assert sx[0, 1] == pytest.approx(math.sqrt(2.0 / math.pi), rel=1e-9)

    @pytest.mark.parametrize("ell", [0.5, 1.0, 2.7])
    def test_larsson_kernels_satisfy_the_algebra(self, ell):
        triple = pseudospin.larsson_triple(15, ell)
        assert triple.ell == ell
        assert pseudospin.kernel_algebra_defect(triple) < 1e-12

    @pytest.mark.parametrize("ell", [0.05, 12.0])
    def test_larsson_bin_width_range(self, ell):
        with pytest.raises(RangeError):
            pseudospin.larsson_triple(9, ell)

    def test_bw_has_no_kernels(self):
        with pytest.raises(DimensionError):
            pseudospin.kernel_algebra_defect(pseudospin.bw_triple(5))

    def test_truncation_must_be_positive(self):
        with pytest.raises(RangeError):
            pseudospin.bw_triple(0)

    def test_spin_along(self):
        triple = pseudospin.bw_triple(5)
        assert np.allclose(pseudospin.spin_along(triple, MeasurementSetting(theta=0.0)).entries, triple.sz.entries)
        assert np.allclose(pseudospin.spin_along(triple, MeasurementSetting(theta=math.pi / 2)).entries, triple.sx.entries)


class TestCorrelations:
    """Correlation tensor and CHSH maximization."""

    @pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 2.0])
    def test_bw_zz_correlation_is_perfect(self, r):
        state = SqueezingParams(r=r)
        tensor = pseudospin.correlation_tensor(state, create_spin_triple(SpinFamily.bw, state=state))
        assert tensor[2, 2] == pytest.approx(1.0, abs=1e-8)

    def test_truncation_too_small_for_state(self):
        with pytest.raises(TruncationError) as info:
            pseudospin.correlation_tensor(SqueezingParams(r=2.0), pseudospin.bw_triple(9))
        assert info.value.required > 9

    def test_correlator_matches_tensor(self):
        state = SqueezingParams(r=1.0, phi=0.2)
        triple = create_spin_triple(SpinFamily.bw, state=state)
        tensor = pseudospin.correlation_tensor(state, triple)
        a, b = 0.4, 1.3
        expected = np.array([math.sin(a), 0.0, math.cos(a)]) @ tensor @ np.array([math.sin(b), 0.0, math.cos(b)])
        value = pseudospin.correlator_E(state, triple, MeasurementSetting(theta=a), MeasurementSetting(theta=b))
        assert value == pytest.approx(expected)

    def test_bell_mean_needs_four_settings(self):
        state = SqueezingParams(r=0.5)
        triple = create_spin_triple(SpinFamily.bw, state=state)
        with pytest.raises(DimensionError):
            pseudospin.bell_mean(state, triple, [MeasurementSetting(theta=0.0)] * 3)

    def test_singlet_tensor_reaches_tsirelson(self):
        optimum = pseudospin.maximize_tensor_bell(np.diag([1.0, -1.0, 1.0]))
        assert optimum.value == pytest.approx(pseudospin.TSIRELSON, abs=1e-6)
        assert optimum.value >= optimum.grid_value

    def test_classical_tensor_stays_at_two(self):
        optimum = pseudospin.maximize_tensor_bell(np.diag([0.0, 0.0, 1.0]))
        assert optimum.value == pytest.approx(2.0, abs=1e-8)

    def test_bw_violates_at_large_squeezing(self):
        state = SqueezingParams(r=2.0)
        optimum = pseudospin.maximize_bell(state, create_spin_triple(SpinFamily.bw, state=state))
        assert 2.0 < optimum.value <= pseudospin.TSIRELSON + 1e-6
        tensor_value = pseudospin.bell_mean(state, create_spin_triple(SpinFamily.bw, state=state), optimum.settings)
        assert tensor_value == pytest.approx(optimum.value, abs=1e-10)

    def test_no_violation_without_squeezing(self):
        state = SqueezingParams(r=0.0)
        optimum = pseudospin.maximize_bell(state, create_spin_triple(SpinFamily.bw, state=state))
        assert optimum.value <= 2.0 + 1e-8

    def test_chsh_values_match_bell_mean(self, rng):
        state = SqueezingParams(r=1.0)
        triple = create_spin_triple(SpinFamily.bw, state=state)
        tensor = pseudospin.correlation_tensor(state, triple)
        angles = rng.uniform(0.0, math.pi, size=(5, 4))
        values = pseudospin.chsh_values(tensor, angles)
        for row, value in zip(angles, values):
            settings = [MeasurementSetting(theta=float(a)) for a in row]
            assert pseudospin.bell_mean(state, triple, settings) == pytest.approx(float(value), abs=1e-12)
        with pytest.raises(DimensionError):
            pseudospin.chsh_values(tensor, angles[:, :3])

    @pytest.mark.parametrize(
        "family, r",
        [
            (SpinFamily.bw, 0.0),
            (SpinFamily.bw, 1.0),
            (SpinFamily.bw, 2.0),
            pytest.param(SpinFamily.bw, 3.0, marks=pytest.mark.slow),
            (SpinFamily.gkmr, 0.0),
            (SpinFamily.gkmr, 1.0),
            pytest.param(SpinFamily.gkmr, 2.0, marks=pytest.mark.slow),
            pytest.param(SpinFamily.gkmr, 3.0, marks=pytest.mark.slow),
            (SpinFamily.larsson, 0.0),
            (SpinFamily.larsson, 1.0),
            pytest.param(SpinFamily.larsson, 2.0, marks=pytest.mark.slow),
            pytest.param(SpinFamily.larsson, 3.0, marks=pytest.mark.slow),
        ],
    )
    def test_random_settings_respect_tsirelson(self, rng, family, r):
        """10^4 random angle sets never exceed 2 sqrt 2.

        At r = 3 the default tail tolerance needs N > FOCK_MAX_N, so the
        largest allowed odd truncation is used with a looser tolerance.
        """
        state = SqueezingParams(r=r)
        ell = 3.0 if family is SpinFamily.larsson else None
        if r >= 3.0:
            truncation, tail_tol = 599, 1e-2
        else:
            truncation, tail_tol = None, None
        triple = create_spin_triple(family, truncation=truncation, state=state, ell=ell, tail_tol=tail_tol)
        tensor = pseudospin.correlation_tensor(state, triple, tail_tol=tail_tol)
        values = pseudospin.chsh_values(tensor, rng.uniform(0.0, math.pi, size=(10_000, 4)))
        assert values.shape == (10_000,)
        assert float(np.max(values)) <= pseudospin.TSIRELSON + 1e-6

    @pytest.mark.slow
    @pytest.mark.parametrize("r, N", [(1.0, 101), (2.0, 401), (2.5, 601)])
    @pytest.mark.parametrize("build", [pseudospin.bw_triple, pseudospin.gkmr_triple], ids=["bw", "gkmr"])
    def test_doubling_truncation_is_stable(self, build, r, N):
        """Maximal CHSH values at N and 2N + 1 agree to 1e-6."""
        state = SqueezingParams(r=r)
        coarse = pseudospin.maximize_bell(state, build(N), tail_tol=1e-6)
        fine = pseudospin.maximize_bell(state, build(2 * N + 1), tail_tol=1e-6)
        assert abs(fine.value - coarse.value) < 1e-6

    @pytest.mark.slow
    def test_gkmr_violates(self):
        state = SqueezingParams(r=2.0)
        optimum = pseudospin.maximize_bell(state, create_spin_triple(SpinFamily.gkmr, state=state))
        assert 2.0 < optimum.value <= pseudospin.TSIRELSON + 1e-6

    @pytest.mark.slow
    def test_ell_sweep_keeps_the_best(self):
        state = SqueezingParams(r=0.5)
        sweep = pseudospin.larsson_ell_sweep(state, [0.8, 1.6, 3.2], 25, points=8)
        assert sweep.values.shape == (3,)
        assert sweep.best.value == pytest.approx(float(np.max(sweep.values)))
        assert sweep.best_ell == pytest.approx(float(sweep.ells[np.argmax(sweep.values)]))
        with pytest.raises(RangeError):
            pseudospin.larsson_ell_sweep(state, [], 25)


class TestWeylClassification:
    """Proper and improper operators."""

    def test_classifier(self):
        assert pseudospin.classify_weyl_symbol(np.array([1.0, -1.0, 0.9]))[0] is OperatorClass.proper
        label, fraction = pseudospin.classify_weyl_symbol(np.zeros(10))
        assert label is OperatorClass.improper and fraction == 1.0

    def test_grid_avoids_singular_lines(self):
        q, p = pseudospin.symbol_grid()
        assert q.shape == (41, 41)
        assert np.all(np.abs(q) > 1e-6)

    def test_bw_sz_is_improper(self):
        report = pseudospin.proper_improper_report(pseudospin.bw_triple(31))
        assert report.classes["sz"] is OperatorClass.improper
        assert report.improper_count >= 2

    def test_gkmr_reflections_are_improper(self):
        report = pseudospin.proper_improper_report(pseudospin.gkmr_triple(9))
        assert report.classes["sx"] is OperatorClass.proper
        assert report.classes["sz"] is OperatorClass.improper
        assert report.improper_count >= 2

    def test_larsson_ladder_components_are_improper(self):
        report = pseudospin.proper_improper_report(pseudospin.larsson_triple(9, 1.0))
        assert report.classes["sz"] is OperatorClass.proper
        assert report.improper_count >= 2
