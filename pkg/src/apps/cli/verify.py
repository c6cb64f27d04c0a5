"""Acceptance suite behind ``phasespace verify``.

Each criterion returns its measured value, the tolerance it was held to and
a verdict. The fast suite shrinks sample counts and leaves the Fock-heavy
pseudo-spin families and the 4D normalizations to the full suite.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Tuple

import numpy as np

from configs.logger import app_logger
from src.core.errors import PhaseSpaceError
from src.core.numerics import Grid1D, integrate_tensor
from src.domain.phasespace.schemas.background import BackgroundModel
from src.domain.phasespace.schemas.spins import SpinFamily
from src.domain.phasespace.schemas.squeezing import SqueezingParams
from src.domain.phasespace.schemas.wavepackets import BellStateParams, CatParams, EprParams, JohansenParams
from src.domain.phasespace.services import (
    dynamics,
    fock,
    gaussian,
    infotheory,
    pseudospin,
    semiclassical,
    wavepackets,
    weyl,
)
from src.infra.factory import create_spin_triple, spin_truncation

log = app_logger.get_logger(__name__, extra_prefix="verify")

BELL_ROOT = 0.989761
TIME_PAIRS = ((0.0, 0.5), (0.3, 1.0), (1.0, 1.0), (-0.5, 2.0), (2.0, 3.0))


class Suite(str, Enum):
    fast = "fast"
    full = "full"


@dataclass(frozen=True)
class CriterionResult:
    id: int
    name: str
    measured: float
    tolerance: str
    passed: bool
    seconds: float
    detail: str = ""


Outcome = Tuple[float, str, bool, str]
Check = Callable[[bool], Outcome]


def check_bell_threshold(full: bool) -> Outcome:
    root = wavepackets.bell_violation_threshold(BellStateParams())
    return root, f"|root - {BELL_ROOT}| < 1e-4", abs(root - BELL_ROOT) < 1e-4, ""


def check_epr_bound(full: bool) -> Outcome:
    scan = wavepackets.epr_bell_scan(EprParams(b=2.0, eps=0.5), t_max=5.0, points=50)
    return scan.maximum, "max B < 2 on a 50x50 grid", scan.maximum < 2.0, f"argmax={scan.argmax}"


def check_johansen(full: bool) -> Outcome:
    rows = wavepackets.johansen_combinations(JohansenParams(q0=1.0, p0=-1.0), np.linspace(0.8, 3.0, 221))
    naive = min(r.naive for r in rows)
    correct = min(r.correct for r in rows)
    return naive, "min naive < 0 and min correct >= 0", naive < 0.0 and correct >= -1e-12, f"min correct={correct:.6g}"


def check_correlator_oracles(full: bool) -> Outcome:
    epr = EprParams(b=2.0, eps=0.5, q0=0.3)
    bell = BellStateParams()
    joh = JohansenParams(q0=1.0, p0=-1.0)
    worst = 0.0
    for t1, t2 in TIME_PAIRS:
        worst = max(
            worst,
            abs(wavepackets.epr_correlator(epr, t1, t2) - wavepackets.epr_correlator_quadrature(epr, t1, t2)),
            abs(wavepackets.bell_correlator(bell, t1, t2) - wavepackets.bell_correlator_quadrature(bell, t1, t2)),
            abs(wavepackets.johansen_correlator(joh, t1, t2) - wavepackets.johansen_correlator_quadrature(joh, t1, t2)),
        )
    return worst, "max |closed - quadrature| < 1e-6", worst < 1e-6, f"{len(TIME_PAIRS)} time pairs per state"


def check_weyl_equivalence(full: bool) -> Outcome:
    rng = np.random.default_rng(20240101)
    count = 50 if full else 12
    worst = 0.0
    for r in (0.0, 1.0, 2.0):
        state = SqueezingParams(r=r, phi=0.3)
        for _ in range(count):
            quantum, stochastic = weyl.average_equivalence(weyl.random_operator_expr(rng), state)
            worst = max(worst, abs(quantum - stochastic) / max(1.0, abs(stochastic)))
    zeta = max(
        weyl.weyl_transform(weyl.zeta_composite(n)).max_abs_difference(weyl.zeta_classical(n))
        for n in range(1, weyl.ZETA_MAX_POWER + 1)
    )
    passed = worst < 1e-7 and zeta < 1e-12
    return worst, "defect / max(1, |avg|) < 1e-7, zeta symbols exact", passed, f"{count} expressions per r, zeta={zeta:.3g}"


def check_discord(full: bool) -> Outcome:
    grid = np.linspace(0.0, 6.0, 601)
    values = np.array([infotheory.discord_tmss(float(r)) for r in grid])
    monotone = bool(np.all(np.diff(values) > 0.0))
    gap5 = abs(infotheory.discord_tmss(5.0) - infotheory.discord_asymptote(5.0))
    gap10 = abs(infotheory.discord_tmss(10.0) - infotheory.discord_asymptote(10.0))
    passed = values[0] == 0.0 and monotone and gap5 < 1e-3 and gap10 < 1e-7
    return gap10, "zero at r=0, increasing, gap < 1e-3 (r=5), < 1e-7 (r=10)", passed, f"gap5={gap5:.3g}"


def check_pseudospin(full: bool) -> Outcome:
    state = SqueezingParams(r=2.0, phi=0.0)
    values = {}
    bw = create_spin_triple(SpinFamily.bw, state=state)
    values["bw"] = pseudospin.maximize_bell(state, bw).value
    zz = 0.0
    for r in (0.0, 0.5, 1.0, 2.0):
        zz = max(zz, abs(pseudospin.correlation_tensor(SqueezingParams(r=r), bw)[2, 2] - 1.0))
    if full:
        gkmr = create_spin_triple(SpinFamily.gkmr, state=state)
        values["gkmr"] = pseudospin.maximize_bell(state, gkmr).value
        zz = max(zz, abs(pseudospin.correlation_tensor(state, gkmr)[2, 2] - 1.0))
        sweep = pseudospin.larsson_ell_sweep(state, np.linspace(0.5, 5.0, 10), spin_truncation(state))
        values["larsson"] = sweep.best.value
    bound = pseudospin.TSIRELSON + 1e-6
    passed = all(2.0 < v <= bound for v in values.values()) and zz < 1e-8
    detail = " ".join(f"{k}={v:.6f}" for k, v in values.items()) + f" zz={zz:.2g}"
    return min(values.values()), "2 < B <= 2 sqrt 2 + 1e-6, |<sz sz> - 1| < 1e-8", passed, detail


def _gaussian_norm(state: SqueezingParams) -> float:
    gamma = gaussian.covariance_from_squeezing(state)
    chol = np.linalg.cholesky(gamma.covariance)
    jac = float(np.prod(np.diag(chol)))

    def integrand(*y):
        pts = np.stack(np.broadcast_arrays(*y), axis=-1) @ chol.T
        return jac * np.asarray(gaussian.wigner_gaussian(gamma, pts))

    return integrate_tensor(integrand, [Grid1D(-6.0, 6.0, 48)] * 4)


def check_gaussian_core(full: bool) -> Outcome:
    axis = np.linspace(-1.5, 1.5, 5)
    grids = np.meshgrid(axis, axis, axis, axis, indexing="ij")
    pts = np.stack(grids, axis=-1)
    worst = det = norm = 0.0
    for r in (0.0, 0.5, 1.0, 2.0):
        for phi in (-1.0, 0.0, 0.7):
            state = SqueezingParams(r=r, phi=phi)
            gamma = gaussian.covariance_from_squeezing(state)
            explicit = gaussian.wigner_tmss_explicit(state, 1.0, *grids)
            worst = max(worst, float(np.max(np.abs(explicit - gaussian.wigner_gaussian(gamma, pts)))))
            det = max(det, abs(gamma.determinant - 1.0))
    for r in (0.0, 0.5, 1.0):
        norm = max(norm, abs(_gaussian_norm(SqueezingParams(r=r, phi=0.4)) - 1.0))
    detail = f"det={det:.2g} norm={norm:.2g}"
    passed = worst < 1e-10 and det < 1e-8 and norm < 1e-6
    if full:
        norms = [
            wavepackets.epr_norm(EprParams(b=2.0, eps=0.5, q0=0.3)),
            wavepackets.normalized_bell_norm(1.0, 2.0, 0.3),
            wavepackets.johansen_norm(JohansenParams(q0=1.0, p0=-1.0)),
        ]
        four_d = max(abs(n - 1.0) for n in norms)
        passed = passed and four_d < 1e-6
        detail += f" 4d={four_d:.2g}"
    return worst, "|explicit - general| < 1e-10, det, norms within 1e-8 / 1e-6", passed, detail


def check_dynamics(full: bool) -> Outcome:
    bg = BackgroundModel(beta=-2.0, eta_end=-0.01, k_eta_ini=-200.0)
    ks = np.geomspace(0.1, 3.2, 6 if full else 3)
    spectrum = dynamics.power_spectrum(bg, ks)
    wronskian = max(rec.wronskian_relative for rec in spectrum.records)
    absolute = max(rec.wronskian_absolute for rec in spectrum.records)
    residual = dynamics.squeezing_ode_residual(BackgroundModel(), 1.0)
    passed = abs(spectrum.tilt) < 0.01 and absolute < 1e-7 and residual < 1e-4
    detail = f"wronskian={absolute:.2g} relative={wronskian:.2g} residual={residual:.2g}"
    return spectrum.tilt, "|n_s - 1| < 0.01, wronskian < 1e-7, residual < 1e-4", passed, detail


def check_semiclassical(full: bool) -> Outcome:
    axis = np.linspace(-3.0, 3.0, 41)
    qq, pp = np.meshgrid(axis, axis, indexing="ij")
    wkb = 0.0
    for r in (0.25, 1.0, 2.0):
        wkb = max(wkb, float(np.max(np.abs(dynamics.onemode_wigner(r, qq, pp) - semiclassical.wkb_wigner_naive(r, qq, pp)))))
    cmp = semiclassical.berry_radial_comparison(10, points=60 if full else 30)
    passed = wkb < 1e-12 and cmp.peak_error < 0.15 and cmp.sign_changes >= 3
    detail = f"wkb={wkb:.2g} sign_changes={cmp.sign_changes}"
    return cmp.peak_error, "WKB < 1e-12, Berry peak error < 0.15, >= 3 sign changes", passed, detail


def check_thermal(full: bool) -> Outcome:
    occupancy = fock.partial_trace_mode(fock.tmss_vector(SqueezingParams(r=1.0), tail_tol=1e-14))
    n = np.arange(occupancy.size)
    t2 = math.tanh(1.0) ** 2
    geometric = float(np.max(np.abs(occupancy - (1.0 - t2) * t2**n)))
    mean = abs(float(n @ occupancy) - math.sinh(1.0) ** 2)
    return mean, "|<n> - sinh^2 1| < 1e-8, geometric weights", mean < 1e-8 and geometric < 1e-8, f"geometric={geometric:.2g}"


def check_cat(full: bool) -> Outcome:
    c = CatParams(q0=6.0)
    minimum, _ = wavepackets.cat_negativity(c)
    norm = wavepackets.cat_norm(c)
    letter, _ = wavepackets.normalized_bell_negativity(1.0, 2.0, 0.3)
    passed = minimum < 0.0 and abs(norm - 1.0) < 1e-6 and letter < -1e-4
    detail = f"norm={norm:.12f} letter_min={letter:.4g}"
    return minimum, "min W < 0, |norm - 1| < 1e-6, letter min W < -1e-4", passed, detail


CRITERIA: List[Tuple[int, str, Check]] = [
    (1, "bell letter threshold", check_bell_threshold),
    (2, "EPR non-violation", check_epr_bound),
    (3, "Johansen reanalysis", check_johansen),
    (4, "correlator oracles", check_correlator_oracles),
    (5, "Weyl/stochastic equivalence", check_weyl_equivalence),
    (6, "discord curve", check_discord),
    (7, "pseudo-spin violation", check_pseudospin),
    (8, "Gaussian core", check_gaussian_core),
    (9, "dynamics", check_dynamics),
    (10, "WKB and Berry Wigner", check_semiclassical),
    (11, "thermal reduction", check_thermal),
    (12, "cat negativity", check_cat),
]


def run_suite(suite: Suite | str = Suite.fast) -> List[CriterionResult]:
    """Run every criterion; a numerical failure counts as a failed criterion."""
    full = Suite(suite) is Suite.full
    results = []
    for cid, name, check in CRITERIA:
        start = time.perf_counter()
        try:
            measured, tolerance, passed, detail = check(full)
        except PhaseSpaceError as exc:
            measured, tolerance, passed, detail = math.nan, "no error", False, f"{type(exc).__name__}: {exc}"
        seconds = time.perf_counter() - start
        results.append(CriterionResult(cid, name, float(measured), tolerance, bool(passed), seconds, detail))
        app_logger.log_kv(log, logging.INFO, "criterion", id=cid, passed=passed, measured=measured, seconds=seconds)
    return results


def format_report(results: List[CriterionResult]) -> str:
    lines = []
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        lines.append(
            f"{tag}  {res.id:>2}  {res.name:<28} measured={res.measured:.10g}  tol: {res.tolerance}  "
            f"({res.seconds:.2f} s) {res.detail}".rstrip()
        )
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"


__all__ = ["Suite", "CriterionResult", "CRITERIA", "run_suite", "format_report"]
