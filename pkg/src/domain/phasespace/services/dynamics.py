"""Mode evolution on power-law backgrounds and the inverted oscillator.

The Bogoliubov coefficients obey

    u' = -i k u + (z'/z) v^*,      v' = -i k v + (z'/z) u^*,

with u = 1, v = 0 at the start. The squeezing equations for (r, phi) are
singular at r = 0, so they are never integrated; instead (r, phi) are read
off (u, v) and the equations are checked on the result.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from configs.config import get_settings
from configs.logger import app_logger
from src.core.errors import RangeError
from src.core.numerics import OdeProblem, integrate_ode
from src.domain.phasespace.entities.states import BogoliubovPair, ModeRecord
from src.domain.phasespace.entities.trajectories import BogoliubovTrajectory
from src.domain.phasespace.schemas.background import BackgroundModel
from src.domain.phasespace.schemas.squeezing import SqueezingConvention, SqueezingParams

log = app_logger.get_logger(__name__, extra_prefix="dynamics")

MAX_TOLERANCE = 1e-8
SUPER_HUBBLE = 0.1
RESIDUAL_SAMPLES = 50_000


def z_ratio(bg: BackgroundModel, eta: ArrayLike) -> NDArray[np.float64] | float:
    """z'/z = (1 + beta) / eta."""
    value = (1.0 + bg.beta) / np.asarray(eta, dtype=float)
    return float(value) if np.ndim(value) == 0 else value


def z_of_eta(bg: BackgroundModel, eta: ArrayLike) -> NDArray[np.float64] | float:
    """z(eta) = z_end (eta / eta_end)^(1 + beta)."""
    value = bg.z_end * (np.asarray(eta, dtype=float) / bg.eta_end) ** (1.0 + bg.beta)
    return float(value) if np.ndim(value) == 0 else value


def z_second_ratio(bg: BackgroundModel, eta: ArrayLike) -> NDArray[np.float64] | float:
    """z''/z = (1 + beta) beta / eta^2."""
    value = (1.0 + bg.beta) * bg.beta / np.asarray(eta, dtype=float) ** 2
    return float(value) if np.ndim(value) == 0 else value


def _check_k(k: float) -> None:
    if not (math.isfinite(k) and k > 0.0):
        raise RangeError(f"wavenumber must be positive and finite, got {k}")


def evolve_bogoliubov(bg: BackgroundModel, k: float, tol: Optional[float] = None) -> BogoliubovTrajectory:
    """Integrate (u, v) for mode ``k`` from its start time to ``bg.eta_end``.

    Args:
        bg: Background.
        k: Comoving wavenumber.
        tol: Relative integrator tolerance, at most 1e-8 (settings default otherwise).

    Raises:
        RangeError: Invalid ``k`` or ``tol``.
        StiffnessError: Integrator failure.
    """
    _check_k(k)
    cfg = get_settings()
    rel_tol = cfg.ODE_RTOL if tol is None else tol
    if not rel_tol <= MAX_TOLERANCE:
        raise RangeError(f"tolerance must be at most {MAX_TOLERANCE}, got {rel_tol}")
    abs_tol = min(cfg.ODE_ATOL, rel_tol)
    start = bg.start_time(k)
    coupling = 1.0 + bg.beta

    def rhs(eta: float, y: NDArray[np.complex128]) -> NDArray[np.complex128]:
        u, v = y
        g = coupling / eta
        return np.array([-1j * k * u + g * np.conj(v), -1j * k * v + g * np.conj(u)])

    problem = OdeProblem(rhs, np.array([1.0 + 0j, 0j]), (start, bg.eta_end))
    with app_logger.timed(log, "Bogoliubov evolution", k=k, beta=bg.beta) as info:
        solution = integrate_ode(problem, rel_tol, abs_tol)
        nodes = solution.t_nodes
        u, v = solution(nodes)
        drift = np.abs(np.abs(u) ** 2 - np.abs(v) ** 2 - 1.0)
        relative = float(np.max(drift / (np.abs(u) ** 2 + np.abs(v) ** 2)))
        absolute = float(np.max(drift))
        info.update(steps=nodes.size - 1, wronskian_relative=relative, wronskian_absolute=absolute)
    if relative > 10.0 * rel_tol:
        app_logger.log_kv(log, logging.WARNING, "Wronskian drift above 10x tolerance", k=k, relative=relative)
    return BogoliubovTrajectory(k, start, bg.eta_end, solution, relative, absolute)


def squeezing_from_bogoliubov(
    b: BogoliubovPair,
    convention: SqueezingConvention = SqueezingConvention.cosmological,
) -> SqueezingParams:
    """(r, phi) with r = arcsinh|v|.

    ``cosmological``: phi = (arg u + arg v) / 2, for which 2 u v = sinh 2r e^{2 i phi}.
    ``optical``: phi = (arg u + arg(-v)) / 2. phi = 0 when v = 0.

    For u = cosh 1, v = i sinh 1 the default (cosmological) gives phi = +pi/4
    while optical gives -pi/4; pass ``SqueezingConvention.optical`` for the
    quantum-optics sign.
    """
    r = math.asinh(abs(b.v))
    if b.v == 0:
        return SqueezingParams(r=r, phi=0.0)
    v = b.v if convention is SqueezingConvention.cosmological else -b.v
    phi = 0.5 * (math.atan2(b.u.imag, b.u.real) + math.atan2(v.imag, v.real))
    return SqueezingParams(r=r, phi=phi)


def _early_amplitude(traj: BogoliubovTrajectory) -> float:
    """RMS of |u + v^*| over the first oscillation after the start."""
    period = 2.0 * math.pi / traj.k
    stop = min(traj.eta_start + period, 0.5 * (traj.eta_start + traj.eta_end))
    u, v = traj.sample(np.linspace(traj.eta_start, stop, 64))
    return float(np.sqrt(np.mean(np.abs(u + np.conj(v)) ** 2)))


def mode_function(bg: BackgroundModel, k: float, tol: Optional[float] = None) -> ModeRecord:
    """Late-time |zeta_k|^2 and squeezing of mode ``k``.

    zeta_k = (u + v^*) / (sqrt(2k) z). ``early_amplitude`` is sqrt(2k) |z zeta_k|
    near the start, which tends to one deep inside the Hubble radius.
    """
    traj = evolve_bogoliubov(bg, k, tol)
    final = traj.final
    z_zeta = (final.u + final.v.conjugate()) / math.sqrt(2.0 * k)
    return ModeRecord(
        k=k,
        zeta_mod2=abs(z_zeta) ** 2 / bg.z_end**2,
        squeeze=squeezing_from_bogoliubov(final),
        super_hubble=abs(k * bg.eta_end) < SUPER_HUBBLE,
        wronskian_relative=traj.wronskian_relative,
        wronskian_absolute=traj.wronskian_absolute,
        early_amplitude=_early_amplitude(traj),
    )


def de_sitter_exact_mode(k: float, eta_ini: float, eta: ArrayLike) -> NDArray[np.complex128]:
    """Closed-form de Sitter z zeta_k with the same initial data as the Bogoliubov run.

    The solution is a f + b f^* with f = e^{-i k eta} (1 - i/(k eta)) / sqrt(2k);
    a and b match (z zeta_k)(eta_ini) = 1/sqrt(2k) and its derivative (-i k + g)/sqrt(2k).
    """
    _check_k(k)
    norm = 1.0 / math.sqrt(2.0 * k)

    def f(x: ArrayLike) -> NDArray[np.complex128]:
        x = np.asarray(x, dtype=float)
        return np.exp(-1j * k * x) * (1.0 - 1j / (k * x)) * norm

    def df(x: float) -> complex:
        phase = complex(np.exp(-1j * k * x))
        return (-1j * k * phase * (1.0 - 1j / (k * x)) + phase * 1j / (k * x * x)) * norm

    g0 = -1.0 / eta_ini
    f0 = complex(f(eta_ini))
    d0 = df(eta_ini)
    matrix = np.array([[f0, f0.conjugate()], [d0, d0.conjugate()]])
    rhs = np.array([norm, (-1j * k + g0) * norm])
    a, b = np.linalg.solve(matrix, rhs)
    fx = f(eta)
    return a * fx + b * np.conj(fx)


def _log_grid(start: float, end: float, samples: int) -> NDArray[np.float64]:
    """eta = -exp(x) with x uniform, so d/deta = (1/eta) d/dx."""
    return -np.exp(np.linspace(math.log(-start), math.log(-end), samples))


def mode_equation_residual(bg: BackgroundModel, k: float, *, samples: int = RESIDUAL_SAMPLES) -> float:
    """Max relative residual of (z zeta)'' + (k^2 - z''/z)(z zeta) along the run.

    Second derivatives are central differences in x = ln(-eta), converted with
    d^2/deta^2 = (d^2/dx^2 - d/dx) / eta^2.
    """
    traj = evolve_bogoliubov(bg, k)
    eta = _log_grid(traj.eta_start, traj.eta_end, samples)
    dx = math.log(-traj.eta_end) - math.log(-traj.eta_start)
    h = dx / (samples - 1)
    s = traj.mode(eta)
    s_x = np.gradient(s, h)
    s_xx = np.gradient(s_x, h)
    second = (s_xx - s_x) / eta**2
    potential = k * k - z_second_ratio(bg, eta)
    scale = (k * k + np.abs(z_second_ratio(bg, eta))) * np.abs(s)
    residual = np.abs(second + potential * s) / scale
    interior = residual[3:-3]
    worst = float(np.max(interior))
    app_logger.log_kv(log, logging.INFO, "mode equation residual", k=k, residual=worst)
    return worst


@dataclass(frozen=True)
class SqueezingTrajectory:
    """Squeezing parameters along a run (cosmological convention, phi continuous)."""

    eta: NDArray[np.float64]
    r: NDArray[np.float64]
    phi: NDArray[np.float64]


def squeezing_trajectory(bg: BackgroundModel, k: float, *, samples: int = 2000) -> SqueezingTrajectory:
    """(eta, r, phi) on a grid uniform in ln(-eta)."""
    traj = evolve_bogoliubov(bg, k)
    eta = _log_grid(traj.eta_start, traj.eta_end, samples)
    return _extract(traj, eta)


def _extract(traj: BogoliubovTrajectory, eta: NDArray[np.float64]) -> SqueezingTrajectory:
    u, v = traj.sample(eta)
    r = np.arcsinh(np.abs(v))
    phi = 0.5 * (np.unwrap(np.angle(u)) + np.unwrap(np.angle(v)))
    return SqueezingTrajectory(eta=eta, r=r, phi=phi)


def squeezing_ode_residual(
    bg: BackgroundModel,
    k: float,
    *,
    samples: int = RESIDUAL_SAMPLES,
    min_sinh_r: float = 1e-3,
) -> float:
    """Max relative residual of r' = g cos 2phi and phi' = -k - g coth 2r sin 2phi.

    Evaluated where sinh r exceeds ``min_sinh_r``, so the phase of v is defined.
    """
    traj = evolve_bogoliubov(bg, k)
    eta = _log_grid(traj.eta_start, traj.eta_end, samples)
    h = (math.log(-traj.eta_end) - math.log(-traj.eta_start)) / (samples - 1)
    path = _extract(traj, eta)
    g = z_ratio(bg, eta)
    r_eta = np.gradient(path.r, h) / eta
    phi_eta = np.gradient(path.phi, h) / eta
    mask = np.sinh(path.r) > min_sinh_r
    mask[:3] = mask[-3:] = False
    if not mask.any():
        return 0.0
    with np.errstate(divide="ignore"):
        coth = 1.0 / np.tanh(2.0 * path.r[mask])
    gm = g[mask]
    two_phi = 2.0 * path.phi[mask]
    res_r = np.abs(r_eta[mask] - gm * np.cos(two_phi)) / (np.abs(gm) + k)
    res_phi = np.abs(phi_eta[mask] + k + gm * coth * np.sin(two_phi)) / (k + np.abs(gm) * coth)
    worst = float(max(res_r.max(), res_phi.max()))
    app_logger.log_kv(log, logging.INFO, "squeezing equation residual", k=k, residual=worst, points=int(mask.sum()))
    return worst


@dataclass(frozen=True)
class PowerSpectrum:
    """P_zeta(k) = k^3 |zeta_k|^2 / (2 pi^2) with a log-log fit over the frozen modes.

    Attributes:
        records: One :class:`ModeRecord` per wavenumber, ordered by k.
        power: P_zeta per record.
        tilt: n_s - 1 fitted over super-Hubble modes.
        flagged: Wavenumbers not super-Hubble at eta_end (left out of the fit).
    """

    records: List[ModeRecord]
    power: NDArray[np.float64]
    tilt: float
    flagged: List[float] = field(default_factory=list)

    @property
    def k(self) -> NDArray[np.float64]:
        return np.array([rec.k for rec in self.records])


def power_spectrum(bg: BackgroundModel, k_list: Sequence[float], tol: Optional[float] = None) -> PowerSpectrum:
    """Evolve every mode in ``k_list`` and fit ln P against ln k.

    Raises:
        RangeError: ``k_list`` spans less than a decade, or fewer than two modes freeze out.
    """
    ks = sorted(float(k) for k in k_list)
    if not ks or ks[0] <= 0.0:
        raise RangeError("wavenumbers must be positive")
    if ks[-1] / ks[0] < 10.0 * (1.0 - 1e-12):
        raise RangeError(f"k range [{ks[0]}, {ks[-1]}] spans less than a decade")
    records = [mode_function(bg, k, tol) for k in ks]
    power = np.array([rec.k**3 * rec.zeta_mod2 / (2.0 * math.pi**2) for rec in records])
    frozen = np.array([rec.super_hubble for rec in records])
    flagged = [rec.k for rec in records if not rec.super_hubble]
    if frozen.sum() < 2:
        raise RangeError("fewer than two modes are super-Hubble at eta_end")
    slope, _ = np.polyfit(np.log(np.array(ks)[frozen]), np.log(power[frozen]), 1)
    app_logger.log_kv(log, logging.INFO, "power spectrum", modes=len(ks), beta=bg.beta, tilt=float(slope), flagged=len(flagged))
    return PowerSpectrum(records=records, power=power, tilt=float(slope), flagged=flagged)


def inverted_oscillator_state(omega: float, t: float) -> SqueezingParams:
    """Squeezing of the inverted oscillator ground state after time ``t``: r = omega t, phi = -pi/4."""
    if t < 0.0:
        raise RangeError(f"time must be nonnegative, got {t}")
    if not omega > 0.0:
        raise RangeError(f"frequency must be positive, got {omega}")
    return SqueezingParams(r=omega * t, phi=-0.25 * math.pi)


def inverted_oscillator_bogoliubov(omega: float, t: float) -> BogoliubovPair:
    """Closed-form coefficients u = cosh(omega t), v = i sinh(omega t)."""
    if t < 0.0:
        raise RangeError(f"time must be nonnegative, got {t}")
    return BogoliubovPair(complex(math.cosh(omega * t)), 1j * math.sinh(omega * t))


def onemode_wavefunction(r: float, q: ArrayLike) -> NDArray[np.complex128] | complex:
    """Squeezed ground state [pi cosh 2r]^{-1/4} exp[-q^2/(2 cosh 2r) + (i/2) q^2 tanh 2r - (i/2) arctan(tanh r)]."""
    if r < 0.0:
        raise RangeError(f"r must be nonnegative, got {r}")
    c = math.cosh(2.0 * r)
    qa = np.asarray(q, dtype=float)
    exponent = -qa**2 / (2.0 * c) + 0.5j * qa**2 * math.tanh(2.0 * r) - 0.5j * math.atan(math.tanh(r))
    value = (math.pi * c) ** -0.25 * np.exp(exponent)
    return complex(value) if value.ndim == 0 else value


def wkb_quality(r: float) -> float:
    """|C dS/dq / (dC/dq)| = sinh 2r; large values mean the WKB form is accurate."""
    if r < 0.0:
        raise RangeError(f"r must be nonnegative, got {r}")
    return math.sinh(2.0 * r)


def onemode_wigner(r: float, q: ArrayLike, p: ArrayLike) -> NDArray[np.float64] | float:
    """(1/pi) exp(-q^2 / cosh 2r) exp(-cosh 2r (p - q tanh 2r)^2)."""
    if r < 0.0:
        raise RangeError(f"r must be nonnegative, got {r}")
    c = math.cosh(2.0 * r)
    qa, pa = np.asarray(q, dtype=float), np.asarray(p, dtype=float)
    value = np.exp(-qa**2 / c - c * (pa - qa * math.tanh(2.0 * r)) ** 2) / math.pi
    return float(value) if np.ndim(value) == 0 else value


def delta_eps_width(r: float) -> float:
    """epsilon = 1 / (4 cosh 2r)."""
    if r < 0.0:
        raise RangeError(f"r must be nonnegative, got {r}")
    return 0.25 / math.cosh(2.0 * r)


def delta_eps_representation(r: float, q: ArrayLike, p: ArrayLike) -> NDArray[np.float64] | float:
    """|C(q)|^2 delta_eps(p - q tanh 2r) with delta_eps(x) = exp(-x^2/(4 eps)) / (2 sqrt(pi eps))."""
    eps = delta_eps_width(r)
    c = math.cosh(2.0 * r)
    qa, pa = np.asarray(q, dtype=float), np.asarray(p, dtype=float)
    amplitude = np.exp(-qa**2 / c) / math.sqrt(math.pi * c)
    x = pa - qa * math.tanh(2.0 * r)
    value = amplitude * np.exp(-(x**2) / (4.0 * eps)) / (2.0 * math.sqrt(math.pi * eps))
    return float(value) if np.ndim(value) == 0 else value


__all__ = [
    "z_ratio",
    "z_of_eta",
    "z_second_ratio",
    "evolve_bogoliubov",
    "squeezing_from_bogoliubov",
    "mode_function",
    "de_sitter_exact_mode",
    "mode_equation_residual",
    "SqueezingTrajectory",
    "squeezing_trajectory",
    "squeezing_ode_residual",
    "PowerSpectrum",
    "power_spectrum",
    "inverted_oscillator_state",
    "inverted_oscillator_bogoliubov",
    "onemode_wavefunction",
    "wkb_quality",
    "onemode_wigner",
    "delta_eps_width",
    "delta_eps_representation",
]
