"""Semiclassical Wigner functions.

Two constructions are provided. The naive WKB form |C(q)|^2 delta_eps(p - S'(q))
concentrates on the classical momentum S'(q); for the squeezed ground state it
is exact. The chord construction for the harmonic oscillator H = (q^2 + p^2)/2
at E = n + 1/2 pairs every interior point with the chord of the energy circle
that has it as midpoint, and evaluates an Airy function of the area enclosed
between the chord and the arc.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from configs.logger import app_logger
from src.core.errors import DomainError, RangeError
from src.core.numerics import airy_ai
from src.domain.phasespace.services.dynamics import delta_eps_width
from src.domain.phasespace.services.fock import fock_basis_vector, wigner_numeric

log = app_logger.get_logger(__name__, extra_prefix="semiclassical")

BERRY_MAX_N = 30
RIDGE_MARGIN = 0.1
_FOCAL_RADIUS = 1e-12


def wkb_amplitude_sq(r: float, q: ArrayLike) -> NDArray[np.float64] | float:
    """|C(q)|^2 = exp(-q^2 / cosh 2r) / sqrt(pi cosh 2r)."""
    if r < 0.0:
        raise RangeError(f"r must be nonnegative, got {r}")
    c = math.cosh(2.0 * r)
    qa = np.asarray(q, dtype=float)
    value = np.exp(-(qa**2) / c) / math.sqrt(math.pi * c)
    return float(value) if value.ndim == 0 else value


def wkb_momentum(r: float, q: ArrayLike) -> NDArray[np.float64] | float:
    """Classical momentum dS/dq = q tanh 2r of the squeezed ground state."""
    value = np.asarray(q, dtype=float) * math.tanh(2.0 * r)
    return float(value) if value.ndim == 0 else value


def delta_eps(x: ArrayLike, eps: float) -> NDArray[np.float64] | float:
    """Nascent delta exp(-x^2 / (4 eps)) / (2 sqrt(pi eps))."""
    if not eps > 0.0:
        raise RangeError(f"eps must be positive, got {eps}")
    xa = np.asarray(x, dtype=float)
    value = np.exp(-(xa**2) / (4.0 * eps)) / (2.0 * math.sqrt(math.pi * eps))
    return float(value) if value.ndim == 0 else value


def wkb_wigner_naive(r: float, q: ArrayLike, p: ArrayLike) -> NDArray[np.float64] | float:
    """|C(q)|^2 delta_eps(p - q tanh 2r) with eps = 1/(4 cosh 2r)."""
    eps = delta_eps_width(r)
    pa = np.asarray(p, dtype=float)
    value = np.asarray(wkb_amplitude_sq(r, q)) * np.asarray(delta_eps(pa - wkb_momentum(r, q), eps))
    return float(value) if value.ndim == 0 else value


def chord_geometry(n: int, q: ArrayLike, p: ArrayLike):
    """Half-chord, segment area and endpoint cross product for the chord centered at (q, p).

    Returns:
        Tuple (h, area, cross) of arrays shaped like the broadcast of q and p.

    Raises:
        RangeError: If n lies outside [1, 30].
        DomainError: At the focal point (q, p) = 0 or within the ridge margin of the circle.
    """
    if not 1 <= n <= BERRY_MAX_N:
        raise RangeError(f"n must lie in [1, {BERRY_MAX_N}], got {n}")
    radius_sq = 2.0 * n + 1.0
    radius = math.sqrt(radius_sq)
    d = np.hypot(np.asarray(q, dtype=float), np.asarray(p, dtype=float))
    if np.any(d > radius - RIDGE_MARGIN):
        raise DomainError(f"point outside the energy circle of radius {radius:.6g} less margin {RIDGE_MARGIN}")
    if np.any(d < _FOCAL_RADIUS):
        raise DomainError("the circle center is the focal point of every diameter")
    h = np.sqrt(radius_sq - d**2)
    area = radius_sq * np.arccos(d / radius) - d * h
    cross = 2.0 * h * d
    return h, area, cross


def berry_wigner_ho(n: int, q: ArrayLike, p: ArrayLike) -> NDArray[np.float64] | float:
    """Airy-uniform semiclassical Wigner function of the n-th oscillator eigenstate.

    W = (1/2 pi) 2 sqrt(2) (3A/2)^{1/6} D^{-1/2} Ai(-(3A/2)^{2/3}), where A is
    the area between the chord and the arc and D the cross product of the
    chord endpoints. Normalized so that the ridge integrates to one.
    """
    _, area, cross = chord_geometry(n, q, p)
    scaled = 1.5 * area
    value = 2.0 * math.sqrt(2.0) * scaled ** (1.0 / 6.0) / np.sqrt(cross) * airy_ai(-(scaled ** (2.0 / 3.0)))
    value = np.asarray(value) / (2.0 * math.pi)
    return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class RadialComparison:
    """Berry form against the quadrature Wigner function along one ray.

    Attributes:
        d: Distances from the circle center.
        berry: Semiclassical values.
        exact: Wigner function of the number state by quadrature.
        peak_error: Max |berry - exact| over the ridge window, relative to max |exact| there.
        sign_changes: Sign changes of ``berry`` along the ray.
    """

    d: NDArray[np.float64]
    berry: NDArray[np.float64]
    exact: NDArray[np.float64]
    peak_error: float
    sign_changes: int


def berry_radial_comparison(
    n: int,
    *,
    points: int = 60,
    angle: float = 0.0,
    window_start: float = 0.55,
    floor: float = 0.01,
) -> RadialComparison:
    """Compare ``berry_wigner_ho`` with the number-state Wigner function on a ray.

    The ray runs from 5% of the radius to the ridge margin. Errors are taken
    where |W| > ``floor`` and d >= ``window_start`` R, where the uniform
    approximation is meant to hold.
    """
    radius = math.sqrt(2.0 * n + 1.0)
    d = np.linspace(0.05 * radius, radius - RIDGE_MARGIN, points)
    q, p = d * math.cos(angle), d * math.sin(angle)
    berry = np.asarray(berry_wigner_ho(n, q, p))
    exact = np.asarray(wigner_numeric(fock_basis_vector(n, n), q, p))
    window = (d >= window_start * radius) & (np.abs(exact) > floor)
    if not window.any():
        raise DomainError("no sample of the ray lies in the comparison window")
    peak = float(np.max(np.abs(exact[window])))
    peak_error = float(np.max(np.abs(berry[window] - exact[window]))) / peak
    signs = np.sign(berry[np.abs(berry) > 1e-12])
    sign_changes = int(np.count_nonzero(signs[1:] != signs[:-1]))
    app_logger.log_kv(log, logging.INFO, "berry comparison", n=n, peak_error=peak_error, sign_changes=sign_changes)
    return RadialComparison(d=d, berry=berry, exact=exact, peak_error=peak_error, sign_changes=sign_changes)


__all__ = [
    "BERRY_MAX_N",
    "wkb_amplitude_sq",
    "wkb_momentum",
    "delta_eps",
    "wkb_wigner_naive",
    "chord_geometry",
    "berry_wigner_ho",
    "RadialComparison",
    "berry_radial_comparison",
]
