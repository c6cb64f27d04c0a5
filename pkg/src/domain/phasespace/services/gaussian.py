"""Gaussian-state core for the two-mode squeezed vacuum.

Phase-space points use the dimensionless ordering
(sqrt(k) q_k, pi_k / sqrt(k), sqrt(k) q_-k, pi_-k / sqrt(k)), so the
wavenumber only enters :func:`wigner_tmss_explicit`.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from configs.config import get_settings
from src.core.errors import DegenerateCovarianceError, DimensionError, RangeError
from src.domain.phasespace.entities.states import J4, BogoliubovPair, GaussianState
from src.domain.phasespace.schemas.squeezing import SqueezingParams


def _points(x: ArrayLike) -> NDArray[np.float64]:
    pts = np.asarray(x, dtype=float)
    if pts.shape[-1:] != (4,):
        raise DimensionError(f"phase-space points need 4 coordinates, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise RangeError("phase-space point has non-finite coordinates")
    return pts


def _squeezing_matrix(r: float, phi: float) -> NDArray[np.float64]:
    c = math.cosh(2.0 * r)
    sc = math.sinh(2.0 * r) * math.cos(2.0 * phi)
    ss = math.sinh(2.0 * r) * math.sin(2.0 * phi)
    return np.array(
        [
            [c, 0.0, sc, ss],
            [0.0, c, ss, -sc],
            [sc, ss, c, 0.0],
            [ss, -sc, 0.0, c],
        ]
    )


def covariance_from_squeezing(p: SqueezingParams) -> GaussianState:
    """Covariance matrix of the two-mode squeezed vacuum with parameters (r, phi)."""
    return GaussianState(_squeezing_matrix(p.r, p.phi))


def covariance_from_bogoliubov(b: BogoliubovPair) -> GaussianState:
    """Covariance generated by c_k -> u c_k + v c_-k^dagger acting on the vacuum.

    gamma_11 = 1 + 2|v|^2 and gamma_13 + i gamma_14 = 2 u v.
    """
    diag = 1.0 + 2.0 * abs(b.v) ** 2
    uv = 2.0 * b.u * b.v
    sc, ss = uv.real, uv.imag
    gamma = np.array(
        [
            [diag, 0.0, sc, ss],
            [0.0, diag, ss, -sc],
            [sc, ss, diag, 0.0],
            [ss, -sc, 0.0, diag],
        ]
    )
    return GaussianState(gamma)


def is_physical(gamma: ArrayLike, *, tol: float | None = None) -> bool:
    """Whether ``gamma`` is symmetric and satisfies gamma + iJ >= 0."""
    g = np.asarray(gamma, dtype=float)
    if g.shape != (4, 4) or not np.all(np.isfinite(g)):
        return False
    scale = max(1.0, float(np.max(np.abs(g))))
    if np.max(np.abs(g - g.T)) > 1e-12 * scale:
        return False
    tol = get_settings().POSITIVITY_TOL if tol is None else tol
    return bool(np.min(np.linalg.eigvalsh(g + 1j * J4)) >= -tol * scale)


def purity_determinant(s: GaussianState) -> float:
    """det gamma; one for pure states, larger for mixed ones."""
    return s.determinant


def reduced_covariance(s: GaussianState, mode: int = 0) -> NDArray[np.float64]:
    """2x2 covariance of mode 0 (k) or mode 1 (-k) after tracing out the partner."""
    if mode not in (0, 1):
        raise DimensionError(f"mode must be 0 or 1, got {mode}")
    block = slice(2 * mode, 2 * mode + 2)
    return np.array(s.covariance[block, block])


def characteristic_function(s: GaussianState, xi: ArrayLike) -> NDArray[np.float64] | float:
    """exp(-xi^T gamma xi / 4), vectorized over leading axes of ``xi``."""
    pts = _points(xi)
    quad = np.einsum("...i,ij,...j->...", pts, s.covariance, pts)
    value = np.exp(-0.25 * quad)
    return float(value) if value.ndim == 0 else value


def _inverse(s: GaussianState) -> NDArray[np.float64]:
    limit = get_settings().CONDITION_LIMIT
    cond = np.linalg.cond(s.covariance)
    if not np.isfinite(cond) or cond >= limit:
        raise DegenerateCovarianceError(f"covariance condition number {cond:.3g} exceeds {limit:.3g}")
    return np.linalg.inv(s.covariance)


def wigner_gaussian(s: GaussianState, x: ArrayLike) -> NDArray[np.float64] | float:
    """exp(-x^T gamma^-1 x) / (pi^2 sqrt(det gamma))."""
    inv = _inverse(s)
    pts = _points(x)
    quad = np.einsum("...i,ij,...j->...", pts, inv, pts)
    value = np.exp(-quad) / (math.pi**2 * math.sqrt(s.determinant))
    return float(value) if value.ndim == 0 else value


def wigner_tmss_explicit(
    p: SqueezingParams,
    k: float,
    q_k: ArrayLike,
    pi_k: ArrayLike,
    q_mk: ArrayLike,
    pi_mk: ArrayLike,
) -> NDArray[np.float64] | float:
    """Two-mode squeezed Wigner function written out in the canonical variables.

    The exponent is cosh 2r (k q_k^2 + pi_k^2/k + k q_-k^2 + pi_-k^2/k)
    - 2 sinh 2r [cos 2phi (k q_k q_-k - pi_k pi_-k / k)
    + sin 2phi (q_k pi_-k + pi_k q_-k)].
    """
    if not k > 0.0:
        raise RangeError(f"wavenumber must be positive, got {k}")
    rk = math.sqrt(k)
    a1, b1 = rk * np.asarray(q_k, dtype=float), np.asarray(pi_k, dtype=float) / rk
    a2, b2 = rk * np.asarray(q_mk, dtype=float), np.asarray(pi_mk, dtype=float) / rk
    c = math.cosh(2.0 * p.r)
    s = math.sinh(2.0 * p.r)
    exponent = c * (a1**2 + b1**2 + a2**2 + b2**2) - 2.0 * s * (
        math.cos(2.0 * p.phi) * (a1 * a2 - b1 * b2) + math.sin(2.0 * p.phi) * (a1 * b2 + b1 * a2)
    )
    value = np.exp(-exponent) / math.pi**2
    return float(value) if np.ndim(value) == 0 else value


def second_moments(s: GaussianState) -> NDArray[np.complex128]:
    """<R_i R_j> = gamma_ij / 2 + i J_ij / 2."""
    return 0.5 * s.covariance + 0.5j * J4


def onemode_dispersions(R: float) -> Tuple[float, float]:
    """(<dq^2>, <dpi^2>) of a single-mode squeezed Gaussian with width parameter R."""
    if not R > 0.0:
        raise RangeError(f"R must be positive, got {R}")
    return 1.0 / (2.0 * R * R), R * R / 2.0


def twomode_marginal_dispersion(R: float) -> float:
    """<dq_k^2> = <dq_-k^2> = (1 + R^4) / (4 R^2)."""
    if not R > 0.0:
        raise RangeError(f"R must be positive, got {R}")
    return (1.0 + R**4) / (4.0 * R * R)


def squeezing_db(r: float) -> float:
    """Squeezing in decibels, 20 r / ln 10."""
    if r < 0.0:
        raise RangeError(f"r must be nonnegative, got {r}")
    return 20.0 * r / math.log(10.0)


__all__ = [
    "covariance_from_squeezing",
    "covariance_from_bogoliubov",
    "is_physical",
    "purity_determinant",
    "reduced_covariance",
    "characteristic_function",
    "wigner_gaussian",
    "wigner_tmss_explicit",
    "second_moments",
    "onemode_dispersions",
    "twomode_marginal_dispersion",
    "squeezing_db",
]
