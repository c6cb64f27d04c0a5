"""Special functions: Hermite polynomials and functions, erf, Airy Ai."""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special as sp

from src.core.errors import RangeError

HERMITE_MAX_N = 200
AIRY_DOMAIN = (-30.0, 30.0)

_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


def hermite_polynomial(n: int, x: ArrayLike) -> NDArray[np.float64] | float:
    """Physicists' Hermite polynomial H_n(x) by three-term recurrence.

    Args:
        n: Degree, 0 <= n <= 200.
        x: Scalar or array of abscissae.

    Returns:
        H_n(x) with the shape of ``x`` (a float for scalar input).

    Raises:
        RangeError: If ``n`` is outside [0, 200] or the value overflows.
    """
    if n < 0 or n > HERMITE_MAX_N:
        raise RangeError(f"hermite degree must lie in [0, {HERMITE_MAX_N}], got {n}")
    xa = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        prev = np.ones_like(xa)
        if n == 0:
            result = prev
        else:
            cur = 2.0 * xa
            for k in range(1, n):
                prev, cur = cur, 2.0 * xa * cur - 2.0 * k * prev
            result = cur
    if not np.all(np.isfinite(result)):
        raise RangeError(f"H_{n}(x) overflows double precision for max|x|={np.max(np.abs(xa)):.6g}")
    return float(result) if result.ndim == 0 else result


def hermite_functions(n_max: int, x: ArrayLike) -> NDArray[np.float64]:
    """Normalized oscillator eigenfunctions phi_0..phi_{n_max} at ``x``.

    phi_n(x) = H_n(x) exp(-x^2/2) / (pi^{1/4} sqrt(2^n n!)), evaluated with the
    normalized recurrence phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1}.
    The Gaussian factor is carried in a separate log scale, so large orders stay
    accurate far from the origin where exp(-x^2/2) alone would underflow.

    Returns:
        Array of shape ``(n_max + 1,) + x.shape``.
    """
    if n_max < 0:
        raise RangeError(f"n_max must be nonnegative, got {n_max}")
    xa = np.asarray(x, dtype=float)
    flat = np.atleast_1d(xa).ravel()
    out = np.empty((n_max + 1, flat.size))

    log_scale = -0.5 * flat**2
    prev = np.zeros_like(flat)
    cur = np.full_like(flat, np.pi**-0.25)
    out[0] = cur * np.exp(log_scale)
    for n in range(n_max):
        nxt = math.sqrt(2.0 / (n + 1)) * flat * cur - math.sqrt(n / (n + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE
        if big.any():
            cur[big] /= _RESCALE
            prev[big] /= _RESCALE
            log_scale[big] += _LOG_RESCALE
        out[n + 1] = cur * np.exp(log_scale)
    return out.reshape((n_max + 1,) + xa.shape)


def hermite_function(n: int, x: ArrayLike) -> NDArray[np.float64] | float:
    """Single normalized eigenfunction phi_n(x)."""
    values = hermite_functions(n, x)[n]
    return float(values) if np.ndim(values) == 0 else values


def erf(x: ArrayLike) -> NDArray[np.float64] | float:
    """Error function (odd, bounded by one)."""
    value = sp.erf(x)
    return float(value) if np.ndim(value) == 0 else value


def airy_ai(x: ArrayLike) -> NDArray[np.float64] | float:
    """Airy function Ai on [-30, 30].

    Raises:
        RangeError: If any argument lies outside the supported interval.
    """
    xa = np.asarray(x, dtype=float)
    lo, hi = AIRY_DOMAIN
    if np.any(~np.isfinite(xa)) or np.any(xa < lo) or np.any(xa > hi):
        raise RangeError(f"airy_ai argument outside [{lo}, {hi}]")
    ai = sp.airy(xa)[0]
    return float(ai) if ai.ndim == 0 else ai


__all__ = [
    "HERMITE_MAX_N",
    "AIRY_DOMAIN",
    "hermite_polynomial",
    "hermite_functions",
    "hermite_function",
    "erf",
    "airy_ai",
]
