"""Adaptive Runge-Kutta integration with dense output (scipy DOP853)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import solve_ivp

from configs.logger import app_logger
from src.core.errors import RangeError, StiffnessError

log = app_logger.get_logger(__name__, extra_prefix="ode")

RightHandSide = Callable[[float, NDArray], NDArray]

TOLERANCE_BOUNDS = (1e-14, 1e-2)


@dataclass(frozen=True)
class OdeProblem:
    """Initial value problem y' = rhs(t, y), y(span[0]) = y0.

    Complex initial values are integrated as a real system of twice the size.
    """

    rhs: RightHandSide
    y0: NDArray
    span: Tuple[float, float]
    dimension: int = field(init=False)

    def __post_init__(self) -> None:
        y0 = np.atleast_1d(np.asarray(self.y0))
        if y0.ndim != 1:
            raise RangeError("initial value must be a vector")
        object.__setattr__(self, "y0", y0)
        object.__setattr__(self, "dimension", int(y0.size))
        start, end = self.span
        if not (np.isfinite(start) and np.isfinite(end)) or start == end:
            raise RangeError(f"invalid integration span {self.span}")

    @property
    def is_complex(self) -> bool:
        return bool(np.iscomplexobj(self.y0))


class DenseSolution:
    """Callable sampler y(t) over the integrated span."""

    def __init__(self, solution, *, dimension: int, is_complex: bool, span: Tuple[float, float]) -> None:
        self._solution = solution
        self.dimension = dimension
        self.is_complex = is_complex
        self.span = span
        self.nfev = int(getattr(solution, "nfev", 0))

    @property
    def t_nodes(self) -> NDArray[np.float64]:
        """Accepted step endpoints."""
        return np.asarray(self._solution.t)

    def __call__(self, t: ArrayLike) -> NDArray:
        """State at ``t``; shape (dimension,) for scalar t, else (dimension, len(t))."""
        ta = np.asarray(t, dtype=float)
        lo, hi = min(self.span), max(self.span)
        span = hi - lo
        if np.any(ta < lo - 1e-12 * span) or np.any(ta > hi + 1e-12 * span):
            raise RangeError(f"sample point outside integrated span [{lo}, {hi}]")
        values = self._solution.sol(np.clip(ta, lo, hi))
        if self.is_complex:
            values = values[: self.dimension] + 1j * values[self.dimension :]
        return values


def _real_rhs(rhs: RightHandSide, dimension: int) -> RightHandSide:
    def wrapped(t: float, y: NDArray) -> NDArray:
        dy = np.asarray(rhs(t, y[:dimension] + 1j * y[dimension:]), dtype=complex)
        return np.concatenate([dy.real, dy.imag])

    return wrapped


def integrate_ode(p: OdeProblem, rel_tol: float, abs_tol: float) -> DenseSolution:
    """Integrate ``p`` with DOP853 and return a dense sampler.

    Args:
        p: The initial value problem.
        rel_tol: Relative tolerance in (1e-14, 1e-2).
        abs_tol: Absolute tolerance in (1e-14, 1e-2).

    Raises:
        RangeError: If a tolerance lies outside the accepted interval.
        StiffnessError: If the step size collapses before the end of the span.
    """
    lo, hi = TOLERANCE_BOUNDS
    for name, tol in (("rel_tol", rel_tol), ("abs_tol", abs_tol)):
        if not lo < tol < hi:
            raise RangeError(f"{name} must lie in ({lo}, {hi}), got {tol}")

    if p.is_complex:
        rhs = _real_rhs(p.rhs, p.dimension)
        y0 = np.concatenate([p.y0.real, p.y0.imag]).astype(float)
    else:
        rhs = p.rhs
        y0 = p.y0.astype(float)

    solution = solve_ivp(
        rhs,
        p.span,
        y0,
        method="DOP853",
        rtol=rel_tol,
        atol=abs_tol,
        dense_output=True,
    )
    if solution.status != 0:
        where = float(solution.t[-1]) if solution.t.size else float(p.span[0])
        raise StiffnessError(f"integration failed: {solution.message}", location=where)

    app_logger.log_kv(log, logging.DEBUG, "ode integrated", steps=solution.t.size - 1, nfev=solution.nfev)
    return DenseSolution(solution, dimension=p.dimension, is_complex=p.is_complex, span=tuple(p.span))


__all__ = ["OdeProblem", "DenseSolution", "integrate_ode", "TOLERANCE_BOUNDS"]
