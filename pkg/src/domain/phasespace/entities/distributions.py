"""Joint distributions of two discrete outcomes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from src.core.errors import InvalidDistributionError


@dataclass(frozen=True)
class JointDistribution:
    """Matrix p(a_i, b_j) of nonnegative probabilities summing to one."""

    probabilities: NDArray[np.float64]

    def __post_init__(self) -> None:
        p = np.array(self.probabilities, dtype=float, copy=True)
        if p.ndim != 2 or p.size == 0:
            raise InvalidDistributionError(f"joint distribution must be a nonempty matrix, got shape {p.shape}")
        if not np.all(np.isfinite(p)) or np.any(p < 0.0):
            raise InvalidDistributionError("probabilities must be finite and nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise InvalidDistributionError(f"probabilities sum to {p.sum():.15g}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def product(cls, pa: NDArray[np.float64], pb: NDArray[np.float64]) -> "JointDistribution":
        return cls(np.outer(pa, pb))

    def marginal_a(self) -> NDArray[np.float64]:
        return self.probabilities.sum(axis=1)

    def marginal_b(self) -> NDArray[np.float64]:
        return self.probabilities.sum(axis=0)


__all__ = ["JointDistribution"]
