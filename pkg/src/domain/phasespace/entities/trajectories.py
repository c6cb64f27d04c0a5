"""Integrated Bogoliubov evolutions of single Fourier modes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.numerics import DenseSolution
from src.domain.phasespace.entities.states import BogoliubovPair


@dataclass(frozen=True)
class BogoliubovTrajectory:
    """(u, v)(eta) for one wavenumber between ``eta_start`` and ``eta_end``.

    Attributes:
        k: Comoving wavenumber.
        eta_start: Initial conformal time, where u = 1 and v = 0.
        eta_end: Final conformal time.
        solution: Dense sampler returning the stacked (u, v).
        wronskian_relative: Max | |u|^2 - |v|^2 - 1 | / (|u|^2 + |v|^2) over the accepted steps;
            the integrator tolerance bounds this one.
        wronskian_absolute: Max | |u|^2 - |v|^2 - 1 | over the accepted steps.
    """

    k: float
    eta_start: float
    eta_end: float
    solution: DenseSolution
    wronskian_relative: float
    wronskian_absolute: float

    def sample(self, eta: ArrayLike) -> Tuple[NDArray[np.complex128], NDArray[np.complex128]]:
        values = self.solution(eta)
        return values[0], values[1]

    def pair_at(self, eta: float) -> BogoliubovPair:
        u, v = self.sample(eta)
        return BogoliubovPair(complex(u), complex(v))

    def pairs(self, eta: ArrayLike) -> List[BogoliubovPair]:
        u, v = self.sample(np.atleast_1d(np.asarray(eta, dtype=float)))
        return [BogoliubovPair(complex(a), complex(b)) for a, b in zip(u, v)]

    @property
    def final(self) -> BogoliubovPair:
        return self.pair_at(self.eta_end)

    def mode(self, eta: ArrayLike) -> NDArray[np.complex128]:
        """z zeta_k = (u + v^*) / sqrt(2k)."""
        u, v = self.sample(eta)
        return (u + np.conj(v)) / np.sqrt(2.0 * self.k)


__all__ = ["BogoliubovTrajectory"]
