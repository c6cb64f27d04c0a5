"""Array-backed value types: covariance matrices, Fock vectors and operator matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from configs.config import get_settings
from src.core.errors import DegenerateCovarianceError, DimensionError, RangeError
from src.domain.phasespace.schemas.squeezing import SqueezingParams


def _frozen(array: NDArray) -> NDArray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SymplecticForm:
    """Block-diagonal symplectic form J = diag([[0, 1], [-1, 0]], [[0, 1], [-1, 0]])."""

    modes: int = 2

    def matrix(self) -> NDArray[np.float64]:
        block = np.array([[0.0, 1.0], [-1.0, 0.0]])
        return np.kron(np.eye(self.modes), block)


J4 = SymplecticForm().matrix()
J4.setflags(write=False)


@dataclass(frozen=True)
class GaussianState:
    """Zero-mean two-mode Gaussian state given by its covariance matrix.

    Ordering is (sqrt(k) q_k, pi_k / sqrt(k), sqrt(k) q_-k, pi_-k / sqrt(k)), and
    gamma_ij = <{R_i, R_j}>, so the vacuum has gamma = identity.

    Attributes:
        covariance: Real symmetric 4x4 matrix.
    """

    covariance: NDArray[np.float64]

    def __post_init__(self) -> None:
        gamma = np.asarray(self.covariance, dtype=float)
        if gamma.shape != (4, 4):
            raise DimensionError(f"covariance must be 4x4, got {gamma.shape}")
        if not np.all(np.isfinite(gamma)):
            raise DegenerateCovarianceError("covariance has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(gamma))))
        if np.max(np.abs(gamma - gamma.T)) > 1e-12 * scale:
            raise DegenerateCovarianceError("covariance is not symmetric")
        tol = get_settings().POSITIVITY_TOL * scale
        if np.min(np.linalg.eigvalsh(gamma + 1j * J4)) < -tol:
            raise DegenerateCovarianceError("covariance violates the uncertainty relation gamma + iJ >= 0")
        object.__setattr__(self, "covariance", _frozen(0.5 * (gamma + gamma.T)))

    @classmethod
    def vacuum(cls) -> "GaussianState":
        return cls(np.eye(4))

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.covariance))


@dataclass(frozen=True)
class FockVector:
    """Truncated number-basis amplitudes of one or two modes.

    Two-mode amplitudes are indexed row-major, n_k * (N + 1) + n_-k.

    Attributes:
        amplitudes: Complex amplitudes, length N+1 or (N+1)^2.
        truncation: Highest retained occupation N.
        modes: 1 or 2.
        tail_bound: Probability weight discarded by the truncation.
    """

    amplitudes: NDArray[np.complex128]
    truncation: int
    modes: int = 1
    tail_bound: float = 0.0

    def __post_init__(self) -> None:
        if self.modes not in (1, 2):
            raise DimensionError(f"modes must be 1 or 2, got {self.modes}")
        if self.truncation < 1:
            raise RangeError(f"truncation must be positive, got {self.truncation}")
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        expected = (self.truncation + 1) ** self.modes
        if amps.size != expected:
            raise DimensionError(f"expected {expected} amplitudes for N={self.truncation}, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-8:
            raise RangeError(f"state is not normalized (norm {norm:.12g})")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dimension(self) -> int:
        return self.amplitudes.size

    def as_matrix(self) -> NDArray[np.complex128]:
        """Two-mode amplitudes as an (N+1) x (N+1) array psi[n_k, n_-k]."""
        if self.modes != 2:
            raise DimensionError("as_matrix needs a two-mode state")
        size = self.truncation + 1
        return self.amplitudes.reshape(size, size)

    def density_matrix(self) -> "OperatorMatrix":
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return OperatorMatrix(rho, hermitian=True, modes=self.modes)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator in a truncated Fock basis.

    Attributes:
        entries: Square complex matrix of size (N+1)^modes.
        hermitian: Whether the operator is declared Hermitian (checked to 1e-10).
        modes: 1 or 2.
    """

    entries: NDArray[np.complex128]
    hermitian: bool = False
    modes: int = 1

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"operator must be a square matrix, got shape {m.shape}")
        side = round(m.shape[0] ** (1.0 / self.modes))
        if side**self.modes != m.shape[0] or side < 2:
            raise DimensionError(f"size {m.shape[0]} is not (N+1)^{self.modes}")
        if self.hermitian and m.size and np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise DimensionError("operator flagged Hermitian but M != M^dagger")
        object.__setattr__(self, "entries", _frozen(m))

    @property
    def truncation(self) -> int:
        return round(self.entries.shape[0] ** (1.0 / self.modes)) - 1

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, hermitian=self.hermitian, modes=self.modes)

    def _check(self, other: "OperatorMatrix") -> None:
        if other.entries.shape != self.entries.shape or other.modes != self.modes:
            raise DimensionError("operators act on different spaces")

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.entries @ other.entries, modes=self.modes)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.entries + other.entries, hermitian=self.hermitian and other.hermitian, modes=self.modes)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.entries - other.entries, hermitian=self.hermitian and other.hermitian, modes=self.modes)

    def scaled(self, factor: complex) -> "OperatorMatrix":
        keeps = self.hermitian and complex(factor).imag == 0.0
        return OperatorMatrix(self.entries * factor, hermitian=keeps, modes=self.modes)

    def commutator(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self @ other - other @ self


@dataclass(frozen=True)
class BogoliubovPair:
    """Bogoliubov coefficients: c_k(eta) = u c_k + v c_-k^dagger."""

    u: complex
    v: complex

    @property
    def wronskian(self) -> float:
        """|u|^2 - |v|^2, equal to one for canonical evolution."""
        return abs(self.u) ** 2 - abs(self.v) ** 2


@dataclass(frozen=True)
class ModeRecord:
    """Late-time record of one Fourier mode.

    Attributes:
        k: Comoving wavenumber.
        zeta_mod2: |zeta_k|^2 at eta_end.
        squeeze: Squeezing parameters extracted at eta_end.
        super_hubble: Whether |k eta_end| < 0.1 (mode frozen).
        wronskian_relative: Max | |u|^2 - |v|^2 - 1 | / (|u|^2 + |v|^2) over the run.
        wronskian_absolute: Max | |u|^2 - |v|^2 - 1 | over the run.
    """

    k: float
    zeta_mod2: float
    squeeze: SqueezingParams
    super_hubble: bool = True
    wronskian_relative: float = 0.0
    wronskian_absolute: float = 0.0
    early_amplitude: Optional[float] = field(default=None)

    def __post_init__(self) -> None:
        if not np.isfinite(self.zeta_mod2) or self.zeta_mod2 < 0.0:
            raise RangeError(f"|zeta_k|^2 must be finite and nonnegative, got {self.zeta_mod2}")


__all__ = [
    "SymplecticForm",
    "J4",
    "GaussianState",
    "FockVector",
    "OperatorMatrix",
    "BogoliubovPair",
    "ModeRecord",
]
