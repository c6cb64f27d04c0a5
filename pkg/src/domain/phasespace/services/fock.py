"""Truncated Fock-basis oracle.

States and operators live in the number basis |0>, ..., |N>. Two-mode
operators are never assembled as (N+1)^2 matrices: a product A (x) B acts on
the amplitude array psi[n_k, n_-k] as A psi B^T.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from configs.config import get_settings
from configs.logger import app_logger
from src.core.errors import DimensionError, RangeError, TruncationError
from src.core.numerics import Grid1D, gauss_legendre_nodes, hermite_function, hermite_functions
from src.domain.phasespace.entities.states import FockVector, GaussianState, OperatorMatrix
from src.domain.phasespace.schemas.squeezing import SqueezingParams

log = app_logger.get_logger(__name__, extra_prefix="fock")

WAVEFUNCTION_MAX_N = 100

Wavefunction = Callable[[NDArray[np.float64]], NDArray]


def annihilation_matrix(N: int) -> OperatorMatrix:
    """<n-1| c |n> = sqrt(n)."""
    if N < 1:
        raise RangeError(f"truncation must be at least 1, got {N}")
    return OperatorMatrix(np.diag(np.sqrt(np.arange(1, N + 1, dtype=float)), k=1).astype(complex))


def identity_matrix(N: int) -> OperatorMatrix:
    if N < 1:
        raise RangeError(f"truncation must be at least 1, got {N}")
    return OperatorMatrix(np.eye(N + 1, dtype=complex), hermitian=True)


def number_matrix(N: int) -> OperatorMatrix:
    if N < 1:
        raise RangeError(f"truncation must be at least 1, got {N}")
    return OperatorMatrix(np.diag(np.arange(N + 1, dtype=float)).astype(complex), hermitian=True)


def position_momentum_matrices(N: int) -> Tuple[OperatorMatrix, OperatorMatrix]:
    """q = (c + c^dagger)/sqrt(2) and pi = -i (c - c^dagger)/sqrt(2), in units k = 1."""
    c = annihilation_matrix(N).entries
    cd = c.conj().T
    q = OperatorMatrix((c + cd) / math.sqrt(2.0), hermitian=True)
    p = OperatorMatrix(-1j * (c - cd) / math.sqrt(2.0), hermitian=True)
    return q, p


@dataclass(frozen=True)
class TwoModeOperator:
    """Product operator A (x) B on the two-mode space, applied without forming the Kronecker product."""

    first: OperatorMatrix
    second: OperatorMatrix

    def __post_init__(self) -> None:
        if self.first.modes != 1 or self.second.modes != 1:
            raise DimensionError("two-mode factors must be single-mode operators")
        if self.first.dimension != self.second.dimension:
            raise DimensionError("two-mode factors have different truncations")

    @property
    def truncation(self) -> int:
        return self.first.truncation

    @property
    def hermitian(self) -> bool:
        return self.first.hermitian and self.second.hermitian

    def apply(self, psi: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return self.first.entries @ psi @ self.second.entries.T

    def to_matrix(self) -> OperatorMatrix:
        """Dense Kronecker form, for small truncations only."""
        return OperatorMatrix(np.kron(self.first.entries, self.second.entries), hermitian=self.hermitian, modes=2)


def two_mode_operator(first: OperatorMatrix, second: Optional[OperatorMatrix] = None) -> TwoModeOperator:
    """A (x) B; ``second`` defaults to the identity on the -k mode."""
    if second is None:
        second = identity_matrix(first.truncation)
    return TwoModeOperator(first, second)


def _log_tanh(r: float) -> float:
    if r > 350.0:
        return 0.0
    return math.log1p(-2.0 / (math.exp(2.0 * r) + 1.0))


def tmss_truncation(r: float, *, tail_tol: Optional[float] = None) -> int:
    """Smallest N with tanh^(2(N+1)) r below ``tail_tol`` (at least 1)."""
    cfg = get_settings()
    tol = cfg.FOCK_TAIL_TOL if tail_tol is None else tail_tol
    if not 0.0 < tol < 1.0:
        raise RangeError(f"tail tolerance must lie in (0, 1), got {tol}")
    if r < 0.0:
        raise RangeError(f"r must be nonnegative, got {r}")
    if r == 0.0:
        return 1
    lt = _log_tanh(r)
    if lt == 0.0:
        raise TruncationError(f"r={r} is beyond any Fock truncation", required=None)
    n_plus_one = math.floor(math.log(tol) / (2.0 * lt)) + 1
    required = max(1, n_plus_one - 1)
    if required > cfg.FOCK_MAX_N:
        raise TruncationError(
            f"r={r} needs N={required} for tail {tol:.1e}, above the cap {cfg.FOCK_MAX_N}", required=required
        )
    return required


def tmss_amplitudes(p: SqueezingParams, N: int) -> Tuple[NDArray[np.complex128], float]:
    """Diagonal amplitudes e^{-2 i n phi} tanh^n r / cosh r for n <= N, renormalized, and the discarded weight."""
    n = np.arange(N + 1, dtype=float)
    t = math.tanh(p.r)
    with np.errstate(under="ignore"):
        mags = t**n / math.cosh(p.r)
    amps = mags * np.exp(-2j * p.phi * n)
    tail = float(t ** (2 * (N + 1))) if t > 0.0 else 0.0
    amps = amps / np.linalg.norm(amps)
    return amps, tail


def tmss_vector(p: SqueezingParams, N: Optional[int] = None, *, tail_tol: Optional[float] = None) -> FockVector:
    """Two-mode squeezed vacuum sum_n e^{-2 i n phi} tanh^n r / cosh r |n, n>.

    Raises:
        TruncationError: ``N`` leaves a tail weight above ``tail_tol``.
    """
    required = tmss_truncation(p.r, tail_tol=tail_tol)
    if N is None:
        N = required
        app_logger.log_kv(log, logging.INFO, "TMSS truncation chosen", r=p.r, N=N)
    elif N < required:
        raise TruncationError(f"N={N} is too small for r={p.r}; need N >= {required}", required=required)
    diag, tail = tmss_amplitudes(p, N)
    psi = np.zeros((N + 1, N + 1), dtype=complex)
    psi[np.diag_indices(N + 1)] = diag
    return FockVector(psi.ravel(), N, modes=2, tail_bound=tail)


def fock_basis_vector(n: int, N: int) -> FockVector:
    """Number state |n> in a single-mode space truncated at N."""
    if not 0 <= n <= N:
        raise RangeError(f"need 0 <= n <= N, got n={n}, N={N}")
    amps = np.zeros(N + 1, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps, N)


def coherent_vector(alpha: complex, N: int) -> FockVector:
    """Coherent state e^{-|alpha|^2/2} sum alpha^n / sqrt(n!) |n>, renormalized after truncation."""
    if N < 1:
        raise RangeError(f"truncation must be at least 1, got {N}")
    amps = np.empty(N + 1, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, N + 1):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    kept = float(np.vdot(amps, amps).real)
    return FockVector(amps / math.sqrt(kept), N, tail_bound=max(0.0, 1.0 - kept))


def expectation(state: FockVector, op: Union[OperatorMatrix, TwoModeOperator]) -> complex:
    """<psi| O |psi>."""
    if isinstance(op, TwoModeOperator):
        if state.modes != 2 or op.truncation != state.truncation:
            raise DimensionError("two-mode operator does not match the state")
        psi = state.as_matrix()
        return complex(np.vdot(psi, op.apply(psi)))
    if op.modes != state.modes or op.dimension != state.dimension:
        raise DimensionError(f"operator of size {op.dimension} cannot act on a state of size {state.dimension}")
    return complex(np.vdot(state.amplitudes, op.entries @ state.amplitudes))


def reduced_density_matrix(state: FockVector, keep: int = 0) -> OperatorMatrix:
    """Single-mode density matrix of mode ``keep`` (0 for k, 1 for -k)."""
    if state.modes != 2:
        raise DimensionError("partial trace needs a two-mode state")
    psi = state.as_matrix()
    if keep == 0:
        rho = psi @ psi.conj().T
    elif keep == 1:
        rho = psi.T @ psi.conj()
    else:
        raise DimensionError(f"keep must be 0 or 1, got {keep}")
    return OperatorMatrix(0.5 * (rho + rho.conj().T), hermitian=True)


def partial_trace_mode(state: FockVector, keep: int = 0) -> NDArray[np.float64]:
    """Occupation probabilities of mode ``keep`` after tracing out its partner."""
    if state.modes != 2:
        raise DimensionError("partial trace needs a two-mode state")
    if keep not in (0, 1):
        raise DimensionError(f"keep must be 0 or 1, got {keep}")
    weights = np.abs(state.as_matrix()) ** 2
    return weights.sum(axis=1 - keep)


def fock_covariance(state: FockVector) -> GaussianState:
    """Covariance gamma_ij = <{R_i, R_j}> - 2 <R_i><R_j> of a two-mode state, in units k = 1."""
    if state.modes != 2:
        raise DimensionError("covariance needs a two-mode state")
    N = state.truncation
    padded = np.zeros((N + 2, N + 2), dtype=complex)
    padded[: N + 1, : N + 1] = state.as_matrix()
    q, p = position_momentum_matrices(N + 1)
    applied = [
        q.entries @ padded,
        p.entries @ padded,
        padded @ q.entries.T,
        padded @ p.entries.T,
    ]
    means = np.array([np.vdot(padded, a).real for a in applied])
    gamma = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            gamma[i, j] = 2.0 * np.vdot(applied[i], applied[j]).real - 2.0 * means[i] * means[j]
    return GaussianState(gamma)


def hermite_wavefunction(n: int, q: ArrayLike) -> NDArray[np.float64] | float:
    """Oscillator eigenfunction phi_n(q) from the normalized recurrence."""
    if not 0 <= n <= WAVEFUNCTION_MAX_N:
        raise RangeError(f"n must lie in [0, {WAVEFUNCTION_MAX_N}], got {n}")
    return hermite_function(n, q)


def position_window(truncation: int) -> float:
    """Half-width of the position window holding oscillator states up to ``truncation``."""
    cfg = get_settings()
    return max(0.5 * cfg.WIGNER_GRID_WIDTH, math.sqrt(2.0 * truncation + 1.0) + 6.0)


def wigner_numeric(
    state: Union[FockVector, OperatorMatrix, Wavefunction],
    q: ArrayLike,
    p: ArrayLike,
    *,
    half_width: Optional[float] = None,
    nodes: Optional[int] = None,
) -> NDArray[np.float64] | float:
    """W(q, p) = (1/2 pi) int dx <q - x/2|rho|q + x/2> e^{i p x} by Gauss-Legendre quadrature.

    ``state`` is a single-mode Fock vector, a single-mode density matrix or a
    vectorized wavefunction psi(q). The position window is [-half_width,
    half_width]; it defaults to 12 units and grows with the truncation.
    """
    cfg = get_settings()
    if isinstance(state, FockVector):
        if state.modes != 1:
            raise DimensionError("wigner_numeric needs a single-mode state")
        amps = state.amplitudes
        truncation = state.truncation

        def kernel(a: NDArray, b: NDArray) -> NDArray:
            return (amps @ hermite_functions(truncation, a)) * np.conj(amps @ hermite_functions(truncation, b))

    elif isinstance(state, OperatorMatrix):
        if state.modes != 1:
            raise DimensionError("wigner_numeric needs a single-mode density matrix")
        rho = state.entries
        truncation = state.truncation

        def kernel(a: NDArray, b: NDArray) -> NDArray:
            return np.einsum("mx,mn,nx->x", hermite_functions(truncation, a), rho, hermite_functions(truncation, b))

    elif callable(state):
        truncation = 0
        psi = state

        def kernel(a: NDArray, b: NDArray) -> NDArray:
            return np.asarray(psi(a)) * np.conj(np.asarray(psi(b)))

    else:
        raise DimensionError(f"unsupported state type {type(state).__name__}")

    half = position_window(truncation) if half_width is None else half_width
    grid = Grid1D(-2.0 * half, 2.0 * half, nodes or cfg.WIGNER_GRID_NODES)
    x, w = gauss_legendre_nodes(grid, panel_nodes=cfg.QUAD_PANEL_NODES)

    qa, pa = np.broadcast_arrays(np.asarray(q, dtype=float), np.asarray(p, dtype=float))
    flat_q, flat_p = qa.ravel(), pa.ravel()
    out = np.empty(flat_q.shape)
    unique_q, inverse = np.unique(flat_q, return_inverse=True)
    for i, q0 in enumerate(unique_q):
        g = w * kernel(q0 - 0.5 * x, q0 + 0.5 * x)
        idx = np.nonzero(inverse == i)[0]
        phases = np.exp(1j * np.outer(flat_p[idx], x))
        out[idx] = (phases @ g).real / (2.0 * math.pi)
    result = out.reshape(qa.shape)
    return float(result) if result.ndim == 0 else result


__all__ = [
    "WAVEFUNCTION_MAX_N",
    "annihilation_matrix",
    "identity_matrix",
    "number_matrix",
    "position_momentum_matrices",
    "TwoModeOperator",
    "two_mode_operator",
    "tmss_truncation",
    "tmss_amplitudes",
    "tmss_vector",
    "fock_basis_vector",
    "coherent_vector",
    "expectation",
    "reduced_density_matrix",
    "partial_trace_mode",
    "fock_covariance",
    "hermite_wavefunction",
    "position_window",
    "wigner_numeric",
]
