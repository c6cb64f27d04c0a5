"""Pseudo-spin operators and CHSH tests in the two-mode squeezed state.

Three families turn one continuous variable into a spin-1/2 algebra:

* BW pairs the Fock levels 2n and 2n+1.
* GKMR combines |q> and |-q>: sz is minus the parity and sx is sgn(q).
* Larsson cuts the line into bins of width ell with alternating sign.

Correlators are Fock expectations on sum_n c_n |n, n>. Since every
measurement is n . S with n = (sin theta, 0, cos theta), all of them follow
from the 3x3 tensor T_ij = <S_i (x) S_j>.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import optimize

from configs.config import get_settings
from configs.logger import app_logger
from src.core.errors import DimensionError, RangeError, TruncationError
from src.domain.phasespace.entities.kernels import KernelTerm, PositionOperator, Weight
from src.domain.phasespace.entities.spins import SpinTriple
from src.domain.phasespace.entities.states import OperatorMatrix
from src.domain.phasespace.schemas.spins import MeasurementSetting, OperatorClass, SpinFamily
from src.domain.phasespace.schemas.squeezing import SqueezingParams
from src.domain.phasespace.services.fock import tmss_amplitudes, tmss_truncation
from src.domain.phasespace.services.weyl import weyl_symbol_numeric

log = app_logger.get_logger(__name__, extra_prefix="pseudospin")

TSIRELSON = 2.0 * math.sqrt(2.0)
ELL_RANGE = (0.1, 10.0)
IMPROPER_DEPARTURE = 0.5
IMPROPER_FRACTION = 0.1


def _check_truncation(N: int) -> None:
    if N < 1:
        raise RangeError(f"truncation must be at least 1, got {N}")


def _hermitian(entries: NDArray[np.complex128]) -> OperatorMatrix:
    return OperatorMatrix(0.5 * (entries + entries.conj().T), hermitian=True)


# --------------------------------------------------------------------------- families


def bw_triple(N: int) -> SpinTriple:
    """Fock-pair spins: sz = -1 on |2n>, +1 on |2n+1>, sx couples 2n <-> 2n+1.

    An even ``N`` leaves level N unpaired; it is then an edge level where the
    algebra does not hold.
    """
    _check_truncation(N)
    size = N + 1
    sz = np.diag([1.0 if n % 2 else -1.0 for n in range(size)]).astype(complex)
    raise_ = np.zeros((size, size), dtype=complex)
    for n in range(0, size - 1, 2):
        raise_[n + 1, n] = 1.0
    lower = raise_.conj().T
    return SpinTriple(
        sx=_hermitian(raise_ + lower),
        sy=_hermitian(-1j * (raise_ - lower)),
        sz=_hermitian(sz),
        family=SpinFamily.bw,
    )


def gkmr_kernels() -> Tuple[PositionOperator, PositionOperator, PositionOperator]:
    """Sx = sgn(q), Sz = -P, Sy = i Sz Sx as position-space operators."""
    sx = PositionOperator.multiplication(Weight.sign(), "sgn")
    sz = PositionOperator.reflection().scaled(-1.0)
    sy = (sz @ sx).scaled(1j)
    return sx, sy, sz


def gkmr_triple(N: int) -> SpinTriple:
    """Even/odd position-superposition spins; left-handed as constructed.

    Sz is the exact diagonal -(-1)^n. Sx holds 2 int_0^inf phi_m phi_n dq
    between levels of opposite parity, and Sy = i Sz Sx.
    """
    _check_truncation(N)
    kernels = gkmr_kernels()
    sz = np.diag([-((-1.0) ** n) for n in range(N + 1)]).astype(complex)
    sx = kernels[0].fock_matrix(N).real.astype(complex)
    # same-parity elements vanish by symmetry; drop the quadrature residue
    parity = np.add.outer(np.arange(N + 1), np.arange(N + 1)) % 2
    sx[parity == 0] = 0.0
    sy = 1j * sz @ sx
    return SpinTriple(
        sx=_hermitian(sx),
        sy=_hermitian(sy),
        sz=_hermitian(sz),
        family=SpinFamily.gkmr,
        kernels=kernels,
        handedness=-1,
    )


def larsson_kernels(ell: float) -> Tuple[PositionOperator, PositionOperator, PositionOperator]:
    """Sz = (-1)^floor(q/ell), S+ f(q) = 1_even(q) f(q + ell), Sx = S+ + S-, Sy = -i (S+ - S-)."""
    sz = PositionOperator.multiplication(Weight.alternating_bins(ell), "Sz")
    s_plus = PositionOperator((KernelTerm(1.0, Weight.even_bins(ell), sigma=1, shift=ell),), "S+")
    s_minus = s_plus.dagger()
    sx = s_plus + s_minus
    sy = (s_plus - s_minus).scaled(-1j)
    return sx, sy, sz


def larsson_triple(N: int, ell: float) -> SpinTriple:
    """Bin spins of width ``ell`` with Fock matrices from segment-aligned quadrature.

    Raises:
        RangeError: If ``ell`` lies outside [0.1, 10].
    """
    _check_truncation(N)
    lo, hi = ELL_RANGE
    if not lo <= ell <= hi:
        raise RangeError(f"ell must lie in [{lo}, {hi}], got {ell}")
    kernels = larsson_kernels(ell)
    sx, sy, sz = (_hermitian(k.fock_matrix(N)) for k in kernels)
    return SpinTriple(sx=sx, sy=sy, sz=sz, family=SpinFamily.larsson, ell=ell, kernels=kernels)


def spin_along(t: SpinTriple, m: MeasurementSetting) -> OperatorMatrix:
    """sin(theta) sx + cos(theta) sz."""
    return t.sx.scaled(math.sin(m.theta)) + t.sz.scaled(math.cos(m.theta))


# --------------------------------------------------------------------------- algebra checks


def _interior(t: SpinTriple) -> int:
    """Number of leading levels where the truncated algebra is exact or converged."""
    N = t.truncation
    if t.family is SpinFamily.bw:
        return N + 1 if N % 2 else N
    return max(1, N - 1)


def spin_algebra_defect(t: SpinTriple, *, levels: Optional[int] = None) -> float:
    """Largest violation of s_i^2 = 1 and [s_i, s_j] = 2i h eps_ijk s_k on the leading Fock block."""
    keep = _interior(t) if levels is None else levels
    sx, sy, sz = (c.entries for c in t.components())
    h = t.handedness
    eye = np.eye(sx.shape[0])
    residues = [
        sx @ sy - sy @ sx - 2j * h * sz,
        sy @ sz - sz @ sy - 2j * h * sx,
        sz @ sx - sx @ sz - 2j * h * sy,
        sx @ sx - eye,
        sy @ sy - eye,
        sz @ sz - eye,
    ]
    return max(float(np.max(np.abs(r[:keep, :keep]))) for r in residues)


def _probe_functions():
    centers = (0.0, 0.37, -1.21)
    return [lambda q, c=c: np.exp(-0.5 * (q - c) ** 2) * (1.0 + 0.3 * q) for c in centers]


def kernel_algebra_defect(t: SpinTriple, *, points: int = 257, half_width: float = 6.0) -> float:
    """Pointwise violation of the spin algebra for the exact position-space kernels.

    Probe wavefunctions are applied to the residual operators on a grid that
    avoids the kernels' discontinuities.

    Raises:
        DimensionError: If the triple carries no kernels.
    """
    if t.kernels is None:
        raise DimensionError(f"{t.family.value} triple has no position-space kernels")
    sx, sy, sz = t.kernels
    h = t.handedness
    one = PositionOperator.identity()
    residues = [
        sx.commutator(sy) - sz.scaled(2j * h),
        sy.commutator(sz) - sx.scaled(2j * h),
        sz.commutator(sx) - sy.scaled(2j * h),
        sx @ sx - one,
        sy @ sy - one,
        sz @ sz - one,
    ]
    # irrational offset keeps the grid off the lattice q = n ell and off q = 0
    q = np.linspace(-half_width, half_width, points) + half_width * (math.sqrt(2.0) - 1.0) / points
    worst = 0.0
    for f in _probe_functions():
        for residue in residues:
            worst = max(worst, float(np.max(np.abs(residue.apply(f, q)))))
    return worst


# --------------------------------------------------------------------------- correlators


def correlation_tensor(p: SqueezingParams, t: SpinTriple, *, tail_tol: Optional[float] = None) -> NDArray[np.float64]:
    """T_ij = <psi| S_i (x) S_j |psi> for i, j in (x, y, z).

    With psi = sum_n c_n |n, n>, T_ij = sum_{n,m} c_n^* c_m (S_i)_{nm} (S_j)_{nm}.

    Raises:
        TruncationError: If the triple's truncation drops more than ``tail_tol`` of the state.
    """
    cfg = get_settings()
    tol = cfg.FOCK_TAIL_TOL if tail_tol is None else tail_tol
    N = t.truncation
    amps, tail = tmss_amplitudes(p, N)
    if tail >= tol:
        required = tmss_truncation(p.r, tail_tol=tol)
        raise TruncationError(f"spin truncation N={N} drops weight {tail:.3e} at r={p.r}", required=required)
    mats = [c.entries for c in t.components()]
    out = np.empty((3, 3))
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            out[i, j] = float(np.real(amps.conj() @ (a * b) @ amps))
    return out


def _direction(theta: float | NDArray) -> NDArray[np.float64]:
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.sin(theta), np.zeros_like(theta), np.cos(theta)])


def _correlator_from_tensor(tensor: NDArray[np.float64], theta_a: float, theta_b: float) -> float:
    return float(_direction(theta_a) @ tensor @ _direction(theta_b))


def correlator_E(
    p: SqueezingParams,
    t: SpinTriple,
    mA: MeasurementSetting,
    mB: MeasurementSetting,
    *,
    tail_tol: Optional[float] = None,
) -> float:
    """<n.S (x) m.S> in the two-mode squeezed state."""
    return _correlator_from_tensor(correlation_tensor(p, t, tail_tol=tail_tol), mA.theta, mB.theta)


def _chsh_from_tensor(tensor: NDArray[np.float64], angles: Sequence[float]) -> float:
    a, ap, b, bp = angles
    dirs = _direction(np.array([a, ap, b, bp]))
    g = dirs[:, :2].T @ tensor @ dirs[:, 2:]
    return float(g[0, 0] + g[0, 1] + g[1, 0] - g[1, 1])


def chsh_values(tensor: NDArray[np.float64], angles: ArrayLike) -> NDArray[np.float64]:
    """CHSH value of each row (theta_n, theta_n', theta_m, theta_m') of ``angles``.

    Raises:
        DimensionError: If the rows do not hold four angles.
    """
    rows = np.atleast_2d(np.asarray(angles, dtype=float))
    if rows.ndim != 2 or rows.shape[1] != 4:
        raise DimensionError(f"CHSH needs four angles per row, got shape {rows.shape}")
    dirs = _direction(rows.T)

    def corr(i: int, j: int) -> NDArray[np.float64]:
        return np.einsum("ik,ij,jk->k", dirs[:, i], tensor, dirs[:, j])

    return corr(0, 2) + corr(0, 3) + corr(1, 2) - corr(1, 3)


def bell_mean(
    p: SqueezingParams,
    t: SpinTriple,
    settings: Sequence[MeasurementSetting],
    *,
    tail_tol: Optional[float] = None,
) -> float:
    """E(n,m) + E(n,m') + E(n',m) - E(n',m') for settings (n, n', m, m')."""
    if len(settings) != 4:
        raise DimensionError(f"CHSH needs four settings, got {len(settings)}")
    tensor = correlation_tensor(p, t, tail_tol=tail_tol)
    return _chsh_from_tensor(tensor, [s.theta for s in settings])


@dataclass(frozen=True)
class BellOptimum:
    """Settings (n, n', m, m') and the CHSH value found for them."""

    settings: Tuple[MeasurementSetting, MeasurementSetting, MeasurementSetting, MeasurementSetting]
    value: float
    grid_value: float
    evaluations: int

    @property
    def angles(self) -> Tuple[float, float, float, float]:
        return tuple(s.theta for s in self.settings)  # type: ignore[return-value]


def maximize_tensor_bell(tensor: NDArray[np.float64], *, points: Optional[int] = None) -> BellOptimum:
    """Grid scan of [0, pi)^4 followed by Nelder-Mead; the result never falls below the grid maximum."""
    cfg = get_settings()
    n = points or cfg.BELL_GRID_POINTS
    theta = np.arange(n) * math.pi / n
    dirs = _direction(theta)
    g = dirs.T @ tensor @ dirs
    grid = g[:, None, :, None] + g[:, None, None, :] + g[None, :, :, None] - g[None, :, None, :]
    idx = np.unravel_index(int(np.argmax(grid)), grid.shape)
    start = theta[list(idx)]
    grid_value = float(grid[idx])

    result = optimize.minimize(
        lambda x: -_chsh_from_tensor(tensor, x),
        start,
        method="Nelder-Mead",
        options={"xatol": cfg.SIMPLEX_XATOL, "fatol": cfg.SIMPLEX_FATOL, "maxiter": 4000},
    )
    if -result.fun > grid_value:
        best, value = result.x, float(-result.fun)
    else:
        best, value = start, grid_value
    settings = tuple(MeasurementSetting(theta=float(a)) for a in best)
    return BellOptimum(settings=settings, value=value, grid_value=grid_value, evaluations=int(result.nfev))  # type: ignore[arg-type]


def maximize_bell(
    p: SqueezingParams,
    t: SpinTriple,
    *,
    points: Optional[int] = None,
    tail_tol: Optional[float] = None,
) -> BellOptimum:
    """Best CHSH settings with vanishing azimuths."""
    with app_logger.timed(log, "maximize bell", family=t.family.value, r=p.r, phi=p.phi, N=t.truncation) as kv:
        optimum = maximize_tensor_bell(correlation_tensor(p, t, tail_tol=tail_tol), points=points)
        kv.update(value=optimum.value)
    return optimum


@dataclass(frozen=True)
class EllSweep:
    ells: NDArray[np.float64]
    values: NDArray[np.float64]
    best_ell: float
    best: BellOptimum


def larsson_ell_sweep(
    p: SqueezingParams,
    ell_grid: Sequence[float],
    N: int,
    *,
    points: Optional[int] = None,
    tail_tol: Optional[float] = None,
) -> EllSweep:
    """maximize_bell for the Larsson family at each bin width; the best one is kept."""
    ells = np.asarray(list(ell_grid), dtype=float)
    if ells.size == 0 or np.any(ells <= 0.0):
        raise RangeError("ell grid must be nonempty and positive")
    values = np.empty(ells.size)
    best: Optional[BellOptimum] = None
    best_ell = float(ells[0])
    for i, ell in enumerate(ells):
        optimum = maximize_bell(p, larsson_triple(N, float(ell)), points=points, tail_tol=tail_tol)
        values[i] = optimum.value
        if best is None or optimum.value > best.value:
            best, best_ell = optimum, float(ell)
    app_logger.log_kv(log, logging.INFO, "larsson sweep", r=p.r, best_ell=best_ell, value=best.value)
    return EllSweep(ells=ells, values=values, best_ell=best_ell, best=best)


# --------------------------------------------------------------------------- Weyl symbols


def classify_weyl_symbol(values: NDArray) -> Tuple[OperatorClass, float]:
    """Improper when more than 10% of samples sit farther than 0.5 from both +1 and -1."""
    v = np.asarray(values)
    departure = np.minimum(np.abs(v - 1.0), np.abs(v + 1.0))
    fraction = float(np.mean(departure > IMPROPER_DEPARTURE))
    label = OperatorClass.improper if fraction > IMPROPER_FRACTION else OperatorClass.proper
    return label, fraction


@dataclass(frozen=True)
class SymbolReport:
    classes: Dict[str, OperatorClass]
    fractions: Dict[str, float]

    @property
    def improper_count(self) -> int:
        return sum(1 for c in self.classes.values() if c is OperatorClass.improper)


def symbol_grid(points: int = 41, half_width: float = 3.0) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Phase-space sample grid, offset so no point lands on q = 0 or a bin edge."""
    axis = np.linspace(-half_width, half_width, points) + 0.5 * half_width * (math.sqrt(5.0) - 2.0) / points
    return np.meshgrid(axis, axis, indexing="ij")


def proper_improper_report(t: SpinTriple, *, points: int = 41, half_width: float = 3.0) -> SymbolReport:
    """Classify each component by its Weyl symbol on a phase-space grid.

    Kernel symbols are exact; reflected kernels contribute only a
    distribution at a point, so their regular part is what gets sampled.
    Fock-only families go through numerical Weyl quadrature.
    """
    q, p = symbol_grid(points, half_width)
    sources = t.kernels if t.kernels is not None else t.components()
    classes: Dict[str, OperatorClass] = {}
    fractions: Dict[str, float] = {}
    for name, op in zip(("sx", "sy", "sz"), sources):
        values = weyl_symbol_numeric(op, q, p)
        classes[name], fractions[name] = classify_weyl_symbol(values)
    app_logger.log_kv(log, logging.DEBUG, "weyl classification", family=t.family.value, **{k: v.value for k, v in classes.items()})
    return SymbolReport(classes=classes, fractions=fractions)


__all__ = [
    "TSIRELSON",
    "bw_triple",
    "gkmr_kernels",
    "gkmr_triple",
    "larsson_kernels",
    "larsson_triple",
    "spin_along",
    "spin_algebra_defect",
    "kernel_algebra_defect",
    "correlation_tensor",
    "correlator_E",
    "bell_mean",
    "chsh_values",
    "BellOptimum",
    "maximize_tensor_bell",
    "maximize_bell",
    "EllSweep",
    "larsson_ell_sweep",
    "classify_weyl_symbol",
    "SymbolReport",
    "symbol_grid",
    "proper_improper_report",
]
