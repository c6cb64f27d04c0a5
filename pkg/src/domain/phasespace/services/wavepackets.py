"""Wave-packet states behind Bell's letter and the CHSH correlators built on them.

Measurements are the sign operators sgn(q_i) taken at times t_i after free
evolution, so a Wigner function W(q, p) contributes through the shear
q_i -> q_i + p_i t_i. The correlator E(t1, t2) is the mean of the product of
the two signs and ``B = E(t1,t2) + E(t1,t2') + E(t1',t2) - E(t1',t2')``.

Three states are covered:

* EPR: a Gaussian in (q1 + q2, q1 - q2 + q0); E is an arcsine law.
* Bell's letter: the unnormalized state with a single node pair, whose
  normalization ``n_bell_sq`` is carried as a number.
* Johansen: a coherent x squeezed product whose s -> 0 limit reproduces the
  letter's construction with a positive Wigner function.

Every closed-form correlator has a quadrature twin that integrates the
two-time distribution against the sign observables.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import optimize

from configs.config import get_settings
from configs.logger import app_logger
from src.core.errors import BracketError, DegenerateCovarianceError
from src.core.numerics import Grid1D, erf, gauss_legendre_nodes, integrate_tensor
from src.domain.phasespace.schemas.wavepackets import (
    BellStateParams,
    CatParams,
    EprParams,
    JohansenParams,
    TimeSettings,
)

log = app_logger.get_logger(__name__, extra_prefix="wavepackets")

Correlator = Callable[[float, float], float]

BELL_BRACKET = (0.5, 1.5)
_QUAD_NODES = 256
_NORM_NODES = 48


def _scalar_or_array(value: NDArray) -> NDArray | float:
    return float(value) if np.ndim(value) == 0 else value


def chsh_combination(correlator: Correlator, ts: TimeSettings) -> float:
    """E(t1,t2) + E(t1,t2') + E(t1',t2) - E(t1',t2')."""
    return (
        correlator(ts.t1, ts.t2)
        + correlator(ts.t1, ts.t2p)
        + correlator(ts.t1p, ts.t2)
        - correlator(ts.t1p, ts.t2p)
    )


def _half_line_nodes(scale: float, *, nodes: int = _QUAD_NODES) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    return gauss_legendre_nodes(Grid1D(0.0, 12.0 * scale, nodes))


def _quadrant_correlator(density: Callable[[NDArray, NDArray], NDArray], scale1: float, scale2: float) -> float:
    """Integral of sgn(y1) sgn(y2) density(y1, y2) over the plane, one quadrant at a time."""
    x1, w1 = _half_line_nodes(scale1)
    x2, w2 = _half_line_nodes(scale2)
    weights = np.outer(w1, w2)
    total = 0.0
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            values = density(s1 * x1[:, None], s2 * x2[None, :])
            total += s1 * s2 * float(np.sum(weights * values))
    return total


# --------------------------------------------------------------------------- cat


def cat_wavefunction(c: CatParams, q: ArrayLike) -> NDArray[np.complex128] | complex:
    """N/sqrt(2) (Phi_+ + Phi_-) with Phi_pm = (m w/pi)^{1/4} exp[-m w (q pm q0)^2/2 + i p0 (q pm q0)]."""
    qa = np.asarray(q, dtype=float)
    mw = c.m_omega
    norm = math.sqrt(c.norm_sq / 2.0) * (mw / math.pi) ** 0.25
    plus = np.exp(-0.5 * mw * (qa + c.q0) ** 2 + 1j * c.p0 * (qa + c.q0))
    minus = np.exp(-0.5 * mw * (qa - c.q0) ** 2 + 1j * c.p0 * (qa - c.q0))
    value = norm * (plus + minus)
    return complex(value) if value.ndim == 0 else value


def cat_wigner(c: CatParams, q: ArrayLike, p: ArrayLike) -> NDArray[np.float64] | float:
    """Two Gaussian bumps at -q0 and +q0 plus the interference fringe cos(2 p q0)."""
    qa, pa = np.asarray(q, dtype=float), np.asarray(p, dtype=float)
    mw = c.m_omega
    momentum = np.exp(-((pa - c.p0) ** 2) / mw)
    bumps = np.exp(-mw * (qa + c.q0) ** 2) + np.exp(-mw * (qa - c.q0) ** 2)
    fringe = 2.0 * np.cos(2.0 * pa * c.q0) * np.exp(-mw * qa**2)
    value = c.norm_sq / (2.0 * math.pi) * momentum * (bumps + fringe)
    return _scalar_or_array(value)


def _cat_box(c: CatParams, width: float = 10.0) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    sq = width / math.sqrt(c.m_omega)
    sp = width * math.sqrt(c.m_omega)
    return (-abs(c.q0) - sq, abs(c.q0) + sq), (c.p0 - sp, c.p0 + sp)


def cat_norm(c: CatParams) -> float:
    """Integral of the cat Wigner function over a 10-sigma box."""
    (qlo, qhi), (plo, phi) = _cat_box(c)
    # the fringe oscillates with period pi/|q0| in p
    fringes = abs(c.q0) * (phi - plo) / math.pi
    n_p = 64 * max(2, math.ceil(fringes / 4.0))
    value = integrate_tensor(lambda q, p: cat_wigner(c, q, p), [Grid1D(qlo, qhi, 256), Grid1D(plo, phi, n_p)])
    return float(value)


def cat_negativity(c: CatParams, *, points: int = 201) -> Tuple[float, Tuple[float, float]]:
    """Minimum of the cat Wigner function and where it is attained.

    A grid scan over the 5-sigma box seeds a Nelder-Mead refinement.
    """
    cfg = get_settings()
    (qlo, qhi), (plo, phi) = _cat_box(c, width=5.0)
    qs = np.linspace(qlo, qhi, points)
    ps = np.linspace(plo, phi, points)
    grid = cat_wigner(c, qs[:, None], ps[None, :])
    i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
    start = np.array([qs[i], ps[j]])
    best = float(grid[i, j])

    result = optimize.minimize(
        lambda x: float(cat_wigner(c, x[0], x[1])),
        start,
        method="Nelder-Mead",
        options={"xatol": cfg.SIMPLEX_XATOL, "fatol": cfg.SIMPLEX_FATOL},
    )
    if result.fun < best:
        best, start = float(result.fun), result.x
    app_logger.log_kv(log, logging.DEBUG, "cat negativity", q0=c.q0, minimum=best)
    return best, (float(start[0]), float(start[1]))


# --------------------------------------------------------------------------- EPR


def epr_wigner(e: EprParams, q1: ArrayLike, q2: ArrayLike, p1: ArrayLike, p2: ArrayLike) -> NDArray[np.float64] | float:
    """(1/pi^2) exp[-b^2 (p1+p2)^2/4 - (q1+q2)^2/b^2] exp[-eps^2 (p1-p2)^2/8 - 2 (q1-q2+q0)^2/eps^2]."""
    q1, q2, p1, p2 = (np.asarray(x, dtype=float) for x in (q1, q2, p1, p2))
    center = -(e.b**2) * (p1 + p2) ** 2 / 4.0 - (q1 + q2) ** 2 / e.b**2
    relative = -(e.eps**2) * (p1 - p2) ** 2 / 8.0 - 2.0 * (q1 - q2 + e.q0) ** 2 / e.eps**2
    return _scalar_or_array(np.exp(center + relative) / math.pi**2)


def epr_a_matrix(e: EprParams, t1: float, t2: float) -> NDArray[np.float64]:
    """Four times the covariance of (q1 + p1 t1, q2 + p2 t2) in the EPR state."""
    b2, e2 = e.b**2, e.eps**2
    slope = 2.0 / b2 + 4.0 / e2
    off = b2 / 2.0 - e2 / 4.0 + (2.0 / b2 - 4.0 / e2) * t1 * t2
    base = b2 / 2.0 + e2 / 4.0
    return np.array([[base + slope * t1**2, off], [off, base + slope * t2**2]])


def epr_det_a(e: EprParams, t1: float, t2: float) -> float:
    """Closed form [b^4 eps^4 + 64 t1^2 t2^2 + (4 b^4 + eps^4)(t1+t2)^2 + 4 b^2 eps^2 (t1-t2)^2] / (2 b^2 eps^2)."""
    b2, e2 = e.b**2, e.eps**2
    numerator = (
        b2**2 * e2**2
        + 64.0 * t1**2 * t2**2
        + (4.0 * b2**2 + e2**2) * (t1 + t2) ** 2
        + 4.0 * b2 * e2 * (t1 - t2) ** 2
    )
    return numerator / (2.0 * b2 * e2)


def epr_covariance_matrix(e: EprParams, t1: float, t2: float) -> NDArray[np.float64]:
    """Covariance of the measured positions at times (t1, t2)."""
    return epr_a_matrix(e, t1, t2) / 4.0


def epr_rho(e: EprParams, t1: float, t2: float, q1: ArrayLike, q2: ArrayLike) -> NDArray[np.float64] | float:
    """Joint density of (q1 + p1 t1, q2 + p2 t2); a Gaussian centered at (-q0/2, q0/2)."""
    cov = epr_covariance_matrix(e, t1, t2)
    det = float(np.linalg.det(cov))
    if not det > 0.0:
        raise DegenerateCovarianceError(f"EPR two-time covariance is singular at t=({t1}, {t2})")
    inv = np.linalg.inv(cov)
    x = np.asarray(q1, dtype=float) + 0.5 * e.q0
    y = np.asarray(q2, dtype=float) - 0.5 * e.q0
    quad = inv[0, 0] * x**2 + 2.0 * inv[0, 1] * x * y + inv[1, 1] * y**2
    return _scalar_or_array(np.exp(-0.5 * quad) / (2.0 * math.pi * math.sqrt(det)))


def epr_correlator(e: EprParams, t1: float, t2: float) -> float:
    """(2/pi) arctan(A12 / sqrt(det A)); the q0 offset of the sign operators cancels."""
    a = epr_a_matrix(e, t1, t2)
    det = epr_det_a(e, t1, t2)
    if not det > 0.0:
        raise DegenerateCovarianceError(f"EPR det A vanishes at t=({t1}, {t2})")
    return 2.0 / math.pi * math.atan(a[0, 1] / math.sqrt(det))


def epr_correlator_quadrature(e: EprParams, t1: float, t2: float) -> float:
    """Sign-weighted integral of ``epr_rho`` over the four quadrants of the shifted positions."""
    cov = epr_covariance_matrix(e, t1, t2)

    def density(x: NDArray, y: NDArray) -> NDArray:
        return epr_rho(e, t1, t2, x - 0.5 * e.q0, y + 0.5 * e.q0)

    return _quadrant_correlator(density, math.sqrt(cov[0, 0]), math.sqrt(cov[1, 1]))


def epr_bell(e: EprParams, ts: TimeSettings) -> float:
    """CHSH combination of ``epr_correlator``."""
    return chsh_combination(lambda a, b: epr_correlator(e, a, b), ts)


@dataclass(frozen=True)
class BellScan:
    """Maximum of B over a grid of (t2, t2') with t1 = t1' = 0."""

    t2: NDArray[np.float64]
    values: NDArray[np.float64]
    maximum: float
    argmax: Tuple[float, float]


def epr_bell_scan(e: EprParams, *, t_max: float = 5.0, points: int = 50) -> BellScan:
    t2 = np.linspace(0.0, t_max, points)
    values = np.array([[epr_bell(e, TimeSettings(t1=0.0, t2=a, t1p=0.0, t2p=b)) for b in t2] for a in t2])
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    app_logger.log_kv(log, logging.INFO, "epr bell scan", b=e.b, eps=e.eps, maximum=float(values[i, j]))
    return BellScan(t2=t2, values=values, maximum=float(values[i, j]), argmax=(float(t2[i]), float(t2[j])))


def epr_norm(e: EprParams) -> float:
    """4D integral of the EPR Wigner function."""
    return _rotated_norm(
        lambda q1, q2, p1, p2: epr_wigner(e, q1, q2, p1, p2),
        centers=(0.0, -e.q0, 0.0, 0.0),
        scales=(e.b / math.sqrt(2.0), e.eps / 2.0, math.sqrt(2.0) / e.b, 2.0 / e.eps),
    )


def _rotated_norm(
    wigner: Callable[..., NDArray],
    *,
    centers: Sequence[float],
    scales: Sequence[float],
    nodes: int = _NORM_NODES,
) -> float:
    """Integrate a two-mode Wigner function in (q1+q2, q1-q2, p1+p2, p1-p2).

    ``scales`` are the standard deviations along those axes; each window
    spans 9 of them on both sides of ``centers``.
    """
    grids = [Grid1D(c - 9.0 * s, c + 9.0 * s, nodes) for c, s in zip(centers, scales)]

    def rotated(s, d, ps, pd):
        return 0.25 * wigner(0.5 * (s + d), 0.5 * (s - d), 0.5 * (ps + pd), 0.5 * (ps - pd))

    return float(integrate_tensor(rotated, grids))


# --------------------------------------------------------------------------- Bell's letter


def _bell_bracket(x: NDArray, y: NDArray) -> NDArray:
    return 11.0 / 4.0 + (x**2 + y**2) ** 2 + y**2 - 5.0 * x**2


def bell_letter_wigner(bp: BellStateParams, q1: ArrayLike, q2: ArrayLike, p1: ArrayLike) -> NDArray[np.float64] | float:
    """Coefficient of delta(p1 + p2) in the letter's Wigner function, on the slice p2 = -p1."""
    q1, q2, p1 = (np.asarray(x, dtype=float) for x in (q1, q2, p1))
    x = (q1 - q2 + bp.q0) / bp.a
    y = bp.a * p1
    value = bp.n_bell_sq * bp.a**5 / math.sqrt(math.pi) * np.exp(-(x**2) - y**2) * _bell_bracket(x, y)
    return _scalar_or_array(value)


def bell_rho(bp: BellStateParams, t1: float, t2: float, delta: ArrayLike) -> NDArray[np.float64] | float:
    """Two-time distribution of delta = q1 - q2 + q0 after free evolution, tau = t1 + t2."""
    T = (t1 + t2) / bp.a**2
    d = np.asarray(delta, dtype=float) / bp.a
    s = 1.0 + T**2
    poly = d**4 + (2.0 * T**2 - 4.0) * d**2 + T**4 + 5.0 * T**2 + 4.0
    value = bp.n_bell_sq * bp.a**4 * s**-2.5 * np.exp(-(d**2) / s) * poly
    return _scalar_or_array(value)


def bell_rho_quadrature(bp: BellStateParams, t1: float, t2: float, delta: ArrayLike) -> NDArray[np.float64] | float:
    """``bell_rho`` obtained by integrating the sheared letter Wigner function over p1."""
    tau = t1 + t2
    p, w = gauss_legendre_nodes(Grid1D(-10.0 / bp.a, 10.0 / bp.a, _QUAD_NODES))
    d = np.asarray(delta, dtype=float)
    # delta = (q1 - q2 + q0) + p1 tau on the p2 = -p1 slice
    values = bell_letter_wigner(bp, d[..., None] - p * tau - bp.q0, 0.0, p)
    return _scalar_or_array(np.tensordot(values, w, axes=(-1, 0)))


def bell_letter_F(bp: BellStateParams, tau: ArrayLike) -> NDArray[np.float64] | float:
    """F(tau) = 5 N^2 a^6 (T^2 + 2/5) / sqrt(1 + T^2) with T = tau / a^2."""
    T = np.asarray(tau, dtype=float) / bp.a**2
    value = 5.0 * bp.n_bell_sq * bp.a**6 * (T**2 + 0.4) / np.sqrt(1.0 + T**2)
    return _scalar_or_array(value)


def bell_correlator(bp: BellStateParams, t1: float, t2: float) -> float:
    """E = 1 - F(t1 + t2), the letter's normalization of the sign correlator."""
    return 1.0 - float(bell_letter_F(bp, t1 + t2))


def bell_correlator_quadrature(bp: BellStateParams, t1: float, t2: float) -> float:
    """1 minus the integral of |delta| against the quadrature distribution."""
    width = bp.a * math.sqrt(1.0 + ((t1 + t2) / bp.a**2) ** 2)
    x, w = _half_line_nodes(width)
    anti = np.dot(w, x * (bell_rho_quadrature(bp, t1, t2, x) + bell_rho_quadrature(bp, t1, t2, -x)))
    return 1.0 - float(anti)


def bell_chsh(bp: BellStateParams, x: float) -> float:
    """B at times (-2x, x, 0, 3x), which equals 2 - [3F(x) - F(3x)]."""
    return chsh_combination(lambda a, b: bell_correlator(bp, a, b), TimeSettings(t1=-2.0 * x, t2=x, t1p=0.0, t2p=3.0 * x))


def bell_chsh_reduced(bp: BellStateParams, x: ArrayLike) -> NDArray[np.float64] | float:
    """(2 - B) / N^2, independent of the normalization."""
    xa = np.asarray(x, dtype=float)
    value = (3.0 * bell_letter_F(bp, xa) - bell_letter_F(bp, 3.0 * xa)) / bp.n_bell_sq
    return _scalar_or_array(value)


def bell_violation_threshold(bp: BellStateParams, bracket: Tuple[float, float] = BELL_BRACKET) -> float:
    """Root of 3F(x) - F(3x); beyond it the letter's B exceeds 2.

    The bracket is given in units of a^2.

    Raises:
        BracketError: If 3F(x) - F(3x) keeps its sign on the bracket.
    """
    lo, hi = (edge * bp.a**2 for edge in bracket)

    def f(x: float) -> float:
        return float(bell_chsh_reduced(bp, x))

    if f(lo) * f(hi) > 0.0:
        raise BracketError(f"3F(x) - F(3x) does not change sign on [{lo}, {hi}]")
    try:
        root = optimize.brentq(f, lo, hi, xtol=1e-14, rtol=1e-14)
    except RuntimeError:
        log.warning("brentq failed on the Bell bracket; falling back to bisection")
        root = optimize.bisect(f, lo, hi, xtol=1e-14)
    app_logger.log_kv(log, logging.INFO, "bell threshold", a=bp.a, root=root)
    return float(root)


def normalized_bell_wigner(
    a: float,
    b: float,
    q0: float,
    q1: ArrayLike,
    q2: ArrayLike,
    p1: ArrayLike,
    p2: ArrayLike,
) -> NDArray[np.float64] | float:
    """Wigner function of the normalized letter state of widths ``a`` and ``b``."""
    q1, q2, p1, p2 = (np.asarray(x, dtype=float) for x in (q1, q2, p1, p2))
    center = -(b**2) * (p1 + p2) ** 2 / 4.0 - (q1 + q2) ** 2 / b**2
    x = (q1 - q2 + q0) / a
    y = a * (p1 - p2) / 2.0
    value = 4.0 / (11.0 * math.pi**2) * np.exp(center - x**2 - y**2) * _bell_bracket(x, y)
    return _scalar_or_array(value)


def normalized_bell_negativity(
    a: float, b: float, q0: float = 0.0, *, points: int = 201
) -> Tuple[float, Tuple[float, float, float, float]]:
    """Minimum of ``normalized_bell_wigner`` and the (q1, q2, p1, p2) where it is attained.

    The scan runs over the difference plane q1 + q2 = p1 + p2 = 0, where the
    center factor is one; Nelder-Mead then refines in all four coordinates.
    """
    cfg = get_settings()
    xs = np.linspace(-4.0, 4.0, points)
    ys = np.linspace(-4.0, 4.0, points)

    def on_plane(x: NDArray, y: NDArray) -> Tuple[NDArray, NDArray, NDArray, NDArray]:
        q1 = 0.5 * (a * x - q0)
        p1 = y / a
        return q1, -q1, p1, -p1

    grid = normalized_bell_wigner(a, b, q0, *on_plane(xs[:, None], ys[None, :]))
    i, j = np.unravel_index(int(np.argmin(grid)), grid.shape)
    start = np.array([float(c) for c in on_plane(xs[i], ys[j])])
    best = float(grid[i, j])

    result = optimize.minimize(
        lambda z: float(normalized_bell_wigner(a, b, q0, *z)),
        start,
        method="Nelder-Mead",
        options={"xatol": cfg.SIMPLEX_XATOL, "fatol": cfg.SIMPLEX_FATOL},
    )
    if result.fun < best:
        best, start = float(result.fun), result.x
    app_logger.log_kv(log, logging.DEBUG, "normalized letter negativity", a=a, b=b, minimum=best)
    return best, (float(start[0]), float(start[1]), float(start[2]), float(start[3]))


def normalized_bell_norm(a: float, b: float, q0: float = 0.0) -> float:
    """4D integral of ``normalized_bell_wigner``."""
    return _rotated_norm(
        lambda q1, q2, p1, p2: normalized_bell_wigner(a, b, q0, q1, q2, p1, p2),
        centers=(0.0, -q0, 0.0, 0.0),
        scales=(b / math.sqrt(2.0), a / math.sqrt(2.0), math.sqrt(2.0) / b, math.sqrt(2.0) / a),
    )


# --------------------------------------------------------------------------- Johansen


def johansen_wigner(j: JohansenParams, q1: ArrayLike, q2: ArrayLike, p1: ArrayLike, p2: ArrayLike) -> NDArray[np.float64] | float:
    """(1/pi^2) exp[-(u - q0)^2 - (v - p0)^2 - s^2 (q1+q2)^2/2 - (p1+p2)^2/(2 s^2)].

    u = (q1 - q2)/sqrt(2) and v = (p1 - p2)/sqrt(2).
    """
    q1, q2, p1, p2 = (np.asarray(x, dtype=float) for x in (q1, q2, p1, p2))
    u = (q1 - q2) / math.sqrt(2.0)
    v = (p1 - p2) / math.sqrt(2.0)
    exponent = -((u - j.q0) ** 2) - (v - j.p0) ** 2 - j.s**2 * (q1 + q2) ** 2 / 2.0 - (p1 + p2) ** 2 / (2.0 * j.s**2)
    return _scalar_or_array(np.exp(exponent) / math.pi**2)


def johansen_wigner_reduced(j: JohansenParams, q1: ArrayLike, q2: ArrayLike, p1: ArrayLike) -> NDArray[np.float64] | float:
    """Coefficient of delta(p1 + p2) in the s -> 0 limit, on the slice p2 = -p1."""
    q1, q2, p1 = (np.asarray(x, dtype=float) for x in (q1, q2, p1))
    u = (q1 - q2) / math.sqrt(2.0)
    value = j.K / math.pi * np.exp(-((u - j.q0) ** 2) - (math.sqrt(2.0) * p1 - j.p0) ** 2)
    return _scalar_or_array(value)


def johansen_norm(j: JohansenParams) -> float:
    """4D integral of the full Johansen Wigner function."""
    sq2 = math.sqrt(2.0)
    return _rotated_norm(
        lambda q1, q2, p1, p2: johansen_wigner(j, q1, q2, p1, p2),
        centers=(0.0, sq2 * j.q0, 0.0, sq2 * j.p0),
        scales=(1.0 / j.s, 1.0, j.s, 1.0),
    )


def _johansen_tau(t1: float, t2: float) -> float:
    return 0.5 * (t1 + t2)


def johansen_rho(j: JohansenParams, t1: float, t2: float, u: ArrayLike) -> NDArray[np.float64] | float:
    """Distribution of u = (q1 - q2)/sqrt(2) after free evolution, tau = (t1 + t2)/2."""
    tau = _johansen_tau(t1, t2)
    sigma = math.sqrt(1.0 + tau**2)
    mean = j.q0 + j.p0 * tau
    ua = np.asarray(u, dtype=float)
    value = j.K / (math.sqrt(2.0 * math.pi) * sigma) * np.exp(-((ua - mean) ** 2) / sigma**2)
    return _scalar_or_array(value)


def johansen_rho_quadrature(j: JohansenParams, t1: float, t2: float, u: ArrayLike) -> NDArray[np.float64] | float:
    """``johansen_rho`` from the reduced Wigner function integrated over p1."""
    tau = _johansen_tau(t1, t2)
    center = j.p0 / math.sqrt(2.0)
    p, w = gauss_legendre_nodes(Grid1D(center - 8.0, center + 8.0, _QUAD_NODES))
    ua = np.asarray(u, dtype=float)
    # u after evolution is u + v tau with v = sqrt(2) p1
    shifted = ua[..., None] - math.sqrt(2.0) * p * tau
    values = johansen_wigner_reduced(j, math.sqrt(2.0) * shifted, 0.0, p)
    return _scalar_or_array(np.tensordot(values, w, axes=(-1, 0)))


def johansen_F(j: JohansenParams, tau: ArrayLike) -> NDArray[np.float64] | float:
    """2 sqrt(2) K [sigma e^{-m^2/sigma^2}/sqrt(pi) + m erf(m/sigma)], m = q0 + p0 tau, sigma^2 = 1 + tau^2."""
    ta = np.asarray(tau, dtype=float)
    sigma = np.sqrt(1.0 + ta**2)
    mean = j.q0 + j.p0 * ta
    value = 2.0 * math.sqrt(2.0) * j.K * (sigma * np.exp(-(mean**2) / sigma**2) / math.sqrt(math.pi) + mean * erf(mean / sigma))
    return _scalar_or_array(value)


def johansen_correlator(j: JohansenParams, t1: float, t2: float) -> float:
    return 1.0 - float(johansen_F(j, _johansen_tau(t1, t2)))


def johansen_correlator_quadrature(j: JohansenParams, t1: float, t2: float) -> float:
    """1 - 4 times the integral of |u| against the quadrature distribution."""
    tau = _johansen_tau(t1, t2)
    width = math.sqrt(1.0 + tau**2)
    mean = j.q0 + j.p0 * tau
    # split at u = 0 and cover the bump wherever it sits
    reach = abs(mean) + 12.0 * width
    x, w = gauss_legendre_nodes(Grid1D(0.0, reach, _QUAD_NODES))

    def rho(u: NDArray) -> NDArray:
        return johansen_rho_quadrature(j, t1, t2, u)

    anti = np.dot(w, x * (rho(x) + rho(-x)))
    return 1.0 - 4.0 * float(anti)


def johansen_bell(j: JohansenParams, ts: TimeSettings) -> float:
    return chsh_combination(lambda a, b: johansen_correlator(j, a, b), ts)


@dataclass(frozen=True)
class JohansenRow:
    """One x of the Johansen comparison, combinations in units of K."""

    x: float
    naive: float
    correct: float
    two_minus_b_over_k: float


def johansen_combinations(j: JohansenParams, x_grid: Sequence[float]) -> List[JohansenRow]:
    """3F(x) - F(3x) against F(-x) + 2F(x) - F(3x), with (2 - B)/K at times (-4x, 2x, 0, 6x).

    The times give tau = -x, x, x, 3x for the four correlators, so the
    correct combination is the one B actually measures.
    """
    rows = []
    for x in x_grid:
        fx, f3x, fmx = (float(johansen_F(j, t)) / j.K for t in (x, 3.0 * x, -x))
        b = johansen_bell(j, TimeSettings(t1=-4.0 * x, t2=2.0 * x, t1p=0.0, t2p=6.0 * x))
        rows.append(
            JohansenRow(
                x=float(x),
                naive=3.0 * fx - f3x,
                correct=fmx + 2.0 * fx - f3x,
                two_minus_b_over_k=(2.0 - b) / j.K,
            )
        )
    return rows


__all__ = [
    "chsh_combination",
    "cat_wavefunction",
    "cat_wigner",
    "cat_norm",
    "cat_negativity",
    "epr_wigner",
    "epr_a_matrix",
    "epr_det_a",
    "epr_covariance_matrix",
    "epr_rho",
    "epr_correlator",
    "epr_correlator_quadrature",
    "epr_bell",
    "BellScan",
    "epr_bell_scan",
    "epr_norm",
    "bell_letter_wigner",
    "bell_rho",
    "bell_rho_quadrature",
    "bell_letter_F",
    "bell_correlator",
    "bell_correlator_quadrature",
    "bell_chsh",
    "bell_chsh_reduced",
    "bell_violation_threshold",
    "normalized_bell_wigner",
    "normalized_bell_negativity",
    "normalized_bell_norm",
    "johansen_wigner",
    "johansen_wigner_reduced",
    "johansen_norm",
    "johansen_rho",
    "johansen_rho_quadrature",
    "johansen_F",
    "johansen_correlator",
    "johansen_correlator_quadrature",
    "johansen_bell",
    "JohansenRow",
    "johansen_combinations",
]
