"""Classical information measures (in nats) and the discord of the two-mode squeezed state (in bits)."""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import entr, rel_entr, xlogy

from src.core.errors import InvalidDistributionError, RangeError, SupportError
from src.domain.phasespace.entities.distributions import JointDistribution

LN2 = math.log(2.0)
_SUM_TOL = 1e-12


def _distribution(p: ArrayLike, name: str = "p") -> NDArray[np.float64]:
    arr = np.asarray(p, dtype=float).ravel()
    if arr.size == 0:
        raise InvalidDistributionError(f"{name} is empty")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0):
        raise InvalidDistributionError(f"{name} has negative or non-finite entries")
    if abs(arr.sum() - 1.0) > _SUM_TOL:
        raise InvalidDistributionError(f"{name} sums to {arr.sum():.15g}, not 1")
    return arr


def shannon_entropy(p: ArrayLike) -> float:
    """-sum p ln p with 0 ln 0 = 0."""
    return float(entr(_distribution(p)).sum())


def kl_divergence(p: ArrayLike, q: ArrayLike) -> float:
    """D(p || q) = sum p ln(p / q).

    Raises:
        SupportError: q vanishes where p does not.
    """
    pa, qa = _distribution(p, "p"), _distribution(q, "q")
    if pa.shape != qa.shape:
        raise InvalidDistributionError(f"distributions differ in length: {pa.size} vs {qa.size}")
    if np.any((qa == 0.0) & (pa > 0.0)):
        raise SupportError("q vanishes where p is positive")
    return float(rel_entr(pa, qa).sum())


def marginals(j: JointDistribution) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    return j.marginal_a(), j.marginal_b()


def conditional_entropy(j: JointDistribution) -> float:
    """S(b|a) = -sum p(a, b) ln p(b|a)."""
    pa = j.marginal_a()
    joint = j.probabilities
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(pa[:, None] > 0.0, joint / pa[:, None], 0.0)
    return float(-xlogy(joint, cond).sum())


def mutual_information(j: JointDistribution) -> float:
    """S[p(a)] + S[p(b)] - S[p(a, b)]."""
    pa, pb = marginals(j)
    return shannon_entropy(pa) + shannon_entropy(pb) - float(entr(j.probabilities).sum())


def mutual_information_kl(j: JointDistribution) -> float:
    """D(p(a, b) || p(a) p(b))."""
    pa, pb = marginals(j)
    return float(rel_entr(j.probabilities, np.outer(pa, pb)).sum())


def mutual_information_conditional(j: JointDistribution) -> float:
    """S[p(b)] - S(b|a)."""
    return shannon_entropy(j.marginal_b()) - conditional_entropy(j)


def discord_tmss_nats(r: float) -> float:
    """cosh^2 r ln cosh^2 r - sinh^2 r ln sinh^2 r, evaluated without cancellation.

    With s = sinh^2 r the value is ln(1 + s) + s ln(1 + 1/s); for large r it
    is rewritten as ln s + (1 + s) ln(1 + 1/s) with ln s = 2 (r + ln(1 - e^{-2r}) - ln 2).
    """
    if r < 0.0 or not math.isfinite(r):
        raise RangeError(f"r must be finite and nonnegative, got {r}")
    if r == 0.0:
        return 0.0
    if r < 20.0:
        s = math.sinh(r) ** 2
        if s == 0.0:
            return 0.0
        return math.log1p(s) + s * math.log1p(1.0 / s)
    x = math.exp(-2.0 * r)
    log_s = 2.0 * (r + math.log1p(-x) - LN2)
    inv = (2.0 * math.exp(-r) / (1.0 - x)) ** 2
    tail = 1.0 if inv == 0.0 else math.log1p(inv) * (1.0 + 1.0 / inv)
    return log_s + tail


def discord_tmss(r: float) -> float:
    """Quantum discord delta(k, -k) of the two-mode squeezed state in bits; independent of phi."""
    return discord_tmss_nats(r) / LN2


def discord_tmss_direct(r: float) -> float:
    """Same quantity from cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r as printed."""
    if r < 0.0:
        raise RangeError(f"r must be nonnegative, got {r}")
    c2, s2 = math.cosh(r) ** 2, math.sinh(r) ** 2
    return float(xlogy(c2, c2) - xlogy(s2, s2)) / LN2


def discord_asymptote(r: float) -> float:
    """Large-r line 2r/ln 2 - 2 + 1/ln 2 (bits), approached at rate e^{-4r}."""
    if not r > 0.0:
        raise RangeError(f"r must be positive, got {r}")
    return 2.0 * r / LN2 - 2.0 + 1.0 / LN2


__all__ = [
    "LN2",
    "shannon_entropy",
    "kl_divergence",
    "marginals",
    "conditional_entropy",
    "mutual_information",
    "mutual_information_kl",
    "mutual_information_conditional",
    "discord_tmss_nats",
    "discord_tmss",
    "discord_tmss_direct",
    "discord_asymptote",
]
