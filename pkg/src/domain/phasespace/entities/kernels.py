"""Operators acting locally in position space: (T f)(q) = sum_t c_t w_t(q) f(sigma_t q + s_t).

Multiplications by step functions, reflections and lattice shifts close under
products and adjoints in this form, so identities between pseudo-spin
operators can be checked exactly instead of through truncated Fock matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from configs.config import get_settings
from src.core.errors import RangeError
from src.core.numerics import breakpoint_panels, hermite_functions, panel_rule

# quadrature nodes per block when assembling Fock matrices
_NODE_CHUNK = 4096

WeightFn = Callable[[NDArray[np.float64]], NDArray]
BreakFn = Callable[[float, float], NDArray[np.float64]]


def _no_breaks(lo: float, hi: float) -> NDArray[np.float64]:
    return np.empty(0)


def _lattice_breaks(ell: float, offset: float = 0.0) -> BreakFn:
    def breaks(lo: float, hi: float) -> NDArray[np.float64]:
        first = math.ceil((lo - offset) / ell)
        last = math.floor((hi - offset) / ell)
        return offset + ell * np.arange(first, last + 1, dtype=float)

    return breaks


@dataclass(frozen=True)
class Weight:
    """Piecewise-smooth multiplier with known discontinuities.

    Attributes:
        fn: Vectorized values w(q).
        breaks: Discontinuities inside (lo, hi).
        name: Label for reprs.
    """

    fn: WeightFn
    breaks: BreakFn = _no_breaks
    name: str = "w"

    def __call__(self, q: ArrayLike) -> NDArray:
        return self.fn(np.asarray(q, dtype=float))

    def compose(self, other: "Weight", sigma: int, shift: float) -> "Weight":
        """q -> self(q) * other(sigma q + shift)."""

        def fn(q: NDArray[np.float64]) -> NDArray:
            return self.fn(q) * other.fn(sigma * q + shift)

        def breaks(lo: float, hi: float) -> NDArray[np.float64]:
            a, b = sorted((sigma * lo + shift, sigma * hi + shift))
            mapped = sigma * (other.breaks(a, b) - shift)
            return np.union1d(self.breaks(lo, hi), mapped)

        return Weight(fn, breaks, f"{self.name}*{other.name}")

    def pulled_back(self, sigma: int, shift: float) -> "Weight":
        """q -> conj(self(sigma (q - shift))), the weight of an adjoint term."""

        def fn(q: NDArray[np.float64]) -> NDArray:
            return np.conj(self.fn(sigma * (q - shift)))

        def breaks(lo: float, hi: float) -> NDArray[np.float64]:
            a, b = sorted((sigma * (lo - shift), sigma * (hi - shift)))
            return np.sort(sigma * self.breaks(a, b) + shift)

        return Weight(fn, breaks, f"{self.name}^*")

    @classmethod
    def constant(cls, value: complex = 1.0) -> "Weight":
        return cls(lambda q: np.full(q.shape, value), _no_breaks, f"{value}")

    @classmethod
    def position(cls) -> "Weight":
        return cls(lambda q: q, _no_breaks, "q")

    @classmethod
    def sign(cls) -> "Weight":
        """sgn(q) with sgn(0) = +1 (the choice is immaterial on a null set)."""
        return cls(lambda q: np.where(q >= 0.0, 1.0, -1.0), _sign_breaks, "sgn")

    @classmethod
    def alternating_bins(cls, ell: float) -> "Weight":
        """(-1)^floor(q / ell)."""
        return cls(lambda q: np.where(np.floor(q / ell) % 2 == 0, 1.0, -1.0), _lattice_breaks(ell), f"alt[{ell:g}]")

    @classmethod
    def even_bins(cls, ell: float) -> "Weight":
        """Indicator of bins [2n ell, (2n+1) ell)."""
        return cls(lambda q: np.where(np.floor(q / ell) % 2 == 0, 1.0, 0.0), _lattice_breaks(ell), f"even[{ell:g}]")

    @classmethod
    def odd_bins(cls, ell: float) -> "Weight":
        """Indicator of bins [(2n+1) ell, (2n+2) ell)."""
        return cls(lambda q: np.where(np.floor(q / ell) % 2 == 0, 0.0, 1.0), _lattice_breaks(ell), f"odd[{ell:g}]")


def _sign_breaks(lo: float, hi: float) -> NDArray[np.float64]:
    return np.array([0.0]) if lo < 0.0 < hi else np.empty(0)


@dataclass(frozen=True)
class KernelTerm:
    """One term c * w(q) * f(sigma q + shift)."""

    coefficient: complex
    weight: Weight
    sigma: int = 1
    shift: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma not in (1, -1):
            raise RangeError(f"sigma must be +1 or -1, got {self.sigma}")


@dataclass(frozen=True)
class PositionOperator:
    """Finite sum of :class:`KernelTerm` acting on wavefunctions of one variable."""

    terms: Tuple[KernelTerm, ...] = field(default_factory=tuple)
    label: str = ""

    @classmethod
    def multiplication(cls, weight: Weight, label: str = "") -> "PositionOperator":
        return cls((KernelTerm(1.0, weight),), label or weight.name)

    @classmethod
    def identity(cls) -> "PositionOperator":
        return cls.multiplication(Weight.constant(1.0), "1")

    @classmethod
    def reflection(cls) -> "PositionOperator":
        """Parity: f(q) -> f(-q)."""
        return cls((KernelTerm(1.0, Weight.constant(1.0), sigma=-1),), "P")

    def __add__(self, other: "PositionOperator") -> "PositionOperator":
        return PositionOperator(self.terms + other.terms, f"({self.label}+{other.label})")

    def __sub__(self, other: "PositionOperator") -> "PositionOperator":
        return self + other.scaled(-1.0)

    def scaled(self, factor: complex) -> "PositionOperator":
        terms = tuple(KernelTerm(t.coefficient * factor, t.weight, t.sigma, t.shift) for t in self.terms)
        return PositionOperator(terms, f"{factor}*{self.label}")

    def __matmul__(self, other: "PositionOperator") -> "PositionOperator":
        terms = []
        for a in self.terms:
            for b in other.terms:
                terms.append(
                    KernelTerm(
                        a.coefficient * b.coefficient,
                        a.weight.compose(b.weight, a.sigma, a.shift),
                        a.sigma * b.sigma,
                        b.sigma * a.shift + b.shift,
                    )
                )
        return PositionOperator(tuple(terms), f"{self.label}{other.label}")

    def commutator(self, other: "PositionOperator") -> "PositionOperator":
        return self @ other - other @ self

    def dagger(self) -> "PositionOperator":
        terms = tuple(
            KernelTerm(np.conj(t.coefficient), t.weight.pulled_back(t.sigma, t.shift), t.sigma, -t.sigma * t.shift)
            for t in self.terms
        )
        return PositionOperator(terms, f"{self.label}^+")

    def apply(self, f: Callable[[NDArray[np.float64]], NDArray], q: ArrayLike) -> NDArray[np.complex128]:
        """(T f)(q) for a vectorized wavefunction ``f``."""
        qa = np.asarray(q, dtype=float)
        out = np.zeros(qa.shape, dtype=complex)
        for t in self.terms:
            out += t.coefficient * t.weight(qa) * f(t.sigma * qa + t.shift)
        return out

    @property
    def has_reflection(self) -> bool:
        """True when some term maps q to -q + s; its Weyl symbol is then a distribution."""
        return any(t.sigma == -1 and t.coefficient != 0 for t in self.terms)

    def weyl_symbol(self, q: ArrayLike, p: ArrayLike) -> NDArray[np.complex128]:
        """Weyl symbol away from singular supports.

        A term w(q) f(q + s) has symbol exp(i p s) w(q - s/2). Reflected terms
        contribute distributions supported on the line q = s/2 and are
        omitted here; see :attr:`has_reflection`.
        """
        qa, pa = np.broadcast_arrays(np.asarray(q, dtype=float), np.asarray(p, dtype=float))
        out = np.zeros(qa.shape, dtype=complex)
        for t in self.terms:
            if t.sigma == 1:
                out += t.coefficient * np.exp(1j * pa * t.shift) * t.weight(qa - 0.5 * t.shift)
        return out

    def fock_matrix(self, truncation: int, *, margin: float = 10.0) -> NDArray[np.complex128]:
        """Matrix elements <phi_i| T |phi_j> for i, j <= truncation.

        Each term is integrated with Gauss panels aligned to its weight's
        discontinuities on a window that contains the oscillator states.
        """
        cfg = get_settings()
        half = math.sqrt(2.0 * truncation + 1.0) + margin
        # products phi_i phi_j oscillate on the scale 1/sqrt(2N+1)
        width = min(cfg.KERNEL_PANEL_WIDTH, 4.0 / math.sqrt(2.0 * truncation + 1.0))
        size = truncation + 1
        matrix = np.zeros((size, size), dtype=complex)
        for t in self.terms:
            if t.coefficient == 0:
                continue
            lo, hi = -half - abs(t.shift), half + abs(t.shift)
            edges = breakpoint_panels(lo, hi, t.weight.breaks(lo, hi), max_width=width)
            nodes, weights = panel_rule(edges, cfg.KERNEL_PANEL_NODES)
            for start in range(0, nodes.size, _NODE_CHUNK):
                x = nodes[start : start + _NODE_CHUNK]
                w = weights[start : start + _NODE_CHUNK] * t.weight(x)
                left = hermite_functions(truncation, x)
                right = hermite_functions(truncation, t.sigma * x + t.shift)
                matrix += t.coefficient * (left * w) @ right.T
        return matrix


__all__ = ["Weight", "KernelTerm", "PositionOperator"]
