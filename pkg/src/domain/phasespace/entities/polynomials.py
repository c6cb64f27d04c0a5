"""Phase-space polynomials and ordered operator expressions over (q_k, pi_k, q_-k, pi_-k)."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.errors import RangeError

MAX_DEGREE = 8

Exponents = Tuple[int, int, int, int]


class PhaseVariable(str, Enum):
    """Canonical variables; the value doubles as a readable symbol."""

    q_k = "q_k"
    pi_k = "pi_k"
    q_mk = "q_mk"
    pi_mk = "pi_mk"

    @property
    def index(self) -> int:
        return _INDEX[self]

    @property
    def mode(self) -> int:
        """0 for the k mode, 1 for the -k mode."""
        return self.index // 2

    @property
    def is_position(self) -> bool:
        return self.index % 2 == 0

    @property
    def partner(self) -> "PhaseVariable":
        """Canonical conjugate in the same mode."""
        return _ORDER[self.index ^ 1]


_ORDER = (PhaseVariable.q_k, PhaseVariable.pi_k, PhaseVariable.q_mk, PhaseVariable.pi_mk)
_INDEX = {v: i for i, v in enumerate(_ORDER)}


def _unit(index: int) -> Exponents:
    exps = [0, 0, 0, 0]
    exps[index] = 1
    return tuple(exps)  # type: ignore[return-value]


@dataclass(frozen=True)
class PhasePolynomial:
    """Polynomial with complex coefficients in the four phase-space variables.

    Attributes:
        coefficients: Mapping exponent 4-tuple -> coefficient; zero terms dropped.
    """

    coefficients: Mapping[Exponents, complex]

    def __post_init__(self) -> None:
        cleaned: Dict[Exponents, complex] = {}
        for exps, coeff in self.coefficients.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != 4 or any(e < 0 for e in exps):
                raise RangeError(f"invalid exponent tuple {exps}")
            if sum(exps) > MAX_DEGREE:
                raise RangeError(f"degree {sum(exps)} exceeds {MAX_DEGREE}")
            c = complex(coeff)
            if c != 0:
                cleaned[exps] = cleaned.get(exps, 0j) + c  # type: ignore[index]
        object.__setattr__(self, "coefficients", {e: c for e, c in cleaned.items() if c != 0})

    @classmethod
    def constant(cls, value: complex) -> "PhasePolynomial":
        return cls({(0, 0, 0, 0): value})

    @classmethod
    def variable(cls, var: PhaseVariable) -> "PhasePolynomial":
        return cls({_unit(var.index): 1.0})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient: complex = 1.0) -> "PhasePolynomial":
        return cls({tuple(exponents): coefficient})  # type: ignore[dict-item]

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.coefficients), default=0)

    def terms(self) -> Iterator[Tuple[complex, Exponents]]:
        """(coefficient, exponents) pairs in a deterministic order."""
        for exps in sorted(self.coefficients):
            yield self.coefficients[exps], exps

    def __add__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        merged = dict(self.coefficients)
        for exps, c in other.coefficients.items():
            merged[exps] = merged.get(exps, 0j) + c
        return PhasePolynomial(merged)

    def __sub__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        return self + other.scaled(-1.0)

    def __mul__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        out: Dict[Exponents, complex] = {}
        for (ea, ca), (eb, cb) in product(self.coefficients.items(), other.coefficients.items()):
            exps = tuple(a + b for a, b in zip(ea, eb))
            out[exps] = out.get(exps, 0j) + ca * cb  # type: ignore[index]
        return PhasePolynomial(out)

    def __pow__(self, n: int) -> "PhasePolynomial":
        result = PhasePolynomial.constant(1.0)
        for _ in range(n):
            result = result * self
        return result

    def scaled(self, factor: complex) -> "PhasePolynomial":
        return PhasePolynomial({e: c * factor for e, c in self.coefficients.items()})

    def derivative(self, var: PhaseVariable) -> "PhasePolynomial":
        i = var.index
        out: Dict[Exponents, complex] = {}
        for exps, c in self.coefficients.items():
            if exps[i]:
                lowered = list(exps)
                lowered[i] -= 1
                out[tuple(lowered)] = c * exps[i]  # type: ignore[index]
        return PhasePolynomial(out)

    def evaluate(self, points: ArrayLike) -> NDArray[np.complex128] | complex:
        """Value at points of shape (..., 4)."""
        pts = np.asarray(points, dtype=float)
        if pts.shape[-1] != 4:
            raise RangeError("points need four coordinates")
        total = np.zeros(pts.shape[:-1], dtype=complex)
        for exps, c in self.coefficients.items():
            total = total + c * np.prod(pts ** np.asarray(exps), axis=-1)
        return complex(total) if total.ndim == 0 else total

    def max_abs_difference(self, other: "PhasePolynomial") -> float:
        diff = (self - other).coefficients
        return max((abs(c) for c in diff.values()), default=0.0)

    def is_real(self, tol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= tol for c in self.coefficients.values())

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for c, exps in self.terms():
            factors = [f"{v.value}^{e}" if e > 1 else v.value for v, e in zip(_ORDER, exps) if e]
            parts.append(f"({c.real:+.6g}{c.imag:+.6g}j)" + ("*" + "*".join(factors) if factors else ""))
        return " ".join(parts)


OperatorTerm = Tuple[complex, Tuple[PhaseVariable, ...]]


@dataclass(frozen=True)
class OrderedOperatorExpr:
    """Linear combination of ordered products of canonical operators.

    Attributes:
        terms: (coefficient, factors) pairs; factors are applied right to left,
            so (c, (A, B)) denotes c * A B.
    """

    terms: Tuple[OperatorTerm, ...]

    def __post_init__(self) -> None:
        normalized = []
        for coeff, factors in self.terms:
            factors = tuple(PhaseVariable(f) for f in factors)
            if len(factors) > MAX_DEGREE:
                raise RangeError(f"operator product of length {len(factors)} exceeds {MAX_DEGREE}")
            normalized.append((complex(coeff), factors))
        object.__setattr__(self, "terms", tuple(normalized))

    @classmethod
    def identity(cls) -> "OrderedOperatorExpr":
        return cls(((1.0, ()),))

    @classmethod
    def symbol(cls, var: PhaseVariable | str) -> "OrderedOperatorExpr":
        return cls(((1.0, (PhaseVariable(var),)),))

    @classmethod
    def linear(cls, coefficients: Mapping[PhaseVariable, complex]) -> "OrderedOperatorExpr":
        return cls(tuple((c, (v,)) for v, c in coefficients.items() if c != 0))

    @classmethod
    def from_products(cls, products: Iterable[Tuple[complex, Sequence[PhaseVariable | str]]]) -> "OrderedOperatorExpr":
        return cls(tuple((c, tuple(f)) for c, f in products))

    @property
    def degree(self) -> int:
        return max((len(f) for _, f in self.terms), default=0)

    def __add__(self, other: "OrderedOperatorExpr") -> "OrderedOperatorExpr":
        return OrderedOperatorExpr(self.terms + other.terms)

    def __matmul__(self, other: "OrderedOperatorExpr") -> "OrderedOperatorExpr":
        return OrderedOperatorExpr(
            tuple((ca * cb, fa + fb) for (ca, fa), (cb, fb) in product(self.terms, other.terms))
        )

    def __pow__(self, n: int) -> "OrderedOperatorExpr":
        result = OrderedOperatorExpr.identity()
        for _ in range(n):
            result = result @ self
        return result

    def scaled(self, factor: complex) -> "OrderedOperatorExpr":
        return OrderedOperatorExpr(tuple((c * factor, f) for c, f in self.terms))

    def adjoint(self) -> "OrderedOperatorExpr":
        return OrderedOperatorExpr(tuple((c.conjugate(), tuple(reversed(f))) for c, f in self.terms))

    def symmetrized(self) -> "OrderedOperatorExpr":
        """(O + O^dagger) / 2, whose Weyl symbol is real."""
        return (self + self.adjoint()).scaled(0.5)


__all__ = [
    "MAX_DEGREE",
    "PhaseVariable",
    "PhasePolynomial",
    "OrderedOperatorExpr",
]
