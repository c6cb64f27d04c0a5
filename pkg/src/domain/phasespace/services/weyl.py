"""Weyl symbols, Gaussian stochastic averages and the zeta composite operators.

Symbols of ordered products are built one factor at a time with the exact
right-multiplication rules of the star product by a linear symbol,

    A * q = A q - (i/2) dA/dpi,      A * pi = A pi + (i/2) dA/dq,

within each mode; variables of different modes commute.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from configs.config import get_settings
from configs.logger import app_logger
from src.core.errors import DimensionError, RangeError
from src.core.numerics import Grid1D, gauss_legendre_nodes, hermite_functions
from src.domain.phasespace.entities.kernels import PositionOperator
from src.domain.phasespace.entities.polynomials import (
    MAX_DEGREE,
    OrderedOperatorExpr,
    PhasePolynomial,
    PhaseVariable,
)
from src.domain.phasespace.entities.states import FockVector, GaussianState, OperatorMatrix
from src.domain.phasespace.schemas.squeezing import SqueezingParams
from src.domain.phasespace.services.fock import (
    position_window,
    position_momentum_matrices,
    tmss_vector,
    wigner_numeric,
)
from src.domain.phasespace.services.gaussian import covariance_from_squeezing

log = app_logger.get_logger(__name__, extra_prefix="weyl")

ZETA_MAX_POWER = 4
ORACLE_TAIL_TOL = 1e-14


def _star_right(symbol: PhasePolynomial, var: PhaseVariable) -> PhasePolynomial:
    product = symbol * PhasePolynomial.variable(var)
    if var.is_position:
        return product - symbol.derivative(var.partner).scaled(0.5j)
    return product + symbol.derivative(var.partner).scaled(0.5j)


def weyl_transform(expr: OrderedOperatorExpr) -> PhasePolynomial:
    """Weyl symbol of a linear combination of ordered operator products."""
    if expr.degree > MAX_DEGREE:
        raise RangeError(f"operator degree {expr.degree} exceeds {MAX_DEGREE}")
    total = PhasePolynomial({})
    for coeff, factors in expr.terms:
        symbol = PhasePolynomial.constant(coeff)
        for var in factors:
            symbol = _star_right(symbol, var)
        total = total + symbol
    return total


def weyl_symbol_numeric(
    op: Union[OperatorMatrix, PositionOperator],
    q: ArrayLike,
    p: ArrayLike,
    *,
    half_width: Optional[float] = None,
    nodes: Optional[int] = None,
) -> NDArray[np.complex128] | complex:
    """int dx e^{-i p x} <q + x/2| O |q - x/2>.

    Position-space kernels are evaluated in closed form; Fock matrices by
    Gauss-Legendre quadrature over the truncated position representation.
    """
    if isinstance(op, PositionOperator):
        values = op.weyl_symbol(q, p)
        return complex(values) if values.ndim == 0 else values
    if op.modes != 1:
        raise DimensionError("weyl_symbol_numeric needs a single-mode operator")
    cfg = get_settings()
    N = op.truncation
    half = position_window(N) if half_width is None else half_width
    x, w = gauss_legendre_nodes(Grid1D(-2.0 * half, 2.0 * half, nodes or cfg.WIGNER_GRID_NODES))

    qa, pa = np.broadcast_arrays(np.asarray(q, dtype=float), np.asarray(p, dtype=float))
    flat_q, flat_p = qa.ravel(), pa.ravel()
    out = np.empty(flat_q.shape, dtype=complex)
    unique_q, inverse = np.unique(flat_q, return_inverse=True)
    for i, q0 in enumerate(unique_q):
        left = hermite_functions(N, q0 + 0.5 * x)
        right = hermite_functions(N, q0 - 0.5 * x)
        g = w * np.einsum("mx,mn,nx->x", left, op.entries, right)
        idx = np.nonzero(inverse == i)[0]
        out[idx] = np.exp(-1j * np.outer(flat_p[idx], x)) @ g
    result = out.reshape(qa.shape)
    return complex(result) if result.ndim == 0 else result


def zeta_composite(n: int, k: float = 1.0) -> OrderedOperatorExpr:
    """(z zeta_k)^n = 2^-n [q_k + q_-k + (i/k)(pi_k - pi_-k)]^n as ordered products."""
    if not 1 <= n <= ZETA_MAX_POWER:
        raise RangeError(f"zeta power must lie in [1, {ZETA_MAX_POWER}], got {n}")
    if not k > 0.0:
        raise RangeError(f"wavenumber must be positive, got {k}")
    base = OrderedOperatorExpr.linear(
        {
            PhaseVariable.q_k: 0.5,
            PhaseVariable.q_mk: 0.5,
            PhaseVariable.pi_k: 0.5j / k,
            PhaseVariable.pi_mk: -0.5j / k,
        }
    )
    return base**n


def zeta_classical(n: int, k: float = 1.0) -> PhasePolynomial:
    """Commutative expansion of the same power, the expected Weyl symbol."""
    if not 1 <= n <= ZETA_MAX_POWER:
        raise RangeError(f"zeta power must lie in [1, {ZETA_MAX_POWER}], got {n}")
    v = PhasePolynomial.variable
    base = (
        v(PhaseVariable.q_k).scaled(0.5)
        + v(PhaseVariable.q_mk).scaled(0.5)
        + v(PhaseVariable.pi_k).scaled(0.5j / k)
        + v(PhaseVariable.pi_mk).scaled(-0.5j / k)
    )
    return base**n


@lru_cache(maxsize=4096)
def _pairing_sum(indices: Tuple[int, ...], sigma: Tuple[Tuple[float, ...], ...]) -> float:
    if not indices:
        return 1.0
    first, rest = indices[0], indices[1:]
    total = 0.0
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1 :]
        total += sigma[first][partner] * _pairing_sum(remaining, sigma)
    return total


def gaussian_moment(exponents: Sequence[int], s: GaussianState) -> float:
    """E[prod x_i^e_i] for x ~ N(0, gamma / 2), summed over all pairings."""
    indices = tuple(i for i, e in enumerate(exponents) for _ in range(e))
    if len(indices) % 2:
        return 0.0
    sigma = tuple(tuple(float(v) for v in row) for row in 0.5 * s.covariance)
    return _pairing_sum(indices, sigma)


def stochastic_average(poly: PhasePolynomial, s: GaussianState) -> complex:
    """Phase-space average of ``poly`` against the Gaussian Wigner function of ``s``."""
    if poly.degree > MAX_DEGREE:
        raise RangeError(f"polynomial degree {poly.degree} exceeds {MAX_DEGREE}")
    return complex(sum(c * gaussian_moment(exps, s) for c, exps in poly.terms()))


def _apply_factors(psi: NDArray[np.complex128], factors: Sequence[PhaseVariable], ops) -> NDArray[np.complex128]:
    out = psi
    for var in reversed(factors):
        m = ops[var.is_position]
        out = m @ out if var.mode == 0 else out @ m.T
    return out


def quantum_average(
    expr: OrderedOperatorExpr,
    p: SqueezingParams,
    *,
    state: Optional[FockVector] = None,
    tail_tol: float = ORACLE_TAIL_TOL,
) -> complex:
    """<Psi| O |Psi> in the Fock basis, for the two-mode squeezed vacuum unless ``state`` is given.

    The state is zero-padded by the operator degree, so every product acts
    exactly on the retained amplitudes.
    """
    if expr.degree > MAX_DEGREE:
        raise RangeError(f"operator degree {expr.degree} exceeds {MAX_DEGREE}")
    if state is None:
        state = tmss_vector(p, tail_tol=tail_tol)
    if state.modes != 2:
        raise DimensionError("quantum_average needs a two-mode state")
    N = state.truncation
    size = N + expr.degree + 2
    psi = np.zeros((size, size), dtype=complex)
    psi[: N + 1, : N + 1] = state.as_matrix()
    q, pi = position_momentum_matrices(size - 1)
    ops = {True: q.entries, False: pi.entries}
    total = 0j
    for coeff, factors in expr.terms:
        total += coeff * np.vdot(psi, _apply_factors(psi, factors, ops))
    app_logger.log_kv(log, logging.DEBUG, "Fock average", r=p.r, N=N, terms=len(expr.terms))
    return complex(total)


def average_equivalence(expr: OrderedOperatorExpr, p: SqueezingParams) -> Tuple[complex, complex]:
    """(quantum, stochastic) averages of ``expr`` in the same two-mode squeezed state.

    The Fock amplitudes e^{-2 i n phi} carry covariance gamma(r, -phi), which
    is the state the stochastic side averages over.
    """
    quantum = quantum_average(expr, p)
    stochastic = stochastic_average(weyl_transform(expr), covariance_from_squeezing(p.conjugate()))
    app_logger.log_kv(
        log,
        logging.INFO,
        "Weyl equivalence",
        r=p.r,
        phi=p.phi,
        degree=expr.degree,
        defect=abs(quantum - stochastic),
    )
    return quantum, stochastic


def random_operator_expr(rng: np.random.Generator, *, max_degree: int = ZETA_MAX_POWER, terms: int = 3) -> OrderedOperatorExpr:
    """Sum of ``terms`` random ordered products of length 1..max_degree with complex coefficients."""
    if not 1 <= max_degree <= MAX_DEGREE:
        raise RangeError(f"max_degree must lie in [1, {MAX_DEGREE}], got {max_degree}")
    variables = list(PhaseVariable)
    products = []
    for _ in range(terms):
        length = int(rng.integers(1, max_degree + 1))
        factors = [variables[i] for i in rng.integers(0, len(variables), size=length)]
        coeff = complex(rng.normal(), rng.normal())
        products.append((coeff, factors))
    return OrderedOperatorExpr.from_products(products)


def sample_wigner(s: GaussianState, count: int, seed: int) -> NDArray[np.float64]:
    """``count`` phase-space points drawn from N(0, gamma / 2), shape (count, 4)."""
    if count < 1:
        raise RangeError(f"count must be positive, got {count}")
    rng = np.random.default_rng(seed)
    return rng.multivariate_normal(np.zeros(4), 0.5 * s.covariance, size=count, method="cholesky")


def wigner_average(
    poly: PhasePolynomial,
    state: Union[FockVector, OperatorMatrix],
    *,
    nodes: int = 192,
) -> complex:
    """int dq dp poly(q, p) W(q, p) for a single-mode state.

    ``poly`` may only involve q_k and pi_k. The integral runs over the square
    that contains the truncated oscillator states.
    """
    if any(exps[2] or exps[3] for exps in poly.coefficients):
        raise DimensionError("single-mode average of a polynomial in the -k variables")
    half = position_window(state.truncation)
    nodes_1d, weights_1d = gauss_legendre_nodes(Grid1D(-half, half, nodes))
    qq, pp = np.meshgrid(nodes_1d, nodes_1d, indexing="ij")
    w = wigner_numeric(state, qq, pp)
    points = np.stack([qq, pp, np.zeros_like(qq), np.zeros_like(qq)], axis=-1)
    values = np.asarray(poly.evaluate(points)) * w
    return complex(weights_1d @ values @ weights_1d)


__all__ = [
    "ZETA_MAX_POWER",
    "weyl_transform",
    "weyl_symbol_numeric",
    "zeta_composite",
    "zeta_classical",
    "gaussian_moment",
    "stochastic_average",
    "quantum_average",
    "average_equivalence",
    "random_operator_expr",
    "sample_wigner",
    "wigner_average",
]
