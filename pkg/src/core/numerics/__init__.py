"""Special functions, quadrature and ODE integration."""

from .ode import DenseSolution, OdeProblem, integrate_ode
from .quadrature import (
    Grid1D,
    breakpoint_panels,
    gauss_legendre,
    gauss_legendre_nodes,
    integrate_adaptive,
    integrate_infinite,
    integrate_nodes,
    integrate_semi_infinite,
    integrate_tensor,
    panel_rule,
)
from .special import airy_ai, erf, hermite_function, hermite_functions, hermite_polynomial

__all__ = [
    "DenseSolution",
    "OdeProblem",
    "integrate_ode",
    "Grid1D",
    "breakpoint_panels",
    "gauss_legendre",
    "gauss_legendre_nodes",
    "integrate_adaptive",
    "integrate_infinite",
    "integrate_nodes",
    "integrate_semi_infinite",
    "integrate_tensor",
    "panel_rule",
    "airy_ai",
    "erf",
    "hermite_function",
    "hermite_functions",
    "hermite_polynomial",
]
