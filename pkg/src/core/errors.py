"""Exception hierarchy for phase-space computations.

Each error also derives from the builtin a caller would naturally catch
(``ValueError`` for bad arguments, ``ArithmeticError`` for numerical
breakdown), so library users need not import this module.
"""

from __future__ import annotations

from typing import Optional


class PhaseSpaceError(Exception):
    """Base class for every error raised by this package."""


class RangeError(PhaseSpaceError, ValueError):
    """Argument outside the domain of an operation, or a result that overflows."""


class DomainError(PhaseSpaceError, ValueError):
    """Point outside the region where a formula applies."""


class TruncationError(PhaseSpaceError, ValueError):
    """Fock truncation too small for the requested state."""

    def __init__(self, message: str, *, required: Optional[int] = None) -> None:
        super().__init__(message)
        self.required = required


class QuadratureError(PhaseSpaceError, ArithmeticError):
    """Integrand returned a non-finite value."""

    def __init__(self, message: str, *, abscissa: Optional[float] = None) -> None:
        super().__init__(message if abscissa is None else f"{message} (at x={abscissa:.17g})")
        self.abscissa = abscissa


class StiffnessError(PhaseSpaceError, ArithmeticError):
    """Adaptive integrator gave up before reaching the end of the span."""

    def __init__(self, message: str, *, location: Optional[float] = None) -> None:
        super().__init__(message if location is None else f"{message} (at t={location:.17g})")
        self.location = location


class DegenerateCovarianceError(PhaseSpaceError, ValueError):
    """Singular or ill-conditioned quadratic form."""


class InvalidDistributionError(PhaseSpaceError, ValueError):
    """Probabilities negative or not summing to one."""


class SupportError(PhaseSpaceError, ValueError):
    """Reference distribution vanishes where the other one does not."""


class DimensionError(PhaseSpaceError, ValueError):
    """Operands with incompatible shapes."""


class BracketError(PhaseSpaceError, ValueError):
    """Root bracket without a sign change."""


class ConfigError(PhaseSpaceError, ValueError):
    """Invalid command configuration."""

    def __init__(self, message: str, *, key: Optional[str] = None) -> None:
        super().__init__(message if key is None else f"{key}: {message}")
        self.key = key


__all__ = [
    "PhaseSpaceError",
    "RangeError",
    "DomainError",
    "TruncationError",
    "QuadratureError",
    "StiffnessError",
    "DegenerateCovarianceError",
    "InvalidDistributionError",
    "SupportError",
    "DimensionError",
    "BracketError",
    "ConfigError",
]
