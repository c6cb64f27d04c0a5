"""Array-backed value types of the phase-space domain."""

from .distributions import JointDistribution
from .kernels import KernelTerm, PositionOperator, Weight
from .polynomials import MAX_DEGREE, OrderedOperatorExpr, PhasePolynomial, PhaseVariable
from .spins import SpinTriple
from .trajectories import BogoliubovTrajectory
from .states import J4, BogoliubovPair, FockVector, GaussianState, ModeRecord, OperatorMatrix, SymplecticForm

__all__ = [
    "JointDistribution",
    "KernelTerm",
    "PositionOperator",
    "Weight",
    "MAX_DEGREE",
    "OrderedOperatorExpr",
    "PhasePolynomial",
    "PhaseVariable",
    "SpinTriple",
    "BogoliubovTrajectory",
    "J4",
    "BogoliubovPair",
    "FockVector",
    "GaussianState",
    "ModeRecord",
    "OperatorMatrix",
    "SymplecticForm",
]
