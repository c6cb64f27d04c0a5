"""Pseudo-spin operator triples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from src.core.errors import DimensionError
from src.domain.phasespace.entities.kernels import PositionOperator
from src.domain.phasespace.entities.states import OperatorMatrix
from src.domain.phasespace.schemas.spins import SpinFamily


@dataclass(frozen=True)
class SpinTriple:
    """Single-mode pseudo-spin components in a truncated Fock basis.

    Attributes:
        sx: x component (Hermitian).
        sy: y component (Hermitian).
        sz: z component (Hermitian).
        family: Construction the triple comes from.
        ell: Bin width, Larsson family only.
        kernels: Exact position-space forms (sx, sy, sz) when the family has them.
        handedness: +1 if [sx, sy] = 2i sz, -1 if [sx, sy] = -2i sz.
    """

    sx: OperatorMatrix
    sy: OperatorMatrix
    sz: OperatorMatrix
    family: SpinFamily
    ell: Optional[float] = None
    kernels: Optional[Tuple[PositionOperator, PositionOperator, PositionOperator]] = None
    handedness: int = 1

    def __post_init__(self) -> None:
        sizes = {self.sx.dimension, self.sy.dimension, self.sz.dimension}
        if len(sizes) != 1:
            raise DimensionError("spin components have different truncations")
        for name in ("sx", "sy", "sz"):
            if not getattr(self, name).hermitian:
                raise DimensionError(f"{name} must be Hermitian")
        if self.family is SpinFamily.larsson and (self.ell is None or self.ell <= 0):
            raise DimensionError("Larsson triple needs a positive bin width")

    @property
    def truncation(self) -> int:
        return self.sz.truncation

    def components(self) -> Tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
        return self.sx, self.sy, self.sz


__all__ = ["SpinTriple"]
