"""Squeezing parameters and phase conventions."""

from __future__ import annotations

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator


def reduce_angle(phi: float) -> float:
    """Map an angle into (-pi, pi]."""
    reduced = math.pi - math.fmod(math.pi - phi, 2.0 * math.pi)
    if reduced > math.pi:
        reduced -= 2.0 * math.pi
    elif reduced <= -math.pi:
        reduced += 2.0 * math.pi
    return reduced


class SqueezingConvention(str, Enum):
    """How a squeezing angle is read off Bogoliubov coefficients (u, v).

    ``cosmological``: phi = (arg u + arg v) / 2, the angle entering the
    two-mode covariance matrix and the squeezing equations of motion.
    ``optical``: phi = (arg u + arg(-v)) / 2, the single-mode convention
    in which the inverted oscillator has phi = -pi/4.
    """

    cosmological = "cosmological"
    optical = "optical"


class SqueezingParams(BaseModel):
    """Squeezing magnitude ``r`` and angle ``phi`` (radians, reduced to (-pi, pi])."""

    model_config = ConfigDict(frozen=True)

    r: float = Field(ge=0.0, allow_inf_nan=False)
    phi: float = Field(default=0.0, allow_inf_nan=False)

    @field_validator("phi")
    @classmethod
    def _reduce_phi(cls, value: float) -> float:
        return reduce_angle(value)

    def conjugate(self) -> "SqueezingParams":
        """Same magnitude, opposite angle."""
        return SqueezingParams(r=self.r, phi=-self.phi)


__all__ = ["reduce_angle", "SqueezingConvention", "SqueezingParams"]
