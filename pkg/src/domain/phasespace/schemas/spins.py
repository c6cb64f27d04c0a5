"""Pseudo-spin families and CHSH measurement settings."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class SpinFamily(str, Enum):
    """Dichotomic operator families built from one continuous variable."""

    bw = "bw"
    gkmr = "gkmr"
    larsson = "larsson"


class OperatorClass(str, Enum):
    """Whether a Weyl symbol stays within the {-1, +1} spectrum of a dichotomic operator."""

    proper = "proper"
    improper = "improper"


class MeasurementSetting(BaseModel):
    """Polar angle of one CHSH arm; the azimuth is fixed to zero."""

    model_config = ConfigDict(frozen=True)

    theta: float = Field(allow_inf_nan=False)


__all__ = ["SpinFamily", "OperatorClass", "MeasurementSetting"]
