"""Validated parameter models."""

from .background import BackgroundModel
from .spins import MeasurementSetting, OperatorClass, SpinFamily
from .squeezing import SqueezingConvention, SqueezingParams, reduce_angle
from .wavepackets import BellStateParams, CatParams, EprParams, JohansenParams, TimeSettings

__all__ = [
    "BackgroundModel",
    "MeasurementSetting",
    "OperatorClass",
    "SpinFamily",
    "SqueezingConvention",
    "SqueezingParams",
    "reduce_angle",
    "BellStateParams",
    "CatParams",
    "EprParams",
    "JohansenParams",
    "TimeSettings",
]
