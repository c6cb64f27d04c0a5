"""Parameters of the wave-packet states used in the CHSH analyses."""

from __future__ import annotations

import math
import warnings

from pydantic import BaseModel, ConfigDict, Field, model_validator

_POSITIVE = dict(gt=0.0, allow_inf_nan=False)


class CatParams(BaseModel):
    """Superposition of two Gaussian packets at -q0 and +q0 with momentum p0."""

    model_config = ConfigDict(frozen=True)

    q0: float = Field(allow_inf_nan=False)
    p0: float = Field(default=0.0, allow_inf_nan=False)
    m: float = Field(default=1.0, **_POSITIVE)
    omega: float = Field(default=1.0, **_POSITIVE)

    @property
    def m_omega(self) -> float:
        return self.m * self.omega

    @property
    def norm_sq(self) -> float:
        """N_CAT^2 = 1 / (1 + exp(-m omega q0^2) cos(2 q0 p0))."""
        return 1.0 / (1.0 + math.exp(-self.m_omega * self.q0**2) * math.cos(2.0 * self.q0 * self.p0))

    @model_validator(mode="after")
    def _check_norm(self) -> "CatParams":
        denominator = 1.0 + math.exp(-self.m_omega * self.q0**2) * math.cos(2.0 * self.q0 * self.p0)
        if denominator <= 1e-14:
            raise ValueError("cat state has vanishing norm (destructive superposition)")
        return self


class EprParams(BaseModel):
    """EPR wave packet: center-of-mass width ``b``, relative width ``eps``, separation ``q0``."""

    model_config = ConfigDict(frozen=True)

    b: float = Field(**_POSITIVE)
    eps: float = Field(**_POSITIVE)
    q0: float = Field(default=0.0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _warn_widths(self) -> "EprParams":
        if self.b <= self.eps:
            warnings.warn(
                f"EPR packet with b={self.b} <= eps={self.eps} is not position-correlated",
                UserWarning,
                stacklevel=2,
            )
        return self


class BellStateParams(BaseModel):
    """Bell's letter state with its normalization treated as the number ``n_bell_sq``."""

    model_config = ConfigDict(frozen=True)

    a: float = Field(default=1.0, **_POSITIVE)
    q0: float = Field(default=0.0, allow_inf_nan=False)
    n_bell_sq: float = Field(default=0.2, **_POSITIVE)


class JohansenParams(BaseModel):
    """Coherent x squeezed product state of Johansen's construction.

    ``K`` is the constant prefactor of the s -> 0 reduced distribution.
    """

    model_config = ConfigDict(frozen=True)

    q0: float = Field(default=1.0, allow_inf_nan=False)
    p0: float = Field(default=-1.0, allow_inf_nan=False)
    s: float = Field(default=1.0, **_POSITIVE)
    K: float = Field(default=0.1, **_POSITIVE)

    def as_epr(self) -> EprParams:
        """EPR parameters reproducing the full Wigner function when p0 = 0.

        The map is b = sqrt(2)/s, eps = 2, q0_EPR = -sqrt(2) q0.
        """
        if self.p0 != 0.0:
            raise ValueError("only the p0 = 0 Johansen state is an EPR state")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            return EprParams(b=math.sqrt(2.0) / self.s, eps=2.0, q0=-math.sqrt(2.0) * self.q0)


class TimeSettings(BaseModel):
    """Measurement times (t1, t2) and (t1p, t2p) of the two CHSH arms."""

    model_config = ConfigDict(frozen=True)

    t1: float = Field(allow_inf_nan=False)
    t2: float = Field(allow_inf_nan=False)
    t1p: float = Field(allow_inf_nan=False)
    t2p: float = Field(allow_inf_nan=False)


__all__ = ["CatParams", "EprParams", "BellStateParams", "JohansenParams", "TimeSettings"]
