"""Power-law inflationary backgrounds."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class BackgroundModel(BaseModel):
    """Scale factor a(eta) proportional to (-eta)^(1 + beta) in conformal time.

    Attributes:
        beta: Power-law index; -2 is de Sitter, -1 flat space.
        eta_ini: Start of the evolution (negative).
        eta_end: End of the evolution, with eta_ini < eta_end < 0.
        z_end: Normalization of z = a sqrt(2 eps1) M_pl at eta_end.
        k_eta_ini: If set, each mode starts at eta = k_eta_ini / k instead of
            ``eta_ini`` (same number of oscillations before Hubble exit for every k).
    """

    model_config = ConfigDict(frozen=True)

    beta: float = Field(default=-2.0, allow_inf_nan=False)
    eta_ini: float = Field(default=-100.0, lt=0.0, allow_inf_nan=False)
    eta_end: float = Field(default=-0.01, lt=0.0, allow_inf_nan=False)
    z_end: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)
    k_eta_ini: Optional[float] = Field(default=None, lt=0.0)

    @model_validator(mode="after")
    def _check_order(self) -> "BackgroundModel":
        if not self.eta_ini < self.eta_end:
            raise ValueError(f"eta_ini ({self.eta_ini}) must precede eta_end ({self.eta_end})")
        return self

    def start_time(self, k: float) -> float:
        """Conformal time at which mode ``k`` is initialized."""
        if self.k_eta_ini is None:
            return self.eta_ini
        start = self.k_eta_ini / k
        if not start < self.eta_end:
            raise ValueError(f"mode k={k} would start after eta_end")
        return start


__all__ = ["BackgroundModel"]
