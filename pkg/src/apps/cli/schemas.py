"""Run configuration and per-command parameter models.

Every command takes a frozen parameter model that rejects unknown keys; the
same models drive the argparse flags and the header echo of each output.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Dict, Literal, Optional, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from configs.config import get_settings
from src.core.errors import ConfigError
from src.domain.phasespace.schemas.spins import SpinFamily

BackgroundName = Literal["de-sitter", "power-law"]


class CommandName(str, Enum):
    discord_curve = "discord-curve"
    squeeze_evolve = "squeeze-evolve"
    power_spectrum = "power-spectrum"
    wigner_cat = "wigner-cat"
    wigner_tmss = "wigner-tmss"
    wigner_wkb = "wigner-wkb"
    chsh_epr = "chsh-epr"
    chsh_bell = "chsh-bell"
    chsh_johansen = "chsh-johansen"
    pseudospin_bell = "pseudospin-bell"
    weyl_check = "weyl-check"


class CommandParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class DiscordCurveParams(CommandParams):
    r_max: float = Field(default=6.0, gt=0.0, allow_inf_nan=False, description="largest squeezing parameter")
    points: int = Field(default=100, ge=2, description="number of r samples on [0, r_max]")


class SqueezeEvolveParams(CommandParams):
    background: BackgroundName = Field(default="de-sitter", description="named inflationary background")
    beta: Optional[float] = Field(default=None, description="override of the power-law index")
    eta_ini: float = Field(default=-100.0, lt=0.0, description="initial conformal time")
    eta_end: float = Field(default=-0.01, lt=0.0, description="final conformal time")
    k: float = Field(default=1.0, gt=0.0, allow_inf_nan=False, description="comoving wavenumber")
    samples: int = Field(default=500, ge=10, description="output samples, uniform in ln(-eta)")


class PowerSpectrumParams(CommandParams):
    background: BackgroundName = Field(default="de-sitter", description="named inflationary background")
    beta: Optional[float] = Field(default=None, description="override of the power-law index")
    eta_end: float = Field(default=-0.01, lt=0.0, description="final conformal time")
    k_eta_ini: float = Field(default=-200.0, lt=0.0, description="each mode starts at eta = k_eta_ini / k")
    k_min: float = Field(default=0.1, gt=0.0, description="smallest wavenumber")
    k_max: float = Field(default=3.2, gt=0.0, description="largest wavenumber")
    points: int = Field(default=8, ge=2, description="log-spaced wavenumbers")


class WignerCatParams(CommandParams):
    q0: float = Field(default=6.0, allow_inf_nan=False, description="packet separation")
    p0: float = Field(default=0.0, allow_inf_nan=False, description="packet momentum")
    m: float = Field(default=1.0, gt=0.0, description="mass")
    omega: float = Field(default=1.0, gt=0.0, description="frequency")
    points: int = Field(default=121, ge=2, description="grid points per axis")


class WignerTmssParams(CommandParams):
    r: float = Field(default=1.0, ge=0.0, allow_inf_nan=False, description="squeezing parameter")
    phi: float = Field(default=0.0, allow_inf_nan=False, description="squeezing angle")
    k: float = Field(default=1.0, gt=0.0, description="wavenumber")
    half_width: float = Field(default=3.0, gt=0.0, description="half width of the (q_k, q_-k) slice")
    points: int = Field(default=41, ge=2, description="grid points per axis")


class WignerWkbParams(CommandParams):
    mode: Literal["berry", "squeezed"] = Field(default="berry", description="oscillator eigenstate or squeezed state")
    n: int = Field(default=10, ge=1, le=30, description="oscillator level (berry)")
    angle: float = Field(default=0.0, allow_inf_nan=False, description="direction of the radial line (berry)")
    r: float = Field(default=1.0, ge=0.0, allow_inf_nan=False, description="squeezing parameter (squeezed)")
    half_width: float = Field(default=3.0, gt=0.0, description="half width of the grid (squeezed)")
    points: int = Field(default=60, ge=2, description="samples per axis")


class ChshEprParams(CommandParams):
    b: float = Field(default=2.0, gt=0.0, description="center-of-mass width")
    eps: float = Field(default=0.5, gt=0.0, description="relative width")
    q0: float = Field(default=0.0, allow_inf_nan=False, description="separation")
    t_max: float = Field(default=5.0, gt=0.0, description="largest measurement time")
    points: int = Field(default=50, ge=2, description="times per axis")


class ChshBellParams(CommandParams):
    a: float = Field(default=1.0, gt=0.0, description="packet width")
    q0: float = Field(default=0.0, allow_inf_nan=False, description="separation")
    n_bell_sq: float = Field(default=0.2, gt=0.0, description="squared normalization treated as a number")
    x_min: float = Field(default=0.0, allow_inf_nan=False, description="smallest time step")
    x_max: float = Field(default=2.0, allow_inf_nan=False, description="largest time step")
    points: int = Field(default=400, ge=2, description="time steps")


class ChshJohansenParams(CommandParams):
    q0: float = Field(default=1.0, allow_inf_nan=False, description="coherent displacement")
    p0: float = Field(default=-1.0, allow_inf_nan=False, description="coherent momentum")
    s: float = Field(default=1.0, gt=0.0, description="squeezing width")
    K: float = Field(default=0.1, gt=0.0, description="prefactor of the reduced distribution")
    x_min: float = Field(default=0.8, allow_inf_nan=False, description="smallest time step")
    x_max: float = Field(default=3.0, allow_inf_nan=False, description="largest time step")
    points: int = Field(default=221, ge=2, description="time steps")


class PseudospinBellParams(CommandParams):
    family: SpinFamily = Field(default=SpinFamily.bw, description="pseudo-spin family")
    r: float = Field(default=2.0, ge=0.0, allow_inf_nan=False, description="squeezing parameter")
    phi: float = Field(default=0.0, allow_inf_nan=False, description="squeezing angle")
    ell: Optional[float] = Field(default=None, gt=0.0, description="Larsson bin width; sweep when unset")
    ell_min: float = Field(default=0.5, gt=0.0, description="sweep start")
    ell_max: float = Field(default=5.0, gt=0.0, description="sweep end")
    ell_points: int = Field(default=10, ge=1, description="sweep size")
    truncation: Optional[int] = Field(default=None, ge=1, description="Fock truncation; chosen from the tail rule when unset")
    tail_tol: Optional[float] = Field(default=None, gt=0.0, lt=1.0, description="TMSS tail tolerance")
    grid_points: Optional[int] = Field(default=None, ge=4, description="angle grid points per axis")


class WeylCheckParams(CommandParams):
    r: float = Field(default=1.0, ge=0.0, le=2.5, allow_inf_nan=False, description="squeezing parameter")
    phi: float = Field(default=0.0, allow_inf_nan=False, description="squeezing angle")
    count: int = Field(default=50, ge=1, description="random operator expressions")
    max_degree: int = Field(default=4, ge=1, le=4, description="longest ordered product")
    terms: int = Field(default=3, ge=1, description="products per expression")


PARAMS: Dict[CommandName, Type[CommandParams]] = {
    CommandName.discord_curve: DiscordCurveParams,
    CommandName.squeeze_evolve: SqueezeEvolveParams,
    CommandName.power_spectrum: PowerSpectrumParams,
    CommandName.wigner_cat: WignerCatParams,
    CommandName.wigner_tmss: WignerTmssParams,
    CommandName.wigner_wkb: WignerWkbParams,
    CommandName.chsh_epr: ChshEprParams,
    CommandName.chsh_bell: ChshBellParams,
    CommandName.chsh_johansen: ChshJohansenParams,
    CommandName.pseudospin_bell: PseudospinBellParams,
    CommandName.weyl_check: WeylCheckParams,
}


def _default_seed() -> int:
    return get_settings().DEFAULT_SEED


class RunConfig(BaseModel):
    """One command invocation: parameters, output path and seed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: CommandName
    parameters: Dict[str, Any] = Field(default_factory=dict)
    output: Optional[str] = None
    seed: int = Field(default_factory=_default_seed)


def validate_parameters(command: CommandName, raw: Dict[str, Any]) -> CommandParams:
    """Build the parameter model of ``command``.

    Raises:
        ConfigError: For an unknown key or an invalid value; ``key`` names it.
    """
    model = PARAMS[command]
    for key in raw:
        if key not in model.model_fields:
            raise ConfigError(f"unknown parameter {key!r} for {command.value}", key=key)
    try:
        return model(**raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigError(f"invalid value for {key}: {first['msg']}", key=key) from exc


__all__ = [
    "BackgroundName",
    "CommandName",
    "CommandParams",
    "DiscordCurveParams",
    "SqueezeEvolveParams",
    "PowerSpectrumParams",
    "WignerCatParams",
    "WignerTmssParams",
    "WignerWkbParams",
    "ChshEprParams",
    "ChshBellParams",
    "ChshJohansenParams",
    "PseudospinBellParams",
    "WeylCheckParams",
    "PARAMS",
    "RunConfig",
    "validate_parameters",
]
