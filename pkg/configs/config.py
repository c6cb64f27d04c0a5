import os

# Check if we're in documentation build mode BEFORE loading .env
IS_DOCS_BUILD = os.getenv("SPHINX_BUILD", "").lower() in ("true", "1", "yes")

# Only load .env if not in docs build mode
if not IS_DOCS_BUILD:
    from dotenv import load_dotenv
    load_dotenv()

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from configs.logger import app_logger


class Settings(BaseSettings):
    """Numerical defaults for every module, overridable from the environment."""

    model_config = SettingsConfigDict(
        env_file=".env" if not IS_DOCS_BUILD else None,
        extra="ignore",
    )

    # Application metadata
    PROJECT_NAME: str = "phasespace-lab"
    VERSION: str = "0.1.0"

    # Quadrature
    QUAD_PANEL_NODES: int = Field(
        default=64, ge=2, le=256,
        description="Gauss-Legendre nodes per panel",
    )
    QUAD_TAIL_CUTOFF: float = Field(
        default=1e-16, gt=0.0,
        description="Infinite integrals are truncated where |f| drops below this value",
    )
    QUAD_TOL: float = Field(
        default=1e-12, gt=0.0, lt=1.0,
        description="Adaptive panels are bisected until the coarse and split estimates agree to this fraction of the absolute integral",
    )
    QUAD_MAX_DEPTH: int = Field(
        default=40, ge=1, le=60,
        description="Maximum number of bisections of one adaptive panel",
    )

    # ODE integration
    ODE_RTOL: float = Field(default=1e-10, gt=1e-14, lt=1e-2, description="Relative tolerance (DOP853)")
    ODE_ATOL: float = Field(default=1e-12, gt=1e-14, lt=1e-2, description="Absolute tolerance (DOP853)")

    # Fock oracle
    FOCK_TAIL_TOL: float = Field(
        default=1e-10, gt=0.0,
        description="TMSS truncation: tanh^{2(N+1)} r must stay below this bound",
    )
    FOCK_MAX_N: int = Field(default=600, ge=1, description="Upper cap on the Fock truncation")
    WIGNER_GRID_WIDTH: float = Field(
        default=12.0, gt=0.0,
        description="Position window of numeric Wigner integrals (widened with N)",
    )
    WIGNER_GRID_NODES: int = Field(default=601, ge=64, description="Nodes across the position window")

    # Gaussian core
    POSITIVITY_TOL: float = Field(default=1e-10, gt=0.0, description="Floor on eigenvalues of gamma + iJ")
    CONDITION_LIMIT: float = Field(default=1e12, gt=1.0, description="Largest accepted covariance condition number")

    # Pseudo-spin operators
    KERNEL_PANEL_WIDTH: float = Field(default=0.5, gt=0.0, description="Max panel width for kernel matrix elements")
    KERNEL_PANEL_NODES: int = Field(default=24, ge=4, description="Gauss nodes per kernel panel")
    BELL_GRID_POINTS: int = Field(default=24, ge=4, description="CHSH angle grid points per axis")
    SIMPLEX_XATOL: float = Field(default=1e-4, gt=0.0, description="Nelder-Mead angle tolerance (rad)")
    SIMPLEX_FATOL: float = Field(default=1e-8, gt=0.0, description="Nelder-Mead value tolerance")

    # CLI output
    FLOAT_DIGITS: int = Field(default=17, ge=6, le=17, description="Significant digits in CSV output")
    DEFAULT_SEED: int = Field(default=20240101, description="Seed for sampling commands")
    OUTPUT_DIR: str = Field(default="outputs", description="Directory for CLI outputs")


settings = Settings()
logger = app_logger.get_logger(__name__)


def get_settings() -> Settings:
    """
    Get application settings singleton.

    Returns:
        Settings instance
    """
    return settings
