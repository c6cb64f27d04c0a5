"""Factory functions that assemble configured phase-space components.

Commands and tests build spin triples and backgrounds through here, so the
choice of Fock truncation lives in one place.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Optional

from configs.logger import app_logger
from src.core.errors import ConfigError
from src.domain.phasespace.entities.spins import SpinTriple
from src.domain.phasespace.schemas.background import BackgroundModel
from src.domain.phasespace.schemas.spins import SpinFamily
from src.domain.phasespace.schemas.squeezing import SqueezingParams
from src.domain.phasespace.services.fock import tmss_truncation
from src.domain.phasespace.services.pseudospin import bw_triple, gkmr_triple, larsson_triple

log = app_logger.get_logger(__name__, extra_prefix="factory")

MIN_SPIN_TRUNCATION = 9

BACKGROUNDS = {
    "de-sitter": dict(beta=-2.0),
    "power-law": dict(beta=-2.02),
}


@lru_cache(maxsize=32)
def _cached_triple(family: SpinFamily, truncation: int, ell: Optional[float]) -> SpinTriple:
    if family is SpinFamily.bw:
        return bw_triple(truncation)
    if family is SpinFamily.gkmr:
        return gkmr_triple(truncation)
    if ell is None:
        raise ConfigError("Larsson triple needs a bin width", key="ell")
    return larsson_triple(truncation, ell)


def spin_truncation(p: SqueezingParams, *, tail_tol: Optional[float] = None) -> int:
    """Odd truncation that holds the squeezed state within ``tail_tol``.

    Odd N keeps every BW pair (2n, 2n+1) complete.
    """
    N = max(MIN_SPIN_TRUNCATION, tmss_truncation(p.r, tail_tol=tail_tol))
    return N if N % 2 else N + 1


def create_spin_triple(
    family: SpinFamily | str,
    *,
    truncation: Optional[int] = None,
    state: Optional[SqueezingParams] = None,
    ell: Optional[float] = None,
    tail_tol: Optional[float] = None,
) -> SpinTriple:
    """Build (or reuse) a spin triple sized for ``state`` unless ``truncation`` is given.

    Example:
        >>> triple = create_spin_triple("bw", state=SqueezingParams(r=1.0, phi=0.0))
        >>> triple.truncation % 2
        1
    """
    try:
        fam = SpinFamily(family)
    except ValueError as exc:
        raise ConfigError(f"unknown spin family {family!r}", key="family") from exc
    if truncation is None:
        if state is None:
            raise ConfigError("either a truncation or a state is required", key="truncation")
        truncation = spin_truncation(state, tail_tol=tail_tol)
    app_logger.log_kv(log, logging.DEBUG, "spin triple", family=fam.value, N=truncation, ell=ell)
    return _cached_triple(fam, int(truncation), None if ell is None else float(ell))


def create_background(name: str, **overrides: float) -> BackgroundModel:
    """Named background with field overrides, e.g. ``create_background("de-sitter", eta_end=-1e-3)``."""
    if name not in BACKGROUNDS:
        raise ConfigError(f"unknown background {name!r}; choose from {sorted(BACKGROUNDS)}", key="background")
    return BackgroundModel(**{**BACKGROUNDS[name], **overrides})


__all__ = [
    "MIN_SPIN_TRUNCATION",
    "BACKGROUNDS",
    "spin_truncation",
    "create_spin_triple",
    "create_background",
]
