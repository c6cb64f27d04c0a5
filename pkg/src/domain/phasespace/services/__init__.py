"""Phase-space services, one module per concern.

Import from the submodules directly, e.g.
``from src.domain.phasespace.services import gaussian``.
"""

from src.domain.phasespace.services import (
    dynamics,
    fock,
    gaussian,
    infotheory,
    pseudospin,
    semiclassical,
    wavepackets,
    weyl,
)

__all__ = [
    "dynamics",
    "fock",
    "gaussian",
    "infotheory",
    "pseudospin",
    "semiclassical",
    "wavepackets",
    "weyl",
]
