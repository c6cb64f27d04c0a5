"""Composite Gauss-Legendre quadrature.

Panels carry at most ``QUAD_PANEL_NODES`` nodes (64 by default). ``Grid1D``
rules split larger node counts into equal panels; ``integrate_adaptive``
bisects panels until each agrees with its halves to ``QUAD_TOL``. Infinite
ranges are cut where the integrand drops below ``QUAD_TAIL_CUTOFF`` and the
remaining interval is integrated adaptively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from configs.config import get_settings
from src.core.errors import QuadratureError, RangeError

Integrand = Callable[[NDArray[np.float64]], NDArray]


@dataclass(frozen=True)
class Grid1D:
    """Integration interval with a node budget.

    Attributes:
        lo: Lower end.
        hi: Upper end, strictly above ``lo``.
        n: Total number of Gauss nodes (>= 2).
    """

    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise RangeError("grid bounds must be finite")
        if not self.lo < self.hi:
            raise RangeError(f"grid requires lo < hi, got [{self.lo}, {self.hi}]")
        if self.n < 2:
            raise RangeError(f"grid requires at least 2 nodes, got {self.n}")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@lru_cache(maxsize=64)
def _reference_rule(m: int) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    x, w = np.polynomial.legendre.leggauss(m)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_rule(breakpoints: Sequence[float], nodes_per_panel: int) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Nodes and weights of a Gauss rule on each interval between consecutive breakpoints."""
    edges = np.asarray(breakpoints, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise RangeError("breakpoints must be strictly increasing with at least two entries")
    x_ref, w_ref = _reference_rule(nodes_per_panel)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x_ref[None, :]).ravel()
    weights = (half[:, None] * w_ref[None, :]).ravel()
    return nodes, weights


def gauss_legendre_nodes(grid: Grid1D, *, panel_nodes: Optional[int] = None) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Composite nodes and weights realizing ``grid``.

    A single panel is used when ``grid.n`` fits in one panel; otherwise
    ``ceil(n / panel_nodes)`` equal panels of ``panel_nodes`` nodes each.
    """
    per_panel = panel_nodes or get_settings().QUAD_PANEL_NODES
    if grid.n <= per_panel:
        return panel_rule([grid.lo, grid.hi], grid.n)
    panels = math.ceil(grid.n / per_panel)
    return panel_rule(np.linspace(grid.lo, grid.hi, panels + 1), per_panel)


def breakpoint_panels(
    lo: float,
    hi: float,
    breakpoints: Iterable[float] = (),
    *,
    max_width: float,
) -> NDArray[np.float64]:
    """Panel edges on [lo, hi] that include every interior breakpoint and respect ``max_width``."""
    inner = sorted({float(b) for b in breakpoints if lo < b < hi})
    edges = [lo, *inner, hi]
    out = [lo]
    for a, b in zip(edges[:-1], edges[1:]):
        pieces = max(1, math.ceil((b - a) / max_width))
        out.extend(np.linspace(a, b, pieces + 1)[1:].tolist())
    return np.asarray(out)


def _checked(values: NDArray, nodes: NDArray[np.float64]) -> NDArray:
    values = np.asarray(values)
    finite = np.isfinite(values)
    if not np.all(finite):
        bad = int(np.argmin(finite.reshape(finite.shape[0], -1).all(axis=1))) if values.ndim > 1 else int(np.argmin(finite))
        raise QuadratureError("integrand is not finite", abscissa=float(nodes[bad]))
    return values


def integrate_nodes(f: Integrand, nodes: NDArray[np.float64], weights: NDArray[np.float64]) -> complex | float:
    """Apply a precomputed rule; ``f`` is called once on the node array."""
    values = _checked(f(nodes), nodes)
    total = np.tensordot(weights, values, axes=(0, 0))
    return complex(total) if np.iscomplexobj(total) else float(total)


def gauss_legendre(grid: Grid1D, f: Integrand, *, panel_nodes: Optional[int] = None) -> complex | float:
    """Integrate a vectorized ``f`` over ``grid``.

    Raises:
        QuadratureError: If ``f`` returns a non-finite value (abscissa attached).
    """
    nodes, weights = gauss_legendre_nodes(grid, panel_nodes=panel_nodes)
    return integrate_nodes(f, nodes, weights)


def _panel_sums(
    f: Integrand, lo: NDArray[np.float64], hi: NDArray[np.float64], m: int
) -> Tuple[NDArray, NDArray[np.float64]]:
    """Per-panel integral and integral of |f| with an ``m``-point rule."""
    x_ref, w_ref = _reference_rule(m)
    half = 0.5 * (hi - lo)
    nodes = 0.5 * (hi + lo)[:, None] + half[:, None] * x_ref[None, :]
    flat = nodes.ravel()
    values = np.broadcast_to(_checked(f(flat), flat), flat.shape).reshape(nodes.shape)
    weights = half[:, None] * w_ref[None, :]
    return np.sum(weights * values, axis=1), np.sum(weights * np.abs(values), axis=1)


def integrate_adaptive(
    f: Integrand,
    breakpoints: Sequence[float],
    *,
    tol: Optional[float] = None,
    panel_nodes: Optional[int] = None,
) -> complex | float:
    """Adaptive composite Gauss-Legendre integral over the given panels.

    Each panel is compared with the sum over its two halves and bisected
    until they agree to ``tol * int|f|``, shared among panels in proportion
    to their width. ``f`` must return one value per abscissa.

    Raises:
        QuadratureError: If a panel is still unresolved after
            ``QUAD_MAX_DEPTH`` bisections (abscissa of its center attached),
            or ``f`` is not finite.
    """
    cfg = get_settings()
    rtol = cfg.QUAD_TOL if tol is None else tol
    m = panel_nodes or cfg.QUAD_PANEL_NODES
    edges = np.asarray(breakpoints, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise RangeError("breakpoints must be strictly increasing with at least two entries")
    lo, hi = edges[:-1], edges[1:]
    span = float(edges[-1] - edges[0])

    total: complex | float = 0.0
    settled = 0.0
    for _ in range(cfg.QUAD_MAX_DEPTH + 1):
        coarse, _ = _panel_sums(f, lo, hi, m)
        mid = 0.5 * (lo + hi)
        halves, magnitude = _panel_sums(f, np.concatenate([lo, mid]), np.concatenate([mid, hi]), m)
        count = lo.size
        fine = halves[:count] + halves[count:]
        mass = magnitude[:count] + magnitude[count:]
        scale = max(settled + float(np.sum(mass)), np.finfo(float).tiny)
        done = np.abs(fine - coarse) <= rtol * scale * (hi - lo) / span
        total += np.sum(fine[done])
        settled += float(np.sum(mass[done]))
        if np.all(done):
            return complex(total) if np.iscomplexobj(total) else float(total)
        lo, hi = np.concatenate([lo[~done], mid[~done]]), np.concatenate([mid[~done], hi[~done]])
    raise QuadratureError(
        f"adaptive refinement did not converge after {cfg.QUAD_MAX_DEPTH} bisections",
        abscissa=float(0.5 * (lo[0] + hi[0])),
    )


def _tail_extent(f: Integrand, start: float, direction: float, scale: float, cutoff: float) -> float:
    """Distance from ``start`` beyond which |f| stays below ``cutoff`` on a probe."""
    extent = scale
    for _ in range(200):
        probe = start + direction * extent * np.linspace(1.0, 2.0, 9)
        values = _checked(f(probe), probe)
        if np.all(np.abs(values) < cutoff):
            return extent
        extent *= 1.5
    raise QuadratureError("integrand does not decay", abscissa=float(start + direction * extent))


def integrate_semi_infinite(
    f: Integrand,
    lo: float,
    *,
    scale: float = 1.0,
    cutoff: Optional[float] = None,
    tol: Optional[float] = None,
    panel_nodes: Optional[int] = None,
) -> complex | float:
    """Integrate over [lo, +inf) after truncating where |f| < ``cutoff``.

    The truncated range starts on panels of width ``scale`` and is refined
    by ``integrate_adaptive`` to ``tol`` (``QUAD_TOL`` by default).
    """
    cut = get_settings().QUAD_TAIL_CUTOFF if cutoff is None else cutoff
    extent = _tail_extent(f, lo, 1.0, scale, cut)
    panels = max(1, math.ceil(2.0 * extent / scale))
    edges = np.linspace(lo, lo + 2.0 * extent, panels + 1)
    return integrate_adaptive(f, edges, tol=tol, panel_nodes=panel_nodes)


def integrate_infinite(
    f: Integrand,
    *,
    center: float = 0.0,
    scale: float = 1.0,
    cutoff: Optional[float] = None,
    tol: Optional[float] = None,
    panel_nodes: Optional[int] = None,
) -> complex | float:
    """Integrate over the real line after truncating both tails, refining adaptively."""
    cut = get_settings().QUAD_TAIL_CUTOFF if cutoff is None else cutoff
    right = _tail_extent(f, center, 1.0, scale, cut)
    left = _tail_extent(f, center, -1.0, scale, cut)
    lo, hi = center - 2.0 * left, center + 2.0 * right
    panels = max(1, math.ceil((hi - lo) / scale))
    return integrate_adaptive(f, np.linspace(lo, hi, panels + 1), tol=tol, panel_nodes=panel_nodes)


def integrate_tensor(
    f: Callable[..., NDArray],
    grids: Sequence[Grid1D],
    *,
    panel_nodes: Optional[int] = None,
) -> complex | float:
    """Tensor-product Gauss-Legendre integral of ``f(x0, x1, ...)`` over a box.

    ``f`` receives broadcastable coordinate arrays; the leading axis is swept
    one node at a time to bound memory.
    """
    if not grids:
        raise RangeError("at least one axis is required")
    rules = [gauss_legendre_nodes(g, panel_nodes=panel_nodes) for g in grids]
    rest = np.meshgrid(*(nodes for nodes, _ in rules[1:]), indexing="ij") if len(rules) > 1 else []
    rest_weights = np.ones(())
    for _, w in rules[1:]:
        rest_weights = np.multiply.outer(rest_weights, w)
    lead_nodes, lead_weights = rules[0]
    total: complex | float = 0.0
    for x0, w0 in zip(lead_nodes, lead_weights):
        values = np.asarray(f(x0, *rest))
        if not np.all(np.isfinite(values)):
            raise QuadratureError("integrand is not finite", abscissa=float(x0))
        total += w0 * np.sum(rest_weights * values)
    return complex(total) if np.iscomplexobj(total) else float(total)


__all__ = [
    "Grid1D",
    "integrate_tensor",
    "panel_rule",
    "gauss_legendre_nodes",
    "breakpoint_panels",
    "integrate_nodes",
    "gauss_legendre",
    "integrate_adaptive",
    "integrate_semi_infinite",
    "integrate_infinite",
]
