"""Command handlers: validated parameters in, a table or a JSON result out.

Handlers only call domain services; formatting and file handling live in
:mod:`src.apps.cli.writers`.
"""

from __future__ import annotations

import math
from typing import Any, Callable, Dict, Optional, Union

import numpy as np

from src.core.errors import ConfigError
from src.domain.phasespace.schemas.spins import SpinFamily
from src.domain.phasespace.schemas.squeezing import SqueezingParams
from src.domain.phasespace.schemas.wavepackets import BellStateParams, CatParams, EprParams, JohansenParams
from src.domain.phasespace.services import (
    dynamics,
    gaussian,
    infotheory,
    pseudospin,
    semiclassical,
    wavepackets,
    weyl,
)
from src.infra.factory import create_background, create_spin_triple, spin_truncation
from src.apps.cli.schemas import (
    ChshBellParams,
    ChshEprParams,
    ChshJohansenParams,
    CommandName,
    CommandParams,
    DiscordCurveParams,
    PowerSpectrumParams,
    PseudospinBellParams,
    SqueezeEvolveParams,
    WeylCheckParams,
    WignerCatParams,
    WignerTmssParams,
    WignerWkbParams,
)
from src.apps.cli.writers import Column, Table

Result = Union[Table, Dict[str, Any]]
Handler = Callable[[Any, int], Result]


def _ordered_range(lo: float, hi: float, lo_key: str, hi_key: str) -> None:
    if not lo < hi:
        raise ConfigError(f"{hi_key} must exceed {lo_key}", key=hi_key)


def _background(name: str, beta: Optional[float], **overrides: float):
    if beta is not None:
        overrides["beta"] = beta
    return create_background(name, **overrides)


def discord_curve(params: DiscordCurveParams, seed: int) -> Table:
    table = Table(
        columns=[
            Column("r", "1", "squeezing parameter"),
            Column("discord_bits", "bit", "quantum discord of the two-mode squeezed state"),
            Column("asymptote_bits", "bit", "large-r line 2r/ln2 - 2 + 1/ln2 (nan at r = 0)"),
        ]
    )
    for r in np.linspace(0.0, params.r_max, params.points):
        r = float(r)
        line = infotheory.discord_asymptote(r) if r > 0.0 else math.nan
        table.rows.append((r, infotheory.discord_tmss(r), line))
    table.footer["gap_at_r_max"] = infotheory.discord_tmss(params.r_max) - infotheory.discord_asymptote(params.r_max)
    return table


def squeeze_evolve(params: SqueezeEvolveParams, seed: int) -> Table:
    bg = _background(params.background, params.beta, eta_ini=params.eta_ini, eta_end=params.eta_end)
    path = dynamics.squeezing_trajectory(bg, params.k, samples=params.samples)
    table = Table(
        columns=[
            Column("eta", "conformal time", "sample time"),
            Column("r", "1", "squeezing parameter"),
            Column("phi", "rad", "squeezing angle, continuous"),
        ],
        rows=[(float(e), float(r), float(phi)) for e, r, phi in zip(path.eta, path.r, path.phi)],
    )
    table.footer["r_end"] = float(path.r[-1])
    table.footer["phi_end"] = float(path.phi[-1])
    table.footer["squeezing_db_end"] = gaussian.squeezing_db(float(path.r[-1]))
    return table


def power_spectrum(params: PowerSpectrumParams, seed: int) -> Table:
    _ordered_range(params.k_min, params.k_max, "k_min", "k_max")
    bg = _background(params.background, params.beta, eta_end=params.eta_end, k_eta_ini=params.k_eta_ini)
    spectrum = dynamics.power_spectrum(bg, np.geomspace(params.k_min, params.k_max, params.points))
    table = Table(
        columns=[
            Column("k", "1/conformal time", "comoving wavenumber"),
            Column("P_zeta", "1", "k^3 |zeta_k|^2 / (2 pi^2)"),
            Column("zeta_mod2", "1", "|zeta_k|^2 at eta_end"),
            Column("r_end", "1", "squeezing parameter at eta_end"),
            Column("phi_end", "rad", "squeezing angle at eta_end"),
            Column("super_hubble", "flag", "1 when |k eta_end| < 0.1"),
            Column("wronskian_relative", "1", "max ||u|^2 - |v|^2 - 1| / (|u|^2 + |v|^2)"),
            Column("wronskian_absolute", "1", "max ||u|^2 - |v|^2 - 1|"),
        ]
    )
    for rec, power in zip(spectrum.records, spectrum.power):
        table.rows.append(
            (
                rec.k,
                float(power),
                rec.zeta_mod2,
                rec.squeeze.r,
                rec.squeeze.phi,
                int(rec.super_hubble),
                rec.wronskian_relative,
                rec.wronskian_absolute,
            )
        )
    table.footer["tilt"] = spectrum.tilt
    table.footer["n_s"] = 1.0 + spectrum.tilt
    table.footer["flagged"] = len(spectrum.flagged)
    return table


def wigner_cat(params: WignerCatParams, seed: int) -> Table:
    c = CatParams(q0=params.q0, p0=params.p0, m=params.m, omega=params.omega)
    sq, sp = 1.0 / math.sqrt(c.m_omega), math.sqrt(c.m_omega)
    q = np.linspace(-abs(c.q0) - 5.0 * sq, abs(c.q0) + 5.0 * sq, params.points)
    p = np.linspace(c.p0 - 5.0 * sp, c.p0 + 5.0 * sp, params.points)
    qq, pp = np.meshgrid(q, p, indexing="ij")
    w = np.asarray(wavepackets.cat_wigner(c, qq, pp))
    table = Table(
        columns=[
            Column("q", "length", "position"),
            Column("p", "momentum", "momentum"),
            Column("W", "1/action", "Wigner function"),
        ],
        rows=[(float(a), float(b), float(v)) for a, b, v in zip(qq.ravel(), pp.ravel(), w.ravel())],
    )
    minimum, (q_min, p_min) = wavepackets.cat_negativity(c)
    table.footer["min_W"] = minimum
    table.footer["argmin_q"] = q_min
    table.footer["argmin_p"] = p_min
    table.footer["norm"] = wavepackets.cat_norm(c)
    return table


def wigner_tmss(params: WignerTmssParams, seed: int) -> Table:
    state = SqueezingParams(r=params.r, phi=params.phi)
    axis = np.linspace(-params.half_width, params.half_width, params.points)
    q1, q2 = np.meshgrid(axis, axis, indexing="ij")
    zero = np.zeros_like(q1)
    explicit = np.asarray(gaussian.wigner_tmss_explicit(state, params.k, q1, zero, q2, zero))
    rk = math.sqrt(params.k)
    gamma = gaussian.covariance_from_squeezing(state)
    general = np.asarray(gaussian.wigner_gaussian(gamma, np.stack([rk * q1, zero, rk * q2, zero], axis=-1)))
    table = Table(
        columns=[
            Column("q_k", "length", "mode k position (pi_k = 0)"),
            Column("q_mk", "length", "mode -k position (pi_-k = 0)"),
            Column("W_explicit", "1", "Wigner function in canonical variables"),
            Column("W_gaussian", "1", "exp(-x^T gamma^-1 x) / (pi^2 sqrt(det gamma))"),
        ],
        rows=[
            (float(a), float(b), float(u), float(v))
            for a, b, u, v in zip(q1.ravel(), q2.ravel(), explicit.ravel(), general.ravel())
        ],
    )
    table.footer["max_difference"] = float(np.max(np.abs(explicit - general)))
    table.footer["det_gamma"] = gaussian.purity_determinant(gamma)
    return table


def wigner_wkb(params: WignerWkbParams, seed: int) -> Table:
    if params.mode == "berry":
        cmp = semiclassical.berry_radial_comparison(params.n, points=params.points, angle=params.angle)
        table = Table(
            columns=[
                Column("d", "length", "distance from the center along the ray"),
                Column("W_berry", "1/action", "Airy-uniform semiclassical Wigner function"),
                Column("W_exact", "1/action", "number-state Wigner function by quadrature"),
            ],
            rows=[(float(a), float(b), float(c)) for a, b, c in zip(cmp.d, cmp.berry, cmp.exact)],
        )
        table.footer["peak_error"] = cmp.peak_error
        table.footer["sign_changes"] = cmp.sign_changes
        return table
    axis = np.linspace(-params.half_width, params.half_width, params.points)
    qq, pp = np.meshgrid(axis, axis, indexing="ij")
    exact = np.asarray(dynamics.onemode_wigner(params.r, qq, pp))
    naive = np.asarray(semiclassical.wkb_wigner_naive(params.r, qq, pp))
    table = Table(
        columns=[
            Column("q", "length", "position"),
            Column("p", "momentum", "momentum"),
            Column("W_exact", "1/action", "squeezed-state Wigner function"),
            Column("W_wkb", "1/action", "|C(q)|^2 delta_eps(p - q tanh 2r)"),
        ],
        rows=[(float(a), float(b), float(u), float(v)) for a, b, u, v in zip(qq.ravel(), pp.ravel(), exact.ravel(), naive.ravel())],
    )
    table.footer["max_difference"] = float(np.max(np.abs(exact - naive)))
    return table


def chsh_epr(params: ChshEprParams, seed: int) -> Table:
    scan = wavepackets.epr_bell_scan(EprParams(b=params.b, eps=params.eps, q0=params.q0), t_max=params.t_max, points=params.points)
    table = Table(
        columns=[
            Column("t2", "time", "second-arm time, first setting (t1 = 0)"),
            Column("t2p", "time", "second-arm time, second setting (t1' = 0)"),
            Column("B", "1", "CHSH combination"),
        ]
    )
    for i, a in enumerate(scan.t2):
        for j, b in enumerate(scan.t2):
            table.rows.append((float(a), float(b), float(scan.values[i, j])))
    table.footer["maximum"] = scan.maximum
    table.footer["argmax_t2"] = scan.argmax[0]
    table.footer["argmax_t2p"] = scan.argmax[1]
    return table


def chsh_bell(params: ChshBellParams, seed: int) -> Table:
    _ordered_range(params.x_min, params.x_max, "x_min", "x_max")
    bp = BellStateParams(a=params.a, q0=params.q0, n_bell_sq=params.n_bell_sq)
    table = Table(
        columns=[
            Column("x", "time", "time step; settings (-2x, x, 0, 3x)"),
            Column("two_minus_B_over_N2", "1", "(2 - B) / N^2"),
            Column("threeF_minus_F3", "1", "3F(x) - F(3x)"),
        ]
    )
    for x in np.linspace(params.x_min, params.x_max, params.points):
        x = float(x)
        table.rows.append(
            (x, (2.0 - wavepackets.bell_chsh(bp, x)) / bp.n_bell_sq, float(wavepackets.bell_chsh_reduced(bp, x)) * bp.n_bell_sq)
        )
    table.footer["root"] = wavepackets.bell_violation_threshold(bp)
    return table


def chsh_johansen(params: ChshJohansenParams, seed: int) -> Table:
    _ordered_range(params.x_min, params.x_max, "x_min", "x_max")
    j = JohansenParams(q0=params.q0, p0=params.p0, s=params.s, K=params.K)
    rows = wavepackets.johansen_combinations(j, np.linspace(params.x_min, params.x_max, params.points))
    table = Table(
        columns=[
            Column("x", "time", "time step; settings (-4x, 2x, 0, 6x)"),
            Column("naive_over_K", "1", "[3F(x) - F(3x)] / K"),
            Column("correct_over_K", "1", "[F(-x) + 2F(x) - F(3x)] / K"),
            Column("two_minus_B_over_K", "1", "(2 - B) / K"),
        ],
        rows=[(row.x, row.naive, row.correct, row.two_minus_b_over_k) for row in rows],
    )
    table.footer["min_naive"] = min(row.naive for row in rows)
    table.footer["min_correct"] = min(row.correct for row in rows)
    return table


def pseudospin_bell(params: PseudospinBellParams, seed: int) -> Dict[str, Any]:
    state = SqueezingParams(r=params.r, phi=params.phi)
    sweep = None
    if params.family is SpinFamily.larsson and params.ell is None:
        if params.ell_points > 1:
            _ordered_range(params.ell_min, params.ell_max, "ell_min", "ell_max")
        N = params.truncation or spin_truncation(state, tail_tol=params.tail_tol)
        ells = np.linspace(params.ell_min, params.ell_max, params.ell_points)
        sweep = pseudospin.larsson_ell_sweep(state, ells, N, points=params.grid_points, tail_tol=params.tail_tol)
        optimum, ell = sweep.best, sweep.best_ell
    else:
        triple = create_spin_triple(
            params.family, truncation=params.truncation, state=state, ell=params.ell, tail_tol=params.tail_tol
        )
        N, ell = triple.truncation, params.ell
        optimum = pseudospin.maximize_bell(state, triple, points=params.grid_points, tail_tol=params.tail_tol)
    return {
        "family": params.family,
        "r": state.r,
        "phi": state.phi,
        "truncation": N,
        "ell": ell,
        "angles": list(optimum.angles),
        "value": optimum.value,
        "grid_value": optimum.grid_value,
        "evaluations": optimum.evaluations,
        "tsirelson": pseudospin.TSIRELSON,
        "violates": optimum.value > 2.0,
        "sweep": None if sweep is None else {"ells": sweep.ells, "values": sweep.values},
    }


def weyl_check(params: WeylCheckParams, seed: int) -> Table:
    rng = np.random.default_rng(seed)
    state = SqueezingParams(r=params.r, phi=params.phi)
    table = Table(
        columns=[
            Column("index", "1", "expression number"),
            Column("degree", "1", "longest ordered product"),
            Column("quantum_re", "1", "Re <O> in the Fock basis"),
            Column("quantum_im", "1", "Im <O> in the Fock basis"),
            Column("stochastic_re", "1", "Re of the Weyl symbol averaged over the Wigner function"),
            Column("stochastic_im", "1", "Im of the same average"),
            Column("defect", "1", "|quantum - stochastic|"),
        ]
    )
    for i in range(params.count):
        expr = weyl.random_operator_expr(rng, max_degree=params.max_degree, terms=params.terms)
        quantum, stochastic = weyl.average_equivalence(expr, state)
        table.rows.append(
            (i, expr.degree, quantum.real, quantum.imag, stochastic.real, stochastic.imag, abs(quantum - stochastic))
        )
    table.footer["max_defect"] = max(row[-1] for row in table.rows)
    table.footer["zeta_max_difference"] = max(
        weyl.weyl_transform(weyl.zeta_composite(n)).max_abs_difference(weyl.zeta_classical(n))
        for n in range(1, weyl.ZETA_MAX_POWER + 1)
    )
    return table


HANDLERS: Dict[CommandName, Handler] = {
    CommandName.discord_curve: discord_curve,
    CommandName.squeeze_evolve: squeeze_evolve,
    CommandName.power_spectrum: power_spectrum,
    CommandName.wigner_cat: wigner_cat,
    CommandName.wigner_tmss: wigner_tmss,
    CommandName.wigner_wkb: wigner_wkb,
    CommandName.chsh_epr: chsh_epr,
    CommandName.chsh_bell: chsh_bell,
    CommandName.chsh_johansen: chsh_johansen,
    CommandName.pseudospin_bell: pseudospin_bell,
    CommandName.weyl_check: weyl_check,
}


def run_command(command: CommandName, params: CommandParams, seed: int) -> Result:
    return HANDLERS[command](params, seed)


__all__ = [
    "HANDLERS",
    "Result",
    "run_command",
    "discord_curve",
    "squeeze_evolve",
    "power_spectrum",
    "wigner_cat",
    "wigner_tmss",
    "wigner_wkb",
    "chsh_epr",
    "chsh_bell",
    "chsh_johansen",
    "pseudospin_bell",
    "weyl_check",
]
