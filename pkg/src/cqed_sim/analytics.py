"""Closed-form rates and regime classification for the incoherent regime.

After adiabatic elimination of the atom-cavity coherences the system behaves
like two boxes exchanging one quantum at the effective rate ``R``.  This module
collects ``R``, the single-photon efficiency, the generalized Purcell factor,
the pump-broadened rate and the bad-cavity steady state built on them.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import DivisionDomain, ParameterError
from .hilbert import SystemParams

#: R below this fraction of kappa is flagged as the Purcell regime.
PURCELL_THRESHOLD = 0.1


def _lorentzian_rate(g, width, delta):
    return 4 * g**2 / width / (1 + (2 * delta / width) ** 2)


def effective_coupling(g, kappa, gamma, gamma_star, delta):
    """Effective atom-cavity transfer rate ``R``.

    ``R = 4 g^2 / W / (1 + (2 delta / W)^2)`` with total width
    ``W = kappa + gamma + gamma_star``.  Broadcasts over numpy arrays.
    """
    width = np.asarray(kappa + gamma + gamma_star, dtype=float)
    if np.any(width <= 0):
        raise DivisionDomain("kappa + gamma + gamma_star must be > 0")
    r = _lorentzian_rate(g, width, delta)
    return float(r) if np.ndim(r) == 0 else r


class DephasingOptimum(NamedTuple):
    gamma_star_opt: float
    R_max: float
    reachable: bool


def optimal_dephasing(g, kappa, gamma, delta) -> DephasingOptimum:
    """Dephasing rate maximizing ``R`` at fixed detuning.

    ``R`` peaks where the total width ``kappa + gamma + gamma_star`` equals
    ``2|delta|``, and the peak value there is ``g^2 / |delta|``.  When
    ``kappa + gamma >= 2|delta|`` adding dephasing only lowers ``R``, so
    ``gamma_star_opt = 0`` is returned with ``R`` at zero dephasing.
    """
    delta = abs(delta)
    if delta == 0:
        raise DivisionDomain("no finite dephasing optimum at zero detuning")
    gs_opt = 2 * delta - kappa - gamma
    if gs_opt > 0:
        return DephasingOptimum(gs_opt, g**2 / delta, True)
    return DephasingOptimum(0.0, effective_coupling(g, kappa, gamma, 0.0, delta), False)


def cavity_loss_channel(R, kappa):
    """Rate ``R kappa / (R + kappa)`` at which the atom loses energy through the cavity."""
    return R * kappa / (R + kappa)


def efficiency_beta(R, kappa, gamma):
    if R <= 0 or kappa <= 0 or gamma < 0:
        raise ParameterError("efficiency_beta needs R > 0, kappa > 0, gamma >= 0")
    through_cavity = cavity_loss_channel(R, kappa)
    return through_cavity / (gamma + through_cavity)


def purcell_factor(g, kappa, gamma, gamma_star, delta):
    """Generalized Purcell factor ``F* = R / gamma``."""
    if gamma == 0:
        raise DivisionDomain("Purcell factor undefined for gamma = 0")
    return effective_coupling(g, kappa, gamma, gamma_star, delta) / gamma


def effective_quality_factor(Q_cav, Q_em):
    if Q_cav <= 0 or Q_em <= 0:
        raise ParameterError("quality factors must be > 0")
    return 1.0 / (1.0 / Q_cav + 1.0 / Q_em)


class PumpedRates(NamedTuple):
    Gamma: float
    R_tilde: float


def pumped_rates(params: SystemParams) -> PumpedRates:
    """Pump-broadened width ``Gamma`` and coupling ``R~``."""
    p = params
    Gamma = p.pump + p.gamma + p.gamma_star + p.kappa
    if Gamma <= 0:
        raise DivisionDomain("pump + gamma + gamma_star + kappa must be > 0")
    return PumpedRates(Gamma, _lorentzian_rate(p.g, Gamma, p.delta))


class BadCavitySteadyState(NamedTuple):
    n_x: float
    n_a: float
    N_rate: float
    N_sat: float
    applicable: bool


def steady_populations_badcavity(params: SystemParams) -> BadCavitySteadyState:
    """Steady state restricted to ``{|g,0>, |g,1>, |e,0>}``.

    Values are returned whatever the regime; ``applicable`` reports
    ``kappa > R~``.
    """
    p = params
    R = pumped_rates(p).R_tilde
    loss = cavity_loss_channel(R, p.kappa) if p.kappa > 0 else 0.0
    denom = p.pump + p.gamma + loss
    n_x = p.pump / denom if denom > 0 else 0.0
    n_a = R / (p.kappa + R) * n_x
    return BadCavitySteadyState(
        n_x=n_x,
        n_a=n_a,
        N_rate=p.kappa * n_a,
        N_sat=loss,
        applicable=p.kappa > R,
    )


def bad_cavity_crossing_pump(params: SystemParams):
    """Pump rate at which power broadening pushes ``R~`` down to ``kappa``.

    Solves ``kappa Gamma^2 - 4 g^2 Gamma + 4 kappa delta^2 = 0`` for the
    larger root.  Returns ``None`` when the system is never in the good-cavity
    regime or is already in the bad-cavity regime at zero pump.
    """
    p = params
    if p.kappa <= 0:
        return None
    disc = 16 * p.g**4 - 16 * p.kappa**2 * p.delta**2
    if disc < 0:
        return None
    Gamma = (4 * p.g**2 + np.sqrt(disc)) / (2 * p.kappa)
    pump = Gamma - p.gamma - p.gamma_star - p.kappa
    return float(pump) if pump > 0 else None


@dataclass(frozen=True)
class TwoBoxState:
    n_a: float
    n_x: float


def two_box_evolve(R, kappa, gamma, initial: TwoBoxState, t_grid) -> list[TwoBoxState]:
    """Exact solution of the two-box rate equations at the times in ``t_grid``.

    ``initial`` is the state at ``t = 0``.
    """
    if min(R, kappa, gamma) < 0:
        raise ParameterError("rates must be >= 0")
    M = np.array([[-(kappa + R), R], [R, -(gamma + R)]], dtype=float)
    y0 = np.array([initial.n_a, initial.n_x], dtype=float)
    out = []
    for t in np.asarray(t_grid, dtype=float):
        y = scipy.linalg.expm(M * t) @ y0
        out.append(TwoBoxState(n_a=float(y[0]), n_x=float(y[1])))
    return out


@dataclass(frozen=True)
class RegimeReport:
    good_cavity: bool
    strong_coupling: bool
    coherent: bool
    purcell: bool
    adiabatic_valid: bool
    R: float

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def flags(self) -> list[str]:
        return [k for k, v in self.to_dict().items() if v is True]


def classify_regime(params: SystemParams) -> RegimeReport:
    """Regime booleans, using the pump-broadened ``R~`` (equal to ``R`` at zero pump)."""
    p = params
    R = pumped_rates(p).R_tilde
    width = p.kappa + p.gamma + p.gamma_star
    coherent = 2 * p.g > width
    return RegimeReport(
        good_cavity=bool(R > p.kappa),
        strong_coupling=bool(2 * p.g > abs(p.gamma + p.gamma_star - p.kappa)),
        coherent=bool(coherent),
        purcell=bool(R < PURCELL_THRESHOLD * p.kappa),
        adiabatic_valid=bool(not coherent or abs(p.delta) > p.g),
        R=float(R),
    )
