"""Expectation values and photon statistics of composite density matrices.

An undefined ``g2(0)`` (cavity in vacuum) is represented by ``None`` so that
sweep tables keep one cell per point.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .analytics import RegimeReport, classify_regime
from .errors import DimensionMismatch, ParameterError
from .hilbert import SystemParams, build_operators

VACUUM_THRESHOLD = 1e-9
POISSON_TOL = 0.1
PLATEAU_DECADES = 1.0


def expectation(rho: np.ndarray, op: np.ndarray) -> complex:
    """``Tr(op rho)``."""
    rho = np.asarray(rho)
    op = np.asarray(op)
    if rho.shape != op.shape or rho.ndim != 2:
        raise DimensionMismatch(f"operator shape {op.shape} does not match state shape {rho.shape}")
    # Tr(O rho) = sum_ij O_ij rho_ji
    return complex(np.sum(op * rho.T))


def _n_max_of(rho: np.ndarray) -> int:
    d = np.asarray(rho).shape[0]
    if d % 2 or d < 4:
        raise DimensionMismatch(f"dimension {d} is not a composite atom x cavity space")
    return d // 2 - 1


def photon_distribution(rho: np.ndarray) -> np.ndarray:
    """Probability of ``n`` photons, traced over the atom."""
    n_max = _n_max_of(rho)
    diag = np.real(np.diag(rho)).reshape(2, n_max + 1)
    return diag.sum(axis=0)


def g2_zero(rho: np.ndarray):
    """Normalized zero-delay intensity correlation ``<a^dag a^dag a a> / n_a^2``.

    Returns ``None`` if the mean photon number is below ``VACUUM_THRESHOLD``.
    """
    p = photon_distribution(rho)
    n = np.arange(p.size)
    n_a = float(np.dot(n, p))
    if n_a < VACUUM_THRESHOLD:
        return None
    # a^dag a^dag a a = N (N - 1) is diagonal in the Fock basis
    return float(np.dot(n * (n - 1), p) / n_a**2)


@dataclass(frozen=True)
class SteadyObservables:
    n_a: float
    n_x: float
    sigma_z: float
    g2_0: float | None
    N_rate: float
    regime: RegimeReport

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def steady_observables(rho: np.ndarray, params: SystemParams) -> SteadyObservables:
    if rho.shape != (params.dim, params.dim):
        raise DimensionMismatch(f"state shape {rho.shape} does not match n_max={params.n_max}")
    ops = build_operators(params)
    n_a = expectation(rho, ops.a_dag @ ops.a).real
    sigma_z = expectation(rho, ops.sigma_z).real
    return SteadyObservables(
        n_a=n_a,
        n_x=0.5 * (1 + sigma_z),
        sigma_z=sigma_z,
        g2_0=g2_zero(rho),
        N_rate=params.kappa * n_a,
        regime=classify_regime(params),
    )


def decay_rate(times, values, floor: float = 0.0) -> float:
    """Least-squares exponential rate of a decaying positive signal.

    Fits ``log(values)`` linearly in time over the samples with
    ``values > floor``.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    keep = y > max(floor, 0.0)
    if keep.sum() < 2:
        raise ParameterError("need at least two samples above floor to fit a rate")
    slope = np.polyfit(t[keep], np.log(y[keep]), 1)[0]
    return float(-slope)


def poissonian_plateau(pumps, g2_values, tol: float = POISSON_TOL, min_decades: float = PLATEAU_DECADES):
    """Longest contiguous pump interval with ``|g2 - 1| <= tol``.

    Returns ``(p_lo, p_hi)`` if it spans at least ``min_decades`` decades of
    pump, else ``None``.  Undefined ``g2`` values break a run.
    """
    pumps = np.asarray(pumps, dtype=float)
    best = None
    start = None
    for k, g2 in enumerate(list(g2_values) + [None]):
        inside = g2 is not None and np.isfinite(g2) and abs(g2 - 1) <= tol
        if inside and start is None:
            start = k
        elif not inside and start is not None:
            lo, hi = pumps[start], pumps[k - 1]
            if best is None or np.log10(hi / lo) > np.log10(best[1] / best[0]):
                best = (float(lo), float(hi))
            start = None
    if best is None or np.log10(best[1] / best[0]) < min_decades:
        return None
    return best
