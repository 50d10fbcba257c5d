"""Semiclassical rate equations of the single-emitter laser.

The coupling ``R`` is treated as a fixed external parameter here; pass the
pump-broadened value from :func:`cqed_sim.analytics.pumped_rates` when the
pump dependence matters.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoPhysicalRoot, PoleDomain


@dataclass(frozen=True)
class LaserSteadyState:
    inversion: float
    n_a: float
    branch_info: str
    residual: float


def rate_rhs(I, n_a, R, gamma, kappa, P_x):
    """Time derivatives ``(dI/dt, dn_a/dt)`` of inversion and photon number."""
    dI = -(R + gamma) * (1 + I) + P_x * (1 - I) - 2 * R * n_a * I
    dn = 0.5 * R * (1 + I) + R * n_a * I - kappa * n_a
    return dI, dn


def na_of_inversion(I, R, kappa):
    """Steady photon number at fixed inversion, ``R (I + 1) / 2 / (kappa - R I)``."""
    I = np.asarray(I, dtype=float)
    denom = kappa - R * I
    if np.any(denom <= 0):
        raise PoleDomain(f"kappa - R*I <= 0 for R={R}, kappa={kappa}: gain exceeds loss")
    n = 0.5 * R * (I + 1) / denom
    return float(n) if n.ndim == 0 else n


def _inversion(n_a, R, gamma, P_x):
    return (P_x - (R + gamma)) / (R * (1 + 2 * n_a) + gamma + P_x)


def _residual(I, n_a, R, gamma, kappa, P_x):
    r_I = I - _inversion(n_a, R, gamma, P_x)
    r_n = n_a * (kappa - R * I) - 0.5 * R * (I + 1)
    return float(max(abs(r_I), abs(r_n)))


def _is_stable(I, n_a, R, gamma, kappa, P_x):
    jac = np.array(
        [
            [-(R + gamma) - P_x - 2 * R * n_a, -2 * R * I],
            [0.5 * R + R * n_a, R * I - kappa],
        ]
    )
    return bool(np.all(np.linalg.eigvals(jac).real < 0))


def laser_steady_state(R, gamma, kappa, P_x) -> LaserSteadyState:
    """Stationary inversion and photon number of the rate equations.

    Eliminating the inversion leaves
    ``2 kappa R n^2 + (kappa B - R A - R^2) n - R P_x = 0`` with
    ``A = P_x - R - gamma`` and ``B = P_x + R + gamma``.  The roots have
    product ``-P_x / (2 kappa) <= 0`` so exactly one is non-negative.
    """
    if min(R, gamma, kappa, P_x) < 0:
        raise NoPhysicalRoot("rates must be >= 0")
    if R + gamma + P_x == 0:
        raise NoPhysicalRoot("inversion undefined with R = gamma = P_x = 0")
    if R == 0:
        I = (P_x - gamma) / (gamma + P_x)
        return LaserSteadyState(I, 0.0, "uncoupled", 0.0)
    if kappa <= 0:
        raise NoPhysicalRoot("no stationary photon number without cavity loss")

    A = P_x - R - gamma
    B = P_x + R + gamma
    a2 = 2 * kappa * R
    b = kappa * B - R * A - R**2
    c = -R * P_x
    sq = np.sqrt(b * b - 4 * a2 * c)
    # cancellation-free forms of the two roots
    if b >= 0:
        roots = [(-b - sq) / (2 * a2), 2 * c / (-b - sq) if sq + b > 0 else 0.0]
    else:
        roots = [(-b + sq) / (2 * a2), 2 * c / (-b + sq)]

    admissible = []
    for n in roots:
        if n < 0 and n > -1e-15:
            n = 0.0
        I = _inversion(n, R, gamma, P_x)
        if n >= 0 and -1 <= I <= 1 and kappa - R * I > 0:
            admissible.append((float(n), float(I)))
    if not admissible:
        raise NoPhysicalRoot(f"no admissible root for R={R}, gamma={gamma}, kappa={kappa}, P_x={P_x}")
    if len(admissible) > 1:
        stable = [s for s in admissible if _is_stable(s[1], s[0], R, gamma, kappa, P_x)]
        n, I = (stable or admissible)[0]
        info = "stable-of-two"
    else:
        n, I = admissible[0]
        info = "unique-nonnegative"
    return LaserSteadyState(I, n, info, _residual(I, n, R, gamma, kappa, P_x))
