"""Truncated atom (x) cavity Hilbert space and the elementary operators.

Basis ordering is atom-major: the composite state ``|atom, n>`` sits at index
``atom * (n_max + 1) + n`` with ``atom = 0`` for the ground state ``|g>`` and
``atom = 1`` for the excited state ``|e>``.  Operators are built by literal
truncation of the photon ladder, so ``a^dag |n_max> = 0`` while
``a |n_max> = sqrt(n_max) |n_max - 1>`` is kept.

The Hamiltonian is written in the frame rotating at the cavity frequency, so
only the detuning ``delta = omega_x - omega_a`` appears (hbar = 1).
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParameterError

GROUND, EXCITED = 0, 1


@dataclass(frozen=True)
class SystemParams:
    """Physical rates and Fock truncation for one simulation point.

    All rates share one unit system; the convention used throughout the
    package is ``g = 1``.
    """

    g: float = 1.0
    kappa: float = 0.0
    gamma: float = 0.0
    gamma_star: float = 0.0
    delta: float = 0.0
    pump: float = 0.0
    n_max: int = 30

    def __post_init__(self):
        for name in ("g", "kappa", "gamma", "gamma_star", "delta", "pump"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        if not self.g > 0:
            raise ParameterError(f"g must be > 0, got {self.g}")
        for name in ("kappa", "gamma", "gamma_star", "pump"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)}")
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ParameterError(f"n_max must be an integer >= 1, got {self.n_max}")
        object.__setattr__(self, "n_max", int(self.n_max))

    @property
    def dim(self) -> int:
        return hilbert_dim(self.n_max)

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


class Operators(NamedTuple):
    a: np.ndarray
    a_dag: np.ndarray
    sigma_minus: np.ndarray
    sigma_plus: np.ndarray
    sigma_z: np.ndarray


def hilbert_dim(n_max: int) -> int:
    return 2 * (n_max + 1)


def basis_index(atom: int, n: int, n_max: int) -> int:
    if atom not in (GROUND, EXCITED) or not 0 <= n <= n_max:
        raise ParameterError(f"no basis state |{atom}, {n}> for n_max={n_max}")
    return atom * (n_max + 1) + n


def basis_label(index: int, n_max: int) -> tuple[int, int]:
    """Inverse of :func:`basis_index`: returns ``(atom, n)``."""
    if not 0 <= index < hilbert_dim(n_max):
        raise ParameterError(f"index {index} outside basis of n_max={n_max}")
    return divmod(index, n_max + 1)


def basis_ket(atom: int, n: int, n_max: int) -> np.ndarray:
    ket = np.zeros(hilbert_dim(n_max), dtype=complex)
    ket[basis_index(atom, n, n_max)] = 1.0
    return ket


def projector(atom: int, n: int, n_max: int) -> np.ndarray:
    """Density matrix ``|atom, n><atom, n|``."""
    ket = basis_ket(atom, n, n_max)
    return np.outer(ket, ket.conj())


def excitation_numbers(n_max: int) -> np.ndarray:
    """Eigenvalues of ``a^dag a + sigma_+ sigma_-`` along the basis."""
    atom, n = np.divmod(np.arange(hilbert_dim(n_max)), n_max + 1)
    return atom + n


def build_operators(params: SystemParams) -> Operators:
    n_max = params.n_max
    cav = np.diag(np.sqrt(np.arange(1, n_max + 1)), k=1).astype(complex)
    lower = np.array([[0, 1], [0, 0]], dtype=complex)  # |g><e|
    eye_atom = np.eye(2)
    eye_cav = np.eye(n_max + 1)

    a = np.kron(eye_atom, cav)
    sigma_minus = np.kron(lower, eye_cav)
    sigma_z = np.kron(np.diag([-1.0, 1.0]), eye_cav).astype(complex)
    return Operators(
        a=a,
        a_dag=a.conj().T.copy(),
        sigma_minus=sigma_minus,
        sigma_plus=sigma_minus.conj().T.copy(),
        sigma_z=sigma_z,
    )


def build_hamiltonian(params: SystemParams, ops: Operators | None = None) -> np.ndarray:
    """``H = delta sigma_+ sigma_- + i g (a^dag sigma_- - sigma_+ a)``."""
    if ops is None:
        ops = build_operators(params)
    coupling = ops.a_dag @ ops.sigma_minus
    # coupling^dag = sigma_+ a, so i g (C - C^dag) is Hermitian by construction
    return params.delta * (ops.sigma_plus @ ops.sigma_minus) + 1j * params.g * (
        coupling - coupling.conj().T
    )
