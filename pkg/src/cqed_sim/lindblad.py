"""Liouvillian superoperator, steady states and time evolution.

Density matrices are vectorized by column stacking,
``vec(rho)[c * D + r] = rho[r, c]``, so that
``vec(A X B) = (B^T kron A) vec(X)``.

The generator is

    d rho/dt = -i [H, rho] + D[a] kappa + D[sigma_-] gamma + D[sigma_+] P_x
               + gamma_star / 4 (sigma_z rho sigma_z - rho)

with ``D[c] rho = c rho c^dag - {c^dag c, rho} / 2``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.integrate import solve_ivp

from .errors import DegenerateNullSpace, DimensionOverflow, NonConvergence, ParameterError, StepFailure
from .hilbert import SystemParams, build_hamiltonian, build_operators, excitation_numbers, projector

MAX_SUPEROPERATOR_DIM = 10_000
STEADY_STATE_TOL = 1e-9


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int | None = None) -> np.ndarray:
    v = np.asarray(v)
    if dim is None:
        dim = int(round(np.sqrt(v.size)))
    return v.reshape(dim, dim, order="F")


def _dissipator(c: sp.spmatrix, eye: sp.spmatrix) -> sp.spmatrix:
    cdc = (c.conj().T @ c).tocsr()
    return sp.kron(c.conj(), c) - 0.5 * sp.kron(eye, cdc) - 0.5 * sp.kron(cdc.T, eye)


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """Master-equation generator acting on ``vec(rho)``.

    ``matrix`` is stored as a CSR sparse matrix of shape ``(D**2, D**2)``;
    :meth:`toarray` returns the dense form.
    """

    matrix: sp.csr_matrix
    params: SystemParams
    hilbert_dim: int

    @property
    def dim(self) -> int:
        return self.hilbert_dim**2

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Return ``d rho/dt`` as a matrix."""
        return unvec(self.matrix @ vec(rho), self.hilbert_dim)


def build_liouvillian(params: SystemParams, max_dim: int = MAX_SUPEROPERATOR_DIM) -> Liouvillian:
    d = params.dim
    if d * d > max_dim:
        raise DimensionOverflow(
            f"superoperator dimension {d * d} (n_max={params.n_max}) exceeds cap {max_dim}"
        )
    ops = build_operators(params)
    H = sp.csr_matrix(build_hamiltonian(params, ops))
    a = sp.csr_matrix(ops.a)
    sm = sp.csr_matrix(ops.sigma_minus)
    spl = sp.csr_matrix(ops.sigma_plus)
    sz = sp.csr_matrix(ops.sigma_z)
    eye = sp.identity(d, dtype=complex, format="csr")

    L = -1j * (sp.kron(eye, H) - sp.kron(H.T, eye))
    if params.kappa:
        L = L + params.kappa * _dissipator(a, eye)
    if params.gamma:
        L = L + params.gamma * _dissipator(sm, eye)
    if params.pump:
        L = L + params.pump * _dissipator(spl, eye)
    if params.gamma_star:
        L = L + 0.25 * params.gamma_star * (sp.kron(sz.T, sz) - sp.kron(eye, eye))
    L = sp.csr_matrix(L, dtype=complex)
    L.eliminate_zeros()
    return Liouvillian(matrix=L, params=params, hilbert_dim=d)


def residual(L: Liouvillian, rho: np.ndarray) -> float:
    """Relative steady-state residual ``|L vec(rho)| / |vec(rho)|``."""
    v = vec(rho)
    return float(np.linalg.norm(L.matrix @ v) / np.linalg.norm(v))


def _zero_coherence_sector(n_max: int) -> np.ndarray:
    """Indices of vec(rho) entries between states of equal excitation number.

    Every channel in the model changes bra and ket excitation numbers
    together, so this sector is invariant and holds the steady state.
    """
    ex = excitation_numbers(n_max)
    d = ex.size
    cols, rows = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    mask = ex[rows] == ex[cols]
    return (cols * d + rows)[mask]


def _finalize(L: Liouvillian, v: np.ndarray) -> np.ndarray:
    rho = unvec(v, L.hilbert_dim)
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def steady_state(L: Liouvillian, tol: float = STEADY_STATE_TOL) -> np.ndarray:
    """Unique null vector of ``L`` as a trace-one density matrix.

    One diagonal-population row of the zero-coherence block is replaced by the
    trace constraint and the block is solved by dense LU.  If that fails, the
    smallest-magnitude eigenpairs of the block are used instead.
    """
    p = L.params
    d = L.hilbert_dim
    if p.pump + p.gamma + p.kappa == 0:
        return projector(0, 0, p.n_max)

    idx = _zero_coherence_sector(p.n_max)
    block = L.matrix[idx][:, idx].toarray()
    diag = (idx % d) == (idx // d)
    # idx[0] is |g,0><g,0|; the population rows sum to zero, so any one is redundant
    assert diag[0]

    full = np.zeros(d * d, dtype=complex)
    A = block.copy()
    A[0, :] = diag
    rhs = np.zeros(idx.size, dtype=complex)
    rhs[0] = 1.0
    try:
        with warnings.catch_warnings():
            # an ill-conditioned solve hints at a degenerate null space
            warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
            full[idx] = scipy.linalg.solve(A, rhs, check_finite=False)
        rho = _finalize(L, full)
        if np.all(np.isfinite(rho)) and residual(L, rho) < tol:
            return rho
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning, ValueError):
        pass
    return _steady_state_eig(L, block, idx, diag, tol)


def _steady_state_eig(L, block, idx, diag, tol):
    d = L.hilbert_dim
    vals, vecs = scipy.linalg.eig(block)
    order = np.argsort(np.abs(vals))
    candidates = []
    for k in order[:2]:
        v = vecs[:, k]
        tr = v[diag].sum()
        if abs(tr) < 1e-14:
            continue
        full = np.zeros(d * d, dtype=complex)
        full[idx] = v / tr
        rho = _finalize(L, full)
        candidates.append((residual(L, rho), rho))
    good = [c for c in candidates if c[0] < tol]
    if len(good) >= 2:
        r1, r2 = good[0][1], good[1][1]
        overlap = abs(np.vdot(r1, r2)) / (np.linalg.norm(r1) * np.linalg.norm(r2))
        if overlap < 0.99:
            raise DegenerateNullSpace(
                f"two independent stationary states (overlap {overlap:.3g}) for {L.params}"
            )
    if not good:
        best = min((c[0] for c in candidates), default=np.inf)
        raise NonConvergence(f"steady-state residual {best:.3g} above tolerance {tol:g}", best)
    return good[0][1]


def check_density_matrix(rho: np.ndarray, atol: float = 1e-10, psd_tol: float = 1e-8) -> None:
    """Raise ``ParameterError`` unless ``rho`` is Hermitian, unit-trace and PSD."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ParameterError(f"density matrix must be square, got shape {rho.shape}")
    norm = max(np.linalg.norm(rho), 1.0)
    if np.linalg.norm(rho - rho.conj().T) > atol * norm:
        raise ParameterError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > atol:
        raise ParameterError(f"density matrix trace is {np.trace(rho)}")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -psd_tol:
        raise ParameterError("density matrix has negative eigenvalues")


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (len(times), D, D)
    n_a: np.ndarray
    n_x: np.ndarray
    trace_drift: float = field(default=0.0)


def evolve(
    L: Liouvillian,
    rho0: np.ndarray,
    t_grid,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    method: str = "DOP853",
) -> Trajectory:
    """Integrate the master equation from ``rho0`` given at ``t_grid[0]``."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 1 or t[0] < 0 or np.any(np.diff(t) <= 0):
        raise ParameterError("t_grid must be strictly increasing and start at t >= 0")
    check_density_matrix(rho0)
    d = L.hilbert_dim
    M = L.matrix

    if t.size == 1:
        states = np.asarray(rho0, dtype=complex)[None]
    else:
        sol = solve_ivp(
            lambda _t, y: M @ y,
            (t[0], t[-1]),
            vec(np.asarray(rho0, dtype=complex)),
            method=method,
            t_eval=t,
            rtol=rtol,
            atol=atol,
        )
        if not sol.success:
            t_fail = float(sol.t[-1]) if sol.t.size else float(t[0])
            raise StepFailure(f"integration failed at t={t_fail:g}: {sol.message}", t_fail)
        states = sol.y.T.reshape(t.size, d, d).transpose(0, 2, 1)

    ops = build_operators(L.params)
    num_a = ops.a_dag @ ops.a
    num_x = ops.sigma_plus @ ops.sigma_minus
    n_a = np.einsum("ij,tji->t", num_a, states).real
    n_x = np.einsum("ij,tji->t", num_x, states).real
    drift = float(np.max(np.abs(np.trace(states, axis1=1, axis2=2) - 1)))
    return Trajectory(times=t, states=states, n_a=n_a, n_x=n_x, trace_drift=drift)
