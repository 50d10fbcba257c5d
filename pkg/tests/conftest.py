import numpy as np
import pytest

from cqed_sim.hilbert import SystemParams, build_operators


def master_equation_rhs(params: SystemParams, rho: np.ndarray) -> np.ndarray:
    """Right-hand side of the master equation by explicit matrix products.

    Written out channel by channel with no vectorization, and with its own
    Hamiltonian assembly, to serve as an oracle for the Liouvillian.
    """
    o = build_operators(params)
    a, ad, sm, spl, sz = o.a, o.a_dag, o.sigma_minus, o.sigma_plus, o.sigma_z
    H = params.delta * spl @ sm + 1j * params.g * (ad @ sm - spl @ a)
    out = 1j * (rho @ H - H @ rho)
    out += params.kappa / 2 * (2 * a @ rho @ ad - ad @ a @ rho - rho @ ad @ a)
    out += params.gamma / 2 * (2 * sm @ rho @ spl - spl @ sm @ rho - rho @ spl @ sm)
    out += params.gamma_star / 4 * (sz @ rho @ sz - rho)
    out += params.pump / 2 * (2 * spl @ rho @ sm - sm @ spl @ rho - rho @ sm @ spl)
    return out


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
