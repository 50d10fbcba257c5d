import math

import numpy as np
import pytest
from conftest import random_density_matrix

from cqed_sim.errors import DimensionMismatch
from cqed_sim.hilbert import SystemParams, build_operators, projector
from cqed_sim.lindblad import build_liouvillian, steady_state
from cqed_sim.observables import (
    decay_rate,
    expectation,
    g2_zero,
    photon_distribution,
    poissonian_plateau,
    steady_observables,
)


def with_ground_atom(cavity_rho):
    atom = np.diag([1.0, 0.0])
    return np.kron(atom, cavity_rho).astype(complex)


def brute_force_g2(p):
    first = second = 0.0
    for n, pn in enumerate(p):
        first += n * pn
        second += n * (n - 1) * pn
    return second / first**2


def test_expectation_basic():
    o = build_operators(SystemParams(n_max=2))
    assert expectation(projector(0, 0, 2), o.a_dag @ o.a) == 0
    assert expectation(projector(1, 1, 2), o.sigma_z) == 1
    with pytest.raises(DimensionMismatch):
        expectation(projector(0, 0, 2), np.eye(4))


def test_expectation_against_double_loop(rng):
    d = 8
    rho = random_density_matrix(d, rng)
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    op = x + x.conj().T
    ref = 0j
    for i in range(d):
        for j in range(d):
            ref += op[i, j] * rho[j, i]
    val = expectation(rho, op)
    assert abs(val - ref) < 1e-12
    assert abs(val.imag) < 1e-10


def test_g2_fock_thermal_coherent():
    n_max = 30
    one = np.zeros((n_max + 1, n_max + 1))
    one[1, 1] = 1
    assert g2_zero(with_ground_atom(one)) == 0.0

    nbar = 0.5
    thermal = np.array([nbar**n / (1 + nbar) ** (n + 1) for n in range(n_max + 1)])
    assert brute_force_g2(thermal) == pytest.approx(2.0, abs=1e-9)
    assert g2_zero(with_ground_atom(np.diag(thermal))) == pytest.approx(brute_force_g2(thermal), abs=1e-12)

    poisson = np.array([math.exp(-2) * 2.0**n / math.factorial(n) for n in range(n_max + 1)])
    assert brute_force_g2(poisson) == pytest.approx(1.0, abs=1e-3)
    assert g2_zero(with_ground_atom(np.diag(poisson))) == pytest.approx(brute_force_g2(poisson), abs=1e-12)


def test_g2_undefined_in_vacuum():
    assert g2_zero(projector(1, 0, 3)) is None


def test_g2_depends_only_on_diagonal(rng):
    rho = random_density_matrix(2 * 6, rng)
    g = g2_zero(rho)
    assert g >= 0
    assert g2_zero(np.diag(np.diag(rho))) == pytest.approx(g, abs=1e-12)
    o = build_operators(SystemParams(n_max=5))
    num = expectation(rho, o.a_dag @ o.a_dag @ o.a @ o.a).real
    den = expectation(rho, o.a_dag @ o.a).real ** 2
    assert g == pytest.approx(num / den, rel=1e-12)
    assert photon_distribution(rho).sum() == pytest.approx(1.0)


def test_steady_observables_invariants():
    p = SystemParams(kappa=0.2, gamma=0.01, pump=0.5, n_max=20)
    obs = steady_observables(steady_state(build_liouvillian(p)), p)
    assert obs.n_x == pytest.approx((1 + obs.sigma_z) / 2, abs=1e-10)
    assert obs.N_rate == p.kappa * obs.n_a
    assert 0 <= obs.n_x <= 1


def test_decay_rate_exact_exponential():
    t = np.linspace(0, 4, 50)
    assert decay_rate(t, 3 * np.exp(-0.7 * t)) == pytest.approx(0.7)


def test_plateau_detector():
    P = np.geomspace(0.01, 100, 41)  # 10 points per decade
    g2 = np.where((P > 0.1) & (P < 0.9), 1.02, 1.5)
    assert poissonian_plateau(P, g2) is None
    g2 = np.where((P >= 0.1) & (P <= 2.0), 1.05, 0.5)
    lo, hi = poissonian_plateau(P, g2)
    assert lo == pytest.approx(0.1) and hi == pytest.approx(P[P <= 2.0][-1])
    g2 = list(g2)
    g2[15] = None
    assert poissonian_plateau(P, g2) is None
