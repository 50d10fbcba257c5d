import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqed_sim.errors import ParameterError
from cqed_sim.hilbert import (
    SystemParams,
    basis_index,
    basis_ket,
    basis_label,
    build_hamiltonian,
    build_operators,
    excitation_numbers,
    hilbert_dim,
)

rates = st.floats(min_value=0.0, max_value=50.0, allow_nan=False)


def test_params_validation():
    with pytest.raises(ParameterError):
        SystemParams(g=0.0)
    with pytest.raises(ParameterError):
        SystemParams(kappa=-1.0)
    with pytest.raises(ParameterError):
        SystemParams(pump=-0.1)
    with pytest.raises(ParameterError):
        SystemParams(n_max=0)
    with pytest.raises(ParameterError):
        SystemParams(n_max=2.5)
    # negative detuning is physical
    assert SystemParams(delta=-3.0).delta == -3.0


def test_annihilation_nmax1_has_two_unit_entries():
    a = build_operators(SystemParams(n_max=1)).a
    nz = a[np.abs(a) > 0]
    assert nz.size == 2
    np.testing.assert_array_equal(nz, [1.0, 1.0])


def test_projector_and_number_operator():
    n_max = 3
    o = build_operators(SystemParams(n_max=n_max))
    e0 = basis_ket(1, 0, n_max)
    np.testing.assert_array_equal(o.sigma_plus @ o.sigma_minus @ e0, e0)
    for n in range(n_max + 1):
        assert not np.any(o.sigma_plus @ o.sigma_minus @ basis_ket(0, n, n_max))
    g2 = basis_ket(0, 2, n_max)
    np.testing.assert_allclose(o.a_dag @ o.a @ g2, 2 * g2, rtol=0, atol=1e-15)


def test_operator_algebra_on_truncated_space():
    n_max = 5
    o = build_operators(SystemParams(n_max=n_max))
    eye = np.eye(hilbert_dim(n_max))
    np.testing.assert_array_equal(o.sigma_minus @ o.sigma_plus + o.sigma_plus @ o.sigma_minus, eye)
    comm = o.a @ o.a_dag - o.a_dag @ o.a
    below_top = [basis_index(atom, n, n_max) for atom in (0, 1) for n in range(n_max)]
    np.testing.assert_allclose(comm[np.ix_(below_top, below_top)], np.eye(len(below_top)), atol=1e-14)
    top = basis_index(0, n_max, n_max)
    assert comm[top, top] == pytest.approx(-n_max)
    np.testing.assert_array_equal(o.sigma_z, o.sigma_plus @ o.sigma_minus - o.sigma_minus @ o.sigma_plus)


def test_basis_round_trip():
    n_max = 7
    for i in range(hilbert_dim(n_max)):
        assert basis_index(*basis_label(i, n_max), n_max) == i


def test_hamiltonian_single_excitation_convention():
    p = SystemParams(g=1.0, delta=0.0, n_max=1)
    H = build_hamiltonian(p)
    e0, g1 = basis_ket(1, 0, 1), basis_ket(0, 1, 1)
    np.testing.assert_allclose(H @ e0, 1j * g1)
    np.testing.assert_allclose(H @ g1, -1j * e0)


def test_hamiltonian_detuning_entry():
    H = build_hamiltonian(SystemParams(g=1.0, delta=10.0, n_max=3))
    i = basis_index(1, 0, 3)
    assert H[i, i] == 10


@settings(max_examples=40, deadline=None)
@given(g=st.floats(0.01, 10), delta=st.floats(-20, 20), n_max=st.integers(1, 8))
def test_hamiltonian_hermitian_and_conserves_excitations(g, delta, n_max):
    p = SystemParams(g=g, delta=delta, n_max=n_max)
    H = build_hamiltonian(p)
    assert np.array_equal(H, H.conj().T)
    N = np.diag(excitation_numbers(n_max)).astype(complex)
    comm = H @ N - N @ H
    inner = [basis_index(atom, n, n_max) for atom in (0, 1) for n in range(n_max)]
    assert np.linalg.norm(comm[np.ix_(inner, inner)]) < 1e-12
