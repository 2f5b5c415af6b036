import math

import numpy as np
import pytest

from iwqm import algebra
from iwqm.algebra import BRA, KET, DualVector, dual_pairing, fock_state


def test_lowering_entries_dim3():
    low = algebra.build_lowering(3)
    expected = np.zeros((3, 3), dtype=complex)
    expected[0, 1] = 1.0
    expected[1, 2] = math.sqrt(2)
    np.testing.assert_array_equal(low, expected)


def test_raising_entries_dim3():
    rai = algebra.build_raising(3)
    expected = np.zeros((3, 3), dtype=complex)
    expected[1, 0] = 1.0
    expected[2, 1] = math.sqrt(2)
    np.testing.assert_array_equal(rai, expected)


def test_lowering_action_dim2():
    low = algebra.build_lowering(2)
    np.testing.assert_array_equal(low @ fock_state(KET, 1, 2).coeffs,
                                  fock_state(KET, 0, 2).coeffs)
    np.testing.assert_array_equal(low @ fock_state(KET, 0, 2).coeffs, np.zeros(2))


def test_raising_clips_top_level():
    rai = algebra.build_raising(5)
    np.testing.assert_array_equal(rai @ fock_state(KET, 4, 5).coeffs, np.zeros(5))


@pytest.mark.parametrize("dim", [0, 1, -3])
def test_invalid_dimension(dim):
    with pytest.raises(ValueError):
        algebra.build_lowering(dim)
    with pytest.raises(ValueError):
        algebra.build_raising(dim)


@pytest.mark.parametrize("n", range(6))
def test_ladder_chain_generates_levels(n):
    dim = 8
    rai = algebra.build_raising(dim)
    state = fock_state(KET, 0, dim).coeffs
    for _ in range(n):
        state = rai @ state
    np.testing.assert_allclose(state / math.sqrt(math.factorial(n)),
                               fock_state(KET, n, dim).coeffs, atol=1e-15)


@pytest.mark.parametrize("phase,expected_sign", [(-1j, lambda n: 1.0), (1j, lambda n: (-1.0) ** n)])
def test_bra_chain_phase(phase, expected_sign):
    # a- raises the bra family; dividing the n-fold chain by (-i)^n sqrt(n!)
    # leaves phase 1 under the -i convention and (-1)^n under +i
    dim = 8
    action = algebra.generator_action("a-", BRA, dim, phase)
    for n in range(1, 6):
        state = fock_state(BRA, 0, dim).coeffs
        for _ in range(n):
            state = action @ state
        state = state / ((-1j) ** n * math.sqrt(math.factorial(n)))
        np.testing.assert_allclose(state, expected_sign(n) * fock_state(BRA, n, dim).coeffs,
                                   atol=1e-15)


@pytest.mark.parametrize("dim", [2, 3, 4, 5, 8, 16, 32, 64, 128, 256])
def test_commutator_identity_leading_block(dim):
    defect = algebra.commutator(algebra.build_lowering(dim), algebra.build_raising(dim)) - np.eye(dim)
    assert np.max(np.abs(defect[:dim - 1, :dim - 1])) <= 1e-12
    # the truncation artifact sits in the last diagonal entry only
    assert abs(defect[dim - 1, dim - 1] + dim) <= 1e-12 * dim
    defect[dim - 1, dim - 1] = 0.0
    assert np.max(np.abs(defect)) <= 1e-12


def test_commutator_with_itself_is_zero():
    a = algebra.build_lowering(6)
    np.testing.assert_array_equal(algebra.commutator(a, a), np.zeros((6, 6)))


def test_commutator_shape_mismatch():
    with pytest.raises(ValueError):
        algebra.commutator(np.eye(3), np.eye(4))


def test_number_is_diagonal_levels():
    np.testing.assert_allclose(algebra.build_number(6), np.diag(np.arange(6.0)), atol=1e-14)


def test_hamiltonian_diagonal():
    ham = algebra.build_hamiltonian(3, 1.0)
    np.testing.assert_allclose(ham, np.diag([0.5j, 1.5j, 2.5j]), atol=1e-15)
    ground = fock_state(KET, 0, 3).coeffs
    np.testing.assert_allclose(ham @ ground, 0.5j * ground, atol=1e-15)


def test_hamiltonian_rejects_bad_omega():
    with pytest.raises(ValueError):
        algebra.build_hamiltonian(4, 0.0)
    with pytest.raises(ValueError):
        algebra.build_hamiltonian(4, -1.0)


def test_hamiltonian_pairing_expectation():
    ham = algebra.build_hamiltonian(4, 2.0)
    bra = fock_state(BRA, 2, 4)
    ket = fock_state(KET, 2, 4)
    value = dual_pairing(bra, DualVector(KET, ham @ ket.coeffs))
    assert value == pytest.approx(5j)


def test_su11_commutators():
    su = algebra.build_su11(16)
    block = slice(0, 14)
    comm = algebra.commutator
    assert np.max(np.abs((comm(su.sx, su.sy) - 1j * su.sz)[block, block])) <= 1e-12
    assert np.max(np.abs((comm(su.sz, su.s_plus) - su.s_plus)[block, block])) <= 1e-12
    assert np.max(np.abs((comm(su.sz, su.s_minus) + su.s_minus)[block, block])) <= 1e-12
    assert np.max(np.abs((comm(su.s_plus, su.s_minus) + 2 * su.sz)[block, block])) <= 1e-12


def test_su11_hamiltonian_identity_exact():
    for omega in (1.0, 0.7, 3.25):
        su = algebra.build_su11(8, omega)
        assert np.max(np.abs(su.hamiltonian_residual)) == 0.0


def test_su11_needs_dim_four():
    with pytest.raises(ValueError):
        algebra.build_su11(3)


def test_heisenberg_commutators():
    dim, omega = 32, 1.3
    ham = algebra.build_hamiltonian(dim, omega)
    pos = algebra.build_position(dim)
    mom = algebra.build_momentum(dim)
    block = slice(0, dim - 1)
    assert np.max(np.abs((algebra.commutator(pos, ham) - 1j * omega * mom)[block, block])) <= 1e-12
    assert np.max(np.abs((algebra.commutator(mom, ham) - 1j * omega * pos)[block, block])) <= 1e-12


def test_dual_pairing_orthonormal():
    dim = 6
    for n in range(dim):
        for m in range(dim):
            value = dual_pairing(fock_state(BRA, n, dim), fock_state(KET, m, dim))
            assert value == pytest.approx(1.0 if n == m else 0.0)


def test_dual_pairing_zero_vector():
    zero = DualVector(BRA, np.zeros(4))
    assert dual_pairing(zero, fock_state(KET, 1, 4)) == 0.0


def test_dual_pairing_family_contract():
    ket = fock_state(KET, 0, 4)
    bra = fock_state(BRA, 0, 4)
    with pytest.raises(ValueError):
        dual_pairing(ket, ket)
    with pytest.raises(ValueError):
        dual_pairing(bra, bra)
    with pytest.raises(ValueError):
        dual_pairing(ket, bra)


def test_dual_pairing_dimension_mismatch():
    with pytest.raises(ValueError):
        dual_pairing(fock_state(BRA, 0, 4), fock_state(KET, 0, 5))


def test_dual_vector_validation_and_immutability():
    with pytest.raises(ValueError):
        DualVector("middle", np.zeros(3))
    vec = fock_state(KET, 1, 3)
    with pytest.raises(ValueError):
        vec.coeffs[0] = 1.0


def test_generator_action_arguments():
    with pytest.raises(ValueError):
        algebra.generator_action("a", KET, 4)
    with pytest.raises(ValueError):
        algebra.generator_action("a-", "middle", 4)
    with pytest.raises(ValueError):
        algebra.generator_action("a-", BRA, 4, bra_phase=1.0)
    np.testing.assert_array_equal(algebra.generator_action("a-", KET, 4),
                                  algebra.build_lowering(4))
    np.testing.assert_array_equal(algebra.generator_action("a+", BRA, 4, -1j),
                                  -1j * algebra.build_lowering(4))
