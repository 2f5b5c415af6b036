import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly

from iwqm.algebra import BRA, KET
from iwqm.eigenfunctions import (
    Eigenfunction,
    apply_lowering,
    apply_raising,
    eigenfunction,
    evaluate,
    generating_function,
    raise_once,
)

X_WIDE = np.linspace(-10.0, 10.0, 1001)
X_INNER = np.linspace(-5.0, 5.0, 801)


def oracle_raise(coeffs, family):
    """Independent route: apply (x -+ i d/dx) to P e^{-+ i x^2/2} term by term.

    (x + i d/dx)[P e^{-ix^2/2}] = (2xP + iP') e^{-ix^2/2} and the bra
    counterpart with the opposite derivative sign; implemented here with
    numpy polynomial primitives only.
    """
    sign = 1j if family == KET else -1j
    shifted = npoly.polymulx(2.0 * np.asarray(coeffs, dtype=complex))
    return npoly.polyadd(shifted, sign * npoly.polyder(np.asarray(coeffs, dtype=complex)))


def test_generating_function_values():
    ket = generating_function(KET)
    assert evaluate(ket, 0.0) == pytest.approx(np.pi ** -0.25 * np.exp(1j * np.pi / 8))
    bra = generating_function(BRA)
    assert evaluate(bra, 0.0) == pytest.approx(np.conj(evaluate(ket, 0.0)))


def test_bra_ground_state_conjugates_ket():
    ket = generating_function(KET)
    bra = generating_function(BRA)
    np.testing.assert_allclose(evaluate(bra, X_WIDE), np.conj(evaluate(ket, X_WIDE)),
                               atol=1e-15)


@pytest.mark.parametrize("family", [KET, BRA])
def test_ground_state_density_is_constant(family):
    density = np.abs(evaluate(generating_function(family), X_WIDE)) ** 2
    np.testing.assert_allclose(density, np.pi ** -0.5, rtol=0, atol=1e-14)


@pytest.mark.parametrize("family", [KET, BRA])
def test_lowering_annihilates_ground_state(family):
    lowered = apply_lowering(generating_function(family))
    assert np.max(np.abs(evaluate(lowered, X_WIDE))) <= 1e-12


def test_first_polynomials():
    p1 = raise_once(generating_function(KET))
    np.testing.assert_allclose(p1.coeffs, [0.0, 2.0])
    p2 = raise_once(p1)
    np.testing.assert_allclose(p2.coeffs, [2j, 0.0, 4.0])
    q2 = raise_once(raise_once(generating_function(BRA)))
    np.testing.assert_allclose(q2.coeffs, [-2j, 0.0, 4.0])


@pytest.mark.parametrize("family", [KET, BRA])
def test_recurrence_matches_symbolic_oracle(family):
    coeffs = np.ones(1, dtype=complex)
    f = generating_function(family)
    for _ in range(10):
        coeffs = oracle_raise(coeffs, family)
        f = raise_once(f)
        np.testing.assert_allclose(f.coeffs, coeffs, atol=1e-12)


@pytest.mark.parametrize("n", range(9))
def test_degree_and_leading_coefficient(n):
    f = eigenfunction(KET, n)
    assert f.degree == n
    assert f.coeffs[-1] == pytest.approx(2.0 ** n)


def test_level_three_leading_raw_coefficient():
    assert eigenfunction(KET, 3).coeffs[-1] == pytest.approx(8.0)


@pytest.mark.parametrize("n", range(1, 7))
def test_conjugation_symmetry_of_polynomials(n):
    ket = eigenfunction(KET, n)
    bra = eigenfunction(BRA, n)
    np.testing.assert_allclose(bra.coeffs, np.conj(ket.coeffs), atol=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_ladder_identity_pointwise(n):
    lowered = apply_lowering(eigenfunction(KET, n))
    target = np.sqrt(n) * evaluate(eigenfunction(KET, n - 1), X_INNER)
    assert np.max(np.abs(evaluate(lowered, X_INNER) - target)) <= 1e-10


@pytest.mark.parametrize("bra_phase", [1j, -1j])
@pytest.mark.parametrize("n", range(1, 6))
def test_bra_ladder_identity_pointwise(n, bra_phase):
    # the bra lowering step returns bra_phase * sqrt(n) times the previous level
    lowered = apply_lowering(eigenfunction(BRA, n, bra_phase))
    target = bra_phase * np.sqrt(n) * evaluate(eigenfunction(BRA, n - 1, bra_phase), X_INNER)
    assert np.max(np.abs(evaluate(lowered, X_INNER) - target)) <= 1e-10


@pytest.mark.parametrize("family", [KET, BRA])
@pytest.mark.parametrize("n", range(9))
def test_number_operator_pointwise(family, n):
    # lowering-then-raising realizes a+ a- on kets but a- a+ = -(dual number
    # operator) on bras, so the bra eigenvalue flips sign
    f = eigenfunction(family, n)
    count = apply_raising(apply_lowering(f))
    scale = n if family == KET else -n
    target = scale * evaluate(f, X_INNER)
    assert np.max(np.abs(evaluate(count, X_INNER) - target)) <= 1e-9


@pytest.mark.parametrize("n", range(7))
def test_dual_function_conjugation(n):
    # with the orthonormal phase the bra function equals conj(ket) exactly;
    # the alternative phase deviates by the unimodular factor (-1)^n
    ket_vals = evaluate(eigenfunction(KET, n), X_INNER)
    bra_vals = evaluate(eigenfunction(BRA, n, 1j), X_INNER)
    np.testing.assert_allclose(bra_vals, np.conj(ket_vals), atol=1e-12)
    alt_vals = evaluate(eigenfunction(BRA, n, -1j), X_INNER)
    np.testing.assert_allclose(alt_vals, (-1.0) ** n * np.conj(ket_vals), atol=1e-12)


def test_eigenfunction_level_zero_is_generating_function():
    f = eigenfunction(KET, 0)
    g = generating_function(KET)
    assert f.n == g.n and f.prefactor == g.prefactor
    np.testing.assert_array_equal(f.coeffs, g.coeffs)


def test_evaluate_scalar_matches_array():
    f = eigenfunction(KET, 3)
    assert evaluate(f, 1.25) == pytest.approx(evaluate(f, np.array([1.25]))[0])


def test_values_stay_finite_and_polynomially_bounded():
    f = eigenfunction(KET, 5)
    values = evaluate(f, X_WIDE)
    assert np.all(np.isfinite(values))
    bound = abs(f.prefactor) * npoly.polyval(np.abs(X_WIDE), np.abs(f.coeffs))
    assert np.all(np.abs(values) <= bound + 1e-12)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        generating_function("middle")
    with pytest.raises(ValueError):
        eigenfunction(KET, -1)
    with pytest.raises(ValueError):
        raise_once(generating_function(BRA), bra_phase=1.0)
    with pytest.raises(ValueError):
        Eigenfunction("middle", 0, np.ones(1), 1.0)


def test_coefficients_are_immutable():
    f = eigenfunction(KET, 2)
    with pytest.raises(ValueError):
        f.coeffs[0] = 0.0
