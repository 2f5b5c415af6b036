"""Coordinate-space eigenfunctions of the inverted potential well.

Each eigenfunction is a complex polynomial times a Gaussian phase factor:
ket states carry exp(-i x^2 / 2), bra states exp(+i x^2 / 2).  The ground
states ("generating functions") are killed by the respective lowering
differential operators; excited states follow by repeated application of
the raising operators in the realization p = -i d/dx:

    ket raising  sqrt(i/2) (x + i d/dx)      ket lowering  sqrt(i/2) (x - i d/dx)
    bra raising  sqrt(i/2) (x - i d/dx)      bra lowering  sqrt(i/2) (x + i d/dx)

Polynomial recurrences use exact differentiation, never finite
differences, so the coefficient arithmetic is bit-stable.

The bra family carries one free phase per ladder step.  The default
``BRA_STEP_PHASE = +1j`` is the choice under which the dual families come
out mutually orthonormal under the oscillatory pairing
integral(conj(psi_l) psi_r) (the bra function is then exactly the complex
conjugate of the ket function on the real line).  The opposite choice
-1j satisfies the same ladder algebra but makes the pairing of level n
carry a factor (-1)^n; it remains available for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import BRA, KET
from .kernels import eval_poly

#: Per-step phase dividing the bra raising chain; +1j realizes the
#: mutually orthonormal dual family, -1j the sign-alternating alternative.
BRA_STEP_PHASE = 1j

_STEP_FACTOR = np.sqrt(0.5j)  # principal branch of sqrt(i/2)


@dataclass(frozen=True)
class Eigenfunction:
    """Polynomial-times-Gaussian-phase wave function of one dual family.

    ``coeffs`` holds the raw polynomial (ascending powers, leading
    coefficient 2^n for level n); all scalar factors accumulate in
    ``prefactor``.
    """

    family: str
    n: int
    coeffs: np.ndarray
    prefactor: complex

    def __post_init__(self):
        if self.family not in (KET, BRA):
            raise ValueError(f"family must be 'ket' or 'bra', got {self.family!r}")
        arr = np.array(self.coeffs, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def gauss_sign(self) -> int:
        """Sign in the Gaussian phase exp(gauss_sign * i x^2 / 2)."""
        return -1 if self.family == KET else +1

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1


def _poly_derivative(coeffs: np.ndarray) -> np.ndarray:
    if coeffs.shape[0] == 1:
        return np.zeros(1, dtype=complex)
    return coeffs[1:] * np.arange(1, coeffs.shape[0])


def _shift_times_two_x(coeffs: np.ndarray) -> np.ndarray:
    return np.concatenate([np.zeros(1, dtype=complex), 2.0 * coeffs])


def generating_function(family: str) -> Eigenfunction:
    """Ground state: (i/pi)^(1/4) e^(-i x^2/2) for ket, (-i/pi)^(1/4) e^(+i x^2/2) for bra."""
    if family == KET:
        pref = (1j / np.pi) ** 0.25
    elif family == BRA:
        pref = (-1j / np.pi) ** 0.25
    else:
        raise ValueError(f"family must be 'ket' or 'bra', got {family!r}")
    return Eigenfunction(family, 0, np.ones(1, dtype=complex), complex(pref))


def apply_raising(f: Eigenfunction) -> Eigenfunction:
    """Raw raising-operator action (no normalization): level n -> n+1.

    Acting on P(x) e^(-+ i x^2/2), the polynomial becomes 2x P + i P' for
    ket and 2x Q - i Q' for bra; sqrt(i/2) folds into the prefactor.
    """
    d = _poly_derivative(f.coeffs)
    two_x = _shift_times_two_x(f.coeffs)
    sign = 1j if f.family == KET else -1j
    poly = two_x.copy()
    poly[:d.shape[0]] += sign * d
    return Eigenfunction(f.family, f.n + 1, poly, f.prefactor * _STEP_FACTOR)


def apply_lowering(f: Eigenfunction) -> Eigenfunction:
    """Raw lowering-operator action: annihilates level 0, else returns level n-1.

    On the polynomial part the lowering differential operator reduces to
    -+ i sqrt(i/2) P', which makes the annihilation of the ground state
    exact.
    """
    d = _poly_derivative(f.coeffs)
    phase = -1j if f.family == KET else 1j
    return Eigenfunction(f.family, max(f.n - 1, 0), d, f.prefactor * phase * _STEP_FACTOR)


def raise_once(f: Eigenfunction, bra_phase: complex = BRA_STEP_PHASE) -> Eigenfunction:
    """Normalized generation step: level n eigenfunction -> level n+1."""
    raw = apply_raising(f)
    step = np.sqrt(f.n + 1.0)
    if f.family == BRA:
        if bra_phase not in (1j, -1j):
            raise ValueError(f"bra_phase must be +1j or -1j, got {bra_phase!r}")
        step = step * bra_phase
    return Eigenfunction(raw.family, raw.n, raw.coeffs, raw.prefactor / step)


def eigenfunction(family: str, n: int, bra_phase: complex = BRA_STEP_PHASE) -> Eigenfunction:
    """The n-th normalized eigenfunction of a family."""
    if n < 0:
        raise ValueError(f"level must be nonnegative, got {n}")
    f = generating_function(family)
    for _ in range(n):
        f = raise_once(f, bra_phase)
    return f


def evaluate(f: Eigenfunction, x):
    """Evaluate prefactor * P(x) * exp(gauss_sign i x^2 / 2) at real x."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    vals = f.prefactor * eval_poly(f.coeffs, xs) * np.exp(0.5j * f.gauss_sign * xs * xs)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return complex(vals[0])
    return vals
