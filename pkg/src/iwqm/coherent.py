"""Dual coherent states of the imaginary-frequency boson.

The ket coherent state is the eigenstate of the ket-family lowering
generator, the bra coherent state the eigenstate of the raising
generator acting on the bra family.  In the truncated Fock frame

    ket:  c_n = e^{+i|alpha|^2/2} alpha^n / sqrt(n!)
    bra:  c_n = e^{-i|alpha|^2/2} (bra_phase * alpha)^n / sqrt(n!)

where ``bra_phase`` is +1j or -1j.  Exactly one of the two signs
satisfies the eigenvalue equation and the mutual normalization
<alpha|alpha> = 1 simultaneously (the default +1j does, under the
standard bra ladder convention); the other is kept available so the
verification suite can demonstrate the failure.

Expectation values of x, p, x^2, p^2 in the dual pairing are computed
both by truncated matrix contraction and from closed forms, and the two
routes are cross-asserted by the tests.  The variances come out as the
alpha-independent constants -i/2 and +i/2, whose principal square roots
multiply to the minimum uncertainty product 1/2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .algebra import (
    BRA,
    BRA_LADDER_PHASE,
    KET,
    DualVector,
    build_position,
    build_momentum,
    dual_pairing,
    generator_action,
)

#: Default phase in the bra coefficient ratio c_n / c_{n-1} = bra_phase * alpha / sqrt(n).
BRA_COEFF_PHASE = 1j

#: Largest admissible truncation-tail magnitude |alpha|^dim / sqrt(dim!).
TAIL_TOLERANCE = 1e-12


class TruncationError(ValueError):
    """Raised in strict mode when the coefficient tail exceeds the budget."""


class TruncationWarning(UserWarning):
    """Issued in permissive mode when the coefficient tail exceeds the budget."""


def tail_bound(alpha: complex, dim: int) -> float:
    """|alpha|^dim / sqrt(dim!), the magnitude scale of the first dropped coefficient."""
    return float(abs(alpha) ** dim / math.sqrt(math.factorial(dim)))


@dataclass(frozen=True)
class CoherentState:
    family: str
    alpha: complex
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def as_dual_vector(self) -> DualVector:
        return DualVector(self.family, self.coeffs)


def build_coherent(family: str, alpha: complex, dim: int = 64, *,
                   strict: bool = True, bra_phase: complex = BRA_COEFF_PHASE) -> CoherentState:
    """Coherent coefficient vector of one family at label alpha.

    Coefficients are produced by the stable ratio recurrence
    c_n = c_{n-1} * base / sqrt(n) with base = alpha (ket) or
    bra_phase * alpha (bra).  The truncation tail must stay under
    ``TAIL_TOLERANCE``; violations raise in strict mode and warn
    otherwise.
    """
    if family not in (KET, BRA):
        raise ValueError(f"family must be 'ket' or 'bra', got {family!r}")
    if dim < 8:
        raise ValueError(f"dim must be at least 8, got {dim}")
    if bra_phase not in (1j, -1j):
        raise ValueError(f"bra_phase must be +1j or -1j, got {bra_phase!r}")
    alpha = complex(alpha)
    tail = tail_bound(alpha, dim)
    if tail > TAIL_TOLERANCE:
        message = (f"truncation tail {tail:.3e} exceeds {TAIL_TOLERANCE:.0e} "
                   f"for |alpha|={abs(alpha):.3g}, dim={dim}")
        if strict:
            raise TruncationError(message)
        warnings.warn(message, TruncationWarning, stacklevel=2)
    base = alpha if family == KET else bra_phase * alpha
    c = np.empty(dim, dtype=complex)
    c[0] = np.exp(0.5j * abs(alpha) ** 2) if family == KET else np.exp(-0.5j * abs(alpha) ** 2)
    for n in range(1, dim):
        c[n] = c[n - 1] * base / math.sqrt(n)
    return CoherentState(family, alpha, c)


def eigen_residual(state: CoherentState,
                   ladder_phase: complex = BRA_LADDER_PHASE) -> float:
    """Norm of (generator - alpha I) applied to the coefficient vector.

    Ket states are tested against the lowering generator, bra states
    against the raising generator acting on the bra family (``a+``,
    which lowers bra levels with step phase ``ladder_phase``).
    """
    gen = "a-" if state.family == KET else "a+"
    action = generator_action(gen, state.family, state.dim, ladder_phase)
    return float(np.linalg.norm(action @ state.coeffs - state.alpha * state.coeffs))


def mutual_pairing(bra_state: CoherentState, ket_state: CoherentState) -> complex:
    """<alpha|alpha> between the dual coherent states; 1 for the consistent phase."""
    return dual_pairing(bra_state.as_dual_vector(), ket_state.as_dual_vector())


_OBSERVABLES = ("x", "p", "x2", "p2")


def expectation(observable: str, alpha: complex, dim: int = 64, *,
                strict: bool = True, bra_phase: complex = BRA_COEFF_PHASE) -> complex:
    """Dual-pairing expectation of x, p, x^2 or p^2 by truncated contraction."""
    if observable not in _OBSERVABLES:
        raise ValueError(f"observable must be one of {_OBSERVABLES}, got {observable!r}")
    ket = build_coherent(KET, alpha, dim, strict=strict)
    bra = build_coherent(BRA, alpha, dim, strict=strict, bra_phase=bra_phase)
    base = build_position(dim) if observable.startswith("x") else build_momentum(dim)
    matrix = base @ base if observable.endswith("2") else base
    return complex(np.vdot(bra.coeffs, matrix @ ket.coeffs))


def expectation_closed_form(observable: str, alpha: complex) -> complex:
    """The same expectations from the closed-form algebra of the label alpha."""
    alpha = complex(alpha)
    ac = np.conj(alpha)
    root = np.sqrt(2j)
    if observable == "x":
        return complex((alpha - 1j * ac) / root)
    if observable == "p":
        return complex((alpha + 1j * ac) / root)
    if observable == "x2":
        return complex((alpha ** 2 - 2j * abs(alpha) ** 2 + 1 - ac ** 2) / 2j)
    if observable == "p2":
        return complex((alpha ** 2 - ac ** 2 + 2j * abs(alpha) ** 2 - 1) / 2j)
    raise ValueError(f"observable must be one of {_OBSERVABLES}, got {observable!r}")


@dataclass(frozen=True)
class Uncertainty:
    """Complex variances, their principal roots, and the real product."""

    dx2: complex
    dp2: complex
    dx: complex
    dp: complex
    product: float


def uncertainty_product(alpha: complex, dim: int = 64, *, strict: bool = True) -> Uncertainty:
    """Variances of x and p and the product of their principal square roots.

    The individual deviations are complex (and carry the branch
    convention of the square root); the assertable physics is the pair
    of variances -i/2, +i/2 and the real product 1/2.
    """
    ex = expectation("x", alpha, dim, strict=strict)
    ep = expectation("p", alpha, dim, strict=strict)
    dx2 = expectation("x2", alpha, dim, strict=strict) - ex ** 2
    dp2 = expectation("p2", alpha, dim, strict=strict) - ep ** 2
    dx = complex(np.sqrt(dx2))
    dp = complex(np.sqrt(dp2))
    return Uncertainty(complex(dx2), complex(dp2), dx, dp, float((dx * dp).real))
