"""Truncated matrix representation of the imaginary-frequency boson algebra.

The ladder operators of the inverted potential well obey the usual
commutation relation [a-, a+] = 1, but their physical adjoints are
proportional to themselves (a^dag = -i a with the principal square-root
branch), so the number operator n = a+ a- is pseudo-Hermitian and the
Hamiltonian H = i omega (n + 1/2) is Hermitian with purely imaginary
eigenvalues.  Two mutually orthonormal eigenstate families ("ket" and
"bra") are represented here by standard unit coefficient vectors; the
dual pairing on coefficients is the plain sesquilinear form, which makes
the biorthonormality condition Euclidean by construction.

All builders return dense complex matrices acting on ket-family
coefficient vectors.  Actions on bra-family vectors (where the roles of
the two generators swap and each step carries a phase) are provided by
:func:`generator_action`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KET = "ket"
BRA = "bra"

#: Phase attached to each bra-family ladder step.  With the default -1j the
#: bra generation chain a-^n |0>_l / ((-i)^n sqrt(n!)) reproduces |n>_l with
#: unit phase; the opposite choice +1j flips the chain phase to (-1)^n.
BRA_LADDER_PHASE = -1j

_FAMILIES = (KET, BRA)
_GENERATORS = ("a-", "a+")


def _check_dim(dim: int, minimum: int = 2) -> None:
    if not isinstance(dim, (int, np.integer)) or dim < minimum:
        raise ValueError(f"truncation dimension must be an integer >= {minimum}, got {dim!r}")


def build_lowering(dim: int) -> np.ndarray:
    """Lowering generator: entry sqrt(n) at (n-1, n)."""
    _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def build_raising(dim: int) -> np.ndarray:
    """Raising generator: entry sqrt(n) at (n, n-1)."""
    _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), -1).astype(complex)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """AB - BA for equally sized square matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs equally sized square matrices, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def build_number(dim: int) -> np.ndarray:
    """Number operator a+ a-, diagonal 0..dim-1 in the truncated basis."""
    return build_raising(dim) @ build_lowering(dim)


def build_hamiltonian(dim: int, omega: float) -> np.ndarray:
    """H = i omega (n + 1/2): Hermitian, with purely imaginary spectrum."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    return 1j * omega * (build_number(dim) + 0.5 * np.eye(dim))


def build_position(dim: int) -> np.ndarray:
    """x = (a- + a+) / sqrt(2i), the dimensionless position operator."""
    return (build_lowering(dim) + build_raising(dim)) / np.sqrt(2j)


def build_momentum(dim: int) -> np.ndarray:
    """p = (a- - a+) / sqrt(2i), the dimensionless momentum operator."""
    return (build_lowering(dim) - build_raising(dim)) / np.sqrt(2j)


@dataclass(frozen=True)
class SU11Generators:
    """Hyperbolic-algebra realization built from the ladder generators.

    sz is anti-Hermitian under the physical adjoint, and the Hamiltonian
    equals 2i omega sz exactly; ``hamiltonian_residual`` stores the
    matrix H - 2i omega sz (expected zero).
    """

    sz: np.ndarray
    s_plus: np.ndarray
    s_minus: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    hamiltonian_residual: np.ndarray


def build_su11(dim: int, omega: float = 1.0) -> SU11Generators:
    """Sz = (a+ a- + 1/2)/2, S+- = a+-^2 / 2, and the x/y combinations.

    Sy is taken as (i/2)(S+ - S-): this is the sign under which the full
    relation set [Sx, Sy] = i Sz, [Sz, S+-] = +-S+-, [S+, S-] = -2 Sz
    holds simultaneously (the opposite sign flips the first commutator).
    """
    _check_dim(dim, minimum=4)
    low = build_lowering(dim)
    rai = build_raising(dim)
    sz = 0.5 * (rai @ low + 0.5 * np.eye(dim))
    s_plus = 0.5 * (rai @ rai)
    s_minus = 0.5 * (low @ low)
    sx = 0.5 * (s_plus + s_minus)
    sy = 0.5j * (s_plus - s_minus)
    residual = build_hamiltonian(dim, omega) - 2j * omega * sz
    return SU11Generators(sz, s_plus, s_minus, sx, sy, residual)


def generator_action(generator: str, family: str, dim: int,
                     bra_phase: complex = BRA_LADDER_PHASE) -> np.ndarray:
    """Matrix of a ladder generator acting on one family's coefficients.

    On ket coefficients ``a-`` lowers and ``a+`` raises with the plain
    sqrt(n) entries.  On bra coefficients the roles swap and each step is
    multiplied by ``bra_phase``: a- raises with bra_phase*sqrt(n+1) and
    a+ lowers with bra_phase*sqrt(n).
    """
    if generator not in _GENERATORS:
        raise ValueError(f"generator must be one of {_GENERATORS}, got {generator!r}")
    if family not in _FAMILIES:
        raise ValueError(f"family must be one of {_FAMILIES}, got {family!r}")
    if bra_phase not in (1j, -1j):
        raise ValueError(f"bra_phase must be +1j or -1j, got {bra_phase!r}")
    if family == KET:
        return build_lowering(dim) if generator == "a-" else build_raising(dim)
    if generator == "a-":
        return bra_phase * build_raising(dim)
    return bra_phase * build_lowering(dim)


@dataclass(frozen=True)
class DualVector:
    """Coefficient vector over one Fock family ("ket" or "bra")."""

    family: str
    coeffs: np.ndarray

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"family must be one of {_FAMILIES}, got {self.family!r}")
        arr = np.array(self.coeffs, dtype=complex)
        if arr.ndim != 1:
            raise ValueError("coefficients must be a one-dimensional vector")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]


def fock_state(family: str, n: int, dim: int) -> DualVector:
    """The n-th basis state of a family as a unit coefficient vector."""
    _check_dim(dim)
    if not 0 <= n < dim:
        raise ValueError(f"level n={n} outside truncation 0..{dim - 1}")
    c = np.zeros(dim, dtype=complex)
    c[n] = 1.0
    return DualVector(family, c)


def dual_pairing(bra: DualVector, ket: DualVector) -> complex:
    """Sesquilinear pairing sum_n conj(bra_n) ket_n between the dual families.

    Only defined with a bra-family vector on the left and a ket-family
    vector on the right; anything else violates the biorthogonal contract.
    """
    if bra.family != BRA or ket.family != KET:
        raise ValueError(
            f"pairing takes (bra, ket); got families ({bra.family!r}, {ket.family!r})")
    if bra.dim != ket.dim:
        raise ValueError(f"dimension mismatch: {bra.dim} vs {ket.dim}")
    return complex(np.vdot(bra.coeffs, ket.coeffs))
