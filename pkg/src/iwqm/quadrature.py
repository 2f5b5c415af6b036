"""Integrals of polynomial * exp(-i x^2) under the oscillatory measure.

The Fresnel-type weight exp(-i x^2) turns into a plain Gaussian on the
contour rotated by exp(-i pi/4), so Gauss-Hermite nodes and weights give
a rule that is exact for polynomials up to degree 2*nodes - 1.  Every
rule result can be cross-checked against the closed-form moment oracle
integral(x^m exp(-i x^2)) = sqrt(pi/i) (m-1)!! / (2i)^(m/2) (even m).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as _npoly

from .algebra import BRA, KET
from .eigenfunctions import BRA_STEP_PHASE, Eigenfunction, eigenfunction, evaluate

#: Contour rotation mapping exp(-i x^2) to exp(-s^2).
ROTATION = np.exp(-0.25j * np.pi)


class PrecisionError(ValueError):
    """Raised when a rule cannot represent the requested integrand exactly."""


@dataclass(frozen=True)
class ContourQuadrature:
    """Gauss-Hermite rule rotated onto the stationary-phase contour."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        for name in ("nodes", "weights"):
            arr = np.array(getattr(self, name), dtype=complex)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]

    @property
    def max_degree(self) -> int:
        """Largest polynomial degree integrated exactly."""
        return 2 * self.node_count - 1

    @classmethod
    def build(cls, node_count: int) -> "ContourQuadrature":
        if node_count < 1:
            raise ValueError(f"node_count must be positive, got {node_count}")
        h, w = np.polynomial.hermite.hermgauss(node_count)
        return cls(ROTATION * h, ROTATION * w)


def fresnel_gaussian() -> complex:
    """integral(exp(-i x^2)) = sqrt(pi/i) = sqrt(pi) exp(-i pi/4), principal branch."""
    return complex(np.sqrt(np.pi) * ROTATION)


def moment(m: int) -> complex:
    """integral(x^m exp(-i x^2)): zero for odd m, sqrt(pi/i)(2k-1)!!/(2i)^k for m = 2k."""
    if m < 0:
        raise ValueError(f"moment order must be nonnegative, got {m}")
    if m % 2 == 1:
        return 0j
    k = m // 2
    double_fact = 1.0
    for j in range(1, 2 * k, 2):
        double_fact *= j
    return complex(fresnel_gaussian() * double_fact / (2j) ** k)


def integrate(coeffs: np.ndarray, rule: ContourQuadrature) -> complex:
    """integral(p(x) exp(-i x^2)) by the rotated rule; exact up to the degree bound."""
    coeffs = np.asarray(coeffs, dtype=complex)
    degree = coeffs.shape[0] - 1
    if degree > rule.max_degree:
        raise PrecisionError(
            f"degree {degree} exceeds the rule's exactness bound {rule.max_degree}")
    return complex(np.sum(rule.weights * _npoly.polyval(rule.nodes, coeffs)))


def integrate_by_moments(coeffs: np.ndarray) -> complex:
    """Independent evaluation path: contract coefficients with the moment oracle."""
    coeffs = np.asarray(coeffs, dtype=complex)
    return complex(sum(c * moment(m) for m, c in enumerate(coeffs)))


def _pairing_polynomial(bra_f: Eigenfunction, ket_f: Eigenfunction) -> tuple[complex, np.ndarray]:
    if bra_f.family != BRA or ket_f.family != KET:
        raise ValueError(
            f"pairing takes (bra, ket); got families ({bra_f.family!r}, {ket_f.family!r})")
    # conj(Q(x) e^{+ix^2/2}) * P(x) e^{-ix^2/2} = conj-coeff(Q)(x) P(x) e^{-ix^2}
    poly = _npoly.polymul(np.conj(bra_f.coeffs), ket_f.coeffs)
    return np.conj(bra_f.prefactor) * ket_f.prefactor, np.asarray(poly, dtype=complex)


def pairing_integral(bra_f: Eigenfunction, ket_f: Eigenfunction,
                     rule: ContourQuadrature | None = None) -> complex:
    """integral(conj(psi_m^l) psi_n^r) over the real line.

    The Gaussian phases of the two families combine into exp(-i x^2), so
    the integrand is polynomial times the oscillatory weight and the
    rotated rule applies.
    """
    scale, poly = _pairing_polynomial(bra_f, ket_f)
    if rule is None:
        rule = ContourQuadrature.build(max(32, (poly.shape[0] - 1) // 2 + 8))
    return complex(scale * integrate(poly, rule))


def pairing_integral_by_moments(bra_f: Eigenfunction, ket_f: Eigenfunction) -> complex:
    """Moment-oracle evaluation of the same pairing (independent of any rule)."""
    scale, poly = _pairing_polynomial(bra_f, ket_f)
    return complex(scale * integrate_by_moments(poly))


def gram_matrix(nmax: int, node_count: int = 64, bra_phase: complex = BRA_STEP_PHASE,
                use_moments: bool = False) -> np.ndarray:
    """All pairings of dual eigenfunctions up to level nmax; expected identity.

    With ``use_moments`` the rule is bypassed and every entry comes from
    the analytic moment oracle, which gives the cross-check path.
    """
    if nmax < 1:
        raise ValueError(f"nmax must be >= 1, got {nmax}")
    if not use_moments and node_count < nmax + 1:
        raise PrecisionError(
            f"{node_count} nodes cannot integrate degree {2 * nmax} exactly; "
            f"need at least {nmax + 1}")
    kets = [eigenfunction(KET, n) for n in range(nmax + 1)]
    bras = [eigenfunction(BRA, m, bra_phase) for m in range(nmax + 1)]
    rule = None if use_moments else ContourQuadrature.build(node_count)
    out = np.empty((nmax + 1, nmax + 1), dtype=complex)
    for m, bra_f in enumerate(bras):
        for n, ket_f in enumerate(kets):
            if use_moments:
                out[m, n] = pairing_integral_by_moments(bra_f, ket_f)
            else:
                out[m, n] = pairing_integral(bra_f, ket_f, rule)
    return out


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10, max_depth: int = 40) -> complex:
    """Adaptive composite Simpson integration of a callable on [a, b]."""

    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, hi, flo, fmid, fhi, whole, tol, depth):
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        fl = f(lmid)
        fr = f(rmid)
        left = simpson(lo, mid, flo, fl, fmid)
        right = simpson(mid, hi, fmid, fr, fhi)
        if depth >= max_depth or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return (recurse(lo, mid, flo, fl, fmid, left, 0.5 * tol, depth + 1)
                + recurse(mid, hi, fmid, fr, fhi, right, 0.5 * tol, depth + 1))

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def density_interval_integral(f: Eigenfunction, lo: float, hi: float,
                              tol: float = 1e-10) -> float:
    """Same-family probability mass integral(|psi|^2) on a finite interval.

    For the non-localized eigenfunctions this grows without bound as the
    interval widens (the ground-state density is the constant 1/sqrt(pi)).
    """
    value = adaptive_simpson(lambda x: abs(evaluate(f, x)) ** 2, lo, hi, tol)
    return float(np.real(value))
