"""Time evolution, decay factors, and the quantum-classical correspondence.

The stationary states of the inverted well evolve by real exponential
factors: ket levels grow as e^{(n+1/2) omega t}, bra levels decay by the
inverse, so same-family probability densities are not conserved while
the mixed ket-bra density operator is exactly time-invariant.

The coherent-state label obeys the classical equation alpha'' =
omega^2 alpha, whose solution (v/omega) sinh(omega t) is the orbit of a
unit-mass particle rolling off the potential top.  Two independent
numerical routes confirm it:

* fourth-order integration of the label equation (``integrate_alpha``),
* a spectral split-step solution of the time-dependent Schroedinger
  equation on a grid (``grid_split_step``), whose standard L2 position
  expectation follows the same curve exactly for quadratic potentials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import BRA, KET
from .kernels import grid_observables, rk4_trajectory

#: Largest exponent fed to exp(); beyond this double precision overflows.
EXP_GUARD = 700.0


class GridLeakError(RuntimeError):
    """Wave-function amplitude reached the grid boundary."""


class NormDriftError(RuntimeError):
    """L2 norm of the grid state drifted beyond tolerance."""


class StepSizeError(ValueError):
    """Integration step too coarse for the requested accuracy."""


@dataclass(frozen=True)
class Trajectory:
    """Strictly increasing sample times with complex observable values."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        v = np.array(self.values, dtype=complex)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("times and values must be equal-length vectors")
        if t.shape[0] > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class GridState:
    """Wave function sampled on a uniform grid of power-of-two size."""

    x_min: float
    x_max: float
    points: int
    psi: np.ndarray
    omega: float

    def __post_init__(self):
        if self.points < 2 or self.points & (self.points - 1):
            raise ValueError(f"points must be a power of two, got {self.points}")
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        arr = np.array(self.psi, dtype=complex)
        if arr.shape != (self.points,):
            raise ValueError(f"psi must have shape ({self.points},), got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "psi", arr)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.points

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.points)


def propagate_fock(family: str, n: int, omega: float, t: float) -> float:
    """Growth factor of level n: e^{+(n+1/2) omega t} for ket, inverse for bra."""
    if family not in (KET, BRA):
        raise ValueError(f"family must be 'ket' or 'bra', got {family!r}")
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if n < 0:
        raise ValueError(f"level must be nonnegative, got {n}")
    exponent = (n + 0.5) * omega * t
    if abs(exponent) > EXP_GUARD:
        raise OverflowError(f"exponent {exponent:.3g} exceeds the overflow guard {EXP_GUARD}")
    return float(math.exp(exponent if family == KET else -exponent))


def propagate_coeffs(family: str, coeffs: np.ndarray, omega: float, t: float) -> np.ndarray:
    """Apply the diagonal propagator entrywise to a coefficient vector."""
    coeffs = np.asarray(coeffs, dtype=complex)
    factors = np.array([propagate_fock(family, n, omega, t) for n in range(coeffs.shape[0])])
    return coeffs * factors


def mixed_density(n: int, omega: float, t: float, dim: int) -> np.ndarray:
    """Outer product of the propagated ket level n with the propagated bra level n.

    The growth and decay factors cancel, so the matrix is time-invariant.
    """
    ket = np.zeros(dim, dtype=complex)
    bra = np.zeros(dim, dtype=complex)
    ket[n] = propagate_fock(KET, n, omega, t)
    bra[n] = propagate_fock(BRA, n, omega, t)
    return np.outer(ket, np.conj(bra))


def density_invariant_residual(n: int, omega: float, dt: float, dim: int | None = None,
                               t0: float = 0.0) -> float:
    """Max-entry residual of i d/dt rho + [rho, H] by centered differencing."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if dim is None:
        dim = n + 2
    from .algebra import build_hamiltonian

    h = build_hamiltonian(dim, omega)
    rho = mixed_density(n, omega, t0, dim)
    drho = (mixed_density(n, omega, t0 + dt, dim)
            - mixed_density(n, omega, t0 - dt, dim)) / (2.0 * dt)
    return float(np.max(np.abs(1j * drho + rho @ h - h @ rho)))


def schrodinger_residual(family: str, n: int, omega: float, dt: float,
                         t0: float = 0.0) -> float:
    """Centered-difference defect of i d/dt psi = E psi for one propagated level.

    The eigenvalue is i omega (n + 1/2) for ket levels and its conjugate
    for bra levels; the defect is the usual O(dt^2) truncation error of
    the difference quotient.
    """
    energy = 1j * omega * (n + 0.5) * (1 if family == KET else -1)
    derivative = (propagate_fock(family, n, omega, t0 + dt)
                  - propagate_fock(family, n, omega, t0 - dt)) / (2.0 * dt)
    return float(abs(1j * derivative - energy * propagate_fock(family, n, omega, t0)))


def classical_orbit(v: float, omega: float, sign: int, t):
    """x(t) = sign (v/omega) sinh(omega t), the runaway classical solution."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return sign * (v / omega) * np.sinh(omega * np.asarray(t, dtype=float))


def integrate_alpha(v: float, omega: float, t_final: float, dt: float,
                    check_tol: float | None = 1e-8) -> Trajectory:
    """Fourth-order integration of alpha'' = omega^2 alpha, alpha(0)=0, alpha'(0)=v.

    When ``check_tol`` is set the result is compared against the closed
    form and a :class:`StepSizeError` is raised if the relative deviation
    exceeds it.
    """
    if dt <= 0 or t_final <= 0:
        raise ValueError("dt and t_final must be positive")
    steps = int(round(t_final / dt))
    values = rk4_trajectory(float(v), float(omega), float(dt), steps)[:, 0]
    times = dt * np.arange(steps + 1)
    if check_tol is not None and v != 0:
        exact = classical_orbit(v, omega, 1, times[1:])
        rel = float(np.max(np.abs(values[1:] - exact) / np.abs(exact)))
        if rel > check_tol:
            raise StepSizeError(
                f"step dt={dt:g} leaves relative error {rel:.3e} > {check_tol:g} "
                f"against the closed-form orbit")
    return Trajectory(times, values.astype(complex))


def gaussian_packet(v: float, omega: float = 1.0, x_min: float = -40.0,
                    x_max: float = 40.0, points: int = 4096,
                    width: float = 1.0) -> GridState:
    """Normalized Gaussian packet centered at the potential top with mean momentum v."""
    dx = (x_max - x_min) / points
    x = x_min + dx * np.arange(points)
    psi = np.exp(-0.5 * (x / width) ** 2) * np.exp(1j * v * x)
    psi = psi / np.sqrt(np.sum(np.abs(psi) ** 2) * dx)
    return GridState(x_min, x_max, points, psi, omega)


def grid_split_step(initial: GridState, dt: float, steps: int,
                    leak_tol: float = 1e-10, drift_tol: float = 1e-8,
                    diagnostics: dict | None = None) -> Trajectory:
    """Strang-split spectral evolution under H = p^2/2 - omega^2 x^2/2.

    Returns the standard L2 expectation <x>(t) sampled after every step.
    Raises :class:`GridLeakError` if the boundary amplitude exceeds
    ``leak_tol`` and :class:`NormDriftError` if the L2 norm drifts by
    more than ``drift_tol``.  When a ``diagnostics`` dict is supplied it
    receives the observed ``norm_drift`` and ``edge_max``.
    """
    if dt <= 0 or steps < 1:
        raise ValueError("dt must be positive and steps >= 1")
    x = initial.x
    dx = initial.dx
    k = 2.0 * np.pi * np.fft.fftfreq(initial.points, dx)
    half_potential = np.exp(0.25j * dt * initial.omega ** 2 * x * x)
    kinetic = np.exp(-0.5j * dt * k * k)
    psi = initial.psi.copy()
    xs = np.empty(steps + 1)
    norm0, xs[0], edge = grid_observables(psi, x, dx)
    edge_max = edge
    drift_max = 0.0
    if edge > leak_tol:
        raise GridLeakError(f"initial boundary amplitude {edge:.3e} exceeds {leak_tol:g}")
    for s in range(steps):
        psi = half_potential * np.fft.ifft(kinetic * np.fft.fft(half_potential * psi))
        norm, xs[s + 1], edge = grid_observables(psi, x, dx)
        edge_max = max(edge_max, edge)
        drift_max = max(drift_max, abs(norm - norm0))
        if edge > leak_tol:
            raise GridLeakError(
                f"boundary amplitude {edge:.3e} exceeds {leak_tol:g} at step {s + 1}")
        if abs(norm - norm0) > drift_tol:
            raise NormDriftError(
                f"norm drift {abs(norm - norm0):.3e} exceeds {drift_tol:g} at step {s + 1}")
    if diagnostics is not None:
        diagnostics["norm_drift"] = drift_max
        diagnostics["edge_max"] = edge_max
    return Trajectory(dt * np.arange(steps + 1), xs.astype(complex))
