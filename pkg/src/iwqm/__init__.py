"""Algebraic quantization of a particle on an inverted potential well.

Imaginary-frequency ladder operators, dual biorthogonal Fock families
with purely imaginary Hamiltonian eigenvalues, explicit non-localized
eigenfunctions normalized under an oscillatory integration measure,
minimum-uncertainty coherent states, and the quantum-classical
correspondence of the runaway orbit; every claim backed by a
verification suite with independent numerical oracles.
"""

from .algebra import (
    BRA,
    KET,
    DualVector,
    SU11Generators,
    build_hamiltonian,
    build_lowering,
    build_momentum,
    build_number,
    build_position,
    build_raising,
    build_su11,
    commutator,
    dual_pairing,
    fock_state,
    generator_action,
)
from .coherent import (
    CoherentState,
    TruncationError,
    TruncationWarning,
    Uncertainty,
    build_coherent,
    eigen_residual,
    expectation,
    expectation_closed_form,
    mutual_pairing,
    tail_bound,
    uncertainty_product,
)
from .dynamics import (
    GridLeakError,
    GridState,
    NormDriftError,
    StepSizeError,
    Trajectory,
    classical_orbit,
    density_invariant_residual,
    gaussian_packet,
    grid_split_step,
    integrate_alpha,
    mixed_density,
    propagate_coeffs,
    propagate_fock,
    schrodinger_residual,
)
from .eigenfunctions import (
    Eigenfunction,
    apply_lowering,
    apply_raising,
    eigenfunction,
    evaluate,
    generating_function,
    raise_once,
)
from .expressions import (
    ExpressionParseError,
    OperatorExpression,
    adjoint,
    equation_residual,
    hamiltonian_expression,
    number_expression,
    parse_equation,
    parse_expression,
    su11_expressions,
    to_matrix,
)
from .quadrature import (
    ContourQuadrature,
    PrecisionError,
    adaptive_simpson,
    density_interval_integral,
    fresnel_gaussian,
    gram_matrix,
    integrate,
    integrate_by_moments,
    moment,
    pairing_integral,
    pairing_integral_by_moments,
)
from .verify import CheckResult, RunConfig, SuiteReport, conventions, run_all

__version__ = "0.1.0"
