"""Entanglement witness built from symmetric two-body correlations."""

__version__ = "0.1.0"

from .exceptions import (
    DegenerateBoundError,
    DomainError,
    NotFoundError,
    NotSaturableError,
    OptimizationError,
    SizeLimitError,
    WitnessError,
)
from .states import (
    BlochConfig,
    MeasurementSettings,
    SymmetricState,
    WitnessParams,
    dicke,
    dicke_ghz_superposition,
    ghz,
    spin_squeezed,
)
from .witness import (
    CorrelationPoint,
    QuadraticForm,
    SeparableBound,
    SubspaceOperator,
    collective_spin,
    correlation_operator,
    correlation_point,
    correlation_tensor,
    quad_form,
    saturating_config,
    separable_bound,
    separable_correlations,
    white_noise_threshold,
    witness_expectation,
    witness_operator,
)
from .optimizer import (
    GridOptions,
    OptResult,
    ScanRecord,
    chi_scan,
    dicke_sweep,
    min_eigen_witness,
    minimize_eigen_witness,
    minimize_witness,
    omega_scan,
    omega_window,
    theta_window,
)
