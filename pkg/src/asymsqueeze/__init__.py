"""Asymmetric two-mode squeezed vacuum toolkit.

Covariance matrix, Wigner and characteristic functions, logarithmic
negativity, CHSH nonlocality and teleportation fidelity of the two-parameter
squeezed vacuum, each closed form cross-checked by a truncated-Fock-space
oracle.  All public functions are pure and thread-safe.
"""

__version__ = "0.1.0"

from .bell import (
    TSIRELSON_BOUND,
    BellSetting,
    BellValue,
    bell_from_wigner,
    bell_function,
    maximize_bell,
    parity_expectation,
)
from .errors import (
    CutoffTooSmallError,
    InvalidCovarianceError,
    PurityError,
    QuadratureDomainError,
    ValidationError,
    VerificationError,
)
from .fock import (
    FockState2,
    TruncatedOperator,
    build_state_exponential,
    cf_numeric,
    covariance_numeric,
    log_negativity_numeric,
    wigner_numeric,
)
from .gaussian import (
    SYMPLECTIC_FORM,
    CovarianceMatrix,
    PhasePoint,
    SymplecticSpectrum,
    cf_of_covariance,
    is_separable,
    log_negativity,
    ppt_symplectic_eigenvalues,
    seralian,
    wigner_of_covariance,
)
from .state import (
    COMPLEX_BASIS,
    GAMMA_MAX,
    LAMBDA_MAX,
    Coefficients,
    QuadTransform,
    SqueezeParams,
    cf_closed,
    coefficients,
    complex_form_matrix,
    covariance,
    enhanced_squeezing,
    fock_amplitudes,
    heisenberg_transform,
    variances,
    wigner_closed,
)
from .teleport import (
    Coherent,
    Fidelity,
    InputState,
    SqueezedVacuum,
    cf_input,
    fidelity_coherent_closed,
    fidelity_difference,
    fidelity_quadrature,
    fidelity_squeezed_closed,
    output_cf,
)
