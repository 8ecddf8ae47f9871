"""Generic two-mode Gaussian-state machinery.

Everything here works on an arbitrary physical 4x4 covariance matrix in the
quadrature ordering (q1, p1, q2, p2) with the convention Q = (a + a')/sqrt(2),
P = (a - a')/(i sqrt(2)), so the vacuum covariance is I/2 and all uncertainty
bounds reference the 1/2 scale.

Tolerance policy: hard structural invariants at 1e-12, derived spectral
identities at 1e-9, oracle comparisons at 1e-6 unless stated otherwise.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCovarianceError, PurityError

#: Symplectic form in (q1, p1, q2, p2) ordering: [[0, 1], [-1, 0]] per mode.
SYMPLECTIC_FORM = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

_SYMMETRY_TOL = 1e-12
_UNCERTAINTY_TOL = 1e-9
_PURITY_DET = 1.0 / 16.0


def _det2(block):
    return block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0]


def _spectrum_roots(delta, det_sigma):
    """Solve nu^4 - delta nu^2 + det = 0 for the two symplectic eigenvalues.

    The small root is recovered from the product of roots (det sigma) rather
    than the difference delta - sqrt(disc), which cancels catastrophically
    for strongly squeezed states.
    """
    disc = delta * delta - 4.0 * det_sigma
    if disc < -1e-9:
        raise InvalidCovarianceError(f"negative symplectic discriminant {disc:.3e}")
    if det_sigma < -1e-12 or delta <= 0.0:
        raise InvalidCovarianceError(
            f"invariants outside the physical range: delta {delta:.3e}, det {det_sigma:.3e}"
        )
    hi = 0.5 * (delta + math.sqrt(max(disc, 0.0)))
    lo = max(det_sigma, 0.0) / hi
    return math.sqrt(hi), math.sqrt(lo)


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Real symmetric 4x4 covariance matrix of a physical two-mode state.

    Construction validates symmetry (1e-12), positive definiteness, and the
    uncertainty relation: both Williamson eigenvalues >= 1/2 - 1e-9.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.shape != (4, 4):
            raise InvalidCovarianceError(f"expected 4x4 matrix, got {arr.shape}")
        if np.max(np.abs(arr - arr.T)) > _SYMMETRY_TOL:
            raise InvalidCovarianceError("matrix is not symmetric to 1e-12")
        arr = 0.5 * (arr + arr.T)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        try:
            np.linalg.cholesky(arr)
        except np.linalg.LinAlgError:
            raise InvalidCovarianceError("matrix is not positive definite") from None
        # Uncertainty relation: every symplectic eigenvalue of sigma itself
        # (no partial transpose) >= 1/2, checked through the equivalent
        # Hermitian condition sigma + (i/2) Omega >= 0.  The direct invariant
        # formula amplifies roundoff by a square root exactly at the pure-state
        # degeneracy nu = 1/2, while Hermitian eigenvalues are well conditioned.
        herm = arr + 0.5j * SYMPLECTIC_FORM
        floor = -_UNCERTAINTY_TOL * max(1.0, float(np.max(np.abs(arr))))
        if float(np.min(np.linalg.eigvalsh(herm))) < floor:
            raise InvalidCovarianceError(
                "uncertainty relation violated: sigma + (i/2) Omega is not positive semidefinite"
            )

    @property
    def mode1(self):
        return self.entries[:2, :2]

    @property
    def mode2(self):
        return self.entries[2:, 2:]

    @property
    def cross(self):
        return self.entries[:2, 2:]

    @property
    def determinant(self):
        return float(np.linalg.det(self.entries))

    @classmethod
    def vacuum(cls):
        return cls(0.5 * np.eye(4))


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues of a partially transposed covariance matrix."""

    n_plus: float
    n_minus: float
    seralian: float

    def __post_init__(self):
        if not (self.n_plus >= self.n_minus > 0.0):
            raise InvalidCovarianceError(
                f"symplectic eigenvalues out of order: {self.n_plus}, {self.n_minus}"
            )

    @property
    def n_min(self):
        """Smallest eigenvalue; the separability criterion compares it to 1/2."""
        return self.n_minus


@dataclass(frozen=True)
class PhasePoint:
    """Point in two-mode phase space, interchangeably real or complex.

    alpha = (q1 + i p1)/sqrt(2) and beta = (q2 + i p2)/sqrt(2); the two
    representations round-trip losslessly.
    """

    q1: float
    p1: float
    q2: float
    p2: float

    @classmethod
    def from_complex(cls, alpha, beta):
        alpha = complex(alpha)
        beta = complex(beta)
        s = math.sqrt(2.0)
        return cls(s * alpha.real, s * alpha.imag, s * beta.real, s * beta.imag)

    @property
    def alpha(self):
        return complex(self.q1, self.p1) / math.sqrt(2.0)

    @property
    def beta(self):
        return complex(self.q2, self.p2) / math.sqrt(2.0)

    @property
    def vector(self):
        return np.array([self.q1, self.p1, self.q2, self.p2])

    @classmethod
    def origin(cls):
        return cls(0.0, 0.0, 0.0, 0.0)


def seralian(cov):
    """Symplectic invariant det u + det v - 2 det w of the covariance blocks.

    The minus sign on the cross-block determinant is the partial transpose:
    this is the invariant entering the PPT symplectic spectrum.
    """
    return float(_det2(cov.mode1) + _det2(cov.mode2) - 2.0 * _det2(cov.cross))


def ppt_symplectic_eigenvalues(cov):
    """Symplectic eigenvalues of the partial transpose of ``cov``.

    Computed from the invariant form
        n_pm^2 = [Delta_pt +- sqrt(Delta_pt^2 - 4 det sigma)] / 2,
    where Delta_pt = det u + det v - 2 det w.  Raises
    InvalidCovarianceError if the discriminant is negative beyond -1e-9;
    tiny negatives are clamped to zero.
    """
    delta = seralian(cov)
    n_plus, n_minus = _spectrum_roots(delta, cov.determinant)
    return SymplecticSpectrum(n_plus=n_plus, n_minus=n_minus, seralian=delta)


def log_negativity(cov):
    """Entanglement monotone max[0, -ln(2 n_min)] in natural log units."""
    spectrum = ppt_symplectic_eigenvalues(cov)
    return max(0.0, -math.log(2.0 * spectrum.n_min))


def is_separable(cov):
    """PPT criterion: separable iff the smallest PPT eigenvalue is >= 1/2."""
    return ppt_symplectic_eigenvalues(cov).n_min >= 0.5 - 1e-12


def wigner_of_covariance(cov, point):
    """Wigner density (1/pi^2) exp[-x^T sigma^{-1} x / 2] of a pure state.

    The fixed 1/pi^2 prefactor is exact only when det sigma = 1/16 (pure
    two-mode Gaussian in this convention), so purity is asserted rather than
    silently generalized to mixed states.
    """
    if abs(cov.determinant - _PURITY_DET) > 1e-6:
        raise PurityError(
            f"det sigma = {cov.determinant:.9e} != 1/16; state is not pure, "
            "fixed-prefactor Wigner form does not apply"
        )
    x = point.vector
    expo = -0.5 * float(x @ np.linalg.solve(cov.entries, x))
    return math.exp(expo) / math.pi ** 2


def cf_of_covariance(cov, point):
    """Symmetric-order characteristic function of a zero-mean Gaussian state.

    chi(x) = exp[-x^T (Omega^T sigma Omega) x / 2]: the quadratic kernel is
    the symplectically rotated covariance, because the displacement-operator
    exponent i(p Q - q P) couples to the quadratures through the symplectic
    form.  For a pure state the kernel equals sigma^{-1}/4.  Real-valued and
    <= 1, with equality only at the origin.
    """
    x = point.vector
    kernel = SYMPLECTIC_FORM.T @ cov.entries @ SYMPLECTIC_FORM
    return math.exp(-0.5 * float(x @ kernel @ x))
