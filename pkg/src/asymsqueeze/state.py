"""The asymmetric two-mode squeezed vacuum and its closed forms.

The state is produced by acting on the two-mode vacuum with

    V = exp[-i (lam * e^{gamma} * Q1 P2  +  lam * e^{-gamma} * Q2 P1)],

a two-parameter generalization of the usual two-mode squeezer (recovered at
gamma = 0).  For gamma != 0 the generator mixes single-mode squeezing of each
mode into the two-mode squeezing, which is what makes the entanglement,
nonlocality and teleportation behaviour richer than the symmetric case.

All closed forms in this module are driven by three exponent coefficients

    m1 = cosh^2(lam) + e^{2 gamma}  sinh^2(lam)
    m2 = cosh^2(lam) + e^{-2 gamma} sinh^2(lam)
    m3 = cosh(gamma) sinh(2 lam)

which satisfy the purity identity m1 m2 - m3^2 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import _kernels
from .errors import ValidationError
from .fock import FockState2
from .gaussian import CovarianceMatrix

if TYPE_CHECKING:
    from .gaussian import PhasePoint

#: Numerical-sanity envelope.  The exponent coefficients grow like
#: e^{2 lam + 2|gamma|}; beyond this box double precision degrades and the
#: closed forms stop being trustworthy, so inputs are rejected outright.
LAMBDA_MAX = 5.0
GAMMA_MAX = 5.0

#: Change of basis from (q1, p1, q2, p2) to (alpha*, alpha, beta*, beta):
#: v = conj(N) x, equivalently x^T N^{-1} = v^T.
COMPLEX_BASIS = np.array(
    [
        [1.0, 1.0j, 0.0, 0.0],
        [1.0, -1.0j, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0j],
        [0.0, 0.0, 1.0, -1.0j],
    ]
) / math.sqrt(2.0)


@dataclass(frozen=True)
class SqueezeParams:
    """Squeeze magnitude ``lam`` >= 0 and asymmetry ``gamma``.

    The generator weights lam * e^{+-gamma} are exposed as accessors rather
    than stored, so the pair (lam, gamma) stays the single source of truth.
    """

    lam: float
    gamma: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.lam) and math.isfinite(self.gamma)):
            raise ValidationError("squeeze parameters must be finite")
        if self.lam < 0.0:
            raise ValidationError(f"squeeze magnitude must be >= 0, got {self.lam}")
        if self.lam > LAMBDA_MAX or abs(self.gamma) > GAMMA_MAX:
            raise ValidationError(
                f"parameters ({self.lam}, {self.gamma}) outside the sanity envelope "
                f"lam <= {LAMBDA_MAX}, |gamma| <= {GAMMA_MAX}"
            )

    @property
    def lam1(self):
        """Weight of the Q1 P2 term in the generator."""
        return self.lam * math.exp(self.gamma)

    @property
    def lam2(self):
        """Weight of the Q2 P1 term in the generator."""
        return self.lam * math.exp(-self.gamma)


@dataclass(frozen=True)
class Coefficients:
    """Derived scalars feeding every closed form.

    m1, m2, m3 are the Wigner exponent coefficients; L sets the state norm
    through the prefactor 2/sqrt(L); A and B are the single- and two-mode
    creation coefficients of its exponential Fock form; f the teleportation
    scalar (always negative, so fidelities stay inside (0, 1])."""

    m1: float
    m2: float
    m3: float
    L: float
    A: float
    B: float
    f: float


def coefficients(params: SqueezeParams) -> Coefficients:
    """All seven derived scalars from hyperbolic functions of (lam, gamma)."""
    lam, gamma = params.lam, params.gamma
    c2 = math.cosh(lam) ** 2
    s2 = math.sinh(lam) ** 2
    sinh2l = math.sinh(2.0 * lam)
    m1 = c2 + math.exp(2.0 * gamma) * s2
    m2 = c2 + math.exp(-2.0 * gamma) * s2
    m3 = math.cosh(gamma) * sinh2l
    big_l = 4.0 * (1.0 + math.sinh(gamma) ** 2 * math.tanh(lam) ** 2) * c2
    a_coeff = s2 * math.sinh(2.0 * gamma) / big_l
    b_coeff = 2.0 * sinh2l * math.cosh(gamma) / big_l
    f = m3 - c2 - math.cosh(2.0 * gamma) * s2
    return Coefficients(m1=m1, m2=m2, m3=m3, L=big_l, A=a_coeff, B=b_coeff, f=f)


def covariance(params: SqueezeParams) -> CovarianceMatrix:
    """Covariance matrix in (q1, p1, q2, p2) ordering.

    Blocks: mode 1 diag(m2, m1)/2, mode 2 diag(m1, m2)/2, cross
    diag(m3, -m3)/2.  det sigma = 1/16 (pure state).
    """
    c = coefficients(params)
    sig = np.array(
        [
            [c.m2, 0.0, c.m3, 0.0],
            [0.0, c.m1, 0.0, -c.m3],
            [c.m3, 0.0, c.m1, 0.0],
            [0.0, -c.m3, 0.0, c.m2],
        ]
    ) / 2.0
    return CovarianceMatrix(sig)


def wigner_closed(params: SqueezeParams, point: PhasePoint) -> float:
    """Closed-form Wigner density at a phase-space point.

    W = (1/pi^2) exp[-m1 (q1^2 + p2^2) - m2 (p1^2 + q2^2)
                      + 2 m3 (q1 q2 - p1 p2)]
    Agrees with the generic Gaussian form driven by ``covariance`` to 1e-12.
    """
    c = coefficients(params)
    expo = (
        -c.m1 * (point.q1 ** 2 + point.p2 ** 2)
        - c.m2 * (point.p1 ** 2 + point.q2 ** 2)
        + 2.0 * (point.q1 * point.q2 - point.p1 * point.p2) * c.m3
    )
    return math.exp(expo) / math.pi ** 2


def complex_form_matrix(params: SqueezeParams) -> np.ndarray:
    """Hermitian exponent matrix M in the (alpha*, alpha, beta*, beta) basis.

    The Wigner function is (1/pi^2) exp[-v^T M v / 2] and the characteristic
    function exp[-v^T M v / 8]; equivalently M = N sigma^{-1} N^T under the
    COMPLEX_BASIS change (for this pure state sigma^{-1}/4 coincides with the
    rotated covariance kernel used by ``cf_of_covariance``).
    """
    c = coefficients(params)
    dm = c.m1 - c.m2
    sm = c.m1 + c.m2
    t = -2.0 * c.m3
    return np.array(
        [
            [dm, sm, t, 0.0],
            [sm, dm, 0.0, t],
            [t, 0.0, -dm, sm],
            [0.0, t, sm, -dm],
        ]
    )


def cf_closed(params: SqueezeParams, point: PhasePoint) -> float:
    """Closed-form symmetric-order characteristic function exp[-v^T M v / 8].

    Evaluated through the complex-basis matrix M, deliberately a different
    arithmetic route than ``cf_of_covariance``; the two agree to 1e-12.
    """
    v = np.array([np.conj(point.alpha), point.alpha, np.conj(point.beta), point.beta])
    quad = v @ complex_form_matrix(params) @ v
    return math.exp(-quad.real / 8.0)


def variances(params: SqueezeParams) -> tuple[float, float]:
    """Variances of x1 = (Q1 + Q2)/2 and x2 = (P1 + P2)/2.

    var x1 = [cosh(2 lam) + 2 sinh^2(lam) sinh^2(gamma) + sinh(2 lam) cosh(gamma)] / 4
    var x2 = same with the last term negated.
    Equivalently (m1 + m2 +- 2 m3)/8.
    """
    lam, gamma = params.lam, params.gamma
    base = math.cosh(2.0 * lam) + 2.0 * math.sinh(lam) ** 2 * math.sinh(gamma) ** 2
    cross = math.sinh(2.0 * lam) * math.cosh(gamma)
    return (base + cross) / 4.0, (base - cross) / 4.0


def enhanced_squeezing(params: SqueezeParams) -> bool:
    """Whether the asymmetry improves on the symmetric-state squeezing.

    True iff 0 < tanh(lam) < 1/(1 + cosh(gamma)).  When true (and gamma != 0)
    the x1 variance strictly exceeds e^{2 lam}/4 while the x2 variance drops
    strictly below e^{-2 lam}/4.  Undefined at lam = 0.
    """
    if params.lam <= 0.0:
        raise ValidationError("squeezing-enhancement condition requires lam > 0")
    t = math.tanh(params.lam)
    return 0.0 < t < 1.0 / (1.0 + math.cosh(params.gamma))


@dataclass(frozen=True, eq=False)
class QuadTransform:
    """Heisenberg-picture transform of the quadratures under the squeezer.

    ``q_matrix`` maps (Q1, Q2) and ``p_matrix`` maps (P1, P2); both have unit
    determinant and p_matrix is the transpose-inverse of q_matrix, so the
    joint 4x4 map is symplectic.
    """

    q_matrix: np.ndarray
    p_matrix: np.ndarray

    def symplectic(self) -> np.ndarray:
        """Interleaved 4x4 map in (q1, p1, q2, p2) ordering."""
        s = np.zeros((4, 4))
        s[np.ix_([0, 2], [0, 2])] = self.q_matrix
        s[np.ix_([1, 3], [1, 3])] = self.p_matrix
        return s

    def propagate_vacuum(self) -> CovarianceMatrix:
        """Covariance of the transformed vacuum, S (I/2) S^T."""
        s = self.symplectic()
        return CovarianceMatrix(0.5 * s @ s.T)


def heisenberg_transform(params: SqueezeParams) -> QuadTransform:
    """Quadrature transform matrices of the squeezer.

    Q1 -> Q1 cosh(lam) + Q2 e^{-gamma} sinh(lam)     (rows of q_matrix)
    Q2 -> Q2 cosh(lam) + Q1 e^{+gamma} sinh(lam)
    P1 -> P1 cosh(lam) - P2 e^{+gamma} sinh(lam)     (rows of p_matrix)
    P2 -> P2 cosh(lam) - P1 e^{-gamma} sinh(lam)
    Propagating the vacuum through them reproduces ``covariance``.
    """
    ch = math.cosh(params.lam)
    sh = math.sinh(params.lam)
    eg = math.exp(params.gamma)
    q_mat = np.array([[ch, sh / eg], [sh * eg, ch]])
    p_mat = np.array([[ch, -sh * eg], [-sh / eg, ch]])
    return QuadTransform(q_matrix=q_mat, p_matrix=p_mat)


def fock_amplitudes(params: SqueezeParams, cutoff: int) -> FockState2:
    """Two-mode Fock amplitudes of the state up to ``cutoff`` per mode.

    Expands (2/sqrt(L)) exp[A(b'^2 - a'^2) + B a'b'] |00> as a product of
    three commuting truncated exponential series (primes denote creation
    operators).  Amplitudes inside the retained block are exact; the norm
    deficit 1 - sum |c|^2 measures the discarded tail and a deficit above
    1e-6 raises CutoffTooSmallError.
    """
    if cutoff < 2:
        raise ValidationError(f"cutoff must be >= 2, got {cutoff}")
    c = coefficients(params)
    table = _kernels.fock_series_table(c.A, c.B, 2.0 / math.sqrt(c.L), int(cutoff))
    return FockState2.from_amplitudes(table.astype(complex), check_deficit=1e-6)
