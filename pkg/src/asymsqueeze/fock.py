"""Brute-force verification layer in a truncated two-mode Fock space.

Everything here is deliberately independent of the closed forms in
``state``/``gaussian``: the state is built by exponentiating the truncated
generator, and covariance, Wigner, characteristic function and logarithmic
negativity are recomputed from raw operator algebra.  Agreement between the
two routes is what certifies the closed forms.

Memory note: one evaluation allocates dense (cutoff+1)^2-dimensional joint
operators (about 45 MB at the default cutoff 40).  Evaluations are
self-contained and reentrant; parallelize across parameter points rather than
inside a single evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import CutoffTooSmallError, ValidationError
from .gaussian import CovarianceMatrix

if TYPE_CHECKING:
    from .gaussian import PhasePoint
    from .state import SqueezeParams

_DEFICIT_LIMIT = 1e-6
_ORACLE_DEFICIT = 1e-8


def destroy(dim: int) -> np.ndarray:
    """Annihilation operator truncated to ``dim`` levels."""
    a = np.zeros((dim, dim))
    for n in range(dim - 1):
        a[n, n + 1] = math.sqrt(n + 1)
    return a


def _quadratures(dim):
    a = destroy(dim)
    q = (a + a.T) / math.sqrt(2.0)
    p = -1j * (a - a.T) / math.sqrt(2.0)
    return q, p


def _displacement_matrix(alpha, dim):
    """exp(alpha a' - alpha* a) truncated: exactly unitary on the retained
    subspace because the truncated generator is anti-Hermitian."""
    a = destroy(dim)
    herm = 1j * (alpha * a.T - np.conj(alpha) * a)
    w, u = np.linalg.eigh(herm)
    return u @ (np.exp(-1j * w)[:, None] * u.conj().T)


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """Dense operator on the joint (cutoff+1)^2 tensor-product Fock basis."""

    matrix: np.ndarray
    label: str

    @classmethod
    def quadrature(cls, which: str, cutoff: int):
        """Q1, P1, Q2 or P2 as a joint-space matrix."""
        d = cutoff + 1
        q, p = _quadratures(d)
        eye = np.eye(d)
        table = {
            "Q1": np.kron(q, eye),
            "P1": np.kron(p, eye),
            "Q2": np.kron(eye, q),
            "P2": np.kron(eye, p),
        }
        if which not in table:
            raise ValidationError(f"unknown quadrature label {which!r}")
        return cls(matrix=table[which], label=which)

    @classmethod
    def generator(cls, params: SqueezeParams, cutoff: int):
        """lam1 Q1 P2 + lam2 Q2 P1 on the joint space (Hermitian)."""
        d = cutoff + 1
        q, p = _quadratures(d)
        mat = params.lam1 * np.kron(q, p) + params.lam2 * np.kron(p, q)
        return cls(matrix=mat, label="generator")

    @classmethod
    def displacement(cls, alpha, beta, cutoff: int):
        d = cutoff + 1
        mat = np.kron(_displacement_matrix(alpha, d), _displacement_matrix(beta, d))
        return cls(matrix=mat, label="displacement")

    @classmethod
    def parity(cls, cutoff: int):
        """(-1)^(n_a + n_b), diagonal with entries +-1."""
        d = cutoff + 1
        signs = (-1.0) ** (np.add.outer(np.arange(d), np.arange(d))).ravel()
        return cls(matrix=np.diag(signs), label="parity")


@dataclass(frozen=True, eq=False)
class FockState2:
    """Truncated two-mode state: amplitude tensor c[m, n], 0 <= m, n <= cutoff.

    ``norm_deficit`` is 1 - sum |c|^2, the mass lost to truncation; amplitudes
    are never renormalized to hide it.
    """

    cutoff: int
    amplitudes: np.ndarray
    norm_deficit: float

    @classmethod
    def from_amplitudes(cls, table, check_deficit=None):
        table = np.asarray(table, dtype=complex)
        cutoff = table.shape[0] - 1
        deficit = float(1.0 - np.sum(np.abs(table) ** 2))
        state = cls(cutoff=cutoff, amplitudes=table, norm_deficit=deficit)
        if check_deficit is not None and deficit > check_deficit:
            raise CutoffTooSmallError(
                f"cutoff {cutoff} leaves too much of the state outside the basis", deficit
            )
        return state

    def edge_mass(self, shells: int = 2) -> float:
        """Probability mass in the outermost ``shells`` rows/columns.

        The unitary exponential construction keeps the norm at exactly 1, so
        the deficit alone cannot flag truncation damage; mass piled up at the
        basis edge can.
        """
        c = np.abs(self.amplitudes) ** 2
        k = self.cutoff + 1 - shells
        return float(np.sum(c[k:, :]) + np.sum(c[:k, k:]))

    def overlap(self, other: FockState2) -> float:
        """|<self|other>| of two states on the same cutoff."""
        if self.cutoff != other.cutoff:
            raise ValidationError("overlap requires matching cutoffs")
        return float(abs(np.sum(np.conj(self.amplitudes) * other.amplitudes)))


def build_state_exponential(params: SqueezeParams, cutoff: int) -> FockState2:
    """Apply exp(-i G) to |00> with G the truncated generator.

    G is Hermitian, so the exponential is computed by dense
    eigen-decomposition and is exactly unitary on the retained subspace.
    Because the norm is then exactly 1, truncation failure is detected
    through the edge-shell mass instead of the norm deficit.
    """
    if cutoff < 10:
        raise ValidationError(f"exponential construction needs cutoff >= 10, got {cutoff}")
    d = cutoff + 1
    gen = TruncatedOperator.generator(params, cutoff).matrix
    w, u = np.linalg.eigh(gen)
    e0 = np.zeros(d * d)
    e0[0] = 1.0
    psi = u @ (np.exp(-1j * w) * (u.conj().T @ e0))
    state = FockState2.from_amplitudes(psi.reshape(d, d))
    damage = max(state.norm_deficit, state.edge_mass())
    if damage > _DEFICIT_LIMIT:
        raise CutoffTooSmallError(
            f"cutoff {cutoff} too small for parameters ({params.lam}, {params.gamma})", damage
        )
    return state


def _require_converged(state):
    if state.norm_deficit > _ORACLE_DEFICIT:
        raise CutoffTooSmallError(
            "oracle requires a state with norm deficit below 1e-8", state.norm_deficit
        )


def covariance_numeric(state: FockState2) -> CovarianceMatrix:
    """Symmetrized second moments of the truncated quadrature operators."""
    _require_converged(state)
    d = state.cutoff + 1
    q, p = _quadratures(d)
    c = state.amplitudes
    # (A x B)|psi> in amplitude-matrix form is A C B^T; quadratures act on one
    # mode at a time.
    vecs = [q @ c, p @ c, c @ q.T, c @ p.T]  # Q1, P1, Q2, P2 applied to psi

    def pair(i, j):
        return float(np.real(np.sum(np.conj(vecs[i]) * vecs[j])))

    mom = np.empty((4, 4))
    for i in range(4):
        for j in range(i, 4):
            sym = 0.5 * (pair(i, j) + pair(j, i))
            mom[i, j] = sym
            mom[j, i] = sym
    return CovarianceMatrix(mom)


def _check_displacement(state, point):
    bound = state.cutoff / 4.0
    if abs(point.alpha) > bound or abs(point.beta) > bound:
        raise ValidationError(
            f"displacement magnitude exceeds cutoff/4 = {bound}; enlarge the basis"
        )


def wigner_numeric(state: FockState2, point: PhasePoint) -> float:
    """Displaced-parity expectation / pi^2 with truncated displacements."""
    _check_displacement(state, point)
    d = state.cutoff + 1
    d1 = _displacement_matrix(point.alpha, d)
    d2 = _displacement_matrix(point.beta, d)
    # |phi> = D1^dag D2^dag |psi>
    phi = d1.conj().T @ state.amplitudes @ d2.conj()
    signs = (-1.0) ** np.add.outer(np.arange(d), np.arange(d))
    return float(np.sum(signs * np.abs(phi) ** 2)) / math.pi ** 2


def cf_numeric(state: FockState2, point: PhasePoint) -> complex:
    """<psi| D1(alpha) D2(beta) |psi> with truncated displacements."""
    _check_displacement(state, point)
    d = state.cutoff + 1
    d1 = _displacement_matrix(point.alpha, d)
    d2 = _displacement_matrix(point.beta, d)
    return complex(np.sum(np.conj(state.amplitudes) * (d1 @ state.amplitudes @ d2.T)))


def log_negativity_numeric(state: FockState2) -> float:
    """ln of the trace norm of the partial transpose of |psi><psi|.

    The transpose acts on mode 2 by swapping its bra/ket indices; the trace
    norm is the sum of absolute eigenvalues of the resulting Hermitian matrix.
    """
    _require_converged(state)
    d = state.cutoff + 1
    c = state.amplitudes
    rho = np.einsum("mn,pq->mnpq", c, np.conj(c))
    rho_pt = rho.transpose(0, 3, 2, 1).reshape(d * d, d * d)
    if np.max(np.abs(rho_pt.imag)) < 1e-13:
        rho_pt = rho_pt.real
    eigs = np.linalg.eigvalsh(rho_pt)
    return float(np.log(np.sum(np.abs(eigs))))
