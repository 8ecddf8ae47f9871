import math

import numpy as np
import pytest

from asymsqueeze import (
    CutoffTooSmallError,
    FockState2,
    PhasePoint,
    SqueezeParams,
    TruncatedOperator,
    ValidationError,
    build_state_exponential,
    cf_closed,
    cf_numeric,
    coefficients,
    covariance,
    covariance_numeric,
    fock_amplitudes,
    log_negativity,
    log_negativity_numeric,
    wigner_closed,
    wigner_numeric,
)


class TestOperators:
    def test_quadratures_hermitian(self):
        for label in ("Q1", "P1", "Q2", "P2"):
            op = TruncatedOperator.quadrature(label, 6)
            assert op.label == label
            assert np.max(np.abs(op.matrix - op.matrix.conj().T)) < 1e-12

    def test_generator_hermitian(self):
        op = TruncatedOperator.generator(SqueezeParams(0.5, 1.0), 6)
        assert np.max(np.abs(op.matrix - op.matrix.conj().T)) < 1e-12

    def test_canonical_commutator_on_retained_block(self):
        # [Q, P] = i away from the truncation edge
        q = TruncatedOperator.quadrature("Q1", 8).matrix
        p = TruncatedOperator.quadrature("P1", 8).matrix
        comm = q @ p - p @ q
        block = comm[: 7 * 9, : 7 * 9]
        assert np.allclose(block, 1j * np.eye(7 * 9), atol=1e-12)

    def test_parity_diagonal(self):
        op = TruncatedOperator.parity(4)
        diag = np.diag(op.matrix)
        assert np.allclose(op.matrix, np.diag(diag))
        assert set(np.round(diag.real).astype(int)) == {-1, 1}

    def test_displacement_unitary(self):
        op = TruncatedOperator.displacement(0.4 - 0.2j, 0.1 + 0.3j, 10)
        eye = np.eye((11) ** 2)
        assert np.max(np.abs(op.matrix @ op.matrix.conj().T - eye)) < 1e-12

    def test_unknown_label(self):
        with pytest.raises(ValidationError):
            TruncatedOperator.quadrature("X9", 4)


class TestStateConstruction:
    def test_vacuum_untouched(self):
        state = build_state_exponential(SqueezeParams(0.0, 0.0), 10)
        expected = np.zeros((11, 11))
        expected[0, 0] = 1.0
        assert np.allclose(state.amplitudes, expected, atol=1e-12)

    def test_rejects_small_cutoff(self):
        with pytest.raises(ValidationError):
            build_state_exponential(SqueezeParams(0.2, 0.0), 8)

    def test_cutoff_too_small_flagged(self):
        with pytest.raises(CutoffTooSmallError):
            build_state_exponential(SqueezeParams(0.8, 0.0), 12)

    def test_symmetric_state_geometric_with_positive_tail(self):
        # gamma = 0 reduces to the standard two-mode squeezed vacuum with a
        # POSITIVE cross-creation coefficient: this generator is the inverse
        # of the squeezer that carries the -tanh convention.
        lam = 0.5
        state = build_state_exponential(SqueezeParams(lam, 0.0), 24)
        c = state.amplitudes
        sech, th = 1.0 / math.cosh(lam), math.tanh(lam)
        reference = np.zeros((25, 25), dtype=complex)
        for n in range(25):
            reference[n, n] = sech * th ** n
        overlap = abs(np.sum(np.conj(reference) * c))
        assert overlap >= 1.0 - 1e-8
        assert (c[1, 1] / c[0, 0]).real == pytest.approx(th, abs=1e-10)

    def test_two_construction_routes_agree(self):
        for lam, gamma in [(0.3, 0.7), (0.5, 1.0), (0.5, -1.0)]:
            params = SqueezeParams(lam, gamma)
            exp_state = build_state_exponential(params, 30)
            series = fock_amplitudes(params, 30)
            assert exp_state.overlap(series) >= 1.0 - 1e-8

    def test_norm_accounting(self):
        state = build_state_exponential(SqueezeParams(0.4, 0.6), 20)
        assert np.sum(np.abs(state.amplitudes) ** 2) + state.norm_deficit == pytest.approx(
            1.0, abs=1e-12
        )
        assert state.norm_deficit >= -1e-12

    def test_overlap_requires_matching_cutoffs(self):
        a = fock_amplitudes(SqueezeParams(0.2, 0.0), 10)
        b = fock_amplitudes(SqueezeParams(0.2, 0.0), 12)
        with pytest.raises(ValidationError):
            a.overlap(b)


class TestCovarianceNumeric:
    def test_vacuum(self):
        state = build_state_exponential(SqueezeParams(0.0, 0.0), 10)
        cov = covariance_numeric(state)
        assert np.allclose(cov.entries, 0.5 * np.eye(4), atol=1e-12)

    def test_matches_closed_form(self):
        params = SqueezeParams(0.3, 0.7)
        state = build_state_exponential(params, 30)
        cov = covariance_numeric(state)
        assert np.max(np.abs(cov.entries - covariance(params).entries)) < 1e-8

    def test_first_moments_vanish(self):
        state = build_state_exponential(SqueezeParams(0.4, 0.9), 24)
        q = TruncatedOperator.quadrature("Q1", 24).matrix
        p = TruncatedOperator.quadrature("P2", 24).matrix
        psi = state.amplitudes.ravel()
        for op in (q, p):
            assert abs(np.vdot(psi, op @ psi)) < 1e-12

    def test_symmetric_standard_form(self):
        lam = 0.5
        state = build_state_exponential(SqueezeParams(lam, 0.0), 30)
        cov = covariance_numeric(state)
        ch, sh = math.cosh(2 * lam), math.sinh(2 * lam)
        expected = 0.5 * np.array(
            [[ch, 0, sh, 0], [0, ch, 0, -sh], [sh, 0, ch, 0], [0, -sh, 0, ch]]
        )
        assert np.max(np.abs(cov.entries - expected)) < 1e-8

    def test_rejects_unconverged_state(self):
        table = np.zeros((13, 13), dtype=complex)
        table[0, 0] = 0.99  # deliberately lossy
        state = FockState2.from_amplitudes(table)
        with pytest.raises(CutoffTooSmallError):
            covariance_numeric(state)


@pytest.fixture(scope="module")
def oracle_state():
    params = SqueezeParams(0.4, 0.8)
    return params, build_state_exponential(params, 30)


class TestPhaseSpaceOracles:
    def test_wigner_at_origin(self, oracle_state):
        params, state = oracle_state
        assert wigner_numeric(state, PhasePoint.origin()) == pytest.approx(
            1.0 / math.pi ** 2, abs=1e-10
        )

    def test_wigner_matches_closed(self, oracle_state, rng):
        params, state = oracle_state
        for _ in range(10):
            pt = PhasePoint.from_complex(
                complex(*rng.uniform(-0.5, 0.5, 2)), complex(*rng.uniform(-0.5, 0.5, 2))
            )
            assert wigner_numeric(state, pt) == pytest.approx(wigner_closed(params, pt), abs=1e-6)

    def test_wigner_symmetric_reduction(self, rng):
        lam = 0.5
        params = SqueezeParams(lam, 0.0)
        state = build_state_exponential(params, 30)
        for _ in range(5):
            pt = PhasePoint(*rng.uniform(-0.6, 0.6, size=4))
            expected = (1.0 / math.pi ** 2) * math.exp(
                -(pt.q1 ** 2 + pt.p1 ** 2 + pt.q2 ** 2 + pt.p2 ** 2) * math.cosh(2 * lam)
                + 2.0 * (pt.q1 * pt.q2 - pt.p1 * pt.p2) * math.sinh(2 * lam)
            )
            assert wigner_numeric(state, pt) == pytest.approx(expected, abs=1e-6)

    def test_cf_normalization(self, oracle_state):
        _, state = oracle_state
        assert cf_numeric(state, PhasePoint.origin()) == pytest.approx(1.0, abs=1e-10)

    def test_cf_matches_closed(self, oracle_state, rng):
        params, state = oracle_state
        for _ in range(10):
            pt = PhasePoint.from_complex(
                complex(*rng.uniform(-0.5, 0.5, 2)), complex(*rng.uniform(-0.5, 0.5, 2))
            )
            val = cf_numeric(state, pt)
            assert abs(val.imag) < 1e-8
            assert val.real == pytest.approx(cf_closed(params, pt), abs=1e-6)

    def test_displacement_guard(self, oracle_state):
        _, state = oracle_state
        with pytest.raises(ValidationError):
            wigner_numeric(state, PhasePoint.from_complex(9.0, 0.0))
        with pytest.raises(ValidationError):
            cf_numeric(state, PhasePoint.from_complex(0.0, 9.0))


class TestLogNegativityNumeric:
    def test_vacuum(self):
        state = build_state_exponential(SqueezeParams(0.0, 0.0), 10)
        assert log_negativity_numeric(state) == pytest.approx(0.0, abs=1e-10)

    def test_symmetric_twice_lambda(self):
        state = build_state_exponential(SqueezeParams(0.5, 0.0), 40)
        assert log_negativity_numeric(state) == pytest.approx(1.0, abs=1e-4)

    def test_asymmetric_matches_closed(self):
        params = SqueezeParams(0.5, 1.0)
        state = build_state_exponential(params, 40)
        value = log_negativity_numeric(state)
        assert value == pytest.approx(log_negativity(covariance(params)), abs=1e-3)
        assert value == pytest.approx(1.3570, abs=1e-3)

    def test_schmidt_identity_for_pure_states(self):
        # trace norm of the partial transpose of a pure state equals the
        # squared sum of its Schmidt coefficients
        params = SqueezeParams(0.4, 0.6)
        state = build_state_exponential(params, 16)
        schmidt = np.linalg.svd(state.amplitudes, compute_uv=False)
        expected = 2.0 * math.log(np.sum(schmidt))
        assert log_negativity_numeric(state) == pytest.approx(expected, abs=1e-10)


class TestTruncationConvergence:
    def test_oracle_quantities_stable_under_cutoff_growth(self, rng):
        params = SqueezeParams(0.3, 0.5)
        pt = PhasePoint.from_complex(0.3 - 0.1j, 0.2 + 0.25j)
        small = build_state_exponential(params, 30)
        large = build_state_exponential(params, 40)
        assert np.max(
            np.abs(covariance_numeric(small).entries - covariance_numeric(large).entries)
        ) < 1e-8
        assert abs(wigner_numeric(small, pt) - wigner_numeric(large, pt)) < 1e-8
        assert abs(cf_numeric(small, pt) - cf_numeric(large, pt)) < 1e-8
        assert abs(log_negativity_numeric(small) - log_negativity_numeric(large)) < 1e-8
