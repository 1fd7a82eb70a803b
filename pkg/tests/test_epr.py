import numpy as np
import pytest

from magnon_epr.epr import (REGIME_LOCAL, REGIME_NONLOCAL, REGIME_THRESHOLD,
                            classify_regime, epr_ground, epr_variance_oracle,
                            heisenberg_case)
from magnon_epr.squeezed import (TwoModeState, assemble_state,
                                 excited_sequence, ground_state)

R_HALF = np.arctanh(0.5)


class TestClosedForm:
    def test_vacuum(self):
        assert epr_ground(0.0, 0.0).delta0 == 1.0
        assert epr_ground(0.0, np.pi).delta0 == 1.0

    def test_worked_example_third(self):
        # tanh r = 1/2 at phi = pi: cosh(2r) - sinh(2r) = e^{-2r} = 1/3
        assert epr_ground(R_HALF, np.pi).delta0 == pytest.approx(1.0 / 3.0,
                                                                 abs=1e-14)

    def test_quadrature_phase(self):
        # cos(pi/2) kills the squeezing term
        assert epr_ground(0.7, np.pi / 2).delta0 == pytest.approx(np.cosh(1.4),
                                                                  abs=1e-14)

    def test_antisqueezed_phase(self):
        assert epr_ground(0.4, 0.0).delta0 == pytest.approx(np.exp(0.8), abs=1e-14)

    def test_exponential_identities(self):
        for r in np.linspace(0.0, 1.8, 13):
            assert epr_ground(r, np.pi).delta0 == pytest.approx(np.exp(-2 * r),
                                                                abs=1e-12)
            assert epr_ground(r, 0.0).delta0 == pytest.approx(np.exp(2 * r),
                                                              abs=1e-12)

    def test_result_carries_inputs_and_regime(self):
        res = epr_ground(0.9, np.pi)
        assert res.r == 0.9
        assert res.phi == np.pi
        assert res.regime == REGIME_NONLOCAL
        assert res.delta0_err is None
        assert epr_ground(0.9, 0.0).regime == REGIME_LOCAL
        assert epr_ground(0.0, 0.3).regime == REGIME_THRESHOLD

    def test_phase_product_bound(self):
        # Delta(phi) * Delta(phi + pi) = cosh^2(2r) - sinh^2(2r) cos^2(phi) >= 1
        rng = np.random.default_rng(11)
        for _ in range(200):
            r = rng.uniform(0.0, 1.5)
            phi = rng.uniform(0.0, 2 * np.pi)
            prod = epr_ground(r, phi).delta0 * epr_ground(r, phi + np.pi).delta0
            assert prod >= 1.0 - 1e-12


class TestHeisenbergCase:
    def test_positive_coupling_squeezes(self):
        # Gamma > 0 pins phi = pi, so Delta drops below 1
        assert heisenberg_case(0.35, "positive") == pytest.approx(np.exp(-0.7),
                                                                  abs=1e-14)

    def test_negative_coupling_antisqueezes(self):
        assert heisenberg_case(0.35, "negative") == pytest.approx(np.exp(0.7),
                                                                  abs=1e-14)

    def test_unknown_sign_rejected(self):
        with pytest.raises(ValueError):
            heisenberg_case(0.3, "zero")


class TestRegimes:
    def test_below_one_is_nonlocal(self):
        assert classify_regime(0.2) == REGIME_NONLOCAL
        assert classify_regime(1.0 - 1e-6) == REGIME_NONLOCAL

    def test_above_one_is_local(self):
        assert classify_regime(1.5) == REGIME_LOCAL
        assert classify_regime(1.0 + 1e-6) == REGIME_LOCAL

    def test_threshold_band(self):
        assert classify_regime(1.0) == REGIME_THRESHOLD
        assert classify_regime(1.0 + 1e-10) == REGIME_THRESHOLD
        assert classify_regime(1.0 - 1e-10) == REGIME_THRESHOLD

    def test_custom_tolerance(self):
        assert classify_regime(1.01, tol=0.1) == REGIME_THRESHOLD


class TestVarianceOracle:
    def test_vacuum_product(self):
        psi = np.zeros((6, 6), complex)
        psi[0, 0] = 1.0
        assert epr_variance_oracle(TwoModeState(5, psi, 0.0)) == pytest.approx(
            1.0, abs=1e-12)

    def test_one_one_fock(self):
        psi = np.zeros((8, 8), complex)
        psi[1, 1] = 1.0
        assert epr_variance_oracle(TwoModeState(7, psi, 0.0)) == pytest.approx(
            3.0, abs=1e-12)

    @pytest.mark.parametrize("r,phi", [
        (0.3, 0.0), (0.3, np.pi), (0.8, 1.2), (1.1, np.pi), (0.5, 2.7),
        (R_HALF, np.pi),
    ])
    def test_matches_closed_form(self, r, phi):
        state = ground_state(r, phi, tail_tol=1e-14)
        assert epr_variance_oracle(state) == pytest.approx(
            epr_ground(r, phi).delta0, abs=1e-8)

    def test_excited_state_penalty(self):
        # adding a pair excitation on top of the squeezed ground raises Delta
        r = 0.6
        seq = excited_sequence(r, np.pi, 1, 1, 1e-13)
        state = assemble_state(seq, len(seq.values) - 1 + seq.offset)
        assert epr_variance_oracle(state) > epr_ground(r, np.pi).delta0

    def test_leaky_state_rejected(self):
        state = ground_state(1.4, 0.0, tail_tol=1e-12)
        clipped = TwoModeState(4, state.coeffs[:5, :5].copy(), 0.5)
        with pytest.raises(ValueError, match="increase n_trunc"):
            epr_variance_oracle(clipped)


def test_grid_oracle_sweep():
    rs = np.linspace(0.1, 1.2, 5)
    phis = np.linspace(0.0, 2 * np.pi, 7)
    for r in rs:
        for phi in phis:
            state = ground_state(r, phi, tail_tol=1e-14)
            assert epr_variance_oracle(state) == pytest.approx(
                epr_ground(r, phi).delta0, abs=1e-8)
