import numpy as np
import pytest

from magnon_epr.squeezed import (MODE_A, MODE_B, MODE_NONE, assemble_state,
                                 choose_truncation, create, destroy,
                                 entropy_of_state, excited_coefficients,
                                 excited_sequence, excited_state,
                                 ground_coefficients, ground_entropy,
                                 ground_state, oracle_excited_state)

R_HALF = np.arctanh(0.5)  # tanh r = 1/2

### Entropies computed once with the operator oracle and frozen here.
ORACLE_ENTROPIES = [
    # (x, y, r, phi, E_nats)
    (1, 1, 0.8, 1.1, 2.0967507375421754),
    (2, 1, 0.6, 2.0, 1.8482070820473357),
    (3, 3, 0.5, np.pi, 2.2068270949624753),
    (2, 0, 0.7, 0.3, 1.7384381313865924),
]


class TestLadderMatrices:
    def test_commutator(self):
        dim = 7
        a, adag = destroy(dim), create(dim)
        comm = a @ adag - adag @ a
        # [a, a_dag] = 1 except at the truncation edge
        assert np.allclose(comm[:-1, :-1], np.eye(dim - 1))

    def test_number_operator(self):
        dim = 5
        n_op = create(dim) @ destroy(dim)
        assert np.allclose(np.diag(n_op), np.arange(dim))


class TestChooseTruncation:
    def test_worked_example(self):
        assert choose_truncation(R_HALF, 1e-12) == 19

    def test_loose_tolerance(self):
        assert choose_truncation(R_HALF, 0.5) == 0

    def test_zero_squeezing(self):
        assert choose_truncation(0.0, 1e-12) == 0

    def test_exact_tail_bracketing(self):
        for r in (0.2, 0.9, 1.5):
            n = choose_truncation(r, 1e-10)
            t = np.tanh(r)
            assert t ** (2 * (n + 1)) <= 1e-10
            if n > 0:
                assert t ** (2 * n) > 1e-10

    def test_cap(self):
        with pytest.raises(ValueError, match="truncation cap exceeded"):
            choose_truncation(3.5, 1e-12, hard_cap=50)


class TestGroundCoefficients:
    def test_geometric_moduli(self):
        seq = ground_coefficients(R_HALF, 0.0, 6)
        expected = 0.5 ** np.arange(7) / np.cosh(R_HALF)
        assert np.allclose(seq.values, expected, atol=1e-15)
        assert seq.offset == 0
        assert seq.which_mode_excess == MODE_NONE

    def test_phase_winding(self):
        phi = 2.2
        seq = ground_coefficients(0.9, phi, 8)
        angles = np.angle(seq.values[1:])
        assert np.allclose(np.exp(1j * angles), np.exp(1j * phi * np.arange(1, 9)),
                           atol=1e-12)

    def test_normalization(self):
        for r in (0.0, 0.4, 1.2, 2.0):
            n = choose_truncation(r, 1e-13)
            seq = ground_coefficients(r, 0.7, n)
            assert np.sum(np.abs(seq.values) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_recursion_ratio(self):
        # p_{n+1}/p_n = e^{i phi} tanh r = v/u*
        seq = ground_coefficients(0.6, 1.9, 10)
        ratio = seq.values[1:] / seq.values[:-1]
        assert np.allclose(ratio, np.tanh(0.6) * np.exp(1.9j), atol=1e-13)


class TestGroundEntropy:
    def test_half_tanh_value(self):
        expected = (4.0 / 3.0) * np.log(4.0 / 3.0) - (1.0 / 3.0) * np.log(1.0 / 3.0)
        assert ground_entropy(R_HALF) == pytest.approx(expected, abs=1e-14)
        assert ground_entropy(R_HALF) == pytest.approx(0.74978, abs=5e-6)

    def test_unit_squeezing_value(self):
        assert ground_entropy(1.0) == pytest.approx(1.6198220928977027, abs=1e-13)

    def test_zero_limit(self):
        assert ground_entropy(0.0) == 0.0

    def test_monotone_in_r(self):
        rs = np.linspace(0.0, 2.5, 60)
        es = [ground_entropy(r) for r in rs]
        assert np.all(np.diff(es) > 0)

    def test_matches_schmidt_oracle(self):
        for r in np.linspace(0.05, 1.5, 7):
            state = ground_state(r, 0.4, tail_tol=1e-13)
            assert entropy_of_state(state) == pytest.approx(ground_entropy(r),
                                                            abs=1e-8)


class TestExcitedCoefficients:
    def test_single_excitation_closed_form(self):
        # p^(1,0)_n = sqrt(n+1) p_n / u
        r, phi = 0.7, 1.3
        seq = excited_coefficients(r, phi, 1, 0, 12)
        p = ground_coefficients(r, phi, 12).values
        expected = np.sqrt(np.arange(1, 14)) * p / np.cosh(r)
        assert np.allclose(seq.values, expected, atol=1e-14)
        assert seq.offset == 1
        assert seq.which_mode_excess == MODE_A

    def test_mirror_excitation_same_values(self):
        r, phi = 0.7, 1.3
        up = excited_coefficients(r, phi, 1, 0, 12)
        down = excited_coefficients(r, phi, 0, 1, 12)
        assert np.allclose(up.values, down.values, atol=1e-15)
        assert down.which_mode_excess == MODE_B

    def test_zero_zero_is_ground(self):
        seq = excited_coefficients(0.5, 0.9, 0, 0, 9)
        assert np.allclose(seq.values, ground_coefficients(0.5, 0.9, 9).values)

    def test_r_zero_column_is_fock_product(self):
        # m = 0 stays well defined at r = 0 and lands on |x;a>|0;b>
        seq = excited_coefficients(0.0, 0.0, 3, 0, 5)
        assert seq.values[0] == pytest.approx(1.0, abs=1e-14)
        assert np.allclose(seq.values[1:], 0.0, atol=1e-14)

    def test_r_zero_with_joint_excitation_raises(self):
        with pytest.raises(ValueError, match="undefined at r = 0"):
            excited_coefficients(0.0, 0.0, 1, 1, 8)

    @pytest.mark.parametrize("x,y", [(1, 0), (1, 1), (2, 1), (3, 2), (3, 3)])
    def test_normalization_within_tail(self, x, y):
        for r in (0.3, 0.9, 1.6, 2.0):
            seq = excited_sequence(r, 0.8, x, y, tail_tol=1e-12)
            total = np.sum(np.abs(seq.values) ** 2)
            assert total == pytest.approx(1.0, abs=1e-11)

    def test_entropy_phase_independent(self):
        for phi in (0.0, 1.0, np.pi, 5.0):
            seq = excited_sequence(0.8, phi, 2, 1, 1e-12)
            ref = excited_sequence(0.8, 0.3, 2, 1, 1e-12)
            assert np.allclose(np.abs(seq.values), np.abs(ref.values), atol=1e-12)

    def test_degeneracy_symmetry_exact(self):
        a = excited_coefficients(0.9, 0.4, 3, 1, 40)
        b = excited_coefficients(0.9, 0.4, 1, 3, 40)
        assert np.array_equal(np.abs(a.values), np.abs(b.values))


class TestAssembleAndEntropy:
    def test_support_pattern_mode_a(self):
        seq = excited_coefficients(0.5, 0.0, 2, 0, 6)
        state = assemble_state(seq, 8)
        nz = np.argwhere(np.abs(state.coeffs) > 0)
        assert all(row - col == 2 for row, col in nz)

    def test_support_pattern_mode_b(self):
        seq = excited_coefficients(0.5, 0.0, 0, 2, 6)
        state = assemble_state(seq, 8)
        nz = np.argwhere(np.abs(state.coeffs) > 0)
        assert all(col - row == 2 for row, col in nz)

    def test_product_state_has_zero_entropy(self):
        psi = np.zeros((4, 4), complex)
        psi[2, 1] = 1.0
        from magnon_epr.squeezed import TwoModeState
        assert entropy_of_state(TwoModeState(3, psi, 0.0)) == pytest.approx(0.0,
                                                                            abs=1e-12)

    def test_bell_pair_entropy(self):
        psi = np.zeros((3, 3), complex)
        psi[0, 0] = psi[1, 1] = 1.0 / np.sqrt(2.0)
        from magnon_epr.squeezed import TwoModeState
        assert entropy_of_state(TwoModeState(2, psi, 0.0)) == pytest.approx(
            np.log(2.0), abs=1e-12)

    def test_under_truncated_state_rejected(self):
        seq = ground_coefficients(1.5, 0.0, 3)  # drastically undertruncated
        state = assemble_state(seq, 3)
        with pytest.raises(ValueError, match="under-truncated"):
            entropy_of_state(state)

    def test_entropy_off_diagonal_state(self):
        # non-diagonal array exercises the SVD path: equal mix of |00> and |12>
        psi = np.zeros((4, 4), complex)
        psi[0, 0] = np.sqrt(0.25)
        psi[1, 2] = np.sqrt(0.75) * np.exp(0.7j)
        from magnon_epr.squeezed import TwoModeState
        expected = -(0.25 * np.log(0.25) + 0.75 * np.log(0.75))
        assert entropy_of_state(TwoModeState(3, psi, 0.0)) == pytest.approx(
            expected, abs=1e-12)


class TestOracleAgainstRecursion:
    @pytest.mark.parametrize("x,y,r,phi,expected", ORACLE_ENTROPIES)
    def test_frozen_oracle_entropies(self, x, y, r, phi, expected):
        seq = excited_sequence(r, phi, x, y, 1e-12)
        state = assemble_state(seq, len(seq.values) - 1 + seq.offset)
        assert entropy_of_state(state) == pytest.approx(expected, abs=1e-8)

    def test_prenormalization_norm(self):
        from magnon_epr.squeezed import apply_mode_operators
        r, phi = 0.6, 2.0
        n = choose_truncation(r, 1e-14) + 10
        ground = assemble_state(ground_coefficients(r, phi, n), n)
        u = np.cosh(r)
        v = np.sinh(r) * np.exp(1j * phi)
        raw = apply_mode_operators(ground.coeffs, 2, 1, u, v)
        assert np.linalg.norm(raw) == pytest.approx(np.sqrt(2.0), abs=1e-6)

    @pytest.mark.parametrize("x,y", [(0, 1), (1, 1), (2, 2), (3, 1)])
    def test_overlap_with_oracle(self, x, y):
        r, phi = 0.75, 2.6
        seq = excited_sequence(r, phi, x, y, 1e-13)
        n = len(seq.values) - 1 + seq.offset
        recursion = assemble_state(seq, n)
        oracle = oracle_excited_state(r, phi, x, y, n)
        overlap = abs(np.vdot(oracle.coeffs, recursion.coeffs))
        assert overlap >= 1.0 - 1e-10

    def test_excited_beats_ground_entropy(self):
        for r in np.linspace(0.1, 1.4, 8):
            seq = excited_sequence(r, np.pi, 1, 1, 1e-12)
            lam = np.abs(seq.values) ** 2
            lam = lam[lam > 0]
            excited = -np.sum(lam * np.log(lam))
            assert excited >= ground_entropy(r)

    def test_oracle_leak_detection(self):
        with pytest.raises(ValueError, match="increase n_trunc"):
            oracle_excited_state(1.2, 0.0, 3, 3, n_trunc=6)


def test_excited_state_convenience_resolves_tail():
    state = excited_state(1.1, 0.5, 2, 2, tail_tol=1e-12)
    assert state.norm_deficit <= 1e-12
    assert entropy_of_state(state) > ground_entropy(1.1)
