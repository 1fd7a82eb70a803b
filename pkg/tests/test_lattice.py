import numpy as np
import pytest

from magnon_epr.lattice import build_preset, from_vectors, kpath, structure_factor

CUBIC = build_preset("g_type_simple_cubic")
RNG = np.random.default_rng(1234)
RANDOM_K = RNG.uniform(-2.0 * np.pi, 2.0 * np.pi, size=(50, 3))


def test_cubic_coordination():
    assert CUBIC.z1 == 6
    assert CUBIC.z2 == 12
    assert CUBIC.nn_vectors.shape == (6, 3)
    assert CUBIC.nnn_vectors.shape == (12, 3)
    # axial nn shell, face-diagonal nnn shell
    assert np.allclose(np.linalg.norm(CUBIC.nn_vectors, axis=1), 1.0)
    assert np.allclose(np.linalg.norm(CUBIC.nnn_vectors, axis=1), np.sqrt(2.0))


def test_structure_factor_zone_center():
    assert structure_factor(CUBIC, 1, [0, 0, 0]) == pytest.approx(1.0)
    assert structure_factor(CUBIC, 2, [0, 0, 0]) == pytest.approx(1.0)


def test_structure_factor_zone_boundary():
    k = [0.0, 0.0, np.pi]
    # (2 + cos pi)/3 and (1 + 2 cos pi)/3
    assert structure_factor(CUBIC, 1, k) == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert structure_factor(CUBIC, 2, k) == pytest.approx(-1.0 / 3.0, abs=1e-15)


def test_structure_factor_closed_form_along_z():
    for qz in np.linspace(0, np.pi, 11):
        k = [0.0, 0.0, qz]
        g1 = structure_factor(CUBIC, 1, k)
        g2 = structure_factor(CUBIC, 2, k)
        assert g1 == pytest.approx((2.0 + np.cos(qz)) / 3.0, abs=1e-14)
        assert g2 == pytest.approx((1.0 + 2.0 * np.cos(qz)) / 3.0, abs=1e-14)


@pytest.mark.parametrize("order", [1, 2])
def test_structure_factor_bounded_and_real(order):
    for k in RANDOM_K:
        g = structure_factor(CUBIC, order, k)
        assert abs(g) <= 1.0 + 1e-12
        # shells closed under negation force real factors
        assert g.imag == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("order", [1, 2])
def test_structure_factor_conjugation(order):
    for k in RANDOM_K[:20]:
        g_plus = structure_factor(CUBIC, order, k)
        g_minus = structure_factor(CUBIC, order, -k)
        assert g_minus == pytest.approx(np.conj(g_plus), abs=1e-14)


def test_structure_factor_periodicity():
    # reciprocal lattice vector of the cubic cell: 2 pi / a along an axis
    shift = np.array([2.0 * np.pi, 0.0, 0.0])
    for k in RANDOM_K[:20]:
        for order in (1, 2):
            assert structure_factor(CUBIC, order, k + shift) == pytest.approx(
                structure_factor(CUBIC, order, k), abs=1e-12)


def test_lattice_constant_scales_vectors():
    scaled = build_preset("g_type_simple_cubic", lattice_constant=2.0)
    assert np.allclose(np.linalg.norm(scaled.nn_vectors, axis=1), 2.0)
    # gamma at the scaled zone boundary matches the unscaled one
    assert structure_factor(scaled, 1, [0, 0, np.pi / 2.0]) == pytest.approx(
        structure_factor(CUBIC, 1, [0, 0, np.pi]), abs=1e-14)


def test_unknown_preset():
    with pytest.raises(ValueError, match="unknown lattice preset"):
        build_preset("bcc")


def test_from_vectors_rejects_zero_vector():
    with pytest.raises(ValueError, match="zero vector"):
        from_vectors("bad", 1.0, [[0, 0, 0]], [[1, 1, 0]])


def test_from_vectors_warns_on_open_shell():
    with pytest.warns(UserWarning, match="not closed under negation"):
        from_vectors("open", 1.0, [[1, 0, 0]], [[1, 1, 0], [-1, -1, 0]])


def test_kpath_endpoints_and_spacing():
    path = kpath(CUBIC, [0, 0, 1], np.pi, 3)
    assert path.shape == (3, 3)
    assert np.allclose(path[0], [0, 0, 0])
    assert np.allclose(path[1], [0, 0, np.pi / 2.0])
    assert np.allclose(path[2], [0, 0, np.pi])


def test_kpath_normalizes_direction():
    path = kpath(CUBIC, [0, 0, 2.5], 1.0, 2)
    assert np.allclose(path[-1], [0, 0, 1.0])


def test_kpath_degenerate_direction():
    with pytest.raises(ValueError, match="degenerate k-path"):
        kpath(CUBIC, [0, 0, 0], 1.0, 4)


def test_kpath_needs_two_points():
    with pytest.raises(ValueError, match="n_points"):
        kpath(CUBIC, [0, 0, 1], 1.0, 1)
