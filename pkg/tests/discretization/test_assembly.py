"""Tests for global assembly of the discrete stability system"""

import logging

import numpy as np
import pytest

from config import WallDatum
from discretization.assembly import (
    assemble_system,
    u_index,
    v_index,
    wall_continuity_flux_terms,
    wall_pressure_flux_terms,
)
from discretization.elements import gauss_rule
from discretization.mesh import build_mesh
from discretization.models import StabilityParams
from profiles.flows import poiseuille, tabulated

TEST_HEIGHT = 2.0
TEST_RE = 100.0
TEST_ALPHA = 1.0
TEST_SEED = 11
TEST_RANDOM_CASES = 100


def _assemble(n_elements, profile=None, re=TEST_RE, alpha=TEST_ALPHA, a=TEST_HEIGHT, grading=1.0):
    profile = profile or poiseuille(a)
    mesh = build_mesh(a, n_elements, grading)
    return assemble_system(mesh, profile, StabilityParams(re=re, alpha=alpha), gauss_rule(5))


@pytest.fixture
def two_element_system():
    """N=1 Poiseuille system (two elements)"""
    return _assemble(2)


def test_dimensions_for_n1(two_element_system):
    """Test K 6x6, L 6x3, G 3x3, H 3x6 for N=1"""
    system = two_element_system

    assert system.K.shape == (6, 6)
    assert system.S.shape == (6, 6)
    assert system.L.shape == (6, 3)
    assert system.G.shape == (3, 3)
    assert system.H.shape == (3, 6)
    assert set(system.matrices()) == {"K_h", "S_h", "L_h", "G_h", "H_h"}


def test_single_element_pressure_matrix():
    """Test G for one element of unit length and alpha=1"""
    system = _assemble(1, profile=poiseuille(1.0), a=1.0)

    np.testing.assert_allclose(
        system.G, [[-4 / 3, 5 / 6], [5 / 6, -4 / 3]], rtol=1e-14
    )


def test_matrix_invariants_randomized():
    """Test symmetry/definiteness of G and S and exact dimensions over random cases"""
    rng = np.random.default_rng(TEST_SEED)
    for _ in range(TEST_RANDOM_CASES):
        n_elements = int(rng.integers(1, 9))
        a = float(rng.uniform(0.5, 3.0))
        system = _assemble(
            n_elements,
            profile=poiseuille(a),
            re=float(rng.uniform(10.0, 1e4)),
            alpha=float(rng.uniform(0.1, 3.0)),
            a=a,
            grading=float(rng.uniform(0.7, 1.5)),
        )
        n = n_elements - 1

        assert system.K.shape == (2 * (2 * n + 1),) * 2
        assert system.G.shape == (n + 2, n + 2)
        g = system.G
        assert np.all(g.imag == 0)
        assert np.abs(g - g.T).max() <= 1e-13 * np.abs(g).max()
        assert np.all(np.linalg.eigvalsh(g.real) < 0)
        s = system.S
        assert np.abs(s - s.conj().T).max() <= 1e-14 * np.abs(s).max()
        assert np.all(np.linalg.eigvalsh(s) > 0)


def test_mass_blocks_are_decoupled(two_element_system):
    """Test identical u and v mass blocks with no u-v coupling in S"""
    s = two_element_system.S

    np.testing.assert_array_equal(s[0::2, 0::2], s[1::2, 1::2])
    assert np.all(s[0::2, 1::2] == 0)
    assert np.all(s[1::2, 0::2] == 0)


@pytest.mark.parametrize(
    "wall_datum,wall_terms",
    [
        (
            WallDatum.CONTINUITY,
            lambda mesh: wall_continuity_flux_terms(mesh, TEST_RE, TEST_ALPHA),
        ),
        (WallDatum.SECOND_DERIVATIVE, lambda mesh: wall_pressure_flux_terms(mesh, TEST_RE)),
    ],
    ids=["continuity", "second_derivative"],
)
def test_zero_flow_leaves_only_wall_terms(wall_datum, wall_terms):
    """Test that U = 0 removes the integral part of H"""
    mesh = build_mesh(1.0, 4)
    profile = tabulated([(0.0, 0.0), (1.0, 0.0)], 1.0)
    params = StabilityParams(re=TEST_RE, alpha=TEST_ALPHA)
    system = assemble_system(mesh, profile, params, gauss_rule(5), wall_datum=wall_datum)

    expected = np.zeros_like(system.H)
    for row, col, value in wall_terms(mesh):
        expected[row, col] += value
    np.testing.assert_array_equal(system.H, expected)


def test_continuity_datum_is_default():
    """Test that assembly without a wall datum uses the continuity terms"""
    mesh = build_mesh(TEST_HEIGHT, 4)
    profile = poiseuille(TEST_HEIGHT)
    params = StabilityParams(re=TEST_RE, alpha=TEST_ALPHA)
    default = assemble_system(mesh, profile, params, gauss_rule(5))
    literal = assemble_system(
        mesh, profile, params, gauss_rule(5), wall_datum=WallDatum.SECOND_DERIVATIVE
    )

    expected = literal.H.copy()
    for row, col, value in wall_pressure_flux_terms(mesh, TEST_RE):
        expected[row, col] -= value
    for row, col, value in wall_continuity_flux_terms(mesh, TEST_RE, TEST_ALPHA):
        expected[row, col] += value
    np.testing.assert_allclose(default.H, expected, rtol=1e-14, atol=1e-15)
    np.testing.assert_array_equal(default.K, literal.K)
    np.testing.assert_array_equal(default.G, literal.G)


def test_continuity_flux_coefficients():
    """Test the -i alpha phi'/Re coefficients on the u-unknowns next to each wall"""
    mesh = build_mesh(1.0, 4)
    h = mesh.lengths[0]
    terms = {
        (row, col): value
        for row, col, value in wall_continuity_flux_terms(mesh, TEST_RE, TEST_ALPHA)
    }
    scale = 1j * TEST_ALPHA / (h * TEST_RE)
    last_row, last_node = mesh.N + 1, mesh.n_velocity_nodes

    assert set(terms) == {
        (0, u_index(1)),
        (0, u_index(2)),
        (last_row, u_index(last_node - 1)),
        (last_row, u_index(last_node)),
    }
    assert terms[(0, u_index(1))] == pytest.approx(-4.0 * scale, rel=1e-14)
    assert terms[(0, u_index(2))] == pytest.approx(1.0 * scale, rel=1e-14)
    assert terms[(last_row, u_index(last_node))] == pytest.approx(-4.0 * scale, rel=1e-14)
    assert terms[(last_row, u_index(last_node - 1))] == pytest.approx(1.0 * scale, rel=1e-14)


def test_continuity_flux_of_linear_wall_shear():
    """Test that u with wall slope s gives p' = -i alpha s / Re at both walls"""
    mesh = build_mesh(1.0, 4)
    h = mesh.lengths[0]
    slope = 0.3 - 0.2j
    last = mesh.n_velocity_nodes
    field = np.zeros(2 * last, dtype=complex)
    field[u_index(1)], field[u_index(2)] = slope * h / 2, slope * h
    field[u_index(last)], field[u_index(last - 1)] = -slope * h / 2, -slope * h

    flux = np.zeros(mesh.n_pressure_nodes, dtype=complex)
    for row, col, value in wall_continuity_flux_terms(mesh, TEST_RE, TEST_ALPHA):
        flux[row] += value * field[col]
    datum = -1j * TEST_ALPHA * slope / TEST_RE

    assert flux[0] == pytest.approx(datum, rel=1e-13)
    assert flux[mesh.N + 1] == pytest.approx(-datum, rel=1e-13)


def test_wall_flux_coefficients():
    """Test the phi'' coefficients at the y=0 wall for a uniform mesh"""
    mesh = build_mesh(1.0, 4)
    h = mesh.lengths[0]
    terms = {(row, col): value for row, col, value in wall_pressure_flux_terms(mesh, TEST_RE)}

    assert terms[(0, v_index(1))] == pytest.approx(-8.0 / h**2 / TEST_RE, rel=1e-14)
    assert terms[(0, v_index(2))] == pytest.approx(4.0 / h**2 / TEST_RE, rel=1e-14)
    last_row = mesh.N + 1
    assert terms[(last_row, v_index(mesh.n_velocity_nodes))] == pytest.approx(
        8.0 / h**2 / TEST_RE, rel=1e-14
    )


def test_wall_flux_vanishes_for_large_re():
    """Test that the wall terms scale like 1/Re"""
    mesh = build_mesh(1.0, 3)
    values = [abs(value) for _, _, value in wall_pressure_flux_terms(mesh, 1e14)]

    assert max(values) < 1e-12


def test_element_order_does_not_change_result():
    """Test that reversing the element loop gives the same matrices"""
    mesh = build_mesh(TEST_HEIGHT, 5, 1.3)
    profile = poiseuille(TEST_HEIGHT)
    params = StabilityParams(re=TEST_RE, alpha=TEST_ALPHA)
    forward = assemble_system(mesh, profile, params, gauss_rule(5))
    backward = assemble_system(mesh, profile, params, gauss_rule(5), element_order=range(4, -1, -1))

    for name, matrix in forward.matrices().items():
        np.testing.assert_allclose(backward.matrices()[name], matrix, rtol=1e-14, atol=1e-15)


def test_insufficient_quadrature_warns(caplog):
    """Test the warning when the rule is not exact for the polynomial integrands"""
    mesh = build_mesh(TEST_HEIGHT, 2)
    with caplog.at_level(logging.WARNING, logger="discretization.assembly"):
        params = StabilityParams(re=TEST_RE, alpha=TEST_ALPHA)
        assemble_system(mesh, poiseuille(TEST_HEIGHT), params, gauss_rule(2))

    assert "Quadrature with 2 points" in caplog.text


def test_profile_height_mismatch():
    """Test that mesh and profile must cover the same channel"""
    with pytest.raises(ValueError):
        assemble_system(
            build_mesh(1.0, 2),
            poiseuille(2.0),
            StabilityParams(re=TEST_RE, alpha=TEST_ALPHA),
            gauss_rule(5),
        )


@pytest.mark.parametrize(
    "re,alpha", [(0.0, 1.0), (100.0, -1.0), (np.inf, 1.0)], ids=["zero_re", "neg_alpha", "inf_re"]
)
def test_stability_params_validation(re, alpha):
    """Test that Re and alpha must be positive and finite"""
    with pytest.raises(ValueError):
        StabilityParams(re=re, alpha=alpha)
