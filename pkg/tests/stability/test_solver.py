"""Tests for pressure elimination, both eigen paths and the anchor case"""

import dataclasses

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from config import SolverPath, WallDatum
from discretization.mesh import build_mesh
from discretization.models import StabilityParams
from eigensolvers import SingularMatrixError
from profiles.flows import couette, poiseuille
from stability import (
    SolveOptions,
    StabilityError,
    filter_modes,
    recover_pressure,
    schur_reduce,
    solve_stability,
    solve_system,
)

TEST_KAPPA = 0.3
ANCHOR_C = 0.23752649 + 0.00373967j
ANCHOR_TOL = 5e-4


def _max_matched_gap(first: np.ndarray, second: np.ndarray) -> float:
    """Largest distance between two spectra after optimal one-to-one matching"""
    cost = np.abs(first[:, None] - second[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@pytest.mark.parametrize("n_elements", [2, 4, 8], ids=["N2", "N4", "N8"])
def test_paths_agree(n_elements):
    """Test that the reduced QR path and the coupled QZ path give the same spectrum"""
    mesh = build_mesh(2.0, n_elements)
    params = StabilityParams(re=100.0, alpha=1.0)
    reduced = solve_stability(mesh, poiseuille(2.0), params, SolveOptions(path=SolverPath.SCHUR_QR))
    coupled = solve_stability(
        mesh, poiseuille(2.0), params, SolveOptions(path=SolverPath.COUPLED_QZ)
    )

    assert len(reduced) == len(coupled) == 2 * (2 * n_elements - 1)
    scale = np.abs(reduced.eigenvalues).max()
    assert _max_matched_gap(reduced.eigenvalues, coupled.eigenvalues) <= 1e-8 * scale


def test_modes_sorted_by_growth(mesh, profile, params):
    """Test descending c_i and the recorded provenance"""
    modes = solve_stability(mesh, profile, params)
    growth = [mode.c_i for mode in modes]

    assert growth == sorted(growth, reverse=True)
    assert modes.n_elements == mesh.n_elements
    assert modes.total_eigenvalues == 2 * mesh.n_velocity_nodes
    assert modes.profile_name == "poiseuille"


def test_shifted_profile_shifts_spectrum(mesh, profile, params):
    """Test that U + kappa shifts every eigenvalue by kappa"""
    base = solve_stability(mesh, profile, params).eigenvalues
    shifted = solve_stability(mesh, profile.shifted(TEST_KAPPA), params).eigenvalues

    scale = np.abs(base).max()
    assert _max_matched_gap(base + TEST_KAPPA, shifted) <= 1e-9 * scale


def test_reflection_symmetry(profile, params):
    """Test that a mirrored graded mesh gives the same Poiseuille spectrum"""
    mesh = build_mesh(2.0, 6, 1.5)
    direct = solve_stability(mesh, profile, params).eigenvalues
    mirrored = solve_stability(mesh.reflected(), profile, params).eigenvalues

    scale = np.abs(direct).max()
    assert _max_matched_gap(direct, mirrored) <= 1e-9 * scale


def test_schur_reduce_without_pressure_coupling(system):
    """Test that E = K when L vanishes"""
    uncoupled = dataclasses.replace(system, L=np.zeros_like(system.L))
    pencil = schur_reduce(uncoupled)

    np.testing.assert_array_equal(pencil.E, system.K)
    np.testing.assert_array_equal(pencil.S, system.S)
    assert pencil.pressure_map.shape == (system.n_pressure, system.n_velocity)


def test_recover_pressure(system):
    """Test B = 0 for A = 0 and agreement of both recovery routes"""
    zero = recover_pressure(system, np.zeros(system.n_velocity, dtype=complex))
    np.testing.assert_array_equal(zero, 0.0)

    velocity = np.linspace(-1.0, 1.0, system.n_velocity) + 0.5j
    pencil = schur_reduce(system)
    np.testing.assert_allclose(
        recover_pressure(system, velocity, pencil.pressure_map),
        recover_pressure(system, velocity),
        rtol=1e-12,
    )
    with pytest.raises(ValueError):
        recover_pressure(system, np.zeros(system.n_velocity + 1))


def test_leading_mode_satisfies_both_equations(system, profile):
    """Test small residuals and unit normalization of the leading mode"""
    lead = solve_system(system, profile).leading

    assert lead.momentum_residual < 1e-10
    assert lead.pressure_residual < 1e-10
    assert lead.pressure.shape == (system.n_pressure,)


def test_leading_modes_only(mesh, profile, params):
    """Test that max_modes limits the returned modes to the top of the spectrum"""
    full = solve_stability(mesh, profile, params)
    top = solve_stability(mesh, profile, params, SolveOptions(max_modes=3))

    assert len(top) == 3
    np.testing.assert_allclose(top.eigenvalues, full.eigenvalues[:3], rtol=1e-10)


def test_eigensolver_failure_is_reported(monkeypatch, system, profile):
    """Test that factorization failures surface as StabilityError with Re and alpha"""

    def singular(*args, **kwargs):
        raise SingularMatrixError(0, 0.0, 1e-14)

    monkeypatch.setattr("stability.solver.lu_solve", singular)
    with pytest.raises(StabilityError) as exc_info:
        solve_system(system, profile)

    assert exc_info.value.re == system.params.re
    assert exc_info.value.alpha == system.params.alpha


def test_couette_is_stable():
    """Test that no physical Couette mode grows"""
    mesh = build_mesh(2.0, 32)
    modes = filter_modes(solve_stability(mesh, couette(2.0), StabilityParams(re=1000.0, alpha=1.0)))

    assert len(modes) > 0
    assert modes.leading.c_i < 0


@pytest.mark.slow
def test_poiseuille_anchor():
    """Test Re=10000, alpha=1 against the reference leading eigenvalue"""
    mesh = build_mesh(2.0, 256)
    modes = filter_modes(
        solve_stability(mesh, poiseuille(2.0), StabilityParams(re=1e4, alpha=1.0))
    )

    assert abs(modes.leading.eigenvalue - ANCHOR_C) <= ANCHOR_TOL
    assert modes.leading.c_i > 0
    assert modes.leading.divergence_ratio <= 0.1


def test_literal_wall_datum_stays_selectable(mesh, profile, params):
    """Test that the second-derivative wall datum still gives a full, different spectrum"""
    literal = solve_stability(
        mesh, profile, params, SolveOptions(wall_datum=WallDatum.SECOND_DERIVATIVE)
    )
    continuity = solve_stability(mesh, profile, params)

    assert len(literal) == len(continuity) == 2 * mesh.n_velocity_nodes
    assert _max_matched_gap(literal.eigenvalues, continuity.eigenvalues) > 1e-8


def _anchor_mode(n_elements):
    modes = solve_stability(
        build_mesh(2.0, n_elements), poiseuille(2.0), StabilityParams(re=1e4, alpha=1.0)
    )
    return min(modes, key=lambda mode: abs(mode.eigenvalue - ANCHOR_C))


@pytest.mark.slow
def test_anchor_converges_under_refinement():
    """Test shrinking |c(N) - c(2N)| and divergence ratio over N = 32, 64, 128"""
    tracked = {n: _anchor_mode(n) for n in (32, 64, 128, 256)}
    gaps = [abs(tracked[n].eigenvalue - tracked[2 * n].eigenvalue) for n in (32, 64, 128)]
    ratios = [tracked[n].divergence_ratio for n in (32, 64, 128)]

    assert gaps[0] > gaps[1] > gaps[2]
    assert ratios[0] > ratios[1] > ratios[2]
    assert abs(tracked[256].eigenvalue - ANCHOR_C) <= ANCHOR_TOL
