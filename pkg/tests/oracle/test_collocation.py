"""Tests for the Chebyshev collocation cross-check"""

import logging

import numpy as np
import pytest

from oracle import (
    CollocationConfig,
    base_curvature,
    chebyshev_matrices,
    critical_point,
    os_spectrum_collocation,
)
from profiles.flows import couette, poiseuille, tabulated

ANCHOR_C = 0.23752649 + 0.00373967j
TEST_KAPPA = 0.4


@pytest.fixture
def anchor_spectrum():
    """Poiseuille, Re=10000, alpha=1 with 96 points (checked against 112)"""
    return os_spectrum_collocation(CollocationConfig(profile=poiseuille(2.0), re=1e4, alpha=1.0))


def test_chebyshev_matrices_differentiate_polynomials():
    """Test exact derivatives of x^5 up to fourth order"""
    x, (d1, d2, d3, d4) = chebyshev_matrices(10)
    f = x**5

    assert x[0] == pytest.approx(1.0) and x[-1] == pytest.approx(-1.0)
    np.testing.assert_allclose(d1 @ f, 5 * x**4, atol=1e-11)
    np.testing.assert_allclose(d2 @ f, 20 * x**3, atol=1e-10)
    np.testing.assert_allclose(d3 @ f, 60 * x**2, atol=1e-8)
    np.testing.assert_allclose(d4 @ f, 120 * x, atol=1e-7)


def test_chebyshev_matrices_reject_small_sizes():
    """Test that the order must be below the number of points"""
    with pytest.raises(ValueError):
        chebyshev_matrices(4, order=4)


def test_anchor_eigenvalue(anchor_spectrum):
    """Test the leading Poiseuille eigenvalue and its self-convergence"""
    assert anchor_spectrum.converged
    assert anchor_spectrum.convergence_gap <= 1e-8
    assert abs(anchor_spectrum.leading - ANCHOR_C) <= 2e-8


def test_anchor_agrees_between_96_and_128_points(anchor_spectrum):
    """Test that 128 Chebyshev points move the leading eigenvalue by at most 1e-8"""
    finer = os_spectrum_collocation(
        CollocationConfig(profile=poiseuille(2.0), re=1e4, alpha=1.0, n_modes=128)
    )

    assert finer.converged
    assert abs(finer.leading - anchor_spectrum.leading) <= 1e-8


def test_spectrum_is_bounded_and_sorted(anchor_spectrum):
    """Test the speed cutoff and descending c_i order"""
    values = anchor_spectrum.eigenvalues

    assert np.all(np.abs(values) <= 10.0)
    assert np.all(np.diff(values.imag) <= 0)


def test_subinterval_matches_scaled_problem():
    """Test y_start: Poiseuille(a=4) on [1, 3] is 0.75 + 0.25 Poiseuille(a=2) at 4 Re"""
    reference = os_spectrum_collocation(
        CollocationConfig(profile=poiseuille(2.0), re=2000.0, alpha=1.0, n_modes=64)
    )
    sub = os_spectrum_collocation(
        CollocationConfig(
            profile=poiseuille(4.0), re=8000.0, alpha=1.0, n_modes=64, a=2.0, y_start=1.0
        )
    )

    assert abs(sub.leading - (0.75 + 0.25 * reference.leading)) <= 1e-8


def test_shift_moves_eigenvalues():
    """Test c -> c + kappa for U -> U + kappa"""
    base = os_spectrum_collocation(
        CollocationConfig(profile=poiseuille(2.0), re=2000.0, alpha=1.0, n_modes=48)
    )
    shifted = os_spectrum_collocation(
        CollocationConfig(
            profile=poiseuille(2.0).shifted(TEST_KAPPA), re=2000.0, alpha=1.0, n_modes=48
        )
    )

    assert abs(shifted.leading - (base.leading + TEST_KAPPA)) <= 1e-8


def test_unresolved_grid_warns(caplog):
    """Test the convergence flag and warning for too few points"""
    with caplog.at_level(logging.WARNING, logger="oracle.collocation"):
        spectrum = os_spectrum_collocation(
            CollocationConfig(profile=poiseuille(2.0), re=1e4, alpha=1.0, n_modes=16)
        )

    assert not spectrum.converged
    assert "not converged" in caplog.text


@pytest.mark.parametrize(
    "overrides",
    [{"n_modes": 8}, {"re": -1.0}, {"alpha": np.nan}, {"a": 1.5, "y_start": 1.0}],
    ids=["few_points", "negative_re", "nan_alpha", "past_wall"],
)
def test_config_validation(overrides):
    """Test rejection of invalid collocation settings"""
    settings = {"profile": poiseuille(2.0), "re": 1000.0, "alpha": 1.0} | overrides
    with pytest.raises(ValueError):
        CollocationConfig(**settings)


def test_base_curvature():
    """Test analytic curvature and the finite-difference fallback"""
    y = np.linspace(0.0, 2.0, 5)
    linear = tabulated(np.column_stack([y, 0.5 * y]), 2.0)

    np.testing.assert_allclose(base_curvature(poiseuille(2.0), y), -2.0)
    np.testing.assert_allclose(base_curvature(linear, y), 0.0, atol=1e-8)


def test_couette_has_no_critical_point():
    """Test found=False for a flow stable over the whole box"""
    result = critical_point(couette(2.0), (100.0, 2000.0), (0.5, 1.5), n_modes=48)

    assert not result.found
    assert result.re is None
    assert "stable" in result.message


def test_single_re_searches_alpha_only():
    """Test the degenerate Re range"""
    result = critical_point(poiseuille(2.0), (1e4, 1e4), (1.0, 1.0))

    assert result.found
    assert result.re == 1e4
    assert result.alpha == 1.0
    assert result.max_growth == pytest.approx(ANCHOR_C.imag, abs=2e-8)


def test_critical_point_rejects_negative_box():
    """Test search-box validation"""
    with pytest.raises(ValueError):
        critical_point(poiseuille(2.0), (-1.0, 1000.0), (0.5, 1.5))


@pytest.mark.slow
def test_poiseuille_critical_point():
    """Test Re_c = 5772.22 and alpha_c = 1.02056"""
    result = critical_point(poiseuille(2.0), (5000.0, 6500.0), (0.9, 1.1))

    assert result.found
    assert result.re == pytest.approx(5772.22, rel=1e-5)
    assert result.alpha == pytest.approx(1.02056, abs=1e-4)
    assert abs(result.max_growth) <= 1e-6
