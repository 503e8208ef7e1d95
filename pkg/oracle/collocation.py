"""
Chebyshev-collocation Orr-Sommerfeld solver used to cross-check the finite
element spectra.

The stream-function amplitude phi satisfies

    (D^2 - alpha^2)^2 phi - i alpha Re [U (D^2 - alpha^2) - U''] phi
        = c (-i alpha Re) (D^2 - alpha^2) phi,      phi = phi' = 0 at both walls.

Clamped conditions are built into the fourth-derivative operator by writing
phi = (1 - x^2) q, after which the boundary rows and columns are dropped.
"""

import logging
import math

import numpy as np
from scipy.linalg import toeplitz

from config import ORACLE_CONVERGENCE_STEP, ORACLE_CONVERGENCE_TOL
from eigensolvers.dense import generalized_qz
from oracle.models import CollocationConfig, OracleSpectrum
from profiles.flows import FlowProfile

logger = logging.getLogger(__name__)

CURVATURE_STEP = 1e-5
SPEED_CUTOFF_FACTOR = 10.0


def chebyshev_matrices(n: int, order: int = 4) -> tuple[np.ndarray, list[np.ndarray]]:
    """
    Chebyshev points x_k = cos(k pi / (n - 1)) and differentiation matrices D^1..D^order.

    Uses the trigonometric-identity and flipping refinements for x_k - x_j.
    """
    if n < 2 or not 0 < order < n:
        raise ValueError(f"need n >= 2 and 0 < order < n, got n={n}, order={order}")
    n1, n2 = n // 2, math.ceil(n / 2)
    k = np.arange(n)[:, None]
    theta = k * np.pi / (n - 1)
    x = np.sin(np.pi * np.arange(n - 1, -n, -2) / (2.0 * (n - 1)))

    half = np.tile(theta / 2.0, n)
    dx = 2.0 * np.sin(half.T + half) * np.sin(half.T - half)
    dx[n1:, :] = -np.flipud(np.fliplr(dx[:n2, :]))
    np.fill_diagonal(dx, 1.0)
    z = 1.0 / dx
    np.fill_diagonal(z, 0.0)

    c = toeplitz((-1.0) ** k)
    c[0, :] *= 2.0
    c[-1, :] *= 2.0
    c[:, 0] /= 2.0
    c[:, -1] /= 2.0

    matrices = []
    d = np.eye(n)
    for ell in range(order):
        d = (ell + 1) * z * (c * np.tile(np.diag(d)[:, None], n) - d)
        np.fill_diagonal(d, -np.sum(d, axis=1))
        matrices.append(d)
    return x, matrices


def base_curvature(profile: FlowProfile, y: np.ndarray) -> np.ndarray:
    """U'' analytically when the profile has it, else central differences of U'"""
    curvature = profile.curvature(y)
    if curvature is not None:
        return np.asarray(curvature, dtype=float)
    upper = np.clip(y + CURVATURE_STEP, 0.0, profile.a)
    lower = np.clip(y - CURVATURE_STEP, 0.0, profile.a)
    _, slope_upper = profile.evaluate(upper)
    _, slope_lower = profile.evaluate(lower)
    return (slope_upper - slope_lower) / (upper - lower)


def _operators(config: CollocationConfig, n: int) -> tuple[np.ndarray, np.ndarray, float]:
    x, (d1, d2, d3, d4) = chebyshev_matrices(n)
    interior = slice(1, -1)
    x_in = x[interior]

    weights = np.zeros(n)
    weights[interior] = 1.0 / (1.0 - x_in**2)
    clamped = ((1.0 - x**2)[:, None] * d4 - 8.0 * x[:, None] * d3 - 12.0 * d2) * weights
    scale = 2.0 / config.height
    fourth = scale**4 * clamped[interior, interior]
    second = scale**2 * d2[interior, interior]

    y = config.to_physical(x_in)
    u_base, _ = config.profile.evaluate(y)
    curvature = base_curvature(config.profile, y)

    alpha, re = config.alpha, config.re
    eye = np.eye(n - 2)
    laplace = second - alpha**2 * eye
    lhs = (fourth - 2 * alpha**2 * second + alpha**4 * eye) - 1j * alpha * re * (
        u_base[:, None] * laplace - np.diag(curvature)
    )
    rhs = -1j * alpha * re * laplace
    speed_limit = SPEED_CUTOFF_FACTOR * max(float(np.max(np.abs(u_base))), 1.0)
    return lhs, rhs, speed_limit


def _solve(config: CollocationConfig, n: int):
    lhs, rhs, speed_limit = _operators(config, n)
    spectrum = generalized_qz(lhs, rhs, want_vectors=False)
    keep = np.isfinite(spectrum.eigenvalues) & (np.abs(spectrum.eigenvalues) <= speed_limit)
    dropped = int(np.count_nonzero(~keep))
    return (
        spectrum.eigenvalues[keep],
        spectrum.backward_errors[keep],
        spectrum.infinite_count + dropped,
    )


def os_spectrum_collocation(config: CollocationConfig) -> OracleSpectrum:
    """
    Orr-Sommerfeld spectrum by Chebyshev collocation.

    Args:
        config: Profile, Re, alpha, number of Chebyshev points and interval

    Returns:
        OracleSpectrum sorted by descending c_i with |c| <= 10 max|U|; `converged`
        reports agreement of the leading eigenvalue with n_modes + 16 points
    """
    values, errors, discarded = _solve(config, config.n_modes)
    converged, gap = True, 0.0
    if config.check_convergence:
        finer, _, _ = _solve(config, config.n_modes + ORACLE_CONVERGENCE_STEP)
        if values.size and finer.size:
            gap = float(abs(values[0] - finer[0]))
            converged = gap <= ORACLE_CONVERGENCE_TOL
        else:
            gap, converged = float("inf"), False
        if not converged:
            logger.warning(
                f"Collocation with {config.n_modes} points not converged "
                f"(Re={config.re}, alpha={config.alpha}, gap={gap:.3e})"
            )
    return OracleSpectrum(
        eigenvalues=values,
        backward_errors=errors,
        infinite_count=discarded,
        converged=converged,
        convergence_gap=gap,
    )
