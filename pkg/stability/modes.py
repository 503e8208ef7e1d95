"""Pointwise evaluation, normalization, diagnostics and filtering of modes"""

import logging

import numpy as np

from config import MODE_SAMPLE_POINTS
from discretization.elements import gauss_rule, linear_basis, quadratic_basis
from discretization.mesh import (
    Mesh1D,
    MeshError,
    pressure_connectivity,
    velocity_connectivity,
)
from discretization.models import QuadratureRule
from stability.config import FilterCriteria
from stability.models import Mode, ModeFlags, ModeSet

logger = logging.getLogger(__name__)

SNAP_TOL = 1e-12
DIVERGENCE_QUAD_POINTS = 5


def _with_wall(coefficients: np.ndarray) -> np.ndarray:
    """Prepend the wall value so that L1 entries index directly (sentinel 0 -> 0)"""
    return np.concatenate([np.zeros(1, dtype=complex), coefficients])


def _locate(mesh: Mesh1D, y) -> tuple[np.ndarray, np.ndarray]:
    y = np.atleast_1d(np.asarray(y, dtype=float))
    slack = SNAP_TOL * mesh.a
    if np.any(~np.isfinite(y)) or np.any(y < -slack) or np.any(y > mesh.a + slack):
        raise MeshError("y", y[(y < -slack) | (y > mesh.a + slack)][:3].tolist(), "outside [0, a]")
    y = np.clip(y, 0.0, mesh.a)
    element = np.clip(np.searchsorted(mesh.nodes, y, side="right") - 1, 0, mesh.n_elements - 1)
    xi = (y - mesh.nodes[element]) / mesh.lengths[element]
    for node in (0.0, 0.5, 1.0):
        xi[np.abs(xi - node) < SNAP_TOL] = node
    return element, xi


def evaluate_fields(
    mesh: Mesh1D, velocity: np.ndarray, pressure: np.ndarray, y
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """u, v and p of interleaved velocity / pressure coefficients at points y"""
    element, xi = _locate(mesh, y)
    phi, _ = quadratic_basis(xi)
    psi, _ = linear_basis(xi)
    l1 = velocity_connectivity(mesh).table[element]
    l2 = pressure_connectivity(mesh).table[element]

    u_nodes = _with_wall(velocity[0::2])
    v_nodes = _with_wall(velocity[1::2])
    u = np.sum(u_nodes[l1] * phi.T, axis=1)
    v = np.sum(v_nodes[l1] * phi.T, axis=1)
    p = np.sum(np.asarray(pressure)[l2] * psi.T, axis=1)
    return u, v, p


def evaluate_mode(mode: Mode, mesh: Mesh1D, y) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Evaluate u_h, v_h (piecewise quadratic) and p_h (piecewise affine) at y.

    Args:
        mode: Mode from solve_stability on this mesh
        mesh: The mesh the mode was computed on
        y: Scalar or array of coordinates in [0, a]

    Returns:
        (u, v, p) complex arrays, one entry per y
    """
    return evaluate_fields(mesh, mode.velocity, mode.pressure, y)


def normalization_samples(mesh: Mesh1D) -> np.ndarray:
    uniform = np.linspace(0.0, mesh.a, MODE_SAMPLE_POINTS)
    return np.union1d(uniform, mesh.velocity_node_coordinates())


def normalize(
    mesh: Mesh1D, velocity: np.ndarray, pressure: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Scale so that max |v_h| over the sample points is 1 with zero phase there.

    Falls back to u_h when v_h vanishes identically.
    """
    samples = normalization_samples(mesh)
    u, v, _ = evaluate_fields(mesh, velocity, pressure, samples)
    for field in (v, u):
        peak = int(np.argmax(np.abs(field)))
        if np.abs(field[peak]) > 0:
            scale = 1.0 / field[peak]
            return velocity * scale, pressure * scale
    return velocity, pressure


def divergence_ratio(
    mesh: Mesh1D, velocity: np.ndarray, alpha: float, rule: QuadratureRule | None = None
) -> float:
    """|| i alpha u_h + v_h' || / (|| alpha u_h || + || v_h' ||) in L2(0, a)."""
    rule = rule or gauss_rule(DIVERGENCE_QUAD_POINTS)
    phi, dphi = quadratic_basis(rule.points)
    l1 = velocity_connectivity(mesh).table
    h = mesh.lengths[:, None]
    weights = h * rule.weights[None, :]

    u_nodes = _with_wall(velocity[0::2])[l1]  # (elements, 3)
    v_nodes = _with_wall(velocity[1::2])[l1]
    u = u_nodes @ phi
    dv = (v_nodes @ dphi) / h

    def l2(values):
        return float(np.sqrt(np.sum(weights * np.abs(values) ** 2)))

    scale = l2(alpha * u) + l2(dv)
    return l2(1j * alpha * u + dv) / scale if scale > 0 else 0.0


def mode_flags(
    eigenvalue: complex,
    residual: float,
    ratio: float,
    speed_range: tuple[float, float],
    criteria: FilterCriteria,
) -> ModeFlags:
    u_min, u_max = speed_range
    return ModeFlags(
        residual_ok=bool(residual <= criteria.residual_tol),
        speed_ok=bool(
            u_min - criteria.speed_margin <= eigenvalue.real <= u_max + criteria.speed_margin
        ),
        continuity_ok=bool(
            criteria.max_divergence_ratio is None or ratio <= criteria.max_divergence_ratio
        ),
    )


def filter_modes(modes: ModeSet, criteria: FilterCriteria | None = None) -> ModeSet:
    """
    Keep modes passing the residual, phase-speed and continuity checks.

    Rejected modes are appended to `removed` of the returned set.
    """
    criteria = criteria or FilterCriteria()
    kept, removed = [], []
    leading_rejected = False
    for rank, mode in enumerate(modes.modes):
        flags = mode_flags(
            mode.eigenvalue, mode.residual, mode.divergence_ratio, modes.speed_range, criteria
        )
        (kept if flags.physical else removed).append(mode.with_flags(flags))
        leading_rejected = leading_rejected or (rank == 0 and not flags.physical)

    if removed:
        logger.info(f"Filtered out {len(removed)} of {len(modes)} modes")
        if leading_rejected:
            lead = removed[0]
            logger.warning(
                f"Leading mode c={lead.eigenvalue:.8g} rejected "
                f"(residual={lead.residual:.2e}, divergence={lead.divergence_ratio:.2e})"
            )
    return ModeSet(
        modes=tuple(kept),
        params=modes.params,
        n_elements=modes.n_elements,
        profile_name=modes.profile_name,
        speed_range=modes.speed_range,
        path=modes.path,
        total_eigenvalues=modes.total_eigenvalues,
        removed=modes.removed + tuple(removed),
    )
