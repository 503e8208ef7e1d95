"""
Stability pipeline: pressure elimination, eigensolve, pressure recovery and
mode post-processing for K A + L B = c S A, G B = H A.
"""

import logging

import numpy as np

from config import SolverPath
from discretization.assembly import assemble_system
from discretization.elements import gauss_rule
from discretization.mesh import Mesh1D
from discretization.models import AssembledSystem, StabilityParams
from eigensolvers.dense import (
    ConvergenceError,
    IndeterminatePencilError,
    NotDefiniteError,
    SingularMatrixError,
    generalized_qz,
    hessenberg_eig,
    lu_solve,
    symmetric_solve,
)
from profiles.flows import FlowProfile
from stability.config import SolveOptions
from stability.models import Mode, ModeSet, ReducedPencil
from stability.modes import divergence_ratio, mode_flags, normalize

logger = logging.getLogger(__name__)

NUMERICAL_FAILURES = (
    SingularMatrixError,
    NotDefiniteError,
    ConvergenceError,
    IndeterminatePencilError,
)


class StabilityError(RuntimeError):
    """Numerical failure of one (Re, alpha) solve"""

    def __init__(self, re: float, alpha: float, n_elements: int, reason: str):
        self.re = re
        self.alpha = alpha
        self.n_elements = n_elements
        self.reason = reason
        super().__init__(
            f"Stability solve failed at Re={re}, alpha={alpha} ({n_elements} elements): {reason}"
        )


def _failure(system: AssembledSystem, error: Exception) -> StabilityError:
    params = system.params
    logger.error(
        f"Solve failed at Re={params.re}, alpha={params.alpha}: {error}", exc_info=True
    )
    return StabilityError(params.re, params.alpha, system.mesh.n_elements, str(error))


def schur_reduce(system: AssembledSystem) -> ReducedPencil:
    """Eliminate pressure: E = K + L G^-1 H, keeping G^-1 H for pressure recovery."""
    try:
        pressure_map = symmetric_solve(system.G, system.H)
    except (NotDefiniteError, ValueError) as e:
        raise _failure(system, e) from e
    energy = system.K + system.L @ pressure_map
    return ReducedPencil(E=energy, S=system.S, pressure_map=pressure_map)


def recover_pressure(
    system: AssembledSystem, velocity: np.ndarray, pressure_map: np.ndarray | None = None
) -> np.ndarray:
    """B = G^-1 H A for one coefficient vector or a block of columns"""
    velocity = np.asarray(velocity)
    if velocity.shape[0] != system.n_velocity:
        raise ValueError(
            f"Velocity has {velocity.shape[0]} coefficients, system has {system.n_velocity}"
        )
    if pressure_map is not None:
        return pressure_map @ velocity
    try:
        return symmetric_solve(system.G, system.H @ velocity)
    except (NotDefiniteError, ValueError) as e:
        raise _failure(system, e) from e


def equation_residuals(
    system: AssembledSystem,
    velocity: np.ndarray,
    pressure: np.ndarray,
    eigenvalues,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Relative residuals of both discrete equations for columns of coefficients.

    momentum: ||K A + L B - c S A|| / (||K|| ||A|| + ||L|| ||B|| + |c| ||S|| ||A||)
    pressure: ||G B - H A|| / (||G|| ||B|| + ||H|| ||A||)
    """
    velocity = np.atleast_2d(velocity.T).T
    pressure = np.atleast_2d(pressure.T).T
    c = np.atleast_1d(np.asarray(eigenvalues, dtype=complex))
    norm = {key: np.linalg.norm(value) for key, value in system.matrices().items()}
    size_a = np.linalg.norm(velocity, axis=0)
    size_b = np.linalg.norm(pressure, axis=0)

    momentum = system.K @ velocity + system.L @ pressure - (system.S @ velocity) * c
    momentum_scale = (norm["K_h"] + np.abs(c) * norm["S_h"]) * size_a + norm["L_h"] * size_b
    poisson = system.G @ pressure - system.H @ velocity
    poisson_scale = norm["G_h"] * size_b + norm["H_h"] * size_a

    def ratio(values, scale):
        return np.linalg.norm(values, axis=0) / np.where(scale > 0, scale, 1.0)

    return ratio(momentum, momentum_scale), ratio(poisson, poisson_scale)


def _eigensolve(system: AssembledSystem, options: SolveOptions):
    n_vel = system.n_velocity
    if options.path == SolverPath.SCHUR_QR:
        pencil = schur_reduce(system)
        spectrum = hessenberg_eig(
            lu_solve(pencil.S, pencil.E), want_vectors=True, leading=options.max_modes
        )
        velocity = spectrum.vectors
        pressure = recover_pressure(system, velocity, pencil.pressure_map)
        return spectrum.eigenvalues, velocity, pressure

    zero_vp = np.zeros((n_vel, system.n_pressure), dtype=complex)
    zero_pp = np.zeros((system.n_pressure, system.n_pressure), dtype=complex)
    a_block = np.block([[system.K, system.L], [system.H, -system.G]])
    b_block = np.block([[system.S, zero_vp], [zero_vp.T, zero_pp]])
    spectrum = generalized_qz(a_block, b_block, n_finite=n_vel, leading=options.max_modes)
    return spectrum.eigenvalues, spectrum.vectors[:n_vel], spectrum.vectors[n_vel:]


def solve_system(
    system: AssembledSystem,
    profile: FlowProfile,
    options: SolveOptions | None = None,
) -> ModeSet:
    """Eigensolve an assembled system and package normalized, diagnosed modes."""
    options = options or SolveOptions()
    params = system.params
    mesh = system.mesh
    try:
        eigenvalues, velocity, pressure = _eigensolve(system, options)
    except NUMERICAL_FAILURES as e:
        raise _failure(system, e) from e

    speed_range = profile.speed_range()
    columns = [normalize(mesh, velocity[:, k], pressure[:, k]) for k in range(eigenvalues.size)]
    if columns:
        velocity = np.column_stack([col[0] for col in columns])
        pressure = np.column_stack([col[1] for col in columns])
    momentum, poisson = equation_residuals(system, velocity, pressure, eigenvalues)

    modes = []
    for k, c in enumerate(eigenvalues):
        ratio = divergence_ratio(mesh, velocity[:, k], params.alpha)
        residual = max(momentum[k], poisson[k])
        modes.append(
            Mode(
                eigenvalue=complex(c),
                velocity=velocity[:, k],
                pressure=pressure[:, k],
                momentum_residual=float(momentum[k]),
                pressure_residual=float(poisson[k]),
                divergence_ratio=ratio,
                flags=mode_flags(complex(c), residual, ratio, speed_range, options.criteria),
            )
        )

    if modes:
        logger.info(
            f"Solved {options.path} Re={params.re} alpha={params.alpha} "
            f"({mesh.n_elements} elements): {len(modes)} modes, leading c={modes[0].eigenvalue:.8g}"
        )
    return ModeSet(
        modes=tuple(modes),
        params=params,
        n_elements=mesh.n_elements,
        profile_name=profile.name,
        speed_range=speed_range,
        path=SolverPath(options.path),
        total_eigenvalues=system.n_velocity,
    )


def solve_stability(
    mesh: Mesh1D,
    profile: FlowProfile,
    params: StabilityParams,
    options: SolveOptions | None = None,
) -> ModeSet:
    """
    Solve the temporal stability eigenproblem for one (Re, alpha).

    Args:
        mesh: Triangulation of [0, a]
        profile: Base flow
        params: Reynolds number and wave number
        options: Quadrature size, eigen path, mode budget, filter criteria and wall datum

    Returns:
        ModeSet sorted by descending c_i (unfiltered; see filter_modes)

    Raises:
        StabilityError: factorization or eigensolver failure
    """
    options = options or SolveOptions()
    system = assemble_system(
        mesh, profile, params, gauss_rule(options.quad_points), wall_datum=options.wall_datum
    )
    return solve_system(system, profile, options)
