"""Configuration for the stability solver"""

from dataclasses import dataclass, field

from config import (
    DEFAULT_CR_MARGIN,
    DEFAULT_MAX_DIVERGENCE_RATIO,
    DEFAULT_QUAD_POINTS,
    DEFAULT_RESIDUAL_TOL,
    DEFAULT_SOLVER_PATH,
    DEFAULT_WALL_DATUM,
    SolverPath,
    WallDatum,
)


@dataclass
class FilterCriteria:
    """Acceptance rules separating physical modes from discretization artifacts"""

    residual_tol: float = DEFAULT_RESIDUAL_TOL  # relative residual of both equations
    speed_margin: float = DEFAULT_CR_MARGIN  # c_r allowed outside [min U, max U] by this much
    max_divergence_ratio: float | None = DEFAULT_MAX_DIVERGENCE_RATIO  # None switches it off


@dataclass
class SolveOptions:
    """Options for one solve_stability call"""

    quad_points: int = DEFAULT_QUAD_POINTS
    path: SolverPath = DEFAULT_SOLVER_PATH
    max_modes: int | None = None  # eigenvectors only for this many leading eigenvalues
    criteria: FilterCriteria = field(default_factory=FilterCriteria)
    wall_datum: WallDatum = DEFAULT_WALL_DATUM
