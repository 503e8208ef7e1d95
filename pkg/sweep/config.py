"""Configuration for parameter sweeps"""

from dataclasses import dataclass, field

from config import (
    DEFAULT_CHANNEL_HEIGHT,
    DEFAULT_GRADING_EXPONENT,
    DEFAULT_MAX_BISECTIONS,
    DEFAULT_PRESCAN_POINTS,
    DEFAULT_QUAD_POINTS,
    DEFAULT_SOLVER_PATH,
    DEFAULT_SWEEP_MAX_MODES,
    DEFAULT_SWEEP_WORKERS,
    DEFAULT_TOL_NEUTRAL,
    DEFAULT_TRACKING_JUMP,
    DEFAULT_WALL_DATUM,
    SolverPath,
    WallDatum,
)
from discretization.mesh import Mesh1D, build_mesh
from stability.config import FilterCriteria, SolveOptions


@dataclass
class MeshConfig:
    """Mesh recipe shared by every solve of a sweep"""

    n_elements: int
    a: float = DEFAULT_CHANNEL_HEIGHT
    grading: float = DEFAULT_GRADING_EXPONENT

    def build(self) -> Mesh1D:
        return build_mesh(self.a, self.n_elements, self.grading)


@dataclass
class SweepConfig:
    """Configuration for grid sweeps and neutral-curve tracing"""

    quad_points: int = DEFAULT_QUAD_POINTS
    path: SolverPath = DEFAULT_SOLVER_PATH
    max_modes: int | None = DEFAULT_SWEEP_MAX_MODES
    criteria: FilterCriteria = field(default_factory=FilterCriteria)
    workers: int = DEFAULT_SWEEP_WORKERS
    prescan_points: int = DEFAULT_PRESCAN_POINTS  # coarse alpha scan before bisection
    tol_neutral: float = DEFAULT_TOL_NEUTRAL
    max_bisections: int = DEFAULT_MAX_BISECTIONS
    tracking_jump: float = DEFAULT_TRACKING_JUMP  # max |delta c| for proximity tracking
    wall_datum: WallDatum = DEFAULT_WALL_DATUM

    def solve_options(self) -> SolveOptions:
        return SolveOptions(
            quad_points=self.quad_points,
            path=self.path,
            max_modes=self.max_modes,
            criteria=self.criteria,
            wall_datum=self.wall_datum,
        )
