from stability.config import FilterCriteria, SolveOptions
from stability.models import Mode, ModeFlags, ModeSet, ReducedPencil
from stability.modes import divergence_ratio, evaluate_mode, filter_modes
from stability.solver import (
    StabilityError,
    equation_residuals,
    recover_pressure,
    schur_reduce,
    solve_stability,
    solve_system,
)
