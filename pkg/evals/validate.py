"""FEM-vs-collocation comparison of leading eigenvalues"""

import logging
from collections.abc import Sequence

from pydantic import BaseModel, Field

from config import DEFAULT_ORACLE_MODES
from discretization.mesh import Mesh1D
from discretization.models import StabilityParams
from oracle.collocation import os_spectrum_collocation
from oracle.models import CollocationConfig
from profiles.flows import FlowProfile
from stability.config import SolveOptions
from stability.modes import filter_modes
from stability.solver import StabilityError, solve_stability
from sweep.grid import run_bounded

logger = logging.getLogger(__name__)

ANCHOR_CASE = (10000.0, 1.0)
ANCHOR_TOL = 5e-4  # per component
GRID_RE = (2000.0, 6000.0, 10000.0)
GRID_ALPHA = (0.8, 1.0, 1.2)
GRID_TOL = 1e-3


class ValidationRow(BaseModel):
    """One FEM-vs-oracle comparison"""

    case: str = Field(..., description="anchor or grid")
    re: float
    alpha: float
    fem_c_re: float | None = None
    fem_c_im: float | None = None
    oracle_c_re: float | None = None
    oracle_c_im: float | None = None
    error: float | None = Field(None, description="max componentwise |c_fem - c_oracle|")
    tolerance: float
    oracle_converged: bool = False
    passed: bool = False
    note: str = ""


def validation_cases() -> list[tuple[str, float, float, float]]:
    """(case, Re, alpha, tolerance): the anchor then the 3 x 3 grid"""
    cases = [("anchor", *ANCHOR_CASE, ANCHOR_TOL)]
    cases += [("grid", re, alpha, GRID_TOL) for re in GRID_RE for alpha in GRID_ALPHA]
    return cases


def compare_case(
    mesh: Mesh1D,
    profile: FlowProfile,
    case: str,
    re: float,
    alpha: float,
    tolerance: float,
    options: SolveOptions,
    n_modes: int,
) -> ValidationRow:
    row = ValidationRow(case=case, re=re, alpha=alpha, tolerance=tolerance)
    oracle = os_spectrum_collocation(
        CollocationConfig(profile=profile, re=re, alpha=alpha, n_modes=n_modes)
    )
    row.oracle_converged = oracle.converged
    if oracle.leading is not None:
        row.oracle_c_re, row.oracle_c_im = oracle.leading.real, oracle.leading.imag

    try:
        modes = filter_modes(
            solve_stability(mesh, profile, StabilityParams(re=re, alpha=alpha), options),
            options.criteria,
        )
    except StabilityError as e:
        row.note = f"FEM solve failed: {e.reason}"
        return row
    lead = modes.leading
    if lead is None or oracle.leading is None:
        row.note = "no leading mode"
        return row

    row.fem_c_re, row.fem_c_im = lead.c_r, lead.c_i
    row.error = max(abs(lead.c_r - row.oracle_c_re), abs(lead.c_i - row.oracle_c_im))
    row.passed = oracle.converged and row.error <= tolerance
    if not oracle.converged:
        row.note = f"oracle not converged (gap {oracle.convergence_gap:.2e})"
    return row


def validate_against_oracle(
    mesh: Mesh1D,
    profile: FlowProfile,
    options: SolveOptions | None = None,
    n_modes: int = DEFAULT_ORACLE_MODES,
    workers: int = 1,
    cases: Sequence[tuple[str, float, float, float]] | None = None,
) -> list[ValidationRow]:
    """
    Compare the FEM leading filtered eigenvalue with the collocation oracle.

    Args:
        mesh: FEM mesh
        profile: Base flow (the comparison cases are designed for Poiseuille)
        options: FEM solve options
        n_modes: Chebyshev points for the oracle
        workers: Concurrent cases
        cases: Override of validation_cases()

    Returns:
        One ValidationRow per case, in case order
    """
    options = options or SolveOptions()
    cases = list(cases) if cases is not None else validation_cases()
    items = [(mesh, profile, *case, options, n_modes) for case in cases]
    results = run_bounded(compare_case, items, workers)

    rows = []
    for (case, re, alpha, tolerance), result in zip(cases, results):
        if isinstance(result, Exception):
            logger.error(f"Validation of Re={re}, alpha={alpha} failed: {result}")
            result = ValidationRow(
                case=case, re=re, alpha=alpha, tolerance=tolerance, note=str(result)
            )
        rows.append(result)
    passed = sum(row.passed for row in rows)
    logger.info(f"Validation: {passed}/{len(rows)} cases passed")
    return rows
