"""Command dispatch from a RunConfig to the numerical packages"""

import logging
from pathlib import Path

from config import DEFAULT_SWEEP_MAX_MODES, Command
from config.run_config import RunConfig, UsageError
from discretization.assembly import assemble_system
from discretization.elements import ParameterError, gauss_rule
from discretization.mesh import MeshError
from discretization.models import StabilityParams
from evals.validate import validate_against_oracle
from orchestrator.models import EXIT_NUMERICAL_FAILURE, EXIT_OK, RunResult
from profiles.flows import FlowProfile, ProfileError, build_profile
from reporting import plots
from reporting.save_results import (
    dump_matrices,
    save_contours,
    save_grid,
    save_mode,
    save_neutral,
    save_run_manifest,
    save_spectrum,
    save_validation,
)
from stability.config import FilterCriteria, SolveOptions
from stability.modes import filter_modes
from stability.solver import StabilityError, solve_system
from sweep.config import MeshConfig, SweepConfig
from sweep.contours import amplification_contours
from sweep.grid import grid_sweep
from sweep.neutral import neutral_curve

logger = logging.getLogger(__name__)

INPUT_ERRORS = (ProfileError, MeshError, ParameterError)


def _criteria(config: RunConfig) -> FilterCriteria:
    return FilterCriteria(
        residual_tol=config.residual_tol,
        speed_margin=config.speed_margin,
        max_divergence_ratio=config.max_divergence_ratio,
    )


def _mesh_config(config: RunConfig) -> MeshConfig:
    return MeshConfig(n_elements=config.elements, a=config.a, grading=config.grading)


def _sweep_config(config: RunConfig) -> SweepConfig:
    return SweepConfig(
        quad_points=config.quad_points,
        path=config.path,
        criteria=_criteria(config),
        workers=config.workers,
        tol_neutral=config.tol_neutral,
        wall_datum=config.wall_datum,
    )


def _complex(value: complex | None) -> list[float] | None:
    return None if value is None else [value.real, value.imag]


def _run_solve(config: RunConfig, profile: FlowProfile, out_dir: Path) -> RunResult:
    """solve and modes: one (Re, alpha), spectrum and optionally mode shapes"""
    mesh = _mesh_config(config).build()
    params = StabilityParams(re=config.re, alpha=config.alpha)
    options = SolveOptions(
        quad_points=config.quad_points,
        path=config.path,
        criteria=_criteria(config),
        wall_datum=config.wall_datum,
    )
    system = assemble_system(
        mesh, profile, params, gauss_rule(config.quad_points), wall_datum=config.wall_datum
    )
    result = RunResult()
    if config.dump_matrices:
        result.artifacts += dump_matrices(system, out_dir)

    modes = filter_modes(solve_system(system, profile, options), options.criteria)
    result.artifacts.append(save_spectrum(modes, out_dir / "spectrum.csv"))
    if config.plots:
        result.artifacts.append(plots.plot_spectrum(modes, out_dir / "spectrum.svg"))

    if config.command == Command.MODES:
        for k, mode in enumerate(modes.modes[: config.count]):
            result.artifacts.append(save_mode(mode, mesh, out_dir / f"mode{k}.csv"))
            if config.plots:
                result.artifacts.append(plots.plot_mode(mode, mesh, out_dir / f"mode{k}.svg"))
        if len(modes) < config.count:
            logger.warning(f"Only {len(modes)} of {config.count} requested modes are physical")

    lead = modes.leading
    result.summary = {
        "leading": _complex(None if lead is None else lead.eigenvalue),
        "physical_modes": len(modes),
        "rejected_modes": len(modes.removed),
        "total_eigenvalues": modes.total_eigenvalues,
    }
    return result


def _run_sweep(config: RunConfig, profile: FlowProfile, out_dir: Path) -> RunResult:
    grid = grid_sweep(
        _mesh_config(config), profile, config.re_values, config.alpha_values, _sweep_config(config)
    )
    result = RunResult(artifacts=[save_grid(grid, out_dir / "grid.csv")])
    if config.levels:
        contours = amplification_contours(grid, config.levels)
        result.artifacts.append(save_contours(contours, out_dir / "contours.csv"))
        if config.plots:
            result.artifacts.append(plots.plot_contours(contours, out_dir / "contours.svg"))
        result.summary["contour_diagnostics"] = {
            str(c.level): c.diagnostic for c in contours if c.diagnostic
        }

    result.summary.update(cells=int(grid.converged.size), converged=int(grid.converged.sum()))
    if grid.failures:
        failed = ", ".join(f"(Re={re:g}, alpha={alpha:g})" for re, alpha in grid.failures)
        result.status = EXIT_NUMERICAL_FAILURE
        result.message = f"{len(grid.failures)} sweep cells failed: {failed}"
        result.summary["failures"] = [
            {"re": re, "alpha": alpha, "reason": reason}
            for (re, alpha), reason in grid.failures.items()
        ]
    return result


def _run_neutral(config: RunConfig, profile: FlowProfile, out_dir: Path) -> RunResult:
    curve = neutral_curve(
        _mesh_config(config),
        profile,
        config.re_values,
        (config.alpha_lo, config.alpha_hi),
        _sweep_config(config),
    )
    result = RunResult(artifacts=[save_neutral(curve, out_dir / "neutral.csv")])
    if config.plots:
        result.artifacts.append(plots.plot_neutral_curve(curve, out_dir / "neutral.svg"))
    critical = curve.critical
    result.summary = {
        "points": len(curve),
        "min_re": None if critical is None else {"re": critical.re, "alpha": critical.alpha},
        "diagnostics": [d.model_dump() for d in curve.diagnostics],
    }
    return result


def _run_validate(config: RunConfig, profile: FlowProfile, out_dir: Path) -> RunResult:
    options = SolveOptions(
        quad_points=config.quad_points,
        path=config.path,
        max_modes=DEFAULT_SWEEP_MAX_MODES,
        criteria=_criteria(config),
        wall_datum=config.wall_datum,
    )
    rows = validate_against_oracle(
        _mesh_config(config).build(), profile, options, config.n_modes, config.workers
    )
    passed = sum(row.passed for row in rows)
    result = RunResult(
        artifacts=save_validation(rows, out_dir),
        summary={"cases": len(rows), "passed": passed},
        table=[row.model_dump() for row in rows],
    )
    if passed < len(rows):
        result.status = EXIT_NUMERICAL_FAILURE
        result.message = f"validation failed for {len(rows) - passed} of {len(rows)} cases"
    return result


HANDLERS = {
    Command.SOLVE: _run_solve,
    Command.MODES: _run_solve,
    Command.SWEEP: _run_sweep,
    Command.NEUTRAL: _run_neutral,
    Command.VALIDATE: _run_validate,
}


def run(config: RunConfig) -> RunResult:
    """
    Execute one command and write its artifacts and run.json to config.out_dir.

    Args:
        config: Validated run configuration

    Returns:
        RunResult; numerical failures give status 1 with the failing (Re, alpha)

    Raises:
        UsageError: the inputs are inconsistent (profile file, mesh parameters)
    """
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f"Running {config.command} into {out_dir}")

    try:
        profile = build_profile(config.profile, config.a, config.profile_file)
        result = HANDLERS[config.command](config, profile, out_dir)
    except INPUT_ERRORS as e:
        raise UsageError(str(e)) from e
    except StabilityError as e:
        logger.error(f"{config.command} failed: {e}")
        result = RunResult(status=EXIT_NUMERICAL_FAILURE, message=str(e))
        result.summary = {"failed": {"re": e.re, "alpha": e.alpha, "reason": e.reason}}

    manifest = save_run_manifest(config, result.artifacts, result.summary, out_dir, result.status)
    result.artifacts.append(manifest)
    if result.status == EXIT_OK:
        logger.info(f"{config.command} finished: {len(result.artifacts)} files")
    return result
