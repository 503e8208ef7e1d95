"""Rectangular (Re, alpha) sweeps and the concurrency helper shared by sweeps"""

import asyncio
import logging
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from discretization.mesh import Mesh1D
from discretization.models import StabilityParams
from profiles.flows import FlowProfile
from stability.config import FilterCriteria, SolveOptions
from stability.models import Mode, ModeSet
from stability.modes import filter_modes
from stability.solver import solve_stability
from sweep.config import MeshConfig, SweepConfig
from sweep.models import SweepGrid

logger = logging.getLogger(__name__)


async def _bounded_gather(fn: Callable, items: Sequence[tuple], workers: int) -> list[Any]:
    semaphore = asyncio.Semaphore(max(1, workers))

    async def run_one(args: tuple):
        async with semaphore:
            return await asyncio.to_thread(fn, *args)

    tasks = [asyncio.create_task(run_one(args)) for args in items]
    return await asyncio.gather(*tasks, return_exceptions=True)


def run_bounded(fn: Callable, items: Sequence[tuple], workers: int) -> list[Any]:
    """
    Run fn(*args) for every args tuple in worker threads, at most `workers` at once.

    Results keep the order of `items`; exceptions are returned in place of results.
    """
    return asyncio.run(_bounded_gather(fn, items, workers))


def leading_mode(modes: ModeSet, criteria: FilterCriteria) -> Mode | None:
    """Filtered mode of largest c_i"""
    return filter_modes(modes, criteria).leading


def select_tracked(
    modes: ModeSet, previous: complex | None, jump: float
) -> Mode | None:
    """
    Mode nearest to `previous` in the complex plane; falls back to the mode of
    largest c_i when there is no previous value or the nearest one is further
    than `jump` away.
    """
    if not modes.modes:
        return None
    if previous is None or not np.isfinite(previous):
        return modes.leading
    nearest = min(modes.modes, key=lambda mode: abs(mode.eigenvalue - previous))
    if abs(nearest.eigenvalue - previous) <= jump:
        return nearest
    logger.debug(f"Tracking jump from c={previous:.6g}; using the leading mode")
    return modes.leading


def solve_filtered(
    mesh: Mesh1D, profile: FlowProfile, re: float, alpha: float, options: SolveOptions
) -> ModeSet:
    modes = solve_stability(mesh, profile, StabilityParams(re=re, alpha=alpha), options)
    return filter_modes(modes, options.criteria)


def _check_axis(values: Sequence[float], name: str) -> np.ndarray:
    axis = np.unique(np.asarray(values, dtype=float))
    if axis.size == 0:
        raise ValueError(f"{name} list is empty")
    if np.any(~np.isfinite(axis)) or np.any(axis <= 0):
        raise ValueError(f"{name} values must be positive and finite")
    return axis


def grid_sweep(
    mesh_config: MeshConfig,
    profile: FlowProfile,
    re_values: Sequence[float],
    alpha_values: Sequence[float],
    config: SweepConfig | None = None,
) -> SweepGrid:
    """
    Leading filtered eigenvalue on the (Re, alpha) grid.

    Args:
        mesh_config: Mesh recipe
        profile: Base flow
        re_values: Reynolds numbers (sorted and de-duplicated)
        alpha_values: Wave numbers (sorted and de-duplicated)
        config: Solver options, filter and worker count

    Returns:
        SweepGrid; a failing cell is flagged, never fatal
    """
    config = config or SweepConfig()
    re_axis = _check_axis(re_values, "Re")
    alpha_axis = _check_axis(alpha_values, "alpha")
    mesh = mesh_config.build()
    options = config.solve_options()

    def solve_cell(re: float, alpha: float) -> Mode | None:
        return solve_filtered(mesh, profile, re, alpha, options).leading

    cells = [(float(re), float(alpha)) for re in re_axis for alpha in alpha_axis]
    logger.info(
        f"Sweeping {len(re_axis)} x {len(alpha_axis)} grid "
        f"({mesh.n_elements} elements, {config.workers} workers)"
    )
    results = run_bounded(solve_cell, cells, config.workers)

    eigenvalues = np.full((re_axis.size, alpha_axis.size), np.nan + 1j * np.nan)
    converged = np.zeros(eigenvalues.shape, dtype=bool)
    failures: dict[tuple[float, float], str] = {}
    for index, ((re, alpha), result) in enumerate(zip(cells, results)):
        i, j = divmod(index, alpha_axis.size)
        if isinstance(result, Exception):
            logger.warning(f"Cell Re={re}, alpha={alpha} failed: {result}")
            failures[(re, alpha)] = str(result)
        elif result is None:
            logger.warning(f"Cell Re={re}, alpha={alpha}: no mode passed the filter")
            failures[(re, alpha)] = "no physical mode"
        else:
            eigenvalues[i, j] = result.eigenvalue
            converged[i, j] = True

    return SweepGrid(
        re_values=re_axis,
        alpha_values=alpha_axis,
        eigenvalues=eigenvalues,
        converged=converged,
        failures=failures,
    )
