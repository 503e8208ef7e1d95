"""Neutral-curve extraction: coarse alpha pre-scan then bisection on sign(c_i)"""

import logging
from collections.abc import Sequence

import numpy as np

from discretization.mesh import Mesh1D
from profiles.flows import FlowProfile
from stability.config import SolveOptions
from stability.models import Mode
from stability.solver import StabilityError
from sweep.config import MeshConfig, SweepConfig
from sweep.grid import run_bounded, select_tracked, solve_filtered
from sweep.models import NeutralCurve, NeutralDiagnostic, NeutralPoint

logger = logging.getLogger(__name__)

VERIFY_FACTOR = 2.0


class _Line:
    """Neutral search along alpha at one Reynolds number"""

    def __init__(
        self,
        mesh: Mesh1D,
        profile: FlowProfile,
        re: float,
        options: SolveOptions,
        config: SweepConfig,
    ):
        self.mesh = mesh
        self.profile = profile
        self.re = re
        self.options = options
        self.config = config
        self.diagnostics: list[NeutralDiagnostic] = []

    def _note(self, reason: str) -> None:
        logger.warning(f"Re={self.re}: {reason}")
        self.diagnostics.append(NeutralDiagnostic(re=self.re, reason=reason))

    def _mode(self, alpha: float, previous: complex | None) -> Mode | None:
        modes = solve_filtered(self.mesh, self.profile, self.re, alpha, self.options)
        return select_tracked(modes, previous, self.config.tracking_jump)

    def prescan(self, alpha_lo: float, alpha_hi: float) -> list[tuple[float, Mode]]:
        scanned, previous = [], None
        for alpha in np.linspace(alpha_lo, alpha_hi, self.config.prescan_points):
            try:
                mode = self._mode(float(alpha), previous)
            except StabilityError as e:
                self._note(f"pre-scan solve failed at alpha={alpha}: {e.reason}")
                mode = None
            if mode is None:
                previous = None
                continue
            scanned.append((float(alpha), mode))
            previous = mode.eigenvalue
        return scanned

    def bisect(self, lower: tuple[float, Mode], upper: tuple[float, Mode], branch: int):
        (alpha_lo, mode_lo), (alpha_hi, _) = lower, upper
        sign_lo = np.sign(mode_lo.c_i)
        previous = mode_lo.eigenvalue
        tol = self.config.tol_neutral
        for iteration in range(1, self.config.max_bisections + 1):
            alpha_mid = 0.5 * (alpha_lo + alpha_hi)
            mode = self._mode(alpha_mid, previous)
            if mode is None:
                self._note(f"no physical mode at alpha={alpha_mid} during bisection")
                return None
            if abs(mode.c_i) <= tol:
                return NeutralPoint(
                    re=self.re,
                    alpha=alpha_mid,
                    c_r=mode.c_r,
                    c_i=mode.c_i,
                    branch=branch,
                    iterations=iteration,
                )
            previous = mode.eigenvalue
            if np.sign(mode.c_i) == sign_lo:
                alpha_lo, mode_lo = alpha_mid, mode
            else:
                alpha_hi = alpha_mid
        self._note(
            f"bisection in [{alpha_lo}, {alpha_hi}] stopped after "
            f"{self.config.max_bisections} steps above tolerance {tol}"
        )
        return None

    def verify(self, point: NeutralPoint) -> bool:
        """Re-solve from scratch and check the leading mode is still neutral"""
        lead = solve_filtered(self.mesh, self.profile, self.re, point.alpha, self.options).leading
        if lead is None or abs(lead.c_i) > VERIFY_FACTOR * self.config.tol_neutral:
            found = "none" if lead is None else f"{lead.c_i:.3e}"
            self._note(f"alpha={point.alpha} failed verification (leading c_i={found})")
            return False
        return True

    def _exact_zero(self, alpha: float, mode: Mode, branch: int) -> NeutralPoint:
        return NeutralPoint(
            re=self.re, alpha=alpha, c_r=mode.c_r, c_i=0.0, branch=branch, iterations=0
        )

    def run(self, alpha_lo: float, alpha_hi: float):
        scanned = self.prescan(alpha_lo, alpha_hi)
        points: list[NeutralPoint] = []
        brackets: list[tuple[float, float]] = []
        for (a0, m0), (a1, m1) in zip(scanned, scanned[1:]):
            if m0.c_i == 0.0:
                brackets.append((a0, a0))
                points.append(self._exact_zero(a0, m0, branch=len(brackets) - 1))
            elif np.sign(m0.c_i) != np.sign(m1.c_i) and m1.c_i != 0.0:
                brackets.append((a0, a1))
                point = self.bisect((a0, m0), (a1, m1), branch=len(brackets) - 1)
                if point is not None:
                    points.append(point)
        if scanned and scanned[-1][1].c_i == 0.0:
            alpha, mode = scanned[-1]
            brackets.append((alpha, alpha))
            points.append(self._exact_zero(alpha, mode, branch=len(brackets) - 1))

        if not brackets:
            self._note(
                f"no sign change of c_i in [{alpha_lo}, {alpha_hi}] "
                "(stable or bracket too narrow)"
            )
        verified = [point for point in points if self.verify(point)]
        return verified, brackets, self.diagnostics


def neutral_curve(
    mesh_config: MeshConfig,
    profile: FlowProfile,
    re_values: Sequence[float],
    alpha_bracket: tuple[float, float],
    config: SweepConfig | None = None,
) -> NeutralCurve:
    """
    Neutral points c_i(Re, alpha) = 0 by alpha-bisection at each Re.

    A pre-scan of `config.prescan_points` alphas locates every sign change of the
    tracked leading c_i in the bracket, so both branches of a closed neutral curve
    are found. Reynolds numbers without a sign change are reported in diagnostics.

    Args:
        mesh_config: Mesh recipe
        profile: Base flow
        re_values: Reynolds numbers to scan
        alpha_bracket: (alpha_lo, alpha_hi)
        config: Sweep configuration (tol_neutral, prescan_points, workers, ...)

    Returns:
        NeutralCurve with verified points sorted by (Re, alpha)
    """
    config = config or SweepConfig()
    alpha_lo, alpha_hi = map(float, alpha_bracket)
    if not (0 < alpha_lo < alpha_hi):
        raise ValueError(f"alpha bracket must satisfy 0 < lo < hi, got {alpha_bracket}")
    if config.prescan_points < 2:
        raise ValueError("prescan_points must be at least 2")
    re_axis = np.unique(np.asarray(re_values, dtype=float))
    if re_axis.size == 0 or np.any(re_axis <= 0):
        raise ValueError("Re values must be a nonempty list of positive numbers")

    mesh = mesh_config.build()
    options = config.solve_options()

    def trace(re: float):
        return _Line(mesh, profile, re, options, config).run(alpha_lo, alpha_hi)

    logger.info(
        f"Tracing neutral curve over {re_axis.size} Re values, alpha in [{alpha_lo}, {alpha_hi}]"
    )
    results = run_bounded(trace, [(float(re),) for re in re_axis], config.workers)

    points: list[NeutralPoint] = []
    brackets: dict[float, list[tuple[float, float]]] = {}
    diagnostics: list[NeutralDiagnostic] = []
    for re, result in zip(re_axis, results):
        re = float(re)
        if isinstance(result, Exception):
            logger.warning(f"Neutral search at Re={re} failed: {result}")
            diagnostics.append(NeutralDiagnostic(re=re, reason=f"search failed: {result}"))
            brackets[re] = []
            continue
        line_points, line_brackets, line_diagnostics = result
        points.extend(line_points)
        brackets[re] = line_brackets
        diagnostics.extend(line_diagnostics)

    points.sort(key=lambda point: (point.re, point.alpha))
    logger.info(f"Found {len(points)} neutral points")
    return NeutralCurve(
        points=tuple(points),
        brackets=brackets,
        diagnostics=tuple(diagnostics),
        tol_neutral=config.tol_neutral,
    )


def wave_speed_along_curve(curve: NeutralCurve) -> list[tuple[float, float, float]]:
    """(Re, alpha, c_r) of every neutral point, in curve order"""
    return [(point.re, point.alpha, point.c_r) for point in curve.points]
