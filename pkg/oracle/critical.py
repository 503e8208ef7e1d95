"""Critical Reynolds number by nested search on the collocation spectrum"""

import logging

import numpy as np
from scipy.optimize import minimize_scalar

from config import DEFAULT_ORACLE_MODES
from oracle.collocation import os_spectrum_collocation
from oracle.models import CollocationConfig, CriticalPoint
from profiles.flows import FlowProfile

logger = logging.getLogger(__name__)

COARSE_ALPHA_POINTS = 9
ALPHA_TOL = 1e-8
RE_REL_TOL = 1e-7
MAX_RE_BISECTIONS = 100


def _leading(profile: FlowProfile, re: float, alpha: float, n_modes: int) -> complex:
    config = CollocationConfig(
        profile=profile, re=re, alpha=alpha, n_modes=n_modes, check_convergence=False
    )
    spectrum = os_spectrum_collocation(config)
    if spectrum.leading is None:
        return complex(np.nan, -np.inf)
    return spectrum.leading


def max_growth(
    profile: FlowProfile,
    re: float,
    alpha_bounds: tuple[float, float],
    n_modes: int = DEFAULT_ORACLE_MODES,
) -> tuple[float, complex]:
    """
    Wave number maximizing the leading c_i at fixed Re.

    A coarse scan picks the bracket, bounded Brent refines it.

    Returns:
        (alpha, leading eigenvalue at alpha)
    """
    alpha_lo, alpha_hi = sorted(map(float, alpha_bounds))
    if alpha_lo == alpha_hi:
        return alpha_lo, _leading(profile, re, alpha_lo, n_modes)

    coarse = np.linspace(alpha_lo, alpha_hi, COARSE_ALPHA_POINTS)
    values = [_leading(profile, re, float(alpha), n_modes) for alpha in coarse]
    best = int(np.argmax([value.imag for value in values]))
    bracket = (coarse[max(best - 1, 0)], coarse[min(best + 1, coarse.size - 1)])
    result = minimize_scalar(
        lambda alpha: -_leading(profile, re, alpha, n_modes).imag,
        bounds=bracket,
        method="bounded",
        options={"xatol": ALPHA_TOL},
    )
    refined = _leading(profile, re, float(result.x), n_modes)
    if refined.imag >= values[best].imag:
        return float(result.x), refined
    return float(coarse[best]), values[best]


def critical_point(
    profile: FlowProfile,
    re_bounds: tuple[float, float],
    alpha_bounds: tuple[float, float],
    n_modes: int = DEFAULT_ORACLE_MODES,
) -> CriticalPoint:
    """
    Smallest Re in the box at which max over alpha of c_i crosses zero.

    Bisects on Re to a relative tolerance of 1e-7. A degenerate Re range
    reduces to a search in alpha only. Boxes without a sign change give
    `found=False` with a message.
    """
    re_lo, re_hi = sorted(map(float, re_bounds))
    if re_lo <= 0 or min(alpha_bounds) <= 0:
        raise ValueError("search box must lie in Re > 0, alpha > 0")

    def growth(re: float) -> tuple[float, complex]:
        return max_growth(profile, re, alpha_bounds, n_modes)

    if re_lo == re_hi:
        alpha, value = growth(re_lo)
        unstable = value.imag >= 0
        return CriticalPoint(
            found=unstable,
            re=re_lo,
            alpha=alpha,
            c_r=value.real,
            max_growth=value.imag,
            message="single Re: alpha search only"
            + ("" if unstable else "; no unstable wave number"),
        )

    alpha_hi_re, value_hi = growth(re_hi)
    if value_hi.imag < 0:
        logger.info(f"No instability up to Re={re_hi} (max c_i={value_hi.imag:.3e})")
        return CriticalPoint(found=False, message=f"stable over the whole box up to Re={re_hi}")
    _, value_lo = growth(re_lo)
    if value_lo.imag >= 0:
        return CriticalPoint(
            found=False, message=f"already unstable at Re={re_lo}; lower the Re bound"
        )

    lower, upper = re_lo, re_hi
    best_alpha, best_value = alpha_hi_re, value_hi
    for _ in range(MAX_RE_BISECTIONS):
        if upper - lower <= RE_REL_TOL * upper:
            break
        middle = 0.5 * (lower + upper)
        alpha, value = growth(middle)
        if value.imag >= 0:
            upper, best_alpha, best_value = middle, alpha, value
        else:
            lower = middle

    logger.info(f"Critical point Re={upper:.8g}, alpha={best_alpha:.8g}, c_r={best_value.real:.8g}")
    return CriticalPoint(
        found=True,
        re=upper,
        alpha=best_alpha,
        c_r=best_value.real,
        max_growth=best_value.imag,
        message="bisection converged",
    )
