"""Base-flow profiles U(y) on the channel [0, a]"""

import logging
from abc import ABC, abstractmethod
from pathlib import Path

import numpy as np
import pandas as pd
from scipy.interpolate import PchipInterpolator

from config import ProfileName

logger = logging.getLogger(__name__)

DOMAIN_TOL = 1e-12
RANGE_SAMPLES = 1001
PROFILE_CSV_COLUMNS = ("y", "U")


class ProfileError(ValueError):
    """Raised for invalid profile parameters, tables or query points"""

    def __init__(self, profile: str, reason: str):
        self.profile = profile
        self.reason = reason
        super().__init__(f"Profile '{profile}': {reason}")


class FlowProfile(ABC):
    """
    Parallel base flow (U(y), 0, 0) on [0, a].

    Subclasses implement `_evaluate`; `evaluate` validates the query points.
    `polynomial_degree` is None for non-polynomial profiles and `curvature`
    returns None when U'' has no closed form.
    """

    name: str = "profile"
    polynomial_degree: int | None = None

    def __init__(self, a: float):
        if not np.isfinite(a) or a <= 0:
            raise ProfileError(self.name, f"height a must be positive, got {a!r}")
        self.a = float(a)

    @abstractmethod
    def _evaluate(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]: ...

    def _curvature(self, y: np.ndarray) -> np.ndarray | None:
        return None

    def _check(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        slack = DOMAIN_TOL * self.a
        if np.any(~np.isfinite(y)) or np.any(y < -slack) or np.any(y > self.a + slack):
            raise ProfileError(self.name, f"query outside [0, {self.a}]")
        return np.clip(y, 0.0, self.a)

    def evaluate(self, y) -> tuple[np.ndarray, np.ndarray]:
        """Return (U(y), U'(y)) for scalar or array y"""
        return self._evaluate(self._check(y))

    def curvature(self, y) -> np.ndarray | None:
        return self._curvature(self._check(y))

    def speed_range(self) -> tuple[float, float]:
        u_base, _ = self.evaluate(np.linspace(0.0, self.a, RANGE_SAMPLES))
        return float(np.min(u_base)), float(np.max(u_base))

    def shifted(self, kappa: float) -> "FlowProfile":
        return ShiftedProfile(self, kappa)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, a={self.a})"


class PoiseuilleProfile(FlowProfile):
    """U = 4 y (a - y) / a^2, unit centerline speed"""

    name = ProfileName.POISEUILLE.value
    polynomial_degree = 2

    def _evaluate(self, y):
        a2 = self.a**2
        return 4.0 * y * (self.a - y) / a2, 4.0 * (self.a - 2.0 * y) / a2

    def _curvature(self, y):
        return np.full_like(y, -8.0 / self.a**2)


class CouetteProfile(FlowProfile):
    """U = y / a"""

    name = ProfileName.COUETTE.value
    polynomial_degree = 1

    def _evaluate(self, y):
        return y / self.a, np.full_like(y, 1.0 / self.a)

    def _curvature(self, y):
        return np.zeros_like(y)


class TabulatedProfile(FlowProfile):
    """Monotone piecewise-cubic (PCHIP) interpolant of sampled (y, U) pairs"""

    name = ProfileName.TABULATED.value

    def __init__(self, y_samples, u_samples, a: float):
        super().__init__(a)
        y_samples = np.asarray(y_samples, dtype=float)
        u_samples = np.asarray(u_samples, dtype=float)
        if y_samples.ndim != 1 or y_samples.shape != u_samples.shape:
            raise ProfileError(self.name, "y and U samples must be 1D and equally long")
        if y_samples.size < 2:
            raise ProfileError(self.name, "need at least two samples")
        if not (np.all(np.isfinite(y_samples)) and np.all(np.isfinite(u_samples))):
            raise ProfileError(self.name, "samples must be finite")
        if np.any(np.diff(y_samples) <= 0):
            raise ProfileError(self.name, "y samples must be strictly increasing")
        slack = DOMAIN_TOL * self.a
        if y_samples[0] > slack or y_samples[-1] < self.a - slack:
            raise ProfileError(
                self.name,
                f"samples span [{y_samples[0]}, {y_samples[-1]}], must cover [0, {self.a}]",
            )
        self._interpolant = PchipInterpolator(y_samples, u_samples)
        self._slope = self._interpolant.derivative()
        self.n_samples = y_samples.size

    def _evaluate(self, y):
        return self._interpolant(y), self._slope(y)


class ShiftedProfile(FlowProfile):
    """U + kappa; U' unchanged"""

    def __init__(self, base: FlowProfile, kappa: float):
        super().__init__(base.a)
        self.base = base
        self.kappa = float(kappa)
        self.name = base.name
        self.polynomial_degree = base.polynomial_degree

    def _evaluate(self, y):
        u_base, du_base = self.base._evaluate(y)
        return u_base + self.kappa, du_base

    def _curvature(self, y):
        return self.base._curvature(y)


def poiseuille(a: float) -> FlowProfile:
    return PoiseuilleProfile(a)


def couette(a: float) -> FlowProfile:
    return CouetteProfile(a)


def tabulated(samples, a: float) -> FlowProfile:
    """Build a tabulated profile from a sequence of (y, U) pairs."""
    pairs = np.asarray(samples, dtype=float)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ProfileError(ProfileName.TABULATED.value, "samples must be (y, U) pairs")
    return TabulatedProfile(pairs[:, 0], pairs[:, 1], a)


def load_profile_csv(path: str | Path, a: float | None = None) -> FlowProfile:
    """
    Load a tabulated profile from a CSV file with header `y,U`.

    Args:
        path: CSV file path
        a: Channel height; defaults to the largest tabulated y

    Returns:
        TabulatedProfile over [0, a]

    Raises:
        ProfileError: missing or unreadable file, missing columns, non-numeric samples
    """
    path = Path(path)
    if not path.exists():
        raise ProfileError(ProfileName.TABULATED.value, f"file not found: {path}")
    try:
        df = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ProfileError(ProfileName.TABULATED.value, f"unreadable CSV {path}: {e}") from e

    missing = [col for col in PROFILE_CSV_COLUMNS if col not in df.columns]
    if missing:
        raise ProfileError(ProfileName.TABULATED.value, f"{path} lacks columns {missing}")

    try:
        y_samples = df["y"].to_numpy(dtype=float)
        u_samples = df["U"].to_numpy(dtype=float)
    except (ValueError, TypeError) as e:
        reason = f"non-numeric samples in {path}: {e}"
        raise ProfileError(ProfileName.TABULATED.value, reason) from e

    height = float(y_samples.max()) if a is None else a
    logger.info(f"Loaded {len(df)} profile samples from {path} (a={height})")
    return TabulatedProfile(y_samples, u_samples, height)


def build_profile(
    name: ProfileName | str, a: float, profile_file: str | Path | None = None
) -> FlowProfile:
    name = ProfileName(name)
    if name == ProfileName.POISEUILLE:
        return poiseuille(a)
    if name == ProfileName.COUETTE:
        return couette(a)
    if profile_file is None:
        raise ProfileError(name.value, "a profile file is required")
    return load_profile_csv(profile_file, a)
