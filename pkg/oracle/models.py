"""Data types for the collocation cross-check"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field

from config import DEFAULT_ORACLE_MODES
from eigensolvers.models import Spectrum
from profiles.flows import DOMAIN_TOL, FlowProfile

MIN_ORACLE_MODES = 16


@dataclass(frozen=True)
class CollocationConfig:
    """
    Chebyshev collocation of the clamped Orr-Sommerfeld problem on
    [y_start, y_start + a], mapped affinely from [-1, 1].
    """

    profile: FlowProfile
    re: float
    alpha: float
    n_modes: int = DEFAULT_ORACLE_MODES
    a: float | None = None  # defaults to the profile height
    y_start: float = 0.0
    check_convergence: bool = True

    def __post_init__(self):
        if self.n_modes < MIN_ORACLE_MODES:
            raise ValueError(f"n_modes must be >= {MIN_ORACLE_MODES}, got {self.n_modes}")
        for name in ("re", "alpha"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.height <= 0 or self.y_start < 0:
            raise ValueError("collocation interval must have positive length inside [0, a]")
        if self.y_start + self.height > self.profile.a * (1 + DOMAIN_TOL):
            raise ValueError(
                f"interval [{self.y_start}, {self.y_start + self.height}] exceeds "
                f"profile domain [0, {self.profile.a}]"
            )

    @property
    def height(self) -> float:
        return self.profile.a if self.a is None else self.a

    def to_physical(self, x: np.ndarray) -> np.ndarray:
        return self.y_start + 0.5 * self.height * (x + 1.0)


@dataclass(frozen=True, eq=False)
class OracleSpectrum(Spectrum):
    """Collocation spectrum with its self-convergence check (M vs M + 16)"""

    converged: bool = True
    convergence_gap: float = 0.0


class CriticalPoint(BaseModel):
    """Smallest Reynolds number with a neutral wave number in the search box"""

    found: bool = Field(..., description="False when no sign change of max growth exists")
    re: float | None = Field(None, description="Critical Reynolds number")
    alpha: float | None = Field(None, description="Critical wave number")
    c_r: float | None = Field(None, description="Wave speed at the critical point")
    max_growth: float | None = Field(None, description="max over alpha of c_i at the returned Re")
    message: str = Field("", description="Why the search stopped")
