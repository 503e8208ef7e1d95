"""Pydantic records and result containers for parameter sweeps"""

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, Field


class GridCell(BaseModel):
    """One (Re, alpha) cell of a sweep grid"""

    re: float = Field(..., gt=0, description="Reynolds number")
    alpha: float = Field(..., gt=0, description="Streamwise wave number")
    c_re: float = Field(..., description="Wave speed of the leading filtered mode (NaN if failed)")
    c_im: float = Field(..., description="Amplification rate of the leading filtered mode")
    converged: bool = Field(..., description="False when the solve failed or no mode survived")


class NeutralPoint(BaseModel):
    """A point of the neutral curve c_i(Re, alpha) = 0"""

    re: float = Field(..., gt=0)
    alpha: float = Field(..., gt=0)
    c_r: float = Field(..., description="Wave speed of the neutral mode")
    c_i: float = Field(..., description="Residual amplification rate at the returned alpha")
    branch: int = Field(..., ge=0, description="Crossing index in increasing alpha (0 = lower)")
    iterations: int = Field(..., ge=0, description="Bisection steps used")


class NeutralDiagnostic(BaseModel):
    re: float
    reason: str


@dataclass(frozen=True, eq=False)
class SweepGrid:
    """Leading eigenvalue per (Re, alpha); failed cells hold NaN and converged=False"""

    re_values: np.ndarray
    alpha_values: np.ndarray
    eigenvalues: np.ndarray  # (n_re, n_alpha)
    converged: np.ndarray  # (n_re, n_alpha) bool
    failures: dict[tuple[float, float], str] = field(default_factory=dict)

    @property
    def growth(self) -> np.ndarray:
        return self.eigenvalues.imag

    def records(self) -> list[GridCell]:
        return [
            GridCell(
                re=float(re),
                alpha=float(alpha),
                c_re=float(self.eigenvalues[i, j].real),
                c_im=float(self.eigenvalues[i, j].imag),
                converged=bool(self.converged[i, j]),
            )
            for i, re in enumerate(self.re_values)
            for j, alpha in enumerate(self.alpha_values)
        ]


@dataclass(frozen=True, eq=False)
class NeutralCurve:
    """Neutral points sorted by (Re, alpha) with the alpha brackets tried per Re"""

    points: tuple[NeutralPoint, ...]
    brackets: dict[float, list[tuple[float, float]]]
    diagnostics: tuple[NeutralDiagnostic, ...] = ()
    tol_neutral: float = 0.0

    def __len__(self) -> int:
        return len(self.points)

    @property
    def critical(self) -> NeutralPoint | None:
        """Point of smallest Re (lowest alpha among ties)"""
        return self.points[0] if self.points else None


@dataclass(frozen=True, eq=False)
class AmplificationContour:
    """Polylines (columns Re, alpha) of c_i = level; diagnostic set when none exist"""

    level: float
    polylines: list[np.ndarray]
    diagnostic: str | None = None
