"""Data types produced by the stability solver"""

from dataclasses import dataclass, field, replace

import numpy as np

from config import SolverPath
from discretization.models import StabilityParams


@dataclass(frozen=True, eq=False)
class ReducedPencil:
    """Velocity-only pencil (E, S) with E = K + L G^-1 H; pressure_map = G^-1 H"""

    E: np.ndarray
    S: np.ndarray
    pressure_map: np.ndarray


@dataclass(frozen=True)
class ModeFlags:
    residual_ok: bool
    speed_ok: bool
    continuity_ok: bool = True

    @property
    def physical(self) -> bool:
        return self.residual_ok and self.speed_ok and self.continuity_ok


@dataclass(frozen=True, eq=False)
class Mode:
    """
    One eigenpair: c = c_r + i c_i with interleaved velocity coefficients
    (u_1, v_1, ..., u_{2N+1}, v_{2N+1}) and pressure coefficients p_0..p_{N+1}.
    """

    eigenvalue: complex
    velocity: np.ndarray
    pressure: np.ndarray
    momentum_residual: float
    pressure_residual: float
    divergence_ratio: float
    flags: ModeFlags

    @property
    def c_r(self) -> float:
        return float(self.eigenvalue.real)

    @property
    def c_i(self) -> float:
        return float(self.eigenvalue.imag)

    @property
    def residual(self) -> float:
        return max(self.momentum_residual, self.pressure_residual)

    @property
    def u_coefficients(self) -> np.ndarray:
        return self.velocity[0::2]

    @property
    def v_coefficients(self) -> np.ndarray:
        return self.velocity[1::2]

    def with_flags(self, flags: ModeFlags) -> "Mode":
        return replace(self, flags=flags)


@dataclass(frozen=True, eq=False)
class ModeSet:
    """Modes sorted by descending c_i with the provenance of the solve"""

    modes: tuple[Mode, ...]
    params: StabilityParams
    n_elements: int
    profile_name: str
    speed_range: tuple[float, float]
    path: SolverPath
    total_eigenvalues: int
    removed: tuple[Mode, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.modes)

    def __iter__(self):
        return iter(self.modes)

    @property
    def leading(self) -> Mode | None:
        return self.modes[0] if self.modes else None

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([mode.eigenvalue for mode in self.modes], dtype=complex)
