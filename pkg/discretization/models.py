"""Data types shared by the element and assembly layers"""

from dataclasses import dataclass, field

import numpy as np

from discretization.mesh import Mesh1D


@dataclass(frozen=True, eq=False)
class ShapeSet:
    """Local basis values and y-derivatives at one point of an element of length h"""

    xi: float
    h: float
    values: np.ndarray
    first: np.ndarray  # d/dy
    second: np.ndarray  # d2/dy2

    @property
    def size(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Legendre rule on the reference interval [0, 1]"""

    points: np.ndarray
    weights: np.ndarray

    @property
    def npts(self) -> int:
        return self.points.size

    @property
    def exactness(self) -> int:
        return 2 * self.npts - 1


@dataclass(frozen=True, eq=False)
class ElementMatrices:
    """
    Integral blocks of one element.

    Row/column conventions follow the integrand order: M[n, k] = int phi_n phi_k,
    B[m, k] = int psi_m phi_k, C[m, k] = int psi_m phi'_k, D[n, l] = int U' phi_n psi_l.
    """

    h: float
    M: np.ndarray
    A: np.ndarray
    MU: np.ndarray
    MUp: np.ndarray
    B: np.ndarray
    C: np.ndarray
    Mp: np.ndarray
    Ap: np.ndarray
    D: np.ndarray

    BLOCK_NAMES = ("M", "A", "MU", "MUp", "B", "C", "Mp", "Ap", "D")


@dataclass(frozen=True)
class StabilityParams:
    """Reynolds number and streamwise wave number of one eigenproblem"""

    re: float
    alpha: float

    def __post_init__(self):
        for name in ("re", "alpha"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True, eq=False)
class AssembledSystem:
    """
    Global matrices of K A + L B = c S A, G B = H A.

    Velocity unknowns are interleaved (u_1, v_1, ..., u_{2N+1}, v_{2N+1});
    pressure unknowns follow the global pressure numbering 0..N+1.
    """

    K: np.ndarray
    S: np.ndarray
    L: np.ndarray
    G: np.ndarray
    H: np.ndarray
    params: StabilityParams
    mesh: Mesh1D
    ordering: str = field(default="interleaved")

    @property
    def n_velocity(self) -> int:
        return self.K.shape[0]

    @property
    def n_pressure(self) -> int:
        return self.G.shape[0]

    def matrices(self) -> dict[str, np.ndarray]:
        return {"K_h": self.K, "S_h": self.S, "L_h": self.L, "G_h": self.G, "H_h": self.H}
