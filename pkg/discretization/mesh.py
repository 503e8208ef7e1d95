"""1D triangulation of the channel [0, a] and its global numbering tables."""

import logging
from dataclasses import dataclass

import numpy as np

from config import DEFAULT_GRADING_EXPONENT

logger = logging.getLogger(__name__)

WALL_SENTINEL = 0  # L1 entry for a wall-constrained velocity node
SUM_TOL = 1e-12


class MeshError(ValueError):
    """Raised when mesh parameters are invalid or an element is degenerate"""

    def __init__(self, parameter: str, value: object, reason: str):
        self.parameter = parameter
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid mesh {parameter}={value!r}: {reason}")


def _readonly(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


@dataclass(frozen=True, eq=False)
class Mesh1D:
    """Ordered nodes 0 = y_0 < ... < y_{N+1} = a splitting [0, a] into N+1 elements"""

    a: float
    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise MeshError("nodes", nodes.shape, "need at least two nodes")
        if nodes[0] != 0.0 or nodes[-1] != self.a:
            raise MeshError("nodes", (nodes[0], nodes[-1]), "must start at 0 and end at a")
        lengths = np.diff(nodes)
        if np.any(lengths <= 0.0):
            bad = int(np.argmin(lengths))
            raise MeshError("element", bad, f"non-positive length {lengths[bad]!r}")
        if abs(lengths.sum() - self.a) > SUM_TOL * self.a:
            raise MeshError("nodes", lengths.sum(), "element lengths do not sum to a")
        object.__setattr__(self, "nodes", _readonly(nodes.copy()))

    @property
    def n_elements(self) -> int:
        return self.nodes.size - 1

    @property
    def N(self) -> int:
        return self.nodes.size - 2

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.nodes)

    @property
    def elements(self) -> list[tuple[float, float]]:
        return [(float(left), float(right)) for left, right in zip(self.nodes[:-1], self.nodes[1:])]

    @property
    def n_velocity_nodes(self) -> int:
        return 2 * self.N + 1

    @property
    def n_pressure_nodes(self) -> int:
        return self.N + 2

    def velocity_node_coordinates(self) -> np.ndarray:
        """Coordinates of the free velocity nodes, indexed by global number - 1"""
        midpoints = 0.5 * (self.nodes[:-1] + self.nodes[1:])
        coords = np.empty(2 * self.n_elements - 1)
        coords[0::2] = midpoints
        coords[1::2] = self.nodes[1:-1]
        return coords

    def reflected(self) -> "Mesh1D":
        """Mirror image under y -> a - y"""
        mirrored = self.a - self.nodes[::-1]
        mirrored[0] = 0.0
        mirrored[-1] = self.a
        return Mesh1D(a=self.a, nodes=mirrored)


@dataclass(frozen=True, eq=False)
class VelocityConnectivity:
    """L1 table: element x local node {1, 2, 3} -> global velocity node (0 = wall)"""

    table: np.ndarray

    @property
    def n_unknowns(self) -> int:
        return int(self.table.max())


@dataclass(frozen=True, eq=False)
class PressureConnectivity:
    """L2 table: element x local node {1, 2} -> global pressure node"""

    table: np.ndarray

    @property
    def n_unknowns(self) -> int:
        return int(self.table.max()) + 1


def build_mesh(
    a: float,
    n_elements: int,
    grading_exponent: float = DEFAULT_GRADING_EXPONENT,
) -> Mesh1D:
    """
    Build the node law y_j = a * (j / (N+1)) ** beta on [0, a].

    Args:
        a: Channel height
        n_elements: Number of elements N+1
        grading_exponent: beta; 1 gives a uniform mesh, beta > 1 clusters nodes near y = 0

    Returns:
        Mesh1D with exact end nodes 0 and a
    """
    if not np.isfinite(a) or a <= 0:
        raise MeshError("a", a, "must be positive and finite")
    if isinstance(n_elements, bool) or int(n_elements) != n_elements or n_elements < 1:
        raise MeshError("n_elements", n_elements, "must be an integer >= 1")
    if not np.isfinite(grading_exponent) or grading_exponent <= 0:
        raise MeshError("grading_exponent", grading_exponent, "must be positive")

    n_elements = int(n_elements)
    fractions = np.arange(n_elements + 1, dtype=float) / n_elements
    nodes = a * fractions**grading_exponent
    nodes[0] = 0.0
    nodes[-1] = a
    logger.debug(f"Built mesh a={a}, elements={n_elements}, grading={grading_exponent}")
    return Mesh1D(a=float(a), nodes=nodes)


def velocity_connectivity(mesh: Mesh1D) -> VelocityConnectivity:
    n_el = mesh.n_elements
    j = np.arange(n_el)
    table = np.column_stack([2 * j, 2 * j + 1, 2 * j + 2]).astype(np.int64)
    table[0, 0] = WALL_SENTINEL
    table[-1, 2] = WALL_SENTINEL
    return VelocityConnectivity(table=_readonly(table))


def pressure_connectivity(mesh: Mesh1D) -> PressureConnectivity:
    j = np.arange(mesh.n_elements)
    table = np.column_stack([j, j + 1]).astype(np.int64)
    return PressureConnectivity(table=_readonly(table))
