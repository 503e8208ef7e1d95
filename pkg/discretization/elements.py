"""Quadratic/affine shape functions, Gauss rules and per-element integral blocks."""

import logging

import numpy as np
from scipy.special import roots_legendre

from discretization.mesh import MeshError
from discretization.models import ElementMatrices, QuadratureRule, ShapeSet
from profiles.flows import FlowProfile

logger = logging.getLogger(__name__)

MIN_QUAD_POINTS = 1
MAX_QUAD_POINTS = 8

QUAD_SECOND_DERIVATIVE = np.array([4.0, -8.0, 4.0])
LIN_FIRST_DERIVATIVE = np.array([-1.0, 1.0])


class ParameterError(ValueError):
    def __init__(self, name: str, value: object, allowed: str):
        self.name = name
        self.value = value
        super().__init__(f"Unsupported {name}={value!r}; allowed: {allowed}")


class DomainError(ValueError):
    def __init__(self, xi: float):
        self.xi = xi
        super().__init__(f"Local coordinate xi={xi!r} outside [0, 1]")


def quadratic_basis(xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values and d/dxi of phi_1..phi_3 at each xi; arrays shaped (3, len(xi))"""
    xi = np.asarray(xi, dtype=float)
    values = np.stack([(1 - xi) * (1 - 2 * xi), 4 * xi * (1 - xi), xi * (2 * xi - 1)])
    slopes = np.stack([4 * xi - 3, 4 - 8 * xi, 4 * xi - 1])
    return values, slopes


def linear_basis(xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values and d/dxi of psi_1, psi_2 at each xi; arrays shaped (2, len(xi))"""
    xi = np.asarray(xi, dtype=float)
    values = np.stack([1 - xi, xi])
    slopes = np.broadcast_to(LIN_FIRST_DERIVATIVE[:, None], values.shape)
    return values, slopes


def _check_xi(xi: float) -> float:
    if not (0.0 <= xi <= 1.0):
        raise DomainError(xi)
    return float(xi)


def _check_length(h: float) -> float:
    if not np.isfinite(h) or h <= 0:
        raise MeshError("element length", h, "must be positive")
    return float(h)


def quad_shape_eval(xi: float, h: float = 1.0) -> ShapeSet:
    xi = _check_xi(xi)
    h = _check_length(h)
    values, slopes = quadratic_basis(np.array([xi]))
    return ShapeSet(
        xi=xi,
        h=h,
        values=values[:, 0],
        first=slopes[:, 0] / h,
        second=QUAD_SECOND_DERIVATIVE / h**2,
    )


def lin_shape_eval(xi: float, h: float = 1.0) -> ShapeSet:
    xi = _check_xi(xi)
    h = _check_length(h)
    values, slopes = linear_basis(np.array([xi]))
    return ShapeSet(
        xi=xi,
        h=h,
        values=values[:, 0],
        first=np.array(slopes[:, 0]) / h,
        second=np.zeros(2),
    )


def gauss_rule(npts: int) -> QuadratureRule:
    """Gauss-Legendre rule mapped to [0, 1]; weights sum to 1."""
    if isinstance(npts, bool) or int(npts) != npts or not (
        MIN_QUAD_POINTS <= npts <= MAX_QUAD_POINTS
    ):
        raise ParameterError("npts", npts, f"{MIN_QUAD_POINTS}..{MAX_QUAD_POINTS}")
    nodes, weights = roots_legendre(int(npts))
    return QuadratureRule(points=0.5 * (nodes + 1.0), weights=0.5 * weights)


def element_integrals(
    element: tuple[float, float],
    profile: FlowProfile,
    rule: QuadratureRule,
) -> ElementMatrices:
    """
    Integrate the nine element blocks of the discrete forms on one element.

    U and U' are sampled from the profile at the quadrature points rather than
    interpolated onto the finite element basis.

    Args:
        element: (y_left, y_right)
        profile: Base flow supplying U and U'
        rule: Quadrature rule on [0, 1]

    Returns:
        ElementMatrices for this element
    """
    left, right = element
    h = _check_length(right - left)
    xi, w = rule.points, rule.weights

    phi, dphi = quadratic_basis(xi)
    psi, dpsi = linear_basis(xi)
    u_base, du_base = profile.evaluate(left + h * xi)

    return ElementMatrices(
        h=h,
        M=h * (phi * w) @ phi.T,
        A=(dphi * w) @ dphi.T / h,
        MU=h * (phi * (w * u_base)) @ phi.T,
        MUp=h * (phi * (w * du_base)) @ phi.T,
        B=h * (psi * w) @ phi.T,
        C=(psi * w) @ dphi.T,
        Mp=h * (psi * w) @ psi.T,
        Ap=(dpsi * w) @ dpsi.T / h,
        D=h * (phi * (w * du_base)) @ psi.T,
    )
