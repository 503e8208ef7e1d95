"""Global assembly of K_h, S_h, L_h, G_h and H_h from element blocks."""

import logging
from collections.abc import Sequence

import numpy as np

from config import DEFAULT_WALL_DATUM, WallDatum
from discretization.elements import QUAD_SECOND_DERIVATIVE, element_integrals, quadratic_basis
from discretization.mesh import (
    WALL_SENTINEL,
    Mesh1D,
    pressure_connectivity,
    velocity_connectivity,
)
from discretization.models import (
    AssembledSystem,
    ElementMatrices,
    QuadratureRule,
    StabilityParams,
)
from profiles.flows import FlowProfile

logger = logging.getLogger(__name__)

VELOCITY_DEGREE = 2


def u_index(node: int) -> int:
    """Row of u at global velocity node `node` (1-based) in the interleaved ordering"""
    return 2 * (node - 1)


def v_index(node: int) -> int:
    return 2 * (node - 1) + 1


def _check_quadrature(profile: FlowProfile, rule: QuadratureRule) -> None:
    degree = profile.polynomial_degree
    if degree is None:
        return
    required = 2 * VELOCITY_DEGREE + degree
    if rule.exactness < required:
        logger.warning(
            f"Quadrature with {rule.npts} points is exact to degree {rule.exactness}, "
            f"below {required} needed for the {profile.name} profile"
        )


def wall_pressure_flux_terms(mesh: Mesh1D, re: float) -> list[tuple[int, int, float]]:
    """
    Neumann wall terms p' = Re^-1 v'' of the pressure equation.

    Returns (pressure row, velocity column, value) triplets: +Re^-1 phi''_n on
    pressure node 0 for the free v-unknowns of the first element and -Re^-1 phi''_n
    on pressure node N+1 for those of the last element.
    """
    l1 = velocity_connectivity(mesh).table
    lengths = mesh.lengths
    last = mesh.n_elements - 1
    terms: list[tuple[int, int, float]] = []
    for element, row, sign in ((0, 0, 1.0), (last, mesh.N + 1, -1.0)):
        second = QUAD_SECOND_DERIVATIVE / lengths[element] ** 2
        for local, node in enumerate(l1[element]):
            if node == WALL_SENTINEL:
                continue
            terms.append((row, v_index(int(node)), sign * second[local] / re))
    return terms


def wall_continuity_flux_terms(
    mesh: Mesh1D, re: float, alpha: float
) -> list[tuple[int, int, complex]]:
    """
    Neumann wall terms p' = -i alpha Re^-1 u' of the pressure equation.

    Continuity turns the wall datum v'' into -i alpha u'. Triplets carry the
    u-columns of the first and last element, with the row and sign convention
    of wall_pressure_flux_terms.
    """
    l1 = velocity_connectivity(mesh).table
    lengths = mesh.lengths
    last = mesh.n_elements - 1
    _, wall_slopes = quadratic_basis(np.array([0.0, 1.0]))
    terms: list[tuple[int, int, complex]] = []
    for element, row, sign, edge in ((0, 0, 1.0, 0), (last, mesh.N + 1, -1.0, 1)):
        first = wall_slopes[:, edge] / lengths[element]
        for local, node in enumerate(l1[element]):
            if node == WALL_SENTINEL:
                continue
            terms.append((row, u_index(int(node)), -sign * 1j * alpha * first[local] / re))
    return terms


def _add_element(
    blocks: ElementMatrices,
    nodes: np.ndarray,
    pressure_nodes: np.ndarray,
    params: StabilityParams,
    matrices: dict[str, np.ndarray],
) -> None:
    alpha, re = params.alpha, params.re
    K, S, L, G, H = (matrices[key] for key in ("K", "S", "L", "G", "H"))

    diagonal = (
        -1j * alpha / re * blocks.M - 1j / (alpha * re) * blocks.A + blocks.MU
    )
    coupling = -1j / alpha * blocks.MUp

    for k, test_node in enumerate(nodes):
        if test_node == WALL_SENTINEL:
            continue
        uk, vk = u_index(test_node), v_index(test_node)
        for n, trial_node in enumerate(nodes):
            if trial_node == WALL_SENTINEL:
                continue
            un, vn = u_index(trial_node), v_index(trial_node)
            K[uk, un] += diagonal[n, k]
            K[vk, vn] += diagonal[n, k]
            K[uk, vn] += coupling[n, k]
            S[uk, un] += blocks.M[n, k]
            S[vk, vn] += blocks.M[n, k]
        for m, p_node in enumerate(pressure_nodes):
            L[uk, p_node] += blocks.B[m, k]
            L[vk, p_node] += 1j / alpha * blocks.C[m, k]

    for ell, test_p in enumerate(pressure_nodes):
        for m, trial_p in enumerate(pressure_nodes):
            G[test_p, trial_p] += -(alpha**2) * blocks.Mp[m, ell] - blocks.Ap[m, ell]
        for n, trial_node in enumerate(nodes):
            if trial_node == WALL_SENTINEL:
                continue
            H[test_p, v_index(trial_node)] += -2j * alpha * blocks.D[n, ell]


def assemble_system(
    mesh: Mesh1D,
    profile: FlowProfile,
    params: StabilityParams,
    rule: QuadratureRule,
    element_order: Sequence[int] | None = None,
    wall_datum: WallDatum = DEFAULT_WALL_DATUM,
) -> AssembledSystem:
    """
    Assemble the discrete eigenvalue system K A + L B = c S A, G B = H A.

    Args:
        mesh: Triangulation of [0, a]
        profile: Base flow on the same [0, a]
        params: Reynolds number and wave number
        rule: Element quadrature rule
        element_order: Optional processing order of elements (default ascending)
        wall_datum: How the wall Neumann datum of the pressure equation is taken

    Returns:
        AssembledSystem with interleaved velocity unknowns
    """
    if abs(profile.a - mesh.a) > 1e-12 * mesh.a:
        raise ValueError(f"Profile height {profile.a} does not match mesh height {mesh.a}")
    _check_quadrature(profile, rule)

    n_vel = 2 * mesh.n_velocity_nodes
    n_p = mesh.n_pressure_nodes
    matrices = {
        "K": np.zeros((n_vel, n_vel), dtype=complex),
        "S": np.zeros((n_vel, n_vel), dtype=complex),
        "L": np.zeros((n_vel, n_p), dtype=complex),
        "G": np.zeros((n_p, n_p), dtype=complex),
        "H": np.zeros((n_p, n_vel), dtype=complex),
    }

    l1 = velocity_connectivity(mesh).table
    l2 = pressure_connectivity(mesh).table
    elements = mesh.elements
    order = range(mesh.n_elements) if element_order is None else element_order
    for j in order:
        blocks = element_integrals(elements[j], profile, rule)
        _add_element(blocks, l1[j], l2[j], params, matrices)

    if wall_datum == WallDatum.CONTINUITY:
        wall_terms = wall_continuity_flux_terms(mesh, params.re, params.alpha)
    else:
        wall_terms = wall_pressure_flux_terms(mesh, params.re)
    for row, col, value in wall_terms:
        matrices["H"][row, col] += value

    logger.debug(
        f"Assembled system: {n_vel} velocity / {n_p} pressure unknowns "
        f"(Re={params.re}, alpha={params.alpha}, profile={profile.name})"
    )
    return AssembledSystem(params=params, mesh=mesh, **matrices)
