"""
Dense complex linear algebra for the stability eigenproblems.

This module provides:
- lu_solve: partial-pivoting LU solve with an explicit pivot threshold
- symmetric_solve: Cholesky solve for symmetric definite matrices of either sign
- hessenberg_eig: balancing, Hessenberg reduction and complex Schur (shifted QR)
- generalized_qz: QZ for the pencil (A, B) with infinite eigenvalues split off

Usage:
    from eigensolvers.dense import hessenberg_eig, lu_solve

    spectrum = hessenberg_eig(lu_solve(S, E), want_vectors=True)
"""

import logging
import warnings

import numpy as np
from scipy import linalg
from scipy.linalg import LinAlgError, LinAlgWarning
from scipy.linalg.lapack import get_lapack_funcs

from eigensolvers.models import Spectrum, descending_growth_order

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
PIVOT_TOL = 1e-14
SYMMETRY_TOL = 1e-12
INDETERMINATE_TOL = 1e-14
INFINITE_TOL = 1e-13


class SingularMatrixError(RuntimeError):
    """Raised when an LU pivot falls below the working-precision threshold"""

    def __init__(self, pivot_index: int, pivot: float, threshold: float):
        self.pivot_index = pivot_index
        self.pivot = pivot
        self.threshold = threshold
        super().__init__(
            f"Matrix is singular to working precision: |pivot {pivot_index}| = "
            f"{pivot:.3e} <= {threshold:.3e}"
        )


class NotDefiniteError(RuntimeError):
    def __init__(self, size: int):
        self.size = size
        super().__init__(
            f"Symmetric {size}x{size} matrix is neither positive nor negative definite; "
            "use lu_solve instead"
        )


class ConvergenceError(RuntimeError):
    """Raised when the QR iteration stalls; index is the first unconverged eigenvalue"""

    def __init__(self, index: int, size: int):
        self.index = index
        self.size = size
        super().__init__(f"Eigenvalue {index} of {size} failed to converge")


class IndeterminatePencilError(RuntimeError):
    def __init__(self, indices: list[int]):
        self.indices = indices
        super().__init__(f"Pencil is singular: indeterminate 0/0 eigenvalues at {indices}")


def _square(matrix, name: str) -> np.ndarray:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError(f"{name} has non-finite entries")
    return matrix


def lu_solve(a, b) -> np.ndarray:
    """
    Solve A X = B by LU with partial pivoting.

    Args:
        a: Square matrix
        b: Right-hand side vector or block

    Returns:
        X with the shape of b

    Raises:
        SingularMatrixError: a pivot is below 1e-14 * ||A||_inf
    """
    a = _square(a, "A")
    threshold = PIVOT_TOL * np.linalg.norm(a, np.inf)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = linalg.lu_factor(a)
    pivots = np.abs(np.diagonal(lu))
    small = np.flatnonzero(pivots <= threshold)
    if small.size:
        index = int(small[0])
        raise SingularMatrixError(index, float(pivots[index]), float(threshold))
    return linalg.lu_solve((lu, piv), b)


def symmetric_solve(g, b) -> np.ndarray:
    """Solve G X = B for real symmetric G that is positive or negative definite."""
    g = _square(g, "G")
    if np.iscomplexobj(g):
        if np.any(g.imag != 0):
            raise ValueError("G must be real-valued")
        g = g.real
    scale = max(np.abs(g).max(), np.finfo(float).tiny)
    asymmetry = np.abs(g - g.T).max()
    if asymmetry > SYMMETRY_TOL * scale:
        raise ValueError(f"G is not symmetric (max asymmetry {asymmetry:.3e})")

    for sign in (1.0, -1.0):
        try:
            factor = linalg.cho_factor(sign * g, lower=True)
        except LinAlgError:
            continue
        return sign * linalg.cho_solve(factor, b)
    raise NotDefiniteError(g.shape[0])


def _complex_schur(hess: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Complex Schur form T = Z^H hess Z by LAPACK gees (shifted QR)"""
    gees, = get_lapack_funcs(("gees",), (hess,))
    query = gees(lambda x: None, hess, lwork=-1)
    lwork = int(query[-2][0].real)
    t, _, _, z, _, info = gees(lambda x: None, hess, lwork=max(lwork, 1), overwrite_a=True)
    if info < 0:
        raise ValueError(f"gees: illegal value in argument {-info}")
    if info > 0:
        raise ConvergenceError(info - 1, hess.shape[0])
    return t, z


def _triangular_eigenvectors(t: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """
    Inverse iteration on the upper-triangular Schur factor.

    For eigenvalue k, (T - t_kk I) y = e_k is solved by back substitution with
    near-zero pivots lifted to a small floor; the solution has y_k = 1 and zeros
    below row k.
    """
    n = t.shape[0]
    floor = np.finfo(float).tiny * n / EPS
    vectors = np.zeros((n, indices.size), dtype=complex)
    for col, k in enumerate(indices):
        k = int(k)
        vectors[k, col] = 1.0
        if k == 0:
            continue
        lam = t[k, k]
        block = t[:k, :k] - lam * np.eye(k)
        pivots = np.diagonal(block).copy()
        smin = max(EPS * abs(lam), floor)
        pivots[np.abs(pivots) < smin] = smin
        block[np.diag_indices(k)] = pivots
        vectors[:k, col] = linalg.solve_triangular(block, -t[:k, k], check_finite=False)
        if not np.all(np.isfinite(vectors[:k, col])):
            raise ConvergenceError(k, n)
    return vectors


def _relative_residuals(a, b, values, vectors, norm_a, norm_b) -> np.ndarray:
    bx = vectors if b is None else b @ vectors
    residual = np.linalg.norm(a @ vectors - bx * values, axis=0)
    scale = (norm_a + np.abs(values) * norm_b) * np.linalg.norm(vectors, axis=0)
    return residual / np.where(scale > 0, scale, 1.0)


def _schur_backward_errors(
    a_norm: float,
    balanced: np.ndarray,
    transform: np.ndarray,
    basis: np.ndarray,
    t: np.ndarray,
    order: np.ndarray,
) -> np.ndarray:
    """
    Normwise backward-error bounds of the Schur eigenvalues, relative to ||A||_F.

    With Y the computed Schur basis and R = balanced Y - Y T, the eigenvalue t_kk is
    exact for balanced - R_k Y_k^+ where R_k, Y_k hold the first k + 1 columns.
    ||Y_k^+|| is bounded through the loss of orthogonality of Y, and the
    balancing similarity enlarges the perturbation by at most its condition number.
    """
    n = t.shape[0]
    residual = balanced @ basis - basis @ t
    column_norms = np.linalg.norm(residual, axis=0)
    leading_norms = np.sqrt(np.cumsum(column_norms**2))
    orthogonality = np.linalg.norm(basis.conj().T @ basis - np.eye(n))
    if orthogonality >= 0.5:
        raise ConvergenceError(0, n)
    scaling = np.abs(transform).sum(axis=0)
    condition = scaling.max() / scaling.min()
    rounding = n * EPS * np.linalg.norm(balanced)
    perturbation = leading_norms / (1.0 - orthogonality) + rounding
    return condition * perturbation[order] / (a_norm if a_norm > 0 else 1.0) + n * EPS


def hessenberg_eig(a, want_vectors: bool = False, leading: int | None = None) -> Spectrum:
    """
    Eigenvalues of a dense complex matrix by balancing, Hessenberg reduction and
    complex Schur factorization; LAPACK bounds the QR sweeps at 30 per eigenvalue.

    Args:
        a: Square matrix
        want_vectors: Also compute unit-norm right eigenvectors
        leading: Keep only this many eigenvalues of largest imaginary part

    Returns:
        Spectrum sorted by descending imaginary part. Its backward_errors are the
        relative eigenpair residuals with vectors, otherwise bounds from the Schur
        residual
    """
    a = _square(a, "A").astype(complex)
    n = a.shape[0]
    norm_a = np.linalg.norm(a)

    balanced, transform = linalg.matrix_balance(a, permute=True, scale=True)
    hess, q = linalg.hessenberg(balanced, calc_q=True)
    t, z = _complex_schur(hess)

    eigenvalues = np.diagonal(t).copy()
    order = descending_growth_order(eigenvalues)
    if leading is not None:
        order = order[:leading]
    values = eigenvalues[order]
    schur_basis = q @ z

    if not want_vectors:
        bounds = _schur_backward_errors(norm_a, balanced, transform, schur_basis, t, order)
        return Spectrum(eigenvalues=values, backward_errors=bounds)

    floor = n * EPS * np.ones(values.size)
    vectors = transform @ schur_basis @ _triangular_eigenvectors(t, order)
    vectors /= np.linalg.norm(vectors, axis=0)
    residuals = _relative_residuals(a, None, values, vectors, norm_a, 0.0)
    return Spectrum(eigenvalues=values, vectors=vectors, backward_errors=residuals + floor)


def generalized_qz(
    a,
    b,
    n_finite: int | None = None,
    want_vectors: bool = True,
    leading: int | None = None,
) -> Spectrum:
    """
    Finite eigenvalues of A x = lambda B x by the QZ algorithm (LAPACK ggev).

    Args:
        a: Square matrix
        b: Square matrix of the same size
        n_finite: Known number of finite eigenvalues; when given, the pairs with
            the largest chordal |beta| are taken as finite
        want_vectors: Return unit-norm right eigenvectors of the finite pairs
        leading: Keep only this many finite eigenvalues of largest imaginary part

    Returns:
        Spectrum of finite eigenvalues; infinite ones are counted in infinite_count

    Raises:
        IndeterminatePencilError: some pair has both alpha and beta near zero
    """
    a = _square(a, "A").astype(complex)
    b = _square(b, "B").astype(complex)
    if a.shape != b.shape:
        raise ValueError(f"A {a.shape} and B {b.shape} differ in size")
    n = a.shape[0]
    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)

    pairs, right = linalg.eig(a, b, right=True, homogeneous_eigvals=True)
    alpha, beta = pairs
    abs_alpha, abs_beta = np.abs(alpha), np.abs(beta)

    indeterminate = np.flatnonzero(
        (abs_alpha <= INDETERMINATE_TOL * norm_a) & (abs_beta <= INDETERMINATE_TOL * norm_b)
    )
    if indeterminate.size:
        raise IndeterminatePencilError(indeterminate.tolist())

    if n_finite is None:
        finite = np.flatnonzero(abs_beta > INFINITE_TOL * norm_b)
    else:
        if not 0 <= n_finite <= n:
            raise ValueError(f"n_finite={n_finite} outside 0..{n}")
        chordal = abs_beta / np.hypot(abs_alpha, abs_beta)
        finite = np.sort(np.argsort(-chordal, kind="stable")[:n_finite])

    values = alpha[finite] / beta[finite]
    order = descending_growth_order(values)
    if leading is not None:
        order = order[:leading]
    finite = finite[order]
    values = values[order]
    infinite_count = n - (n_finite if n_finite is not None else int(
        np.count_nonzero(abs_beta > INFINITE_TOL * norm_b)
    ))

    vectors = right[:, finite]
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    residuals = _relative_residuals(a, b, values, vectors, norm_a, norm_b) + n * EPS
    logger.debug(f"QZ on {n}x{n} pencil: {values.size} finite, {infinite_count} infinite")
    return Spectrum(
        eigenvalues=values,
        vectors=vectors if want_vectors else None,
        backward_errors=residuals,
        infinite_count=int(infinite_count),
    )
