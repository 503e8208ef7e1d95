from dataclasses import dataclass

import numpy as np


def descending_growth_order(values: np.ndarray) -> np.ndarray:
    """Indices sorting by descending imaginary part, ties by descending real part"""
    values = np.asarray(values)
    return np.lexsort((-values.real, -values.imag))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Eigenvalues with optional right eigenvectors (columns) and per-eigenvalue
    relative backward-error estimates.

    Generalized problems report the number of infinite eigenvalues separately.
    """

    eigenvalues: np.ndarray
    backward_errors: np.ndarray
    vectors: np.ndarray | None = None
    infinite_count: int = 0

    def __post_init__(self):
        if self.backward_errors.shape != self.eigenvalues.shape:
            raise ValueError("one backward error per eigenvalue is required")
        if self.vectors is not None and self.vectors.shape[1] != self.eigenvalues.size:
            raise ValueError(
                f"{self.vectors.shape[1]} eigenvectors for {self.eigenvalues.size} eigenvalues"
            )

    def __len__(self) -> int:
        return self.eigenvalues.size

    @property
    def leading(self) -> complex | None:
        return complex(self.eigenvalues[0]) if len(self) else None
