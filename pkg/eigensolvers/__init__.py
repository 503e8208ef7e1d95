from eigensolvers.dense import (
    ConvergenceError,
    IndeterminatePencilError,
    NotDefiniteError,
    SingularMatrixError,
    generalized_qz,
    hessenberg_eig,
    lu_solve,
    symmetric_solve,
)
from eigensolvers.models import Spectrum, descending_growth_order
