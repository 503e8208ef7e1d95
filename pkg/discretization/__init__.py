from discretization.assembly import (
    assemble_system,
    wall_continuity_flux_terms,
    wall_pressure_flux_terms,
)
from discretization.elements import (
    DomainError,
    ParameterError,
    element_integrals,
    gauss_rule,
    lin_shape_eval,
    quad_shape_eval,
)
from discretization.mesh import (
    Mesh1D,
    MeshError,
    build_mesh,
    pressure_connectivity,
    velocity_connectivity,
)
from discretization.models import AssembledSystem, ElementMatrices, StabilityParams
