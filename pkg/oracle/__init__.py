from oracle.collocation import base_curvature, chebyshev_matrices, os_spectrum_collocation
from oracle.critical import critical_point, max_growth
from oracle.models import CollocationConfig, CriticalPoint, OracleSpectrum

__all__ = [
    "CollocationConfig",
    "CriticalPoint",
    "OracleSpectrum",
    "base_curvature",
    "chebyshev_matrices",
    "critical_point",
    "max_growth",
    "os_spectrum_collocation",
]
