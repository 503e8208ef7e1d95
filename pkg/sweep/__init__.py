from sweep.config import MeshConfig, SweepConfig
from sweep.contours import amplification_contours
from sweep.grid import grid_sweep, run_bounded, select_tracked
from sweep.models import (
    AmplificationContour,
    GridCell,
    NeutralCurve,
    NeutralDiagnostic,
    NeutralPoint,
    SweepGrid,
)
from sweep.neutral import neutral_curve, wave_speed_along_curve
