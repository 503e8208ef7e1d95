import logging
from collections.abc import Sequence

import numpy as np
from contourpy import LineType, contour_generator

from sweep.models import AmplificationContour, SweepGrid

logger = logging.getLogger(__name__)


def amplification_contours(
    grid: SweepGrid, levels: Sequence[float]
) -> list[AmplificationContour]:
    """
    Curves c_i(Re, alpha) = level by marching squares over the sweep grid.

    Failed cells are masked. Levels outside the data range, constant fields
    and grids smaller than 2 x 2 give empty polyline sets with a diagnostic.
    """
    growth = grid.growth
    finite = growth[np.isfinite(growth)]
    generator = None
    if min(growth.shape) >= 2 and finite.size:
        generator = contour_generator(
            x=grid.re_values,
            y=grid.alpha_values,
            z=np.ma.masked_invalid(growth.T),
            line_type=LineType.Separate,
        )

    contours = []
    for level in map(float, levels):
        if generator is None:
            reason = "grid needs at least 2 x 2 converged cells"
        elif finite.min() == finite.max():
            reason = f"degenerate field: c_i is constant ({finite.min():.6g})"
        elif not finite.min() <= level <= finite.max():
            reason = f"level outside data range [{finite.min():.6g}, {finite.max():.6g}]"
        else:
            polylines = [np.asarray(line, dtype=float) for line in generator.lines(level)]
            contours.append(AmplificationContour(level=level, polylines=polylines))
            continue
        logger.info(f"Contour c_i={level}: {reason}")
        contours.append(AmplificationContour(level=level, polylines=[], diagnostic=reason))
    return contours
