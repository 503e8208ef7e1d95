"""
Save run results.

Every CSV is written through pandas with 17 significant digits so that it
re-parses to the exact values, and every file is written atomically
(temporary sibling, then rename). Only run.json carries a timestamp.

Usage:
    from reporting.save_results import save_spectrum, save_run_manifest

    path = save_spectrum(modes, "results/spectrum.csv")
    save_run_manifest(config, artifacts=[path], summary={"leading": ...}, out_dir="results")
"""

import json
import logging
import os
import tempfile
from collections.abc import Callable, Iterable, Sequence
from datetime import datetime
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel

from config import MODE_SAMPLE_POINTS
from config.run_config import RunConfig
from discretization.mesh import Mesh1D
from discretization.models import AssembledSystem
from stability.models import Mode, ModeSet
from stability.modes import evaluate_mode
from sweep.models import AmplificationContour, NeutralCurve, SweepGrid

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
SPECTRUM_COLUMNS = ["rank", "c_re", "c_im", "residual"]
MODE_COLUMNS = ["y", "u_re", "u_im", "v_re", "v_im", "p_re", "p_im"]
GRID_COLUMNS = ["re", "alpha", "c_re", "c_im", "converged"]
NEUTRAL_COLUMNS = ["re", "alpha", "c_r"]
CONTOUR_COLUMNS = ["level", "segment", "re", "alpha"]
MATRIX_COLUMNS = ["row", "col", "re", "im"]


def atomic_write(path: str | Path, write: Callable[[Path], None]) -> Path:
    """Call write(tmp) on a temporary sibling of path, then rename it into place"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    os.close(fd)
    try:
        write(Path(tmp))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def write_csv(df: pd.DataFrame, path: str | Path) -> Path:
    path = atomic_write(
        path,
        lambda tmp: df.to_csv(tmp, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"),
    )
    logger.info(f"Wrote {len(df)} rows to {path}")
    return path


def write_json(data: dict[str, Any], path: str | Path) -> Path:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    return atomic_write(path, lambda tmp: tmp.write_text(text))


def save_spectrum(modes: ModeSet | Sequence[Mode], path: str | Path) -> Path:
    """spectrum.csv: rank, c_re, c_im, residual sorted by c_im descending"""
    rows = [
        {"rank": rank, "c_re": mode.c_r, "c_im": mode.c_i, "residual": mode.residual}
        for rank, mode in enumerate(modes)
    ]
    return write_csv(pd.DataFrame(rows, columns=SPECTRUM_COLUMNS), path)


def save_mode(mode: Mode, mesh: Mesh1D, path: str | Path) -> Path:
    """modeK.csv: u, v, p at uniformly spaced points of [0, a] including both walls"""
    y = np.linspace(0.0, mesh.a, MODE_SAMPLE_POINTS)
    u, v, p = evaluate_mode(mode, mesh, y)
    df = pd.DataFrame(
        {
            "y": y,
            "u_re": u.real,
            "u_im": u.imag,
            "v_re": v.real,
            "v_im": v.imag,
            "p_re": p.real,
            "p_im": p.imag,
        },
        columns=MODE_COLUMNS,
    )
    return write_csv(df, path)


def save_grid(grid: SweepGrid, path: str | Path) -> Path:
    rows = [cell.model_dump() for cell in grid.records()]
    return write_csv(pd.DataFrame(rows, columns=GRID_COLUMNS), path)


def save_neutral(curve: NeutralCurve, path: str | Path) -> Path:
    rows = [{"re": p.re, "alpha": p.alpha, "c_r": p.c_r} for p in curve.points]
    return write_csv(pd.DataFrame(rows, columns=NEUTRAL_COLUMNS), path)


def save_contours(contours: Iterable[AmplificationContour], path: str | Path) -> Path:
    """contours.csv: one row per polyline vertex, segment numbered within its level"""
    frames = [
        pd.DataFrame(
            {"level": contour.level, "segment": segment, "re": line[:, 0], "alpha": line[:, 1]}
        )
        for contour in contours
        for segment, line in enumerate(contour.polylines)
    ]
    df = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame()
    return write_csv(df.reindex(columns=CONTOUR_COLUMNS), path)


def dump_matrices(system: AssembledSystem, out_dir: str | Path) -> list[Path]:
    """K_h.csv .. H_h.csv with the nonzero entries as row, col, re, im"""
    paths = []
    for name, matrix in system.matrices().items():
        rows, cols = np.nonzero(matrix)
        values = matrix[rows, cols]
        df = pd.DataFrame(
            {"row": rows, "col": cols, "re": np.real(values), "im": np.imag(values)},
            columns=MATRIX_COLUMNS,
        )
        paths.append(write_csv(df, Path(out_dir) / f"{name}.csv"))
    return paths


def read_csv(path: str | Path) -> pd.DataFrame:
    """Read back an emitted CSV with round-trip float parsing"""
    return pd.read_csv(path, float_precision="round_trip")


def save_run_manifest(
    config: RunConfig,
    artifacts: Sequence[str | Path],
    summary: dict[str, Any],
    out_dir: str | Path,
    status: int = 0,
) -> Path:
    """
    Save run.json with the resolved configuration, artifact list and summary.

    Args:
        config: Resolved run configuration
        artifacts: Files written by the run
        summary: Command-specific results (leading eigenvalue, points found, ...)
        out_dir: Output directory
        status: Exit status of the run

    Returns:
        Path to run.json
    """
    out_dir = Path(out_dir)
    data = {
        "timestamp": datetime.now().isoformat(),
        "command": str(config.command),
        "status": status,
        "config": config.model_dump(mode="json"),
        "artifacts": sorted(
            str(Path(p).relative_to(out_dir)) if Path(p).is_relative_to(out_dir) else str(p)
            for p in artifacts
        ),
        "summary": summary,
    }
    return write_json(data, out_dir / "run.json")


def save_validation(rows: Sequence[BaseModel], out_dir: str | Path) -> list[Path]:
    """validation.csv and validation.json with a pass count summary"""
    records = [row.model_dump() for row in rows]
    csv_path = write_csv(pd.DataFrame(records), Path(out_dir) / "validation.csv")
    json_path = write_json(
        {
            "summary": {
                "cases": len(records),
                "passed": sum(bool(record.get("passed")) for record in records),
            },
            "results": records,
        },
        Path(out_dir) / "validation.json",
    )
    return [csv_path, json_path]
