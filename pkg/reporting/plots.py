"""Static SVG renderings of spectra, mode shapes, neutral curves and contours"""

import logging
from collections.abc import Iterable
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from config import MODE_SAMPLE_POINTS  # noqa: E402
from discretization.mesh import Mesh1D  # noqa: E402
from reporting.save_results import atomic_write  # noqa: E402
from stability.models import Mode, ModeSet  # noqa: E402
from stability.modes import evaluate_mode  # noqa: E402
from sweep.models import AmplificationContour, NeutralCurve  # noqa: E402

logger = logging.getLogger(__name__)

# fixed salt and no date keep the SVG byte-identical across runs
SVG_STYLE = {"svg.hashsalt": "stability-svg", "svg.fonttype": "none"}
FIGURE_SIZE = (6.0, 4.5)


def _save(fig, path: str | Path) -> Path:
    with plt.rc_context(SVG_STYLE):
        path = atomic_write(
            path, lambda tmp: fig.savefig(tmp, format="svg", metadata={"Date": None})
        )
    plt.close(fig)
    logger.info(f"Wrote plot {path}")
    return path


def plot_spectrum(modes: ModeSet, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    values = modes.eigenvalues
    ax.plot(values.real, values.imag, "o", markersize=3)
    ax.axhline(0.0, color="grey", linewidth=0.5)
    ax.set_xlabel("c_r")
    ax.set_ylabel("c_i")
    ax.set_title(f"Re={modes.params.re:g}, alpha={modes.params.alpha:g}, N={modes.n_elements}")
    return _save(fig, path)


def plot_mode(mode: Mode, mesh: Mesh1D, path: str | Path) -> Path:
    y = np.linspace(0.0, mesh.a, MODE_SAMPLE_POINTS)
    u, v, p = evaluate_mode(mode, mesh, y)
    fig, axes = plt.subplots(1, 3, figsize=(3 * FIGURE_SIZE[0] / 2, FIGURE_SIZE[1]), sharey=True)
    for ax, values, name in zip(axes, (u, v, p), ("u", "v", "p")):
        ax.plot(values.real, y, label="real")
        ax.plot(values.imag, y, "--", label="imag")
        ax.plot(np.abs(values), y, ":", label="abs")
        ax.set_xlabel(name)
    axes[0].set_ylabel("y")
    axes[0].legend(loc="best")
    fig.suptitle(f"c = {mode.c_r:.8f} {mode.c_i:+.8f}i")
    return _save(fig, path)


def plot_neutral_curve(curve: NeutralCurve, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    branches = sorted({point.branch for point in curve.points})
    for branch in branches:
        points = [point for point in curve.points if point.branch == branch]
        ax.plot([p.re for p in points], [p.alpha for p in points], "o-", markersize=3,
                label=f"branch {branch}")
    critical = curve.critical
    if critical is not None:
        ax.plot([critical.re], [critical.alpha], "k*", markersize=8, label="min Re")
    ax.set_xlabel("Re")
    ax.set_ylabel("alpha")
    if branches:
        ax.legend(loc="best")
    return _save(fig, path)


def plot_contours(contours: Iterable[AmplificationContour], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    for contour in contours:
        for line in contour.polylines:
            ax.plot(line[:, 0], line[:, 1], linewidth=1)
            ax.annotate(f"{contour.level:g}", line[len(line) // 2], fontsize=7)
    ax.set_xlabel("Re")
    ax.set_ylabel("alpha")
    ax.set_title("c_i contours")
    return _save(fig, path)
