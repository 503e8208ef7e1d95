import logging
import traceback
from pathlib import Path
from typing import Annotated, Any

import typer

from config import LOG_LEVEL, Command
from config.run_config import RunConfig, UsageError, parse_config
from orchestrator.models import EXIT_NUMERICAL_FAILURE, EXIT_OK, EXIT_USAGE, RunResult
from orchestrator.runner import run

app = typer.Typer(help="Linear stability of parallel shear flows by finite elements")

logger = logging.getLogger(__name__)

SEPARATOR_WIDTH = 78
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

ProfileOpt = Annotated[str, typer.Option("--profile", help="poiseuille, couette or tabulated")]
ProfileFileOpt = Annotated[Path, typer.Option("--profile-file", help="CSV with columns y,U")]
HeightOpt = Annotated[float, typer.Option("--a", help="Channel height")]
ElementsOpt = Annotated[int, typer.Option("--elements", "-N", help="Number of elements")]
GradingOpt = Annotated[float, typer.Option("--grading", help="Node law exponent beta")]
ReOpt = Annotated[float, typer.Option("--re", help="Reynolds number")]
ReListOpt = Annotated[str, typer.Option("--re-list", help="Comma-separated Reynolds numbers")]
AlphaOpt = Annotated[float, typer.Option("--alpha", help="Wave number")]
AlphaListOpt = Annotated[str, typer.Option("--alpha-list", help="Comma-separated wave numbers")]
QuadOpt = Annotated[int, typer.Option("--quad-points", help="Gauss points per element (1-8)")]
PathOpt = Annotated[str, typer.Option("--path", help="schur-qr or coupled-qz")]
WallDatumOpt = Annotated[
    str, typer.Option("--wall-datum", help="continuity or second-derivative")
]
OutDirOpt = Annotated[Path, typer.Option("--out-dir", "-o", help="Output directory")]
PlotsOpt = Annotated[bool, typer.Option("--plots", help="Also write SVG plots")]
ConfigOpt = Annotated[Path, typer.Option("--config", "-c", help="JSON config document")]
WorkersOpt = Annotated[int, typer.Option("--workers", help="Concurrent solves")]
VerboseOpt = Annotated[bool, typer.Option("--verbose", "-v")]


def _setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def _handle_error(e: Exception, verbose: bool = False, code: int = EXIT_NUMERICAL_FAILURE) -> None:
    typer.echo(f"Error: {str(e)}", err=True)
    if verbose:
        typer.echo(traceback.format_exc(), err=True)
    raise typer.Exit(code)


def _float_list(text: str | None, flag: str) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise UsageError(f"{flag} expects comma-separated numbers, got '{text}'") from e


def _print_result(config: RunConfig, result: RunResult) -> None:
    if config.command == Command.VALIDATE:
        _print_validation(result.table)
    summary = ", ".join(f"{key}={value}" for key, value in result.summary.items())
    typer.echo(f"{config.command}: {summary}")
    for path in result.artifacts:
        typer.echo(f"  wrote {path}")


def _print_validation(rows: list[dict[str, Any]]) -> None:
    def fmt(value) -> str:
        return "n/a" if value is None else f"{value:.8f}"

    typer.echo("=" * SEPARATOR_WIDTH)
    typer.echo(f"{'case':<7}{'Re':>8}{'alpha':>7}{'FEM c':>28}{'oracle c':>28}")
    typer.echo("-" * SEPARATOR_WIDTH)
    for row in rows:
        fem = f"{fmt(row['fem_c_re'])} {fmt(row['fem_c_im'])}i"
        oracle = f"{fmt(row['oracle_c_re'])} {fmt(row['oracle_c_im'])}i"
        verdict = "PASS" if row["passed"] else "FAIL"
        typer.echo(
            f"{row['case']:<7}{row['re']:>8g}{row['alpha']:>7g}{fem:>28}{oracle:>28}  {verdict}"
        )
        if row["note"]:
            typer.echo(f"        {row['note']}")
    typer.echo("=" * SEPARATOR_WIDTH)


def _execute(
    command: Command, flags: dict[str, Any], config_path: Path | None, verbose: bool
) -> None:
    _setup_logging(verbose)
    try:
        config = parse_config(command, flags, config_path)
        result = run(config)
    except UsageError as e:
        _handle_error(e, verbose, EXIT_USAGE)
    except Exception as e:
        _handle_error(e, verbose, EXIT_NUMERICAL_FAILURE)

    _print_result(config, result)
    if result.status != EXIT_OK:
        typer.echo(f"Error: {result.message}", err=True)
        raise typer.Exit(result.status)


def _common(**values: Any) -> dict[str, Any]:
    return {key: value for key, value in values.items() if value is not None}


@app.command()
def solve(
    profile: ProfileOpt = None,
    profile_file: ProfileFileOpt = None,
    a: HeightOpt = None,
    elements: ElementsOpt = None,
    grading: GradingOpt = None,
    re: ReOpt = None,
    alpha: AlphaOpt = None,
    quad_points: QuadOpt = None,
    path: PathOpt = None,
    wall_datum: WallDatumOpt = None,
    out_dir: OutDirOpt = None,
    plots: PlotsOpt = None,
    dump_matrices: Annotated[bool, typer.Option("--dump-matrices")] = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Spectrum at one (Re, alpha): spectrum.csv"""
    flags = _common(
        profile=profile, profile_file=profile_file, a=a, elements=elements, grading=grading,
        re=re, alpha=alpha, quad_points=quad_points, path=path, wall_datum=wall_datum,
        out_dir=out_dir, plots=plots, dump_matrices=dump_matrices,
    )
    _execute(Command.SOLVE, flags, config, verbose)


@app.command()
def modes(
    profile: ProfileOpt = None,
    profile_file: ProfileFileOpt = None,
    a: HeightOpt = None,
    elements: ElementsOpt = None,
    grading: GradingOpt = None,
    re: ReOpt = None,
    alpha: AlphaOpt = None,
    count: Annotated[int, typer.Option("--count", help="Number of leading modes")] = None,
    quad_points: QuadOpt = None,
    path: PathOpt = None,
    wall_datum: WallDatumOpt = None,
    out_dir: OutDirOpt = None,
    plots: PlotsOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Spectrum plus leading mode shapes: mode0.csv, mode1.csv, ..."""
    flags = _common(
        profile=profile, profile_file=profile_file, a=a, elements=elements, grading=grading,
        re=re, alpha=alpha, count=count, quad_points=quad_points, path=path,
        wall_datum=wall_datum, out_dir=out_dir, plots=plots,
    )
    _execute(Command.MODES, flags, config, verbose)


@app.command()
def sweep(
    profile: ProfileOpt = None,
    profile_file: ProfileFileOpt = None,
    a: HeightOpt = None,
    elements: ElementsOpt = None,
    grading: GradingOpt = None,
    re: ReOpt = None,
    re_list: ReListOpt = None,
    alpha: AlphaOpt = None,
    alpha_list: AlphaListOpt = None,
    levels: Annotated[str, typer.Option("--levels", help="Comma-separated c_i levels")] = None,
    quad_points: QuadOpt = None,
    path: PathOpt = None,
    wall_datum: WallDatumOpt = None,
    workers: WorkersOpt = None,
    out_dir: OutDirOpt = None,
    plots: PlotsOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Leading eigenvalue on an (Re, alpha) grid: grid.csv, contours.csv"""
    try:
        flags = _common(
            profile=profile, profile_file=profile_file, a=a, elements=elements,
            grading=grading, re=re, re_list=_float_list(re_list, "--re-list"), alpha=alpha,
            alpha_list=_float_list(alpha_list, "--alpha-list"),
            levels=_float_list(levels, "--levels"), quad_points=quad_points, path=path,
            wall_datum=wall_datum, workers=workers, out_dir=out_dir, plots=plots,
        )
    except UsageError as e:
        _handle_error(e, verbose, EXIT_USAGE)
    _execute(Command.SWEEP, flags, config, verbose)


@app.command()
def neutral(
    profile: ProfileOpt = None,
    profile_file: ProfileFileOpt = None,
    a: HeightOpt = None,
    elements: ElementsOpt = None,
    grading: GradingOpt = None,
    re: ReOpt = None,
    re_list: ReListOpt = None,
    alpha_lo: Annotated[float, typer.Option("--alpha-lo")] = None,
    alpha_hi: Annotated[float, typer.Option("--alpha-hi")] = None,
    tol_neutral: Annotated[float, typer.Option("--tol-neutral")] = None,
    quad_points: QuadOpt = None,
    path: PathOpt = None,
    wall_datum: WallDatumOpt = None,
    workers: WorkersOpt = None,
    out_dir: OutDirOpt = None,
    plots: PlotsOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Neutral curve c_i = 0 by alpha-bisection per Re: neutral.csv"""
    try:
        flags = _common(
            profile=profile, profile_file=profile_file, a=a, elements=elements,
            grading=grading, re=re, re_list=_float_list(re_list, "--re-list"),
            alpha_lo=alpha_lo, alpha_hi=alpha_hi, tol_neutral=tol_neutral,
            quad_points=quad_points, path=path, wall_datum=wall_datum, workers=workers,
            out_dir=out_dir, plots=plots,
        )
    except UsageError as e:
        _handle_error(e, verbose, EXIT_USAGE)
    _execute(Command.NEUTRAL, flags, config, verbose)


@app.command()
def validate(
    elements: ElementsOpt = None,
    grading: GradingOpt = None,
    n_modes: Annotated[int, typer.Option("--n-modes", help="Chebyshev points")] = None,
    quad_points: QuadOpt = None,
    path: PathOpt = None,
    wall_datum: WallDatumOpt = None,
    workers: WorkersOpt = None,
    out_dir: OutDirOpt = None,
    config: ConfigOpt = None,
    verbose: VerboseOpt = False,
):
    """Compare FEM leading eigenvalues with the collocation oracle (Poiseuille)"""
    flags = _common(
        elements=elements, grading=grading, n_modes=n_modes, quad_points=quad_points,
        path=path, wall_datum=wall_datum, workers=workers, out_dir=out_dir,
    )
    _execute(Command.VALIDATE, flags, config, verbose)


if __name__ == "__main__":
    app()
