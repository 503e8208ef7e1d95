"""Run configuration: built-in defaults < JSON config document < explicit flags"""

import json
import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from config import (
    DEFAULT_CHANNEL_HEIGHT,
    DEFAULT_CR_MARGIN,
    DEFAULT_GRADING_EXPONENT,
    DEFAULT_MAX_DIVERGENCE_RATIO,
    DEFAULT_ORACLE_MODES,
    DEFAULT_OUT_DIR,
    DEFAULT_QUAD_POINTS,
    DEFAULT_RESIDUAL_TOL,
    DEFAULT_SOLVER_PATH,
    DEFAULT_SWEEP_WORKERS,
    DEFAULT_TOL_NEUTRAL,
    DEFAULT_WALL_DATUM,
    Command,
    ProfileName,
    SolverPath,
    WallDatum,
)

logger = logging.getLogger(__name__)

# flag name -> (RunConfig field, wraps a scalar into a list)
LIST_ALIASES = {
    "re": ("re_values", True),
    "re_list": ("re_values", False),
    "alpha": ("alpha_values", True),
    "alpha_list": ("alpha_values", False),
}


class UsageError(ValueError):
    """Bad flags, malformed config document or contradictory settings"""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Usage error: {reason}")


class RunConfig(BaseModel):
    """Validated settings of one CLI run"""

    model_config = ConfigDict(extra="forbid")

    command: Command = Field(..., description="solve, sweep, neutral, modes or validate")
    profile: ProfileName = Field(ProfileName.POISEUILLE, description="Base flow")
    profile_file: Path | None = Field(None, description="CSV with columns y,U for tabulated flows")
    a: float = Field(DEFAULT_CHANNEL_HEIGHT, gt=0, description="Channel height")
    elements: int = Field(..., ge=1, description="Number of finite elements N")
    grading: float = Field(DEFAULT_GRADING_EXPONENT, gt=0, description="Node law exponent")
    re_values: list[float] = Field(default_factory=list, description="Reynolds numbers")
    alpha_values: list[float] = Field(default_factory=list, description="Wave numbers")
    alpha_lo: float | None = Field(None, gt=0, description="Neutral-curve bracket, lower")
    alpha_hi: float | None = Field(None, gt=0, description="Neutral-curve bracket, upper")
    quad_points: int = Field(DEFAULT_QUAD_POINTS, ge=1, le=8)
    path: SolverPath = Field(DEFAULT_SOLVER_PATH, description="schur-qr or coupled-qz")
    wall_datum: WallDatum = Field(DEFAULT_WALL_DATUM, description="Pressure wall datum")
    tol_neutral: float = Field(DEFAULT_TOL_NEUTRAL, gt=0)
    residual_tol: float = Field(DEFAULT_RESIDUAL_TOL, gt=0)
    speed_margin: float = Field(DEFAULT_CR_MARGIN, ge=0)
    max_divergence_ratio: float | None = Field(DEFAULT_MAX_DIVERGENCE_RATIO, gt=0)
    levels: list[float] = Field(default_factory=list, description="c_i contour levels")
    workers: int = Field(DEFAULT_SWEEP_WORKERS, ge=1)
    n_modes: int = Field(DEFAULT_ORACLE_MODES, ge=16, description="Chebyshev points")
    count: int = Field(1, ge=1, description="Modes written by the modes command")
    out_dir: Path = Field(Path(DEFAULT_OUT_DIR))
    plots: bool = False
    dump_matrices: bool = False

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        if any(value <= 0 for value in self.re_values + self.alpha_values):
            raise ValueError("Re and alpha values must be positive")
        if self.profile == ProfileName.TABULATED and self.profile_file is None:
            raise ValueError("profile 'tabulated' needs profile_file")
        if self.profile_file is not None:
            if self.profile != ProfileName.TABULATED:
                raise ValueError(f"profile_file given together with profile '{self.profile}'")
            if not self.profile_file.is_file():
                raise ValueError(f"profile file not found: {self.profile_file}")

        if self.command in (Command.SOLVE, Command.MODES):
            if len(self.re_values) != 1 or len(self.alpha_values) != 1:
                raise ValueError(f"{self.command} needs exactly one Re and one alpha")
        elif self.command == Command.SWEEP:
            if not self.re_values or not self.alpha_values:
                raise ValueError("sweep needs Re and alpha lists")
        elif self.command == Command.NEUTRAL:
            if not self.re_values:
                raise ValueError("neutral needs an Re list")
            if self.alpha_lo is None or self.alpha_hi is None:
                raise ValueError("neutral needs alpha_lo and alpha_hi")
        if (
            self.alpha_lo is not None
            and self.alpha_hi is not None
            and self.alpha_lo >= self.alpha_hi
        ):
            raise ValueError(f"alpha_lo={self.alpha_lo} must be below alpha_hi={self.alpha_hi}")
        return self

    @property
    def re(self) -> float:
        return self.re_values[0]

    @property
    def alpha(self) -> float:
        return self.alpha_values[0]


def _normalize_layer(layer: Mapping[str, Any], source: str) -> dict[str, Any]:
    """Drop unset entries and fold re/re_list, alpha/alpha_list into list fields"""
    values = {key: value for key, value in layer.items() if value is not None}
    for alias, (target, scalar) in LIST_ALIASES.items():
        if alias not in values:
            continue
        value = values.pop(alias)
        if target in values:
            raise UsageError(f"{source}: both {alias} and another {target} setting given")
        values[target] = [value] if scalar else list(value)
    if "profile_file" in values and "profile" not in values:
        values["profile"] = ProfileName.TABULATED
    return values


def load_config_document(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except FileNotFoundError as e:
        raise UsageError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {path}: {e}") from e
    if not isinstance(document, dict):
        raise UsageError(f"config document {path} must be a JSON object")
    return document


def parse_config(
    command: Command | str,
    flags: Mapping[str, Any] | None = None,
    config_path: str | Path | None = None,
) -> RunConfig:
    """
    Merge a JSON config document and explicit flags into a validated RunConfig.

    Args:
        command: The command being run
        flags: Flag values; None means "not given"
        config_path: Optional JSON document with RunConfig field names

    Returns:
        RunConfig with defaults filled

    Raises:
        UsageError: unknown keys, malformed JSON, contradictory or missing settings
    """
    try:
        command = Command(command)
    except ValueError as e:
        raise UsageError(f"unknown command '{command}'") from e

    document = load_config_document(config_path) if config_path else {}
    if document.get("command", command) != command:
        raise UsageError(
            f"config document is for '{document['command']}', not '{command}'"
        )
    document = _normalize_layer(document, "config document")
    explicit = _normalize_layer(flags or {}, "flags")

    # an explicit built-in profile replaces a tabulated one from the document
    if "profile" in explicit and "profile_file" not in explicit:
        document.pop("profile_file", None)

    merged = {**document, **explicit, "command": command}
    try:
        config = RunConfig.model_validate(merged)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(map(str, error['loc'])) or 'config'}: {error['msg']}"
            for error in e.errors()
        )
        raise UsageError(problems) from e
    logger.debug(f"Resolved run config: {config.model_dump(mode='json')}")
    return config
