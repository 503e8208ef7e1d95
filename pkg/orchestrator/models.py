"""Pydantic models for run results"""

from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

EXIT_OK = 0
EXIT_NUMERICAL_FAILURE = 1
EXIT_USAGE = 2


class RunResult(BaseModel):
    """Outcome of one command: exit status, files written and a summary"""

    status: int = Field(EXIT_OK, description="0 success, 1 numerical failure, 2 usage error")
    artifacts: list[Path] = Field(default_factory=list, description="Files written, in order")
    summary: dict[str, Any] = Field(default_factory=dict, description="Command-specific results")
    message: str = Field("", description="Failure description, empty on success")
    table: list[dict[str, Any]] = Field(
        default_factory=list, description="Rows for the console table (validate)"
    )
