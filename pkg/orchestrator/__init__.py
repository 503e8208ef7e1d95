"""Command dispatch for the stability CLI"""

from orchestrator.models import RunResult
from orchestrator.runner import run

__all__ = ["RunResult", "run"]
