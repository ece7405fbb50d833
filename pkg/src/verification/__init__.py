"""Acceptance checks as auditable findings."""
from .checks import CHECKS, SCALES, CheckContext, CheckFinding, Thresholds
from .run import run_checks, summarise

__all__ = ["CHECKS", "SCALES", "CheckContext", "CheckFinding", "Thresholds", "run_checks", "summarise"]
