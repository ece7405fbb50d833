from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

import pandas as pd

from .errors import InvalidParameterError

REPO_ROOT = Path(__file__).resolve().parents[2]
OUTPUTS_DIR = REPO_ROOT / "outputs"
MODULES_DIR = OUTPUTS_DIR / "modules"

TOOL_NAME = "dipolar-sle-lab"
SEED_ENV = "DIPOLAR_SEED"
FLOAT_FORMAT = "%.17g"


def tool_version() -> str:
    try:
        from importlib.metadata import version

        return version(TOOL_NAME)
    except Exception:
        return "0.1.0"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw in (None, ""):
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise InvalidParameterError(f"{SEED_ENV} must be an integer (got {raw!r})") from None
    if seed < 0:
        raise InvalidParameterError(f"{SEED_ENV} must be >= 0 (got {seed})")
    return seed


def write_csv(df: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    print(f"Wrote: {path}")
    return path


def write_json(payload: dict[str, Any], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=_jsonable), encoding="utf-8")
    print(f"Wrote: {path}")
    return path


def _jsonable(value: Any) -> Any:
    # numpy scalars and paths
    if hasattr(value, "item"):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


@dataclass
class RunManifest:
    command: str
    config: dict[str, Any]
    seed: int
    tool_version: str = field(default_factory=tool_version)
    outputs: list[str] = field(default_factory=list)
    created_at: Optional[str] = None

    def write(self, out_dir: Path) -> Path:
        self.created_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
        path = out_dir / "manifest.json"
        self.outputs = sorted(set(self.outputs + [str(path)]))
        return write_json(asdict(self), path)


def compute_finding_id(check_code: str, evidence_json: Optional[str]) -> str:
    """
    Deterministic ID based on check_code + evidence.primary_keys.
    Stable across runs provided primary_keys remain stable.
    """
    primary_keys: dict[str, Any] = {}
    if evidence_json:
        try:
            payload = json.loads(evidence_json)
            primary_keys = payload.get("primary_keys") or {}
        except (ValueError, AttributeError):
            primary_keys = {}

    parts = [check_code]
    for k in sorted(primary_keys.keys()):
        parts.append(f"{k}={primary_keys.get(k)}")

    canonical = "|".join(parts)
    return hashlib.sha1(canonical.encode("utf-8")).hexdigest()[:12]


def command_dir(command: str, out: Optional[Path] = None) -> Path:
    """outputs/<command>/ unless the caller passed --out."""
    path = Path(out) if out is not None else OUTPUTS_DIR / command
    path.mkdir(parents=True, exist_ok=True)
    return path
