"""Shared helpers for CLI commands."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
import yaml
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, PositiveFloat, ValidationError

from dimbody.core.errors import InvalidInputError, OutputWriteError


class ToleranceFile(BaseModel):
    """Subset of tolerance fields accepted from ``--tolerance-file``."""

    model_config = ConfigDict(extra="forbid")

    rank_eps: PositiveFloat | None = None
    psd_eps: PositiveFloat | None = None
    conv_eps: PositiveFloat | None = None


def load_tolerance_file(path: Path) -> dict[str, float | None]:
    """Load tolerance overrides from a YAML mapping."""
    if not path.exists():
        raise FileNotFoundError(path)
    data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    if not isinstance(data, dict):
        raise InvalidInputError(f"Tolerance file must be a mapping: {path}")
    try:
        return ToleranceFile.model_validate(data).model_dump()
    except ValidationError as exc:
        errors = [f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors()]
        raise InvalidInputError(
            f"Invalid tolerance file {path}: {'; '.join(errors)}", errors=errors
        ) from exc


def load_gamma_file(path: Path) -> NDArray[np.float64]:
    """Read a Gram matrix stored as a JSON nested list."""
    if not path.exists():
        raise FileNotFoundError(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        gamma = np.asarray(data, dtype=np.float64)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"Gamma file is not a numeric JSON matrix: {path}") from exc
    if gamma.ndim != 2:
        raise InvalidInputError(f"Gamma file must hold a 2-D nested list: {path}")
    return gamma


def write_json(path: Path, payload: dict[str, Any] | list[Any]) -> Path:
    """Write a JSON document (UTF-8), creating parent directories."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OutputWriteError(str(path), exc.strerror or str(exc)) from exc
    return path
