"""cone command: projective and POVM scans of the third-measurement slice."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Literal

from dimbody.body.cone import (
    DEFAULT_CLASSIFY_EPS,
    povm_scan,
    projective_scan,
    scan_summary,
    write_rows,
)

if TYPE_CHECKING:
    from dimbody.cli.config import RunConfig


def run_cone(
    config: RunConfig, grid_density: int, fmt: Literal["csv", "json"] = "csv"
) -> dict[str, Any]:
    """Scan rows go to ``--out``; the summary is the command payload."""
    rows = projective_scan(grid_density, DEFAULT_CLASSIFY_EPS, config.parallel)
    rows += povm_scan(grid_density, DEFAULT_CLASSIFY_EPS, config.parallel)
    summary = scan_summary(rows, DEFAULT_CLASSIFY_EPS)
    payload: dict[str, Any] = {
        "grid_density": grid_density,
        "rows": len(rows),
        **summary,
    }
    if config.output_path is not None:
        payload["output"] = str(write_rows(rows, config.output_path, fmt))
    payload["summary"] = (
        f"{len(rows)} points; projective lateral off-axis: "
        f"{summary['projective_lateral_off_axis']}, POVM lateral off-axis: "
        f"{summary['povm_lateral_off_axis']}"
    )
    return payload
