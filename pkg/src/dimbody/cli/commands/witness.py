"""witness command: rank test of the witness point at one local dimension."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from dimbody.body.model import build_x_o
from dimbody.body.witness import dimension_witness, minimal_excluding_settings
from dimbody.cli.helpers import write_json

if TYPE_CHECKING:
    from dimbody.cli.config import RunConfig


def run_witness(config: RunConfig, m: int, d: int) -> dict[str, Any]:
    verdict = dimension_witness(build_x_o(m), d, config.tolerances.rank_eps)
    payload = {
        "m": m,
        **verdict.to_dict(),
        "verdict": verdict.realizable_at_d.value,
        "minimal_excluding_m": minimal_excluding_settings(d),
        "summary": (
            f"rank {verdict.rank} vs d^2 = {verdict.threshold}: "
            f"d={d} {verdict.realizable_at_d.value}"
        ),
    }
    if config.output_path is not None:
        write_json(config.output_path, payload)
    return payload
