"""xo command: the witness point built two ways."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import numpy as np

from dimbody.body.model import (
    behavior_from_strategy,
    build_x_o,
    closed_form_x_o,
    to_matrix,
    witness_combination,
)
from dimbody.body.seesaw import bell_matrix, bell_value_of_behavior
from dimbody.cli.helpers import write_json
from dimbody.core.errors import NumericalIntegrityError

if TYPE_CHECKING:
    from dimbody.cli.config import RunConfig

AGREEMENT_ATOL = 1e-12


def run_xo(config: RunConfig, m: int) -> dict[str, Any]:
    """Enumerated mixture against the closed form, with Bell values."""
    behavior = build_x_o(m)
    enumerated = to_matrix(behavior)
    closed = closed_form_x_o(m)
    difference = float(np.max(np.abs(enumerated.entries - closed.entries)))
    if difference > AGREEMENT_ATOL:
        raise NumericalIntegrityError(
            "witness point", f"mixture and closed form differ by {difference!r}"
        )

    matrix = bell_matrix(m)
    vertex_values = [
        bell_value_of_behavior(matrix, behavior_from_strategy(strategy))
        for _, strategy in witness_combination(m).terms
    ]
    payload = {
        "m": m,
        "difference": difference,
        "bell_value": bell_value_of_behavior(matrix, behavior),
        "vertex_bell_value_min": min(vertex_values),
        "vertex_bell_value_max": max(vertex_values),
        "vertices": len(vertex_values),
        "behavior": behavior.to_dict(),
        "matrix": enumerated.to_dict(),
        "closed_form": closed.to_dict(),
        "summary": f"x°(m={m}): mixture matches closed form within {difference:.1e}",
    }
    if config.output_path is not None:
        write_json(config.output_path, payload)
    return payload
