"""realize command: explicit quantum realization of the witness point."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import numpy as np

from dimbody.body.model import closed_form_x_o, to_matrix
from dimbody.body.realize import behavior_of, realize_x_o
from dimbody.body.witness import dimension_witness
from dimbody.cli.helpers import write_json

if TYPE_CHECKING:
    from dimbody.cli.config import RunConfig


def run_realize(config: RunConfig, m: int, include_operators: bool = False) -> dict[str, Any]:
    realization = realize_x_o(m)
    behavior = behavior_of(realization)
    deviation = float(
        np.max(np.abs(to_matrix(behavior).entries - closed_form_x_o(m).entries))
    )
    marginal = float(
        np.max(np.abs(np.concatenate([behavior.a_marginals, behavior.b_marginals])))
    )
    verdict = dimension_witness(behavior, realization.dim_a, config.tolerances.rank_eps)
    payload: dict[str, Any] = {
        "m": m,
        "local_dimension": realization.dim_a,
        "deviation": deviation,
        "max_marginal": marginal,
        "witness": verdict.to_dict(),
        "behavior": behavior.to_dict(),
        "summary": (
            f"x°(m={m}) realized on C^{realization.dim_a} (x) C^{realization.dim_b}, "
            f"deviation {deviation:.1e}"
        ),
    }
    if include_operators:
        payload["realization"] = realization.to_dict()
    if config.output_path is not None:
        write_json(config.output_path, payload)
    return payload
