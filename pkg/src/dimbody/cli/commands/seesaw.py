"""seesaw command: best-of-trials maximization of the Bell polynomial."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from dimbody.body.seesaw import bell_matrix, best_of_trials
from dimbody.cli.helpers import write_json

if TYPE_CHECKING:
    from dimbody.cli.config import RunConfig


def run_seesaw(
    config: RunConfig, m: int, trials: int, seed: int, max_iter: int
) -> dict[str, Any]:
    best = best_of_trials(
        bell_matrix(m),
        trials,
        seed=seed,
        tol=config.tolerances.conv_eps,
        max_iter=max_iter,
        parallel=config.parallel,
    )
    target = m * m / 2.0
    payload = {
        **best.to_dict(),
        "trials": trials,
        "seed": seed,
        "best_trial": best.trial,
        "target": target,
        "summary": f"best value {best.value!r} (m**2/2 = {target!r}) from trial {best.trial}",
    }
    warnings = [] if best.converged else [f"best trial stopped at max_iter={max_iter}"]
    if warnings:
        payload["warnings"] = warnings
    if config.output_path is not None:
        write_json(config.output_path, payload)
    return payload
