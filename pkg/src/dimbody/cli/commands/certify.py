"""certify command: analytic level-1 certificate, optionally checked against a Gram matrix."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any

from dimbody.body.sdp import analytic_certificate, cross_check
from dimbody.cli.helpers import load_gamma_file, write_json

if TYPE_CHECKING:
    from dimbody.cli.config import RunConfig


def run_certify(config: RunConfig, m: int, gamma_file: Path | None = None) -> dict[str, Any]:
    certificate = analytic_certificate(m, config.tolerances.psd_eps)
    payload = certificate.to_dict()
    if gamma_file is not None:
        payload["cross_check"] = cross_check(
            certificate, load_gamma_file(gamma_file), config.tolerances.psd_eps
        )
    payload["summary"] = (
        f"primal {certificate.primal_value!r} = dual {certificate.dual_value!r} "
        f"(gap {certificate.gap:.1e})"
    )
    if config.output_path is not None:
        write_json(config.output_path, payload)
    return payload
