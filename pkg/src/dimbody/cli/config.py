"""CLI run configuration and tolerance resolution."""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from dimbody.cli.helpers import load_tolerance_file
from dimbody.core.tolerances import ToleranceConfig, ToleranceProfile


@dataclass(frozen=True)
class RunConfig:
    """Resolved tolerances, parallelism and output target for one invocation."""

    tolerances: ToleranceConfig
    parallel: int = 1
    output_path: Path | None = None

    @classmethod
    def from_options(
        cls,
        *,
        profile: ToleranceProfile = "default",
        tolerance_file: Path | None = None,
        rank_eps: float | None = None,
        psd_eps: float | None = None,
        conv_eps: float | None = None,
        parallel: int = 1,
    ) -> RunConfig:
        """Preset first, then the YAML file, then explicit flags."""
        tolerances = ToleranceConfig.from_profile(profile)
        if tolerance_file is not None:
            tolerances = tolerances.with_overrides(**load_tolerance_file(tolerance_file))
        tolerances = tolerances.with_overrides(
            rank_eps=rank_eps, psd_eps=psd_eps, conv_eps=conv_eps
        )
        return cls(tolerances=tolerances, parallel=max(1, parallel))

    def with_output(self, path: Path | None) -> RunConfig:
        if path is None:
            return self
        return replace(self, output_path=path.expanduser().resolve())
