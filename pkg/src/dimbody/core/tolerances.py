"""Numerical tolerance presets shared by every module."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, PositiveFloat

ToleranceProfile = Literal["default", "strict"]


class ToleranceConfig(BaseModel):
    """Thresholds for rank, PSD and see-saw convergence decisions.

    ``rank_eps`` is relative to the largest singular value, ``psd_eps`` is an
    absolute eigenvalue floor and ``conv_eps`` bounds the per-sweep improvement
    of the see-saw.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    rank_eps: PositiveFloat = 1e-8
    psd_eps: PositiveFloat = 1e-9
    conv_eps: PositiveFloat = 1e-10

    @classmethod
    def from_profile(cls, name: ToleranceProfile = "default") -> ToleranceConfig:
        """Return a named preset."""
        return PROFILES[name]

    def with_overrides(
        self,
        *,
        rank_eps: float | None = None,
        psd_eps: float | None = None,
        conv_eps: float | None = None,
    ) -> ToleranceConfig:
        """Return a copy with the given fields replaced; ``None`` keeps the current value."""
        updates = {
            key: value
            for key, value in {
                "rank_eps": rank_eps,
                "psd_eps": psd_eps,
                "conv_eps": conv_eps,
            }.items()
            if value is not None
        }
        # model_copy skips validation, so rebuild through the constructor.
        return ToleranceConfig(**{**self.model_dump(), **updates})


PROFILES: dict[str, ToleranceConfig] = {
    "default": ToleranceConfig(),
    "strict": ToleranceConfig(rank_eps=1e-10, psd_eps=1e-11, conv_eps=1e-12),
}

DEFAULT_TOLERANCES = PROFILES["default"]
