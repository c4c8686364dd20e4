"""Rank-based necessary condition for realizability at a fixed local dimension.

Every Hermitian operator on a ``d``-dimensional space is a real combination of
``d**2`` basis operators, so a correlation matrix realized there has at most
``d**2`` linearly independent rows (and columns). A larger rank excludes ``d``;
a rank within the bound proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from dimbody.core.compat import StrEnum
from typing import Any

from dimbody.body.model import Behavior, to_matrix
from dimbody.core.errors import InvalidInputError
from dimbody.core.numerics import DEFAULT_RANK_EPS, rank_with_tolerance


class Realizability(StrEnum):
    EXCLUDED = "excluded"
    NOT_EXCLUDED = "not-excluded"


@dataclass(frozen=True)
class WitnessVerdict:
    """Outcome of the rank test for one local dimension."""

    rank: int
    d: int
    threshold: int
    realizable_at_d: Realizability

    @property
    def excluded(self) -> bool:
        return self.realizable_at_d is Realizability.EXCLUDED

    def to_dict(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "d": self.d,
            "threshold": self.threshold,
            "excluded": self.excluded,
        }


def _verdict(rank: int, d: int, threshold: int) -> WitnessVerdict:
    realizability = (
        Realizability.EXCLUDED if rank > threshold else Realizability.NOT_EXCLUDED
    )
    return WitnessVerdict(rank=rank, d=d, threshold=threshold, realizable_at_d=realizability)


def dimension_witness(
    behavior: Behavior, d: int, eps: float = DEFAULT_RANK_EPS
) -> WitnessVerdict:
    """Exclude local dimension ``d`` when the correlation matrix rank exceeds ``d**2``."""
    if d < 1:
        raise InvalidInputError("d must be at least 1", d=d)
    rank = rank_with_tolerance(to_matrix(behavior).entries, eps)
    return _verdict(rank, d, d * d)


def asymmetric_dimension_witness(
    behavior: Behavior, d_a: int, d_b: int, eps: float = DEFAULT_RANK_EPS
) -> WitnessVerdict:
    """Rows bound Alice's dimension and columns Bob's; the smaller bound decides."""
    if d_a < 1 or d_b < 1:
        raise InvalidInputError("local dimensions must be at least 1", d_a=d_a, d_b=d_b)
    rank = rank_with_tolerance(to_matrix(behavior).entries, eps)
    d = min(d_a, d_b)
    return _verdict(rank, d, d * d)


def minimal_excluding_settings(d: int) -> int:
    """Smallest even number of settings whose witness point excludes dimension ``d``.

    The witness point for ``m`` settings has rank ``m + 1``, which exceeds
    ``d**2`` once ``m >= d**2``.
    """
    if d < 1:
        raise InvalidInputError("d must be at least 1", d=d)
    m = d * d
    return max(2, m + (m % 2))
