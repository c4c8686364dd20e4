"""Behaviors, deterministic strategies, convex mixtures and the witness point.

A behavior stores the expectation values of a bipartite scenario with
``m_a`` two-outcome settings for Alice and ``m_b`` for Bob. The correlation
matrix arranges them as::

    X[0, 0] = 1,  X[i, 0] = <A_i>,  X[0, j] = <B_j>,  X[i, j] = <A_i B_j>
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

import numpy as np
from numpy.typing import NDArray

from dimbody.core.errors import (
    InvalidCombinationError,
    InvalidInputError,
    ResourceLimitError,
)
from dimbody.core.numerics import as_finite

ENTRY_SLACK = 1e-9
WEIGHT_SUM_ATOL = 1e-12
MAX_ENUMERATION_M = 20


@dataclass(frozen=True)
class Scenario:
    """Number of two-outcome settings per party."""

    m_a: int
    m_b: int

    def __post_init__(self) -> None:
        if self.m_a < 1 or self.m_b < 1:
            raise InvalidInputError(
                "a scenario needs at least one setting per party",
                m_a=self.m_a,
                m_b=self.m_b,
            )


def _check_range(values: NDArray, name: str) -> None:
    if values.size and float(np.max(np.abs(values))) > 1.0 + ENTRY_SLACK:
        raise InvalidInputError(f"{name} entries must lie in [-1, 1]")


@dataclass(frozen=True, eq=False)
class Behavior:
    """Marginal and joint expectation values of a two-party scenario."""

    a_marginals: NDArray[np.float64]
    b_marginals: NDArray[np.float64]
    joints: NDArray[np.float64]

    def __post_init__(self) -> None:
        a = as_finite(np.asarray(self.a_marginals, dtype=np.float64), name="a_marginals", ndim=1)
        b = as_finite(np.asarray(self.b_marginals, dtype=np.float64), name="b_marginals", ndim=1)
        joints = as_finite(np.asarray(self.joints, dtype=np.float64), name="joints")
        if joints.shape != (a.size, b.size):
            raise InvalidInputError(
                f"joints must have shape ({a.size}, {b.size}), got {joints.shape}"
            )
        for values, name in ((a, "a_marginals"), (b, "b_marginals"), (joints, "joints")):
            _check_range(values, name)
        object.__setattr__(self, "a_marginals", a)
        object.__setattr__(self, "b_marginals", b)
        object.__setattr__(self, "joints", joints)

    @property
    def scenario(self) -> Scenario:
        return Scenario(self.a_marginals.size, self.b_marginals.size)

    def to_dict(self) -> dict[str, Any]:
        """JSON form with row-major joints."""
        return {
            "m_a": self.scenario.m_a,
            "m_b": self.scenario.m_b,
            "a_marginals": self.a_marginals.tolist(),
            "b_marginals": self.b_marginals.tolist(),
            "joints": self.joints.ravel().tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Behavior:
        try:
            m_a, m_b = int(data["m_a"]), int(data["m_b"])
            joints = np.asarray(data["joints"], dtype=np.float64).reshape(m_a, m_b)
            return cls(
                a_marginals=np.asarray(data["a_marginals"], dtype=np.float64),
                b_marginals=np.asarray(data["b_marginals"], dtype=np.float64),
                joints=joints,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed behavior JSON: {exc}") from exc


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """The ``(m_a + 1) x (m_b + 1)`` matrix housing a behavior."""

    entries: NDArray[np.float64]

    def __post_init__(self) -> None:
        entries = as_finite(np.asarray(self.entries, dtype=np.float64), name="entries")
        if entries.shape[0] < 2 or entries.shape[1] < 2:
            raise InvalidInputError("a correlation matrix has at least 2 rows and 2 columns")
        if entries[0, 0] != 1.0:
            raise InvalidInputError("X[0, 0] must equal 1")
        _check_range(entries, "correlation matrix")
        object.__setattr__(self, "entries", entries)

    @property
    def interior(self) -> NDArray[np.float64]:
        return self.entries[1:, 1:]

    def to_behavior(self) -> Behavior:
        return Behavior(
            a_marginals=self.entries[1:, 0],
            b_marginals=self.entries[0, 1:],
            joints=self.entries[1:, 1:],
        )

    def to_dict(self) -> dict[str, Any]:
        return {"rows": self.entries.tolist()}


@dataclass(frozen=True)
class DeterministicStrategy:
    """Definite ``+1``/``-1`` outcomes for every setting of both parties."""

    a_outcomes: tuple[int, ...]
    b_outcomes: tuple[int, ...]

    def __post_init__(self) -> None:
        a = tuple(int(v) for v in self.a_outcomes)
        b = tuple(int(v) for v in self.b_outcomes)
        if not a or not b:
            raise InvalidInputError("a strategy needs at least one setting per party")
        if any(v not in (1, -1) for v in (*a, *b)):
            raise InvalidInputError("deterministic outcomes must be exactly +1 or -1")
        object.__setattr__(self, "a_outcomes", a)
        object.__setattr__(self, "b_outcomes", b)

    @property
    def scenario(self) -> Scenario:
        return Scenario(len(self.a_outcomes), len(self.b_outcomes))

    def flipped(self) -> DeterministicStrategy:
        """The strategy with every outcome sign reversed."""
        return DeterministicStrategy(
            tuple(-v for v in self.a_outcomes),
            tuple(-v for v in self.b_outcomes),
        )


@dataclass(frozen=True)
class ConvexCombination:
    """Weighted deterministic strategies; weights are checked by :func:`mix`."""

    terms: tuple[tuple[float, DeterministicStrategy], ...] = field(default_factory=tuple)

    @property
    def weights(self) -> list[float]:
        return [weight for weight, _ in self.terms]


def behavior_from_strategy(strategy: DeterministicStrategy) -> Behavior:
    a = np.asarray(strategy.a_outcomes, dtype=np.float64)
    b = np.asarray(strategy.b_outcomes, dtype=np.float64)
    return Behavior(a_marginals=a, b_marginals=b, joints=np.outer(a, b))


def to_matrix(behavior: Behavior) -> CorrelationMatrix:
    m_a, m_b = behavior.scenario.m_a, behavior.scenario.m_b
    entries = np.empty((m_a + 1, m_b + 1), dtype=np.float64)
    entries[0, 0] = 1.0
    entries[1:, 0] = behavior.a_marginals
    entries[0, 1:] = behavior.b_marginals
    entries[1:, 1:] = behavior.joints
    return CorrelationMatrix(entries)


def mix(combination: ConvexCombination) -> Behavior:
    """Entrywise weighted average of the strategies' behaviors."""
    if not combination.terms:
        raise InvalidCombinationError(0.0, "a convex combination needs at least one term")
    weights = combination.weights
    if any(weight < 0.0 for weight in weights):
        raise InvalidCombinationError(math.fsum(weights), "convex weights must be nonnegative")
    total = math.fsum(weights)
    if abs(total - 1.0) > WEIGHT_SUM_ATOL:
        raise InvalidCombinationError(total)

    scenario = combination.terms[0][1].scenario
    a_acc = np.zeros(scenario.m_a)
    b_acc = np.zeros(scenario.m_b)
    joint_acc = np.zeros((scenario.m_a, scenario.m_b))
    for weight, strategy in combination.terms:
        if strategy.scenario != scenario:
            raise InvalidInputError("all strategies in a combination must share one scenario")
        a = np.asarray(strategy.a_outcomes, dtype=np.float64)
        b = np.asarray(strategy.b_outcomes, dtype=np.float64)
        a_acc += weight * a
        b_acc += weight * b
        joint_acc += weight * np.outer(a, b)
    return Behavior(a_marginals=a_acc, b_marginals=b_acc, joints=joint_acc)


def _require_even(m: int) -> None:
    if m < 2 or m % 2:
        raise InvalidInputError("m must be even", m=m)


def extreme_strategy(m: int, sign: Literal[1, -1]) -> DeterministicStrategy:
    """All outcomes ``+1`` (x^(+)) or all ``-1`` (x^(-))."""
    if m < 1:
        raise InvalidInputError("m must be positive", m=m)
    outcomes = (sign,) * m
    return DeterministicStrategy(outcomes, outcomes)


def enumerate_balanced_strategies(m: int) -> list[DeterministicStrategy]:
    """Strategies with ``m/2`` of Alice's outcomes ``+1`` and ``B_i = -A_i``.

    Ordered lexicographically over Alice's sign patterns with ``+1`` before
    ``-1``, which is the lexicographic order of the ``+1`` positions.
    """
    _require_even(m)
    strategies = []
    for plus_positions in itertools.combinations(range(m), m // 2):
        chosen = set(plus_positions)
        a = tuple(1 if i in chosen else -1 for i in range(m))
        strategies.append(DeterministicStrategy(a, tuple(-v for v in a)))
    return strategies


def balanced_strategy_count(m: int) -> int:
    _require_even(m)
    return math.comb(m, m // 2)


def count_offdiagonal_plus(
    strategies: list[DeterministicStrategy], i: int, j: int
) -> int:
    """Number of strategies whose joint ``<A_i B_j>`` equals ``+1``."""
    return sum(1 for s in strategies if s.a_outcomes[i] * s.b_outcomes[j] == 1)


def witness_weights(m: int) -> tuple[Fraction, Fraction]:
    """Exact (per balanced strategy, per extreme strategy) weights of the witness mixture."""
    _require_even(m)
    half = math.factorial(m // 2)
    balanced = Fraction(m - 1, m) * Fraction(half * half, math.factorial(m))
    extreme = Fraction(1, 2 * m)
    return balanced, extreme


def witness_combination(m: int) -> ConvexCombination:
    """Balanced strategies followed by x^(+) and x^(-), weighted as in the witness mixture."""
    _require_even(m)
    if m > MAX_ENUMERATION_M:
        raise ResourceLimitError("m", m, MAX_ENUMERATION_M)
    balanced, extreme = witness_weights(m)
    terms = [(float(balanced), s) for s in enumerate_balanced_strategies(m)]
    terms.append((float(extreme), extreme_strategy(m, 1)))
    terms.append((float(extreme), extreme_strategy(m, -1)))
    return ConvexCombination(tuple(terms))


def build_x_o(m: int) -> Behavior:
    """The witness point: a local-polytope point with a full-rank correlation matrix."""
    return mix(witness_combination(m))


def closed_form_x_o(m: int) -> CorrelationMatrix:
    """Zero marginals, diagonal joints ``2/m - 1`` and off-diagonal joints ``2/m``."""
    _require_even(m)
    entries = np.zeros((m + 1, m + 1), dtype=np.float64)
    entries[0, 0] = 1.0
    entries[1:, 1:] = 2.0 / m
    entries[np.arange(1, m + 1), np.arange(1, m + 1)] = 2.0 / m - 1.0
    return CorrelationMatrix(entries)

