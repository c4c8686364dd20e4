"""The correlation Bell polynomial and its maximization over unit vectors.

For the family ``M_ij = 1 - (m/2) delta_ij`` every correlation
``<A_i B_j>`` is replaced by a dot product ``a_i . b_j`` of unit vectors. Given
Bob's vectors, each ``a_i`` is best chosen parallel to ``sum_j M_ij b_j``; the
see-saw alternates this update between the two parties.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike, NDArray

from dimbody.body.model import Behavior, DeterministicStrategy
from dimbody.core.errors import InvalidConfigurationError, InvalidInputError
from dimbody.core.numerics import (
    as_finite,
    as_vector_rows,
    max_norm_deviation,
    normalize_rows,
)

UNIT_ATOL = 1e-8
DEGENERATE_LENGTH = 1e-12
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000

Seed = int | np.random.SeedSequence | None


@dataclass(frozen=True, eq=False)
class BellMatrix:
    """Coefficients of a correlation-type Bell polynomial."""

    entries: NDArray[np.float64]

    def __post_init__(self) -> None:
        entries = as_finite(np.asarray(self.entries, dtype=np.float64), name="Bell matrix")
        object.__setattr__(self, "entries", entries)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def is_square(self) -> bool:
        return self.entries.shape[0] == self.entries.shape[1]


@dataclass(frozen=True, eq=False)
class VectorConfiguration:
    """Real vectors for Alice (rows of ``a_vectors``) and Bob (rows of ``b_vectors``)."""

    a_vectors: NDArray[np.float64]
    b_vectors: NDArray[np.float64]

    def __post_init__(self) -> None:
        a = as_vector_rows(self.a_vectors, name="a_vectors")
        b = as_vector_rows(self.b_vectors, name="b_vectors")
        if a.shape[1] != b.shape[1]:
            raise InvalidInputError(
                f"a and b vectors must share a dimension ({a.shape[1]} != {b.shape[1]})"
            )
        object.__setattr__(self, "a_vectors", a)
        object.__setattr__(self, "b_vectors", b)

    @property
    def dim(self) -> int:
        return self.a_vectors.shape[1]

    def max_norm_deviation(self) -> float:
        return max(max_norm_deviation(self.a_vectors), max_norm_deviation(self.b_vectors))


@dataclass(frozen=True, eq=False)
class SeesawResult:
    config: VectorConfiguration
    value: float
    iterations: int
    stationarity_residual: float
    converged: bool
    history: list[float] = field(default_factory=list)
    trial: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.config.a_vectors.shape[0],
            "value": self.value,
            "iterations": self.iterations,
            "residual": self.stationarity_residual,
            "converged": self.converged,
            "dim": self.config.dim,
            "a_vectors": self.config.a_vectors.tolist(),
            "b_vectors": self.config.b_vectors.tolist(),
        }


def bell_matrix(m: int) -> BellMatrix:
    """``M_ij = 1 - (m/2) delta_ij``."""
    if m < 1:
        raise InvalidInputError("m must be at least 1", m=m)
    return BellMatrix(np.ones((m, m)) - (m / 2.0) * np.eye(m))


def _check_shapes(matrix: BellMatrix, config: VectorConfiguration) -> None:
    expected = (config.a_vectors.shape[0], config.b_vectors.shape[0])
    if matrix.entries.shape != expected:
        raise InvalidInputError(
            f"Bell matrix shape {matrix.entries.shape} does not match {expected} vectors"
        )


def bell_value(matrix: BellMatrix, config: VectorConfiguration) -> float:
    """``sum_ij M_ij a_i . b_j``."""
    _check_shapes(matrix, config)
    deviation = config.max_norm_deviation()
    if deviation > UNIT_ATOL:
        raise InvalidConfigurationError(deviation, UNIT_ATOL)
    return float(np.sum(matrix.entries * (config.a_vectors @ config.b_vectors.T)))


def bell_value_of_behavior(matrix: BellMatrix, behavior: Behavior) -> float:
    """Evaluate the polynomial on the joint correlations of a behavior."""
    if matrix.entries.shape != behavior.joints.shape:
        raise InvalidInputError("Bell matrix and behavior joints differ in shape")
    return float(np.sum(matrix.entries * behavior.joints))


def _aligned(
    weighted: NDArray[np.float64], previous: NDArray[np.float64] | None
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    lengths = np.linalg.norm(weighted, axis=1)
    degenerate = lengths < DEGENERATE_LENGTH
    aligned = np.empty_like(weighted)
    aligned[~degenerate] = weighted[~degenerate] / lengths[~degenerate, None]
    if np.any(degenerate):
        # Any unit vector is optimal here; keep the previous one.
        if previous is None:
            fallback = np.zeros(weighted.shape[1])
            fallback[0] = 1.0
            aligned[degenerate] = fallback
        else:
            aligned[degenerate] = previous[degenerate]
    return aligned, lengths


def optimal_a_given_b(
    matrix: BellMatrix,
    b_vectors: ArrayLike,
    previous: ArrayLike | None = None,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Align each ``a_i`` with ``sum_j M_ij b_j``; returns ``(a_vectors, l)``."""
    b = as_vector_rows(b_vectors, name="b_vectors")
    if matrix.entries.shape[1] != b.shape[0]:
        raise InvalidInputError("Bell matrix columns must match the number of b vectors")
    prior = None if previous is None else np.asarray(previous, dtype=np.float64)
    return _aligned(matrix.entries @ b, prior)


def optimal_b_given_a(
    matrix: BellMatrix,
    a_vectors: ArrayLike,
    previous: ArrayLike | None = None,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Bob-side half step: align each ``b_j`` with ``sum_i M_ij a_i``."""
    a = as_vector_rows(a_vectors, name="a_vectors")
    if matrix.entries.shape[0] != a.shape[0]:
        raise InvalidInputError("Bell matrix rows must match the number of a vectors")
    prior = None if previous is None else np.asarray(previous, dtype=np.float64)
    return _aligned(matrix.entries.T @ a, prior)


def row_lengths(matrix: BellMatrix, b_vectors: ArrayLike) -> NDArray[np.float64]:
    """``l_i = |sum_j M_ij b_j|``."""
    return optimal_a_given_b(matrix, b_vectors)[1]


def value_from_b(b_vectors: ArrayLike, m: int) -> float:
    """Optimal value given Bob's unit vectors, summed in closed form.

    Each term is ``sqrt(m**2/4 + S.S - m b_i.S)`` with ``S = sum_k b_k``, the
    expansion of ``|S - (m/2) b_i|`` for unit ``b_i``.
    """
    b = as_vector_rows(b_vectors, name="b_vectors")
    if b.shape[0] != m:
        raise InvalidInputError(f"expected {m} b vectors, got {b.shape[0]}")
    total = b.sum(axis=0)
    squares = m * m / 4.0 + total @ total - m * (b @ total)
    return float(np.sum(np.sqrt(np.clip(squares, 0.0, None))))


def stationarity_residual(b_vectors: ArrayLike) -> float:
    """``max_{i<j} |(b_i - b_j) . S|``; zero at the polynomial's maximum."""
    b = as_vector_rows(b_vectors, name="b_vectors")
    projections = b @ b.sum(axis=0)
    return float(np.max(projections) - np.min(projections))


def orthonormal_optimum(m: int) -> VectorConfiguration:
    """Orthonormal ``b_j`` with their aligned ``a_i``; realizes the witness point."""
    b = np.eye(m)
    a, _ = optimal_a_given_b(bell_matrix(m), b)
    return VectorConfiguration(a, b)


def strategy_configuration(strategy: DeterministicStrategy) -> VectorConfiguration:
    """One-dimensional vectors ``a_i = A_i e_1``, ``b_j = B_j e_1``."""
    a = np.asarray(strategy.a_outcomes, dtype=np.float64)[:, None]
    b = np.asarray(strategy.b_outcomes, dtype=np.float64)[:, None]
    return VectorConfiguration(a, b)


def seesaw_optimize(
    matrix: BellMatrix,
    seed: Seed = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    dim: int | None = None,
) -> SeesawResult:
    """Alternate exact half-step maximizations from a seeded random start.

    Stops once a full sweep improves the value by less than ``tol`` and moves
    no vector by more than ``tol``; hitting ``max_iter`` flags the result as
    not converged.
    """
    if tol <= 0:
        raise InvalidInputError("tol must be positive", tol=tol)
    m_a, m_b = matrix.entries.shape
    n = dim or min(m_a + m_b, max(m_a, m_b) + 1)
    rng = np.random.default_rng(seed)
    a = normalize_rows(rng.standard_normal((m_a, n)))
    b = normalize_rows(rng.standard_normal((m_b, n)))

    value = bell_value(matrix, VectorConfiguration(a, b))
    history = [value]
    converged = False
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        new_a, _ = optimal_a_given_b(matrix, b, previous=a)
        new_b, _ = optimal_b_given_a(matrix, new_a, previous=b)
        step = max(
            float(np.max(np.abs(new_a - a))),
            float(np.max(np.abs(new_b - b))),
        )
        a, b = new_a, new_b
        new_value = bell_value(matrix, VectorConfiguration(a, b))
        history.append(new_value)
        improvement = new_value - value
        value = new_value
        if improvement < tol and step < tol:
            converged = True
            break

    if not converged:
        logger.warning("see-saw hit max_iter={} at value {}", max_iter, value)
    residual = stationarity_residual(b)
    logger.debug(
        "see-saw finished: iterations={} value={} residual={:.3e}",
        iterations,
        value,
        residual,
    )
    return SeesawResult(
        config=VectorConfiguration(a, b),
        value=value,
        iterations=iterations,
        stationarity_residual=residual,
        converged=converged,
        history=history,
    )


def best_of_trials(
    matrix: BellMatrix,
    trials: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    parallel: int = 1,
) -> SeesawResult:
    """Run independent seeded trials and keep the first best one in trial order."""
    if trials < 1:
        raise InvalidInputError("trials must be at least 1", trials=trials)
    seeds = np.random.SeedSequence(seed).spawn(trials)

    def run(index: int) -> SeesawResult:
        result = seesaw_optimize(matrix, seeds[index], tol=tol, max_iter=max_iter)
        return SeesawResult(
            config=result.config,
            value=result.value,
            iterations=result.iterations,
            stationarity_residual=result.stationarity_residual,
            converged=result.converged,
            history=result.history,
            trial=index,
        )

    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(run, range(trials)))
    else:
        results = [run(index) for index in range(trials)]
    return max(results, key=lambda result: result.value)
