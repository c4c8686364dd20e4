"""Tests for the Bell polynomial and see-saw maximization."""

from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dimbody.body.model import (
    behavior_from_strategy,
    build_x_o,
    enumerate_balanced_strategies,
    extreme_strategy,
)
from dimbody.body.seesaw import (
    BellMatrix,
    VectorConfiguration,
    bell_matrix,
    bell_value,
    bell_value_of_behavior,
    best_of_trials,
    optimal_a_given_b,
    optimal_b_given_a,
    orthonormal_optimum,
    row_lengths,
    seesaw_optimize,
    stationarity_residual,
    strategy_configuration,
    value_from_b,
)
from dimbody.core.errors import InvalidConfigurationError, InvalidInputError
from dimbody.core.numerics import normalize_rows


def test_bell_matrix_entries() -> None:
    matrix = bell_matrix(4)
    assert matrix.m == 4
    assert matrix.is_square
    assert_allclose(np.diag(matrix.entries), -1.0)
    assert matrix.entries[0, 1] == 1.0


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_orthonormal_optimum_reaches_half_m_squared(m: int) -> None:
    config = orthonormal_optimum(m)
    assert bell_value(bell_matrix(m), config) == pytest.approx(m * m / 2, abs=1e-12)
    assert_allclose(row_lengths(bell_matrix(m), config.b_vectors), m / 2, atol=1e-12)


@pytest.mark.parametrize("m", [2, 4, 6])
def test_every_witness_vertex_attains_maximum(m: int) -> None:
    matrix = bell_matrix(m)
    target = m * m / 2
    assert bell_value_of_behavior(matrix, build_x_o(m)) == pytest.approx(target, abs=1e-12)
    for strategy in [*enumerate_balanced_strategies(m), extreme_strategy(m, 1)]:
        assert bell_value_of_behavior(matrix, behavior_from_strategy(strategy)) == target
        assert bell_value(matrix, strategy_configuration(strategy)) == target


def test_value_from_b_matches_aligned_value(rng: np.random.Generator) -> None:
    matrix = bell_matrix(5)
    b = normalize_rows(rng.standard_normal((5, 4)))
    a, _ = optimal_a_given_b(matrix, b)
    assert value_from_b(b, 5) == pytest.approx(bell_value(matrix, VectorConfiguration(a, b)))


def test_half_step_never_lowers_value(rng: np.random.Generator) -> None:
    matrix = bell_matrix(4)
    a = normalize_rows(rng.standard_normal((4, 5)))
    b = normalize_rows(rng.standard_normal((4, 5)))
    before = bell_value(matrix, VectorConfiguration(a, b))
    new_a, _ = optimal_a_given_b(matrix, b)
    middle = bell_value(matrix, VectorConfiguration(new_a, b))
    new_b, _ = optimal_b_given_a(matrix, new_a)
    after = bell_value(matrix, VectorConfiguration(new_a, new_b))
    assert before <= middle + 1e-12
    assert middle <= after + 1e-12


def test_degenerate_row_keeps_previous_vector() -> None:
    matrix = BellMatrix(np.array([[1.0, 1.0]]))
    b = np.array([[1.0, 0.0], [-1.0, 0.0]])
    aligned, lengths = optimal_a_given_b(matrix, b)
    assert lengths[0] == 0.0
    assert_allclose(aligned, [[1.0, 0.0]])
    previous = np.array([[0.0, 1.0]])
    aligned, _ = optimal_a_given_b(matrix, b, previous=previous)
    assert_allclose(aligned, previous)


def test_bell_value_rejects_non_unit_vectors() -> None:
    config = VectorConfiguration(2.0 * np.eye(2), np.eye(2))
    with pytest.raises(InvalidConfigurationError):
        bell_value(bell_matrix(2), config)


def test_shape_mismatch() -> None:
    with pytest.raises(InvalidInputError):
        bell_value(bell_matrix(3), orthonormal_optimum(2))
    with pytest.raises(InvalidInputError):
        VectorConfiguration(np.eye(2), np.eye(3))


@pytest.mark.parametrize("m", [2, 4])
def test_best_of_trials_reaches_maximum(m: int) -> None:
    result = best_of_trials(bell_matrix(m), trials=50, seed=7)
    assert result.value == pytest.approx(m * m / 2, abs=1e-6)
    assert result.converged
    assert stationarity_residual(result.config.b_vectors) <= 1e-8


@pytest.mark.slow
def test_best_of_trials_reaches_maximum_m6() -> None:
    result = best_of_trials(bell_matrix(6), trials=50, seed=7)
    assert result.value == pytest.approx(18.0, abs=1e-6)
    assert result.stationarity_residual <= 1e-8
    assert_allclose(row_lengths(bell_matrix(6), result.config.b_vectors), 3.0, atol=1e-6)


def test_seesaw_history_is_monotone() -> None:
    for seed in range(5):
        history = np.asarray(seesaw_optimize(bell_matrix(4), seed=seed).history)
        assert np.all(np.diff(history) >= -1e-12)


def test_seesaw_is_deterministic() -> None:
    first = best_of_trials(bell_matrix(4), trials=8, seed=3)
    second = best_of_trials(bell_matrix(4), trials=8, seed=3, parallel=4)
    assert first.value == second.value
    assert first.trial == second.trial
    assert np.array_equal(first.config.a_vectors, second.config.a_vectors)
    assert first.to_dict() == second.to_dict()


def test_seesaw_reports_non_convergence(caplog: pytest.LogCaptureFixture) -> None:
    result = seesaw_optimize(bell_matrix(4), seed=1, max_iter=1)
    assert not result.converged
    assert result.iterations == 1
    assert "hit max_iter" in caplog.text


def test_seesaw_dimension_and_validation() -> None:
    result = seesaw_optimize(bell_matrix(3), seed=0, dim=2)
    assert result.config.dim == 2
    with pytest.raises(InvalidInputError):
        seesaw_optimize(bell_matrix(3), tol=0.0)
    with pytest.raises(InvalidInputError):
        best_of_trials(bell_matrix(3), trials=0)


def test_stationarity_residual_zero_at_orthonormal_point() -> None:
    assert stationarity_residual(np.eye(4)) == 0.0
    assert stationarity_residual(np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])) > 0.5


def test_bell_value_invariant_under_rotation(rng: np.random.Generator) -> None:
    matrix = bell_matrix(4)
    a = normalize_rows(rng.standard_normal((4, 5)))
    b = normalize_rows(rng.standard_normal((4, 5)))
    rotation, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    before = bell_value(matrix, VectorConfiguration(a, b))
    after = bell_value(matrix, VectorConfiguration(a @ rotation, b @ rotation))
    assert abs(before - after) <= 1e-10


@pytest.mark.parametrize("m", [2, 4, 6])
def test_value_from_b_is_sum_of_shifted_norms(rng: np.random.Generator, m: int) -> None:
    for _ in range(20):
        b = normalize_rows(rng.standard_normal((m, m + 1)))
        total = b.sum(axis=0)
        expected = sum(np.linalg.norm(total - (m / 2) * row) for row in b)
        assert value_from_b(b, m) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("m", [2, 4])
def test_converged_optimum_has_equal_row_lengths(m: int) -> None:
    result = best_of_trials(bell_matrix(m), trials=50, seed=7)
    assert result.converged
    assert result.stationarity_residual <= 1e-8
    lengths = row_lengths(bell_matrix(m), result.config.b_vectors)
    assert_allclose(lengths, m / 2, atol=1e-6)
