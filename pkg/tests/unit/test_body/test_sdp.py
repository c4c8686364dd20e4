"""Tests for the level-1 primal/dual certificate."""

from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dimbody.body.sdp import (
    StructuredMatrixSpec,
    analytic_certificate,
    build_W,
    cross_check,
    dual_certificate,
    gram_from_configuration,
    primal_value,
    structured_determinant,
    structured_eigenvalues,
    w_spectrum,
)
from dimbody.body.seesaw import bell_matrix, orthonormal_optimum
from dimbody.core.errors import InfeasiblePointError, InvalidInputError
from dimbody.core.numerics import normalize_rows


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10, 12])
def test_analytic_certificate_even_m(m: int) -> None:
    certificate = analytic_certificate(m)
    assert certificate.primal_value == pytest.approx(m * m / 2, abs=1e-9)
    assert certificate.dual_value == pytest.approx(m * m / 2, abs=1e-9)
    assert abs(certificate.gap) <= 1e-9
    assert certificate.min_eig_slack >= -1e-9
    assert certificate.valid
    assert certificate.weyl_lower_bound == pytest.approx(0.0, abs=1e-12)


def test_certificate_m4_values() -> None:
    payload = analytic_certificate(4).to_dict()
    assert payload["primal"] == 8.0
    assert payload["dual"] == 8.0
    assert payload["gap"] == 0.0
    assert payload["lambda"] == [1.0] * 8


def test_certificate_m1() -> None:
    certificate = analytic_certificate(1)
    assert certificate.primal_value == pytest.approx(0.5)
    assert certificate.dual_value == pytest.approx(0.5)


def test_build_w_blocks() -> None:
    matrix = bell_matrix(3)
    w = build_W(matrix)
    assert w.shape == (6, 6)
    assert_allclose(w, w.T)
    assert_allclose(w[:3, 3:], matrix.entries)
    assert_allclose(w[:3, :3], 0.0)


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_w_spectrum_is_plus_minus_singular_values(m: int) -> None:
    spectrum = w_spectrum(bell_matrix(m))
    assert spectrum[-1] == pytest.approx(m / 2, abs=1e-10)
    assert spectrum[0] == pytest.approx(-m / 2, abs=1e-10)


@pytest.mark.parametrize("m", [2, 3, 4, 6, 8])
def test_structured_eigenvalues_of_bell_matrix(m: int) -> None:
    expected = np.sort([m / 2] + [-m / 2] * (m - 1))
    spec = StructuredMatrixSpec(m=m, p=1.0 - m / 2, q=1.0)
    assert_allclose(structured_eigenvalues(spec), expected, atol=1e-10)
    assert_allclose(np.linalg.eigvalsh(bell_matrix(m).entries), expected, atol=1e-10)


def test_structured_determinant_matches_numeric(rng: np.random.Generator) -> None:
    for _ in range(50):
        m = int(rng.integers(1, 9))
        p, q = rng.uniform(-3.0, 3.0, size=2)
        spec = StructuredMatrixSpec(m=m, p=float(p), q=float(q))
        numeric = np.linalg.det(spec.matrix())
        assert structured_determinant(spec) == pytest.approx(numeric, rel=1e-8, abs=1e-9)


def test_structured_spec_validation() -> None:
    with pytest.raises(InvalidInputError):
        StructuredMatrixSpec(m=0, p=1.0, q=0.0)


def test_weak_duality_on_random_gram_matrices(rng: np.random.Generator) -> None:
    m = 4
    w = build_W(bell_matrix(m))
    dual = analytic_certificate(m).dual_value
    for _ in range(100):
        vectors = normalize_rows(rng.standard_normal((2 * m, int(rng.integers(1, 2 * m + 1)))))
        gamma = vectors @ vectors.T
        assert primal_value(gamma, w) <= dual + 1e-9


def test_orthonormal_optimum_is_primal_optimal() -> None:
    gamma = gram_from_configuration(orthonormal_optimum(4))
    assert primal_value(gamma, build_W(bell_matrix(4))) == pytest.approx(8.0, abs=1e-12)


def test_cross_check() -> None:
    certificate = analytic_certificate(4)
    result = cross_check(certificate, gram_from_configuration(orthonormal_optimum(4)))
    assert result["primal"] == pytest.approx(8.0)
    assert result["weak_duality"] is True


@pytest.mark.parametrize(
    ("gamma", "constraint"),
    [
        (np.array([[2.0, 0.0], [0.0, 1.0]]), "unit diagonal"),
        (np.array([[1.0, 0.5], [0.0, 1.0]]), "symmetry"),
        (np.array([[1.0, 2.0], [2.0, 1.0]]), "positive semidefiniteness"),
    ],
)
def test_primal_value_rejects_infeasible(gamma: np.ndarray, constraint: str) -> None:
    w = build_W(bell_matrix(1))
    with pytest.raises(InfeasiblePointError) as exc:
        primal_value(gamma, w)
    assert exc.value.data is not None
    assert exc.value.data["constraint"] == constraint


def test_dual_certificate_reports_infeasible_multipliers() -> None:
    certificate = dual_certificate(bell_matrix(4), np.zeros(8))
    assert not certificate.valid
    assert certificate.min_eig_slack < 0
    with pytest.raises(InvalidInputError):
        dual_certificate(bell_matrix(4), np.ones(3))


def test_dual_certificate_with_external_gamma() -> None:
    gamma = gram_from_configuration(orthonormal_optimum(2))
    certificate = dual_certificate(bell_matrix(2), np.full(4, 0.5), gamma=gamma)
    assert certificate.primal_value == pytest.approx(2.0)
    assert certificate.gap == pytest.approx(0.0, abs=1e-12)
