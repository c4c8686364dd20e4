"""Level-1 semidefinite primal/dual pair for correlation Bell polynomials.

Primal: maximize ``Tr(Gamma W) / 2`` over Gram matrices ``Gamma`` (PSD, unit
diagonal) of Alice's and Bob's unit vectors, with ``W = [[0, M], [M^T, 0]]``.
Dual: minimize ``sum(lambda)`` subject to ``R = -W/2 + diag(lambda)`` PSD.
Weak duality makes any dual-feasible ``lambda`` an upper bound on the quantum
value; a primal point of equal value proves optimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike, NDArray

from dimbody.body.seesaw import BellMatrix, VectorConfiguration, bell_matrix
from dimbody.core.errors import (
    InfeasiblePointError,
    InvalidInputError,
    NumericalIntegrityError,
)
from dimbody.core.numerics import (
    DEFAULT_PSD_EPS,
    as_finite,
    hermitian_eigenvalues,
    min_eigenvalue,
)

UNIT_DIAGONAL_ATOL = 1e-10
SYMMETRY_ATOL = 1e-10
GAP_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class SdpCertificate:
    """A primal value, a dual multiplier vector and the resulting duality gap."""

    m: int
    primal_value: float
    dual_value: float
    lam: NDArray[np.float64]
    min_eig_slack: float
    gap: float
    valid: bool
    weyl_lower_bound: float | None = None

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "m": self.m,
            "primal": self.primal_value,
            "dual": self.dual_value,
            "gap": self.gap,
            "min_eig_slack": self.min_eig_slack,
            "lambda": self.lam.tolist(),
            "valid": self.valid,
        }
        if self.weyl_lower_bound is not None:
            payload["weyl_lower_bound"] = self.weyl_lower_bound
        return payload


@dataclass(frozen=True)
class StructuredMatrixSpec:
    """An ``m x m`` matrix with ``p`` on the diagonal and ``q`` elsewhere."""

    m: int
    p: float
    q: float

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidInputError("m must be at least 1", m=self.m)

    def matrix(self) -> NDArray[np.float64]:
        return np.full((self.m, self.m), self.q) + (self.p - self.q) * np.eye(self.m)


def build_W(matrix: BellMatrix) -> NDArray[np.float64]:  # noqa: N802
    """Symmetric block matrix ``[[0, M], [M^T, 0]]``."""
    entries = matrix.entries
    rows, cols = entries.shape
    w = np.zeros((rows + cols, rows + cols))
    w[:rows, rows:] = entries
    w[rows:, :rows] = entries.T
    return w


def gram_from_configuration(config: VectorConfiguration) -> NDArray[np.float64]:
    """Gram matrix of Alice's vectors followed by Bob's."""
    vectors = np.vstack([config.a_vectors, config.b_vectors])
    return vectors @ vectors.T


def primal_value(
    gamma: ArrayLike,
    w: ArrayLike,
    psd_eps: float = DEFAULT_PSD_EPS,
) -> float:
    """``Tr(Gamma W) / 2`` for a feasible Gram matrix."""
    gamma_arr = as_finite(np.asarray(gamma, dtype=np.float64), name="Gamma")
    w_arr = as_finite(np.asarray(w, dtype=np.float64), name="W")
    if gamma_arr.shape != w_arr.shape or gamma_arr.shape[0] != gamma_arr.shape[1]:
        raise InvalidInputError(
            f"Gamma {gamma_arr.shape} and W {w_arr.shape} must be equal square shapes"
        )
    asymmetry = float(np.max(np.abs(gamma_arr - gamma_arr.T)))
    if asymmetry > SYMMETRY_ATOL:
        raise InfeasiblePointError("symmetry", asymmetry)
    diagonal_error = float(np.max(np.abs(np.diag(gamma_arr) - 1.0)))
    if diagonal_error > UNIT_DIAGONAL_ATOL:
        raise InfeasiblePointError("unit diagonal", diagonal_error)
    lowest = min_eigenvalue(0.5 * (gamma_arr + gamma_arr.T))
    if lowest < -psd_eps:
        raise InfeasiblePointError("positive semidefiniteness", -lowest)
    return 0.5 * float(np.trace(gamma_arr @ w_arr))


def _classical_primal(matrix: BellMatrix) -> float:
    # All vectors equal: Gamma is the all-ones matrix.
    size = sum(matrix.entries.shape)
    return primal_value(np.ones((size, size)), build_W(matrix))


def dual_certificate(
    matrix: BellMatrix,
    lam: ArrayLike,
    psd_eps: float = DEFAULT_PSD_EPS,
    gamma: ArrayLike | None = None,
) -> SdpCertificate:
    """Evaluate a dual multiplier vector; invalid multipliers are reported, not raised.

    The primal side uses ``gamma`` when given, otherwise the all-equal-vectors
    point.
    """
    w = build_W(matrix)
    multipliers = as_finite(np.asarray(lam, dtype=np.float64), name="lambda", ndim=1)
    if multipliers.size != w.shape[0]:
        raise InvalidInputError(
            f"lambda must have {w.shape[0]} entries, got {multipliers.size}"
        )
    slack = -0.5 * w + np.diag(multipliers)
    min_eig = min_eigenvalue(slack)
    primal = _classical_primal(matrix) if gamma is None else primal_value(gamma, w, psd_eps)
    dual = float(np.sum(multipliers))
    return SdpCertificate(
        m=matrix.m,
        primal_value=primal,
        dual_value=dual,
        lam=multipliers,
        min_eig_slack=min_eig,
        gap=dual - primal,
        valid=min_eig >= -psd_eps,
    )


def structured_determinant(spec: StructuredMatrixSpec) -> float:
    """``[p + (m-1) q] (p - q)**(m-1)``."""
    return (spec.p + (spec.m - 1) * spec.q) * (spec.p - spec.q) ** (spec.m - 1)


def structured_eigenvalues(spec: StructuredMatrixSpec) -> NDArray[np.float64]:
    """Ascending spectrum: ``p + (m-1) q`` once and ``p - q`` with multiplicity ``m - 1``."""
    values = np.full(spec.m, spec.p - spec.q)
    values[0] = spec.p + (spec.m - 1) * spec.q
    return np.sort(values)


def analytic_certificate(m: int, psd_eps: float = DEFAULT_PSD_EPS) -> SdpCertificate:
    """Certify that the Bell polynomial's quantum maximum is ``m**2 / 2``.

    ``lambda* = (m/4) 1`` is dual feasible by Weyl's inequality, since the
    largest eigenvalue of ``W`` is the largest singular value of ``M``, which is
    ``m/2``. The classical all-equal-vectors point attains the same value.
    """
    matrix = bell_matrix(m)
    lam = np.full(2 * m, m / 4.0)
    spectrum = structured_eigenvalues(StructuredMatrixSpec(m=m, p=1.0 - m / 2.0, q=1.0))
    gamma_max_w = float(np.max(np.abs(spectrum)))
    weyl_lower = -0.5 * gamma_max_w + float(np.min(lam))

    certificate = dual_certificate(matrix, lam, psd_eps)
    if weyl_lower < -psd_eps:
        raise NumericalIntegrityError("weyl bound", f"lower bound {weyl_lower!r} is negative")
    if not certificate.valid:
        raise NumericalIntegrityError(
            "dual feasibility", f"min eigenvalue {certificate.min_eig_slack!r} of the slack"
        )
    if abs(certificate.gap) > GAP_ATOL:
        raise NumericalIntegrityError("duality gap", f"gap {certificate.gap!r} exceeds {GAP_ATOL}")
    logger.debug(
        "certificate m={} primal={} dual={} slack={:.3e}",
        m,
        certificate.primal_value,
        certificate.dual_value,
        certificate.min_eig_slack,
    )
    return SdpCertificate(
        m=certificate.m,
        primal_value=certificate.primal_value,
        dual_value=certificate.dual_value,
        lam=certificate.lam,
        min_eig_slack=certificate.min_eig_slack,
        gap=certificate.gap,
        valid=certificate.valid,
        weyl_lower_bound=weyl_lower,
    )


def cross_check(
    certificate: SdpCertificate,
    gamma: ArrayLike,
    psd_eps: float = DEFAULT_PSD_EPS,
) -> dict[str, Any]:
    """Primal value of an externally computed Gram matrix against the certificate."""
    w = build_W(bell_matrix(certificate.m))
    value = primal_value(gamma, w, psd_eps)
    return {
        "primal": value,
        "dual": certificate.dual_value,
        "weak_duality": value <= certificate.dual_value + GAP_ATOL,
    }


def w_spectrum(matrix: BellMatrix) -> NDArray[np.float64]:
    return hermitian_eigenvalues(build_W(matrix))
