"""Dense real/complex matrix utilities shared by the domain modules.

Every function is a pure function of its inputs and accepts anything
``numpy.asarray`` understands.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dimbody.core.errors import InvalidInputError, NotPsdError

HERMITIAN_ATOL = 1e-12
DEFAULT_RANK_EPS = 1e-8
DEFAULT_PSD_EPS = 1e-9


def as_finite(matrix: ArrayLike, *, name: str = "matrix", ndim: int | None = 2) -> NDArray:
    """Return ``matrix`` as an array, rejecting NaN/Inf and wrong dimensionality."""
    array = np.asarray(matrix)
    if ndim is not None and array.ndim != ndim:
        raise InvalidInputError(
            f"{name} must be {ndim}-dimensional (got shape {array.shape})",
            shape=list(array.shape),
        )
    if not np.all(np.isfinite(array)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return array


def _require_square(array: NDArray, name: str) -> None:
    if array.shape[0] != array.shape[1]:
        raise InvalidInputError(
            f"{name} must be square (got shape {array.shape})",
            shape=list(array.shape),
        )


def rank_with_tolerance(matrix: ArrayLike, eps: float = DEFAULT_RANK_EPS) -> int:
    """Count singular values above ``eps`` times the largest singular value.

    The all-zero matrix has rank 0.
    """
    array = as_finite(matrix, name="matrix")
    if array.size == 0:
        raise InvalidInputError("matrix must be nonempty")
    singular_values = np.linalg.svd(array, compute_uv=False)
    largest = singular_values[0]
    if largest == 0.0:
        return 0
    return int(np.count_nonzero(singular_values > eps * largest))


def is_hermitian(matrix: NDArray, atol: float = HERMITIAN_ATOL) -> bool:
    return bool(np.allclose(matrix, matrix.conj().T, rtol=0.0, atol=atol))


def hermitian_eigenvalues(matrix: ArrayLike, atol: float = HERMITIAN_ATOL) -> NDArray[np.float64]:
    """Ascending real eigenvalues of a Hermitian (or real symmetric) matrix."""
    array = as_finite(matrix, name="matrix")
    _require_square(array, "matrix")
    if not is_hermitian(array, atol):
        raise InvalidInputError("matrix is not Hermitian within tolerance", atol=atol)
    return np.linalg.eigvalsh(array)


def min_eigenvalue(matrix: ArrayLike, atol: float = HERMITIAN_ATOL) -> float:
    return float(hermitian_eigenvalues(matrix, atol)[0])


def kron(*factors: ArrayLike) -> NDArray:
    """Kronecker product of one or more matrices, left to right."""
    if not factors:
        raise InvalidInputError("kron needs at least one factor")
    result = as_finite(factors[0], name="factor")
    for factor in factors[1:]:
        result = np.kron(result, as_finite(factor, name="factor"))
    return result


def gram_factorize(gram: ArrayLike, eps: float = DEFAULT_PSD_EPS) -> NDArray[np.float64]:
    """Recover vectors whose pairwise dot products reproduce ``gram``.

    Returns an array whose row ``k`` is the vector ``v_k``. Eigenvalues in
    ``[-eps, 0)`` are clipped to zero; anything lower raises
    :class:`NotPsdError`.
    """
    array = as_finite(gram, name="gram").astype(np.float64)
    _require_square(array, "gram")
    if not np.allclose(array, array.T, rtol=0.0, atol=1e-10):
        raise InvalidInputError("gram must be symmetric")
    symmetric = 0.5 * (array + array.T)
    eigenvalues, eigenvectors = np.linalg.eigh(symmetric)
    if eigenvalues[0] < -eps:
        raise NotPsdError(float(eigenvalues[0]), eps)
    clipped = np.clip(eigenvalues, 0.0, None)
    return eigenvectors * np.sqrt(clipped)


def normalize_rows(vectors: ArrayLike) -> NDArray[np.float64]:
    """Scale each row to unit length; zero rows are rejected."""
    array = np.asarray(vectors, dtype=np.float64)
    norms = np.linalg.norm(array, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise InvalidInputError("cannot normalize a zero vector")
    return array / norms


def max_norm_deviation(vectors: ArrayLike) -> float:
    """Largest ``| |v| - 1 |`` over the rows of ``vectors``."""
    array = np.asarray(vectors, dtype=np.float64)
    if array.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.norm(array, axis=1) - 1.0)))


def as_vector_rows(vectors: ArrayLike | Sequence[ArrayLike], *, name: str) -> NDArray[np.float64]:
    """Stack a sequence of real vectors into a 2-D array of rows."""
    array = as_finite(np.asarray(vectors, dtype=np.float64), name=name)
    if array.shape[0] == 0:
        raise InvalidInputError(f"{name} must hold at least one vector")
    return array
