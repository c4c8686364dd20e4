"""Explicit quantum realizations of correlation behaviors.

Unit vectors become ``+-1``-valued observables through a chain of pairwise
anticommuting involutions; on the maximally entangled state
``sum_k |kk> / sqrt(D)`` the correlation ``<A(a) (x) A(b)^T>`` equals
``tr(A(a) A(b)) / D = a . b``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from dimbody.core.compat import StrEnum
from functools import cache
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dimbody.body.model import Behavior, DeterministicStrategy
from dimbody.body.seesaw import orthonormal_optimum
from dimbody.core.errors import (
    InvalidInputError,
    NumericalIntegrityError,
    ResourceLimitError,
)
from dimbody.core.numerics import as_finite, hermitian_eigenvalues, is_hermitian, kron

MAX_GENERATORS = 16
MAX_REALIZED_M = 16
SPECTRUM_ATOL = 1e-10
UNIT_ATOL = 1e-10
STATE_NORM_ATOL = 1e-12
IMAGINARY_ATOL = 1e-10


class ObservableKind(StrEnum):
    PROJECTIVE = "projective"
    POVM = "povm"


@cache
def pauli_matrices() -> tuple[NDArray[np.complex128], NDArray[np.complex128], NDArray[np.complex128]]:
    x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    for matrix in (x, y, z):
        matrix.setflags(write=False)
    return x, y, z


@dataclass(frozen=True, eq=False)
class Observable:
    """A two-outcome observable ``A = I - 2P`` with POVM element ``P``."""

    matrix: NDArray[np.complex128]
    kind: ObservableKind = ObservableKind.POVM

    def __post_init__(self) -> None:
        matrix = as_finite(np.asarray(self.matrix, dtype=np.complex128), name="observable")
        if matrix.shape[0] != matrix.shape[1]:
            raise InvalidInputError("an observable must be square")
        if not is_hermitian(matrix):
            raise InvalidInputError("an observable must be Hermitian")
        spectrum = hermitian_eigenvalues(matrix)
        if spectrum[0] < -1.0 - SPECTRUM_ATOL or spectrum[-1] > 1.0 + SPECTRUM_ATOL:
            raise InvalidInputError("observable spectrum must lie in [-1, 1]")
        if self.kind is ObservableKind.PROJECTIVE and np.any(
            np.abs(np.abs(spectrum) - 1.0) > SPECTRUM_ATOL
        ):
            raise InvalidInputError("projective observables have spectrum in {-1, +1}")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int, sign: Literal[1, -1] = 1) -> Observable:
        return cls(sign * np.eye(dim, dtype=np.complex128), ObservableKind.PROJECTIVE)

    def povm_element(self) -> NDArray[np.complex128]:
        """The element ``P = (I - A) / 2`` associated with outcome ``-1``."""
        return 0.5 * (np.eye(self.dim) - self.matrix)

    def transposed(self) -> Observable:
        return Observable(self.matrix.T.copy(), self.kind)


@dataclass(frozen=True, eq=False)
class QuantumRealization:
    """A pure state on ``C^dim_a (x) C^dim_b`` with observables for both parties."""

    dim_a: int
    dim_b: int
    state: NDArray[np.complex128]
    alice_obs: tuple[Observable, ...]
    bob_obs: tuple[Observable, ...]

    def __post_init__(self) -> None:
        state = as_finite(np.asarray(self.state, dtype=np.complex128), name="state", ndim=1)
        if state.size != self.dim_a * self.dim_b:
            raise InvalidInputError(
                f"state has {state.size} amplitudes, expected {self.dim_a * self.dim_b}"
            )
        if abs(np.linalg.norm(state) - 1.0) > STATE_NORM_ATOL:
            raise InvalidInputError("state must have unit norm")
        if any(obs.dim != self.dim_a for obs in self.alice_obs):
            raise InvalidInputError("Alice's observables must act on dimension dim_a")
        if any(obs.dim != self.dim_b for obs in self.bob_obs):
            raise InvalidInputError("Bob's observables must act on dimension dim_b")
        object.__setattr__(self, "state", state)
        object.__setattr__(self, "alice_obs", tuple(self.alice_obs))
        object.__setattr__(self, "bob_obs", tuple(self.bob_obs))

    def to_dict(self) -> dict[str, Any]:
        """Dense JSON form; complex arrays are interleaved ``[re, im, re, im, ...]``."""
        return {
            "dim_a": self.dim_a,
            "dim_b": self.dim_b,
            "state": _interleave(self.state),
            "alice_observables": [_interleave(obs.matrix) for obs in self.alice_obs],
            "bob_observables": [_interleave(obs.matrix) for obs in self.bob_obs],
        }


def _interleave(values: NDArray[np.complex128]) -> list[float]:
    flat = np.asarray(values, dtype=np.complex128).ravel()
    return np.column_stack([flat.real, flat.imag]).ravel().tolist()


def gamma_generators(n: int) -> list[NDArray[np.complex128]]:
    """``n`` pairwise anticommuting Hermitian involutions of dimension ``2**ceil(n/2)``.

    Pair ``k`` contributes ``Z^(k) X I...`` and ``Z^(k) Y I...``; odd ``n`` drops
    the final Y-type generator.
    """
    if n < 1:
        raise InvalidInputError("n must be at least 1", n=n)
    if n > MAX_GENERATORS:
        raise ResourceLimitError("n", n, MAX_GENERATORS)
    x, y, z = pauli_matrices()
    identity = np.eye(2, dtype=np.complex128)
    pairs = math.ceil(n / 2)
    generators = []
    for k in range(pairs):
        for middle in (x, y):
            generators.append(kron(*([z] * k), middle, *([identity] * (pairs - k - 1))))
    return generators[:n]


def observable_from_vector(
    vector: ArrayLike, gammas: Sequence[NDArray[np.complex128]]
) -> Observable:
    """``A(v) = sum_k v_k gamma_k``, an involution for unit ``v``."""
    v = as_finite(np.asarray(vector, dtype=np.float64), name="vector", ndim=1)
    if v.size != len(gammas):
        raise InvalidInputError(f"vector has length {v.size}, expected {len(gammas)}")
    if abs(np.linalg.norm(v) - 1.0) > UNIT_ATOL:
        raise InvalidInputError("vector must have unit norm")
    matrix = np.tensordot(v, np.asarray(gammas), axes=1)
    return Observable(matrix, ObservableKind.PROJECTIVE)


def max_entangled_state(dim: int) -> NDArray[np.complex128]:
    """``sum_k |kk> / sqrt(dim)``."""
    if dim < 2:
        raise InvalidInputError("dimension must be at least 2", dim=dim)
    state = np.zeros(dim * dim, dtype=np.complex128)
    state[np.arange(dim) * (dim + 1)] = 1.0 / math.sqrt(dim)
    return state


Operator = Observable | NDArray | None


def _operator_matrix(operator: Operator) -> NDArray | None:
    if operator is None:
        return None
    if isinstance(operator, Observable):
        return operator.matrix
    return np.asarray(operator)


def expectation(
    state: ArrayLike,
    a: Operator = None,
    b: Operator = None,
    dims: tuple[int, int] | None = None,
) -> float:
    """``<psi| A (x) B |psi>`` where ``None`` stands for the identity.

    ``dims`` is inferred from whichever operator is given; with both omitted
    the two sides are taken to be equal.
    """
    psi = np.asarray(state, dtype=np.complex128)
    a_mat, b_mat = _operator_matrix(a), _operator_matrix(b)
    if dims is None:
        if a_mat is not None:
            dims = (a_mat.shape[0], psi.size // a_mat.shape[0])
        elif b_mat is not None:
            dims = (psi.size // b_mat.shape[0], b_mat.shape[0])
        else:
            side = math.isqrt(psi.size)
            dims = (side, psi.size // side) if side else (0, 0)
    dim_a, dim_b = dims
    if dim_a * dim_b != psi.size:
        raise InvalidInputError(f"state of size {psi.size} does not factor as {dims}")
    if a_mat is not None and a_mat.shape != (dim_a, dim_a):
        raise InvalidInputError("Alice's operator does not match her dimension")
    if b_mat is not None and b_mat.shape != (dim_b, dim_b):
        raise InvalidInputError("Bob's operator does not match his dimension")

    # (A (x) B) psi reshaped as a dim_a x dim_b matrix is A Psi B^T.
    amplitudes = psi.reshape(dim_a, dim_b)
    image = amplitudes
    if a_mat is not None:
        image = a_mat @ image
    if b_mat is not None:
        image = image @ b_mat.T
    value = np.vdot(amplitudes, image)
    if abs(value.imag) > IMAGINARY_ATOL:
        raise NumericalIntegrityError(
            "real expectation", f"imaginary part {value.imag!r} exceeds {IMAGINARY_ATOL}"
        )
    return float(value.real)


def reduced_state(
    state: ArrayLike, dims: tuple[int, int], side: Literal["a", "b"] = "a"
) -> NDArray[np.complex128]:
    """Partial trace of ``|psi><psi|`` keeping one party."""
    amplitudes = np.asarray(state, dtype=np.complex128).reshape(dims)
    if side == "a":
        return amplitudes @ amplitudes.conj().T
    return amplitudes.T @ amplitudes.conj()


def realize_from_vectors(a_list: ArrayLike, b_list: ArrayLike) -> QuantumRealization:
    """Observables whose correlations on the maximally entangled state are ``a_i . b_j``."""
    a = as_finite(np.asarray(a_list, dtype=np.float64), name="a vectors")
    b = as_finite(np.asarray(b_list, dtype=np.float64), name="b vectors")
    if a.shape[1] != b.shape[1]:
        raise InvalidInputError(
            f"a and b vectors must share a dimension ({a.shape[1]} != {b.shape[1]})"
        )
    gammas = gamma_generators(a.shape[1])
    dim = gammas[0].shape[0]
    alice = tuple(observable_from_vector(v, gammas) for v in a)
    bob = tuple(observable_from_vector(v, gammas).transposed() for v in b)
    return QuantumRealization(
        dim_a=dim,
        dim_b=dim,
        state=max_entangled_state(dim),
        alice_obs=alice,
        bob_obs=bob,
    )


def realize_x_o(m: int) -> QuantumRealization:
    """Realization of the witness point on local dimension ``2**(m/2)``."""
    if m > MAX_REALIZED_M:
        raise ResourceLimitError("m", m, MAX_REALIZED_M)
    if m < 2 or m % 2:
        raise InvalidInputError("m must be even", m=m)
    config = orthonormal_optimum(m)
    return realize_from_vectors(config.a_vectors, config.b_vectors)


def chsh_realization() -> QuantumRealization:
    """Qubit block with maximal CHSH value.

    ``A_1 = Z``, ``A_2 = X``, ``B_{1,2} = (Z +- X)/sqrt(2)`` on
    ``(|00> + |11>)/sqrt(2)``.
    """
    x, _, z = pauli_matrices()
    root = math.sqrt(2.0)
    alice = (
        Observable(z, ObservableKind.PROJECTIVE),
        Observable(x, ObservableKind.PROJECTIVE),
    )
    bob = (
        Observable((z + x) / root, ObservableKind.PROJECTIVE),
        Observable((z - x) / root, ObservableKind.PROJECTIVE),
    )
    return QuantumRealization(
        dim_a=2, dim_b=2, state=max_entangled_state(2), alice_obs=alice, bob_obs=bob
    )


def deterministic_realization(strategy: DeterministicStrategy) -> QuantumRealization:
    """Degenerate ``+-I`` observables on a qubit pair."""
    return QuantumRealization(
        dim_a=2,
        dim_b=2,
        state=max_entangled_state(2),
        alice_obs=tuple(Observable.identity(2, v) for v in strategy.a_outcomes),
        bob_obs=tuple(Observable.identity(2, v) for v in strategy.b_outcomes),
    )


def behavior_of(realization: QuantumRealization) -> Behavior:
    dims = (realization.dim_a, realization.dim_b)
    state = realization.state
    a_marginals = [expectation(state, obs, None, dims) for obs in realization.alice_obs]
    b_marginals = [expectation(state, None, obs, dims) for obs in realization.bob_obs]
    joints = [
        [expectation(state, a, b, dims) for b in realization.bob_obs]
        for a in realization.alice_obs
    ]
    return Behavior(
        a_marginals=np.asarray(a_marginals),
        b_marginals=np.asarray(b_marginals),
        joints=np.asarray(joints).reshape(len(a_marginals), len(b_marginals)),
    )


def chsh_value(realization: QuantumRealization) -> float:
    """``<A1B1> + <A1B2> + <A2B1> - <A2B2>``."""
    if len(realization.alice_obs) < 2 or len(realization.bob_obs) < 2:
        raise InvalidInputError("CHSH needs two settings per party")
    joints = behavior_of(realization).joints
    return float(joints[0, 0] + joints[0, 1] + joints[1, 0] - joints[1, 1])
