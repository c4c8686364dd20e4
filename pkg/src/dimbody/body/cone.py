"""POVM versus projective third measurements in the 3x2 qubit scenario.

The first two settings of Alice and both of Bob's are pinned to the CHSH block
of :func:`~dimbody.body.realize.chsh_realization`. A third observable
``A_3 = alpha I + bloch . sigma`` then maps to the point
``(<A_3 B_1>, <A_3 B_2>, <A_3>)``, which always lies in the bicone
``sqrt(x**2 + y**2) + |z| <= 1``. Projective choices reach only the apices
and the ``z = 0`` disk; POVMs fill the whole surface.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dimbody.core.compat import StrEnum
from functools import cache
from pathlib import Path
from typing import Any, Literal

import numpy as np
from loguru import logger
from numpy.typing import NDArray

from dimbody.body.realize import (
    Observable,
    QuantumRealization,
    chsh_realization,
    expectation,
    pauli_matrices,
)
from dimbody.core.errors import (
    InvalidInputError,
    InvalidMeasurementError,
    OutputWriteError,
)

BICONE_ATOL = 1e-12
PROJECTIVE_ATOL = 1e-10
DEFAULT_CLASSIFY_EPS = 1e-6

ScanKind = Literal["projective", "povm"]


class PointClass(StrEnum):
    APEX = "apex"
    EQUATOR = "equator"
    LATERAL_SURFACE = "lateral-surface"
    INTERIOR = "interior"
    EXTERIOR = "exterior"


@dataclass(frozen=True, eq=False)
class ThirdMeasurement:
    """``A_3 = alpha I + bloch . (X, Y, Z)`` with POVM element ``(I - A_3) / 2``."""

    alpha: float
    bloch: NDArray[np.float64]

    def __post_init__(self) -> None:
        bloch = np.asarray(self.bloch, dtype=np.float64).reshape(3)
        norm = float(np.linalg.norm(bloch))
        if (
            not math.isfinite(self.alpha)
            or not np.all(np.isfinite(bloch))
            or abs(self.alpha) + norm > 1.0 + BICONE_ATOL
        ):
            raise InvalidMeasurementError(float(self.alpha), norm)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "bloch", bloch)

    @property
    def is_projective(self) -> bool:
        norm = float(np.linalg.norm(self.bloch))
        traceless_unit = abs(self.alpha) <= PROJECTIVE_ATOL and abs(norm - 1.0) <= PROJECTIVE_ATOL
        degenerate = norm <= PROJECTIVE_ATOL and abs(abs(self.alpha) - 1.0) <= PROJECTIVE_ATOL
        return traceless_unit or degenerate

    def observable(self) -> Observable:
        x, y, z = pauli_matrices()
        matrix = self.alpha * np.eye(2) + self.bloch[0] * x + self.bloch[1] * y + self.bloch[2] * z
        return Observable(matrix)


@dataclass(frozen=True)
class ConePoint:
    x: float
    y: float
    z: float

    @property
    def radius(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True, eq=False)
class ScanRow:
    kind: ScanKind
    measurement: ThirdMeasurement
    point: ConePoint
    classification: PointClass

    def sort_key(self) -> tuple[Any, ...]:
        return (self.kind, self.measurement.alpha, *self.measurement.bloch.tolist())

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "alpha": self.measurement.alpha,
            "bloch": self.measurement.bloch.tolist(),
            "x": self.point.x,
            "y": self.point.y,
            "z": self.point.z,
            "classification": self.classification.value,
        }


@cache
def _fixed_block() -> QuantumRealization:
    return chsh_realization()


def cone_point(measurement: ThirdMeasurement, block: QuantumRealization | None = None) -> ConePoint:
    """Evaluate the three expectations of ``A_3`` against the fixed block."""
    block = block or _fixed_block()
    dims = (block.dim_a, block.dim_b)
    a3 = measurement.observable()
    b1, b2 = block.bob_obs[:2]
    return ConePoint(
        x=expectation(block.state, a3, b1, dims),
        y=expectation(block.state, a3, b2, dims),
        z=expectation(block.state, a3, None, dims),
    )


@cache
def response_matrix() -> NDArray[np.float64]:
    """Affine map ``(alpha, bloch) -> (x, y, z)`` of the fixed block, as a 3x4 matrix."""
    block = _fixed_block()
    dims = (block.dim_a, block.dim_b)
    basis = (np.eye(2, dtype=np.complex128), *pauli_matrices())
    bob = (*block.bob_obs[:2], None)
    response = np.array(
        [[expectation(block.state, operator, b, dims) for operator in basis] for b in bob]
    )
    response.setflags(write=False)
    return response


def correlation_plane() -> NDArray[np.float64]:
    """Orthonormal basis (rows) of the Bloch directions that move ``(x, y)``."""
    linear = response_matrix()[:2, 1:]
    q, _ = np.linalg.qr(linear.T)
    return q.T


def measurement_for_target(x: float, y: float, z: float) -> ThirdMeasurement:
    """Minimum-norm measurement whose cone point is ``(x, y, z)``."""
    linear = response_matrix()[:2, 1:]
    bloch = np.linalg.pinv(linear) @ np.array([x, y])
    return ThirdMeasurement(alpha=z, bloch=bloch)


def interpolation_observable(lam: float) -> ThirdMeasurement:
    """``A_3 = (2 lambda - 1) I``: the POVM with elements ``lambda I`` and ``(1 - lambda) I``."""
    if not 0.0 <= lam <= 1.0:
        raise InvalidInputError("lambda must lie in [0, 1]", lam=lam)
    return ThirdMeasurement(alpha=2.0 * lam - 1.0, bloch=np.zeros(3))


def classify_point(point: ConePoint, eps: float = DEFAULT_CLASSIFY_EPS) -> PointClass:
    x, y, z = point.x, point.y, point.z
    if abs(x) <= eps and abs(y) <= eps and abs(abs(z) - 1.0) <= eps:
        return PointClass.APEX
    if abs(z) <= eps and abs(x * x + y * y - 1.0) <= eps:
        return PointClass.EQUATOR
    surface = point.radius + abs(z)
    if abs(surface - 1.0) <= eps:
        return PointClass.LATERAL_SURFACE
    return PointClass.INTERIOR if surface < 1.0 else PointClass.EXTERIOR


def fibonacci_sphere(n: int) -> NDArray[np.float64]:
    """``n`` quasi-uniform unit vectors (rows) on the 2-sphere."""
    if n < 1:
        raise InvalidInputError("n must be positive", n=n)
    index = np.arange(n) + 0.5
    polar = np.arccos(1.0 - 2.0 * index / n)
    azimuth = math.pi * (1.0 + math.sqrt(5.0)) * index
    return np.column_stack(
        [np.cos(azimuth) * np.sin(polar), np.sin(azimuth) * np.sin(polar), np.cos(polar)]
    )


def _evaluate(
    kind: ScanKind,
    params: NDArray[np.float64],
    eps: float,
    parallel: int,
) -> list[ScanRow]:
    """Map ``(alpha, b1, b2, b3)`` rows through the block response."""
    response = response_matrix()

    def chunk_rows(chunk: NDArray[np.float64]) -> list[ScanRow]:
        # Row values must not depend on how the grid is chunked.
        points = chunk[:, :1] * response[:, 0]
        for k in range(1, 4):
            points = points + chunk[:, k : k + 1] * response[:, k]
        rows = []
        for param, (x, y, z) in zip(chunk, points, strict=True):
            point = ConePoint(float(x), float(y), float(z))
            measurement = ThirdMeasurement(alpha=float(param[0]), bloch=param[1:])
            rows.append(ScanRow(kind, measurement, point, classify_point(point, eps)))
        return rows

    if parallel > 1 and len(params) > parallel:
        chunks = np.array_split(params, parallel)
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            rows = [row for part in pool.map(chunk_rows, chunks) for row in part]
    else:
        rows = chunk_rows(params)
    rows.sort(key=ScanRow.sort_key)
    return rows


def _require_density(grid_density: int) -> None:
    if grid_density < 2:
        raise InvalidInputError("grid density must be at least 2", grid_density=grid_density)


def projective_directions(grid_density: int) -> NDArray[np.float64]:
    """Unit Bloch vectors of the projective grid.

    ``grid_density**2`` sphere directions followed by ``grid_density`` points
    on the great circle of the correlation plane, so the unit equator is hit
    exactly.
    """
    _require_density(grid_density)
    plane = correlation_plane()
    angles = np.linspace(0.0, 2.0 * math.pi, grid_density, endpoint=False)
    circle = np.outer(np.cos(angles), plane[0]) + np.outer(np.sin(angles), plane[1])
    return np.vstack([fibonacci_sphere(grid_density * grid_density), circle])


def projective_scan(
    grid_density: int, eps: float = DEFAULT_CLASSIFY_EPS, parallel: int = 1
) -> list[ScanRow]:
    """Traceless observables over :func:`projective_directions` plus ``A_3 = +-I``."""
    bloch = projective_directions(grid_density)
    params = np.column_stack([np.zeros(len(bloch)), bloch])
    apices = np.array([[1.0, 0.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0]])
    rows = _evaluate("projective", np.vstack([params, apices]), eps, parallel)
    logger.info("projective scan: {} points", len(rows))
    return rows


def povm_surface_parameters(grid_density: int) -> NDArray[np.float64]:
    """Parameters landing on ``r (cos t, sin t) , +-(1 - r)`` for a polar grid."""
    linear = response_matrix()[:2, 1:]
    inverse = np.linalg.pinv(linear)
    radii = np.linspace(0.0, 1.0, grid_density)
    angles = np.linspace(0.0, 2.0 * math.pi, grid_density, endpoint=False)
    params = []
    for r in radii:
        targets = r * np.column_stack([np.cos(angles), np.sin(angles)])
        bloch = targets @ inverse.T
        for sign in (1.0, -1.0):
            alpha = np.full((len(bloch), 1), sign * (1.0 - r))
            params.append(np.hstack([alpha, bloch]))
    return np.vstack(params)


def povm_scan(
    grid_density: int, eps: float = DEFAULT_CLASSIFY_EPS, parallel: int = 1
) -> list[ScanRow]:
    """Surface family plus a filled grid of ``|alpha| + |bloch| <= 1``.

    The filled grid crosses ``grid_density`` values of ``alpha`` with
    Fibonacci directions and fractional Bloch lengths; ``bloch = 0`` rows give
    the interpolation points ``(0, 0, alpha)``. The ``alpha = 0`` slice carries
    every direction of :func:`projective_directions`.
    """
    _require_density(grid_density)
    surface = povm_surface_parameters(grid_density)
    unit = projective_directions(grid_density)
    traceless = np.column_stack([np.zeros(len(unit)), unit])
    alphas = np.linspace(-1.0, 1.0, grid_density)
    directions = fibonacci_sphere(grid_density)
    fractions = np.linspace(0.0, 1.0, max(2, grid_density // 8))[1:]
    filled = [np.column_stack([alphas, np.zeros((grid_density, 3))])]
    for alpha in alphas:
        for fraction in fractions:
            length = fraction * (1.0 - abs(alpha))
            if length <= 0.0:
                continue
            filled.append(
                np.column_stack([np.full(len(directions), alpha), length * directions])
            )
    params = np.vstack([surface, traceless, *filled])
    rows = _evaluate("povm", params, eps, parallel)
    logger.info("POVM scan: {} points", len(rows))
    return rows


def grid_resolution(grid_density: int) -> float:
    """Upper bound on the distance from a surface target to the nearest surface-grid point."""
    radial = 1.0 / (grid_density - 1)
    angular = math.pi / grid_density
    return math.sqrt(2.0) * radial + angular


def _off_axis_lateral(row: ScanRow, eps: float) -> bool:
    return row.classification is PointClass.LATERAL_SURFACE and eps < abs(row.point.z) < 1.0 - eps


def _axis_interior(row: ScanRow, eps: float) -> bool:
    p = row.point
    return abs(p.x) <= eps and abs(p.y) <= eps and eps < abs(p.z) < 1.0 - eps


def scan_summary(rows: list[ScanRow], eps: float = DEFAULT_CLASSIFY_EPS) -> dict[str, Any]:
    """Counts per kind and class plus the projective/POVM separation statistics."""
    counts: dict[str, Counter[str]] = {"projective": Counter(), "povm": Counter()}
    for row in rows:
        counts[row.kind][row.classification.value] += 1
    projective = [row for row in rows if row.kind == "projective"]
    povm = [row for row in rows if row.kind == "povm"]
    return {
        "counts": {kind: dict(sorted(counter.items())) for kind, counter in counts.items()},
        "projective_lateral_off_axis": sum(_off_axis_lateral(r, eps) for r in projective),
        "povm_lateral_off_axis": sum(_off_axis_lateral(r, eps) for r in povm),
        "projective_axis_interpolation": sum(_axis_interior(r, eps) for r in projective),
        "povm_axis_interpolation": sum(_axis_interior(r, eps) for r in povm),
        "projective_origin_present": any(
            max(abs(r.point.x), abs(r.point.y), abs(r.point.z)) <= eps for r in projective
        ),
        "projective_z_values": sorted({round(r.point.z, 9) + 0.0 for r in projective}),
    }


CSV_HEADER = ("kind", "alpha", "bloch_1", "bloch_2", "bloch_3", "x", "y", "z", "classification")


def _g17(value: float) -> str:
    return format(value, ".17g")


def write_rows(rows: list[ScanRow], path: Path, fmt: Literal["csv", "json"] = "csv") -> Path:
    """Write scan rows as CSV (header row, comma separator) or a JSON list."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            if fmt == "json":
                json.dump([row.to_dict() for row in rows], handle)
            else:
                writer = csv.writer(handle)
                writer.writerow(CSV_HEADER)
                for row in rows:
                    m = row.measurement
                    writer.writerow(
                        [
                            row.kind,
                            _g17(m.alpha),
                            *(_g17(v) for v in m.bloch),
                            _g17(row.point.x),
                            _g17(row.point.y),
                            _g17(row.point.z),
                            row.classification.value,
                        ]
                    )
    except OSError as exc:
        raise OutputWriteError(str(path), exc.strerror or str(exc)) from exc
    logger.info("wrote {} scan rows to {}", len(rows), path)
    return path

