"""2D raster-map path planning.

A candidate vector holds ``n_interior`` free (x, y) waypoints in cell units;
the path always runs from cell (1, 1) to cell (n, n). A path is feasible
when no segment touches a blocked cell (supercover rasterization), and its
fitness is the Euclidean length, or ``n**2`` when infeasible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from .core import SearchSpace
from .geometry import segment_hits, supercover_cells


class GridMapError(ValueError):
    pass


@dataclass(frozen=True)
class GridMap:
    """Square occupancy map. ``cells[r - 1, c - 1]`` is cell ``(c, r)``;
    1 marks an obstacle."""

    cells: np.ndarray
    name: str = ""
    _prefix: List[List[int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.int8)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1] or cells.shape[0] < 2:
            raise GridMapError("map must be a square grid with side >= 2")
        if not np.isin(cells, (0, 1)).all():
            raise GridMapError("map cells must be 0 or 1")
        n = cells.shape[0]
        if cells[0, 0] or cells[n - 1, n - 1]:
            raise GridMapError("start cell (1,1) and goal cell (n,n) must be free")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        # per column cumulative obstacle counts, zero-padded at row 0 and column 0
        cum = np.zeros((n + 1, n + 1), dtype=np.int64)
        cum[1:, 1:] = np.cumsum(cells.T, axis=1)
        object.__setattr__(self, "_prefix", cum.tolist())

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    def blocked(self, c: int, r: int) -> bool:
        return bool(self.cells[r - 1, c - 1])

    @property
    def density(self) -> float:
        return float(self.cells.mean())

    def to_text(self) -> str:
        return "\n".join("".join(str(v) for v in row) for row in self.cells) + "\n"


def load_grid_map(source: str, name: str = "") -> GridMap:
    """Parse '0'/'1' rows; lines starting with '#' are comments.

    Line r (1-based, comments and blank lines skipped) holds row y = r and
    character c holds x = c.
    """
    rows = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        for col, ch in enumerate(line, start=1):
            if ch not in "01":
                raise GridMapError(f"line {lineno}, column {col}: illegal character {ch!r}")
        if rows and len(line) != len(rows[0][1]):
            raise GridMapError(
                f"line {lineno}, column {min(len(line), len(rows[0][1])) + 1}: "
                f"row has {len(line)} cells, expected {len(rows[0][1])}"
            )
        rows.append((lineno, line))
    if not rows:
        raise GridMapError("map document has no rows")
    n = len(rows[0][1])
    if len(rows) != n:
        raise GridMapError(f"line {rows[-1][0]}, column 1: map has {len(rows)} rows, expected {n}")
    if rows[0][1][0] == "1":
        raise GridMapError(f"line {rows[0][0]}, column 1: start cell (1,1) is blocked")
    if rows[-1][1][-1] == "1":
        raise GridMapError(f"line {rows[-1][0]}, column {n}: goal cell ({n},{n}) is blocked")
    cells = np.array([[int(ch) for ch in line] for _, line in rows], dtype=np.int8)
    return GridMap(cells, name=name)


def read_grid_map(path) -> GridMap:
    path = Path(path)
    return load_grid_map(path.read_text(), name=path.stem)


def shipped_map(size: int) -> GridMap:
    text = resources.files("mcoa.data").joinpath(f"grid{size}.txt").read_text()
    return load_grid_map(text, name=f"grid{size}")


@dataclass
class GridPath:
    points: np.ndarray  # (m, 2)
    feasible: bool

    def flatten_interior(self) -> np.ndarray:
        return self.points[1:-1].reshape(-1)


def rasterize_and_check(path: GridPath, grid: GridMap) -> bool:
    pts = path.points
    return not any(
        segment_hits(pts[k], pts[k + 1], grid._prefix, grid.n) for k in range(len(pts) - 1)
    )


def path_cells(points: np.ndarray) -> List[Tuple[int, int]]:
    cells = []
    for k in range(len(points) - 1):
        cells.extend(supercover_cells(points[k], points[k + 1]))
    return cells


def _assemble(candidate, grid: GridMap, n_interior: int) -> np.ndarray:
    candidate = np.asarray(candidate, dtype=float)
    if candidate.shape != (2 * n_interior,):
        raise ValueError(f"candidate has shape {candidate.shape}, expected ({2 * n_interior},)")
    n = grid.n
    return np.vstack([[1.0, 1.0], candidate.reshape(n_interior, 2), [float(n), float(n)]])


def decode_grid_candidate(candidate, grid: GridMap, n_interior: int) -> GridPath:
    points = _assemble(candidate, grid, n_interior)
    path = GridPath(points, feasible=False)
    path.feasible = rasterize_and_check(path, grid)
    return path


def grid_path_length(path) -> float:
    pts = path.points if isinstance(path, GridPath) else np.asarray(path, dtype=float)
    if len(pts) < 2:
        raise ValueError("a path needs at least two points")
    return float(np.sum(np.hypot(*np.diff(pts, axis=0).T)))


def turning_points(path: GridPath, tol: float = 1e-6) -> int:
    """Interior waypoints where the heading changes by more than ``tol`` rad."""
    d = np.diff(path.points, axis=0)
    d = d[np.hypot(d[:, 0], d[:, 1]) > 0]
    count = 0
    for u, v in zip(d[:-1], d[1:]):
        ang = math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])
        count += ang > tol
    return count


def grid_fitness(candidate, grid: GridMap, n_interior: Optional[int] = None) -> float:
    candidate = np.asarray(candidate, dtype=float)
    if n_interior is None:
        n_interior = candidate.size // 2
    pts = _assemble(candidate, grid, n_interior)
    prefix, n = grid._prefix, grid.n
    for k in range(len(pts) - 1):
        if segment_hits(pts[k], pts[k + 1], prefix, n):
            return float(n * n)
    return grid_path_length(pts)


@dataclass
class GridScenario:
    """Objective wrapper: callable on candidate vectors."""

    grid: GridMap
    n_interior: int = 10

    @property
    def name(self) -> str:
        return self.grid.name or f"grid{self.grid.n}"

    @property
    def space(self) -> SearchSpace:
        return SearchSpace.uniform(2 * self.n_interior, 1.0, float(self.grid.n))

    @property
    def infeasible_cost(self) -> float:
        return float(self.grid.n**2)

    def __call__(self, candidate) -> float:
        return grid_fitness(candidate, self.grid, self.n_interior)

    def decode(self, candidate) -> GridPath:
        return decode_grid_candidate(candidate, self.grid, self.n_interior)

    def feasible(self, candidate) -> bool:
        return self.decode(candidate).feasible

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.grid.n,
            "n_interior": self.n_interior,
            "density": self.grid.density,
            "infeasible_cost": self.infeasible_cost,
        }

    def describe(self, candidate) -> dict:
        path = self.decode(candidate)
        return {
            "points": path.points.tolist(),
            "length": grid_path_length(path),
            "feasible": path.feasible,
            "turning_points": turning_points(path),
        }
