"""3D UAV flight-cost objective.

Candidates encode ``n_interior`` waypoints as consecutive (x, y, z)
triples between fixed endpoints. The cost averages four terms: path
length, cylinder threat proximity, flight-level violation and turn/pitch
smoothness. Infinite penalties are replaced by a finite sentinel.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from .core import SearchSpace
from .geometry import segment_center_distances

Point3 = Tuple[float, float, float]


@dataclass(frozen=True)
class Slope:
    height: float
    x: float
    y: float
    x_atten: float
    y_atten: float


@dataclass(frozen=True)
class TerrainModel:
    slopes: Tuple[Slope, ...] = ()
    literal_slope_formula: bool = False

    def __post_init__(self):
        for s in self.slopes:
            if not (s.x_atten > 0 and s.y_atten > 0):
                raise ValueError("slope attenuation must be positive")

    def height(self, x, y):
        return terrain_base_height(x, y) + slope_height(x, y, self)


@dataclass(frozen=True)
class CylinderObstacle:
    x: float
    y: float
    top: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("obstacle radius must be positive")


@dataclass(frozen=True)
class UavConstraintParams:
    collision_margin: float = 20.0
    penalty: float = 10.0
    h_min: float = 20.0
    h_max: float = 200.0
    a1: float = 1.0
    a2: float = 1.0
    infeasible_cost: float = 1e6

    def __post_init__(self):
        if not self.h_min < self.h_max:
            raise ValueError("h_min must be below h_max")
        if self.collision_margin < 0 or self.penalty < 0:
            raise ValueError("margins and penalties must be non-negative")


def terrain_base_height(x, y):
    rho = np.sqrt(np.square(x) + np.square(y))
    return 2.0 * (np.cos(x) + np.sin(x)) + np.sin(rho) + np.cos(rho)


def slope_height(x, y, terrain: TerrainModel):
    """Sum of Gaussian hills. The default uses the offset from the hill
    centre; ``literal_slope_formula`` puts the squared coordinate in its
    place."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    total = np.zeros(np.broadcast(x, y).shape)
    qx, qy = (x**2, y**2) if terrain.literal_slope_formula else (x, y)
    for s in terrain.slopes:
        total = total + s.height * np.exp(
            -(((qx - s.x) / s.x_atten) ** 2) - ((qy - s.y) / s.y_atten) ** 2
        )
    return total if total.ndim else float(total)


@dataclass
class UavPath:
    waypoints: np.ndarray  # (n, 3)

    @property
    def n(self) -> int:
        return self.waypoints.shape[0]

    def interior(self) -> np.ndarray:
        return self.waypoints[1:-1].reshape(-1)


def decode_candidate_to_path(candidate, n_interior: int, endpoints: Tuple[Point3, Point3]) -> UavPath:
    if n_interior < 1:
        raise ValueError("need at least one interior waypoint")
    candidate = np.asarray(candidate, dtype=float)
    if candidate.shape != (3 * n_interior,):
        raise ValueError(f"candidate has shape {candidate.shape}, expected ({3 * n_interior},)")
    start, end = endpoints
    return UavPath(np.vstack([start, candidate.reshape(n_interior, 3), end]))


def _points(path) -> np.ndarray:
    return path.waypoints if isinstance(path, UavPath) else np.asarray(path, dtype=float)


def path_length_cost(path) -> float:
    pts = _points(path)
    return float(np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1)))


def threat_cost(path, obstacles: Sequence[CylinderObstacle], params: UavConstraintParams) -> float:
    if not obstacles:
        return 0.0
    centers = np.array([[o.x, o.y] for o in obstacles])
    radii = np.array([o.radius for o in obstacles])
    return _threat(_points(path), centers, radii, params)


def _threat(pts: np.ndarray, centers: np.ndarray, radii: np.ndarray, params) -> float:
    if radii.size == 0:
        return 0.0
    d = segment_center_distances(pts[:-1, :2], pts[1:, :2], centers)
    outer = radii + params.collision_margin
    cost = np.where(d < outer, params.penalty * (outer - d), 0.0)
    cost = np.where(d <= radii, params.infeasible_cost, cost)
    return float(np.sum(cost))


def altitude_cost(path, params: UavConstraintParams) -> float:
    h = _points(path)[:, 2]
    cost = np.where(h >= params.h_max, params.penalty * (h - params.h_max), 0.0)
    low = (h > 0) & (h <= params.h_min)
    cost = np.where(low, params.penalty * (params.h_min - h), cost)
    cost = np.where(h <= 0, params.infeasible_cost, cost)
    return float(np.sum(cost))


def turn_and_pitch_cost(path, params: UavConstraintParams) -> float:
    """Summed horizontal turn angles plus summed pitch changes, with level
    flight as the reference before the first segment."""
    pts = _points(path)
    if pts.shape[0] < 3:
        raise ValueError("turn/pitch cost needs at least three waypoints")
    seg = np.diff(pts, axis=0)
    flat = seg[:, :2]  # projection onto the ground plane
    flat_len = np.linalg.norm(flat, axis=1)

    u, v = flat[:-1], flat[1:]
    cross = np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
    dot = np.sum(u * v, axis=1)
    alpha = np.arctan2(cross, dot)
    alpha[(flat_len[:-1] == 0) | (flat_len[1:] == 0)] = 0.0

    with np.errstate(divide="ignore", invalid="ignore"):
        beta = np.arctan(seg[:, 2] / flat_len)
    beta = np.where(flat_len == 0, 0.0, beta)
    pitch_change = np.abs(np.diff(np.concatenate([[0.0], beta])))
    return float(params.a1 * np.sum(alpha) + params.a2 * np.sum(pitch_change))


def _finite(value: float, sentinel: float) -> float:
    return value if math.isfinite(value) else sentinel


# Benchmark obstacles as (x, y, top, radius) rows.
DEFAULT_OBSTACLES = (
    (400, 500, 150, 30),
    (700, 150, 150, 50),
    (550, 450, 150, 40),
    (350, 100, 150, 50),
    (400, 650, 150, 30),
    (800, 800, 150, 30),
    (750, 350, 150, 70),
    (150, 350, 150, 60),
    (920, 600, 150, 90),
    (920, 200, 150, 50),
)


@dataclass
class UavScenario:
    obstacles: List[CylinderObstacle]
    params: UavConstraintParams = field(default_factory=UavConstraintParams)
    start: Point3 = (150.0, 150.0, 50.0)
    end: Point3 = (900.0, 720.0, 150.0)
    n_interior: int = 10
    lower: Point3 = (0.0, 0.0, 0.0)
    upper: Point3 = (1000.0, 1000.0, 200.0)
    name: str = "uav"
    literal_slope_formula: bool = False

    def __post_init__(self):
        if self.n_interior < 1:
            raise ValueError("n_interior must be >= 1")
        self.start = tuple(float(v) for v in self.start)
        self.end = tuple(float(v) for v in self.end)
        self._centers = np.array([[o.x, o.y] for o in self.obstacles]).reshape(-1, 2)
        self._radii = np.array([o.radius for o in self.obstacles])

    @property
    def space(self) -> SearchSpace:
        return SearchSpace(np.tile(self.lower, self.n_interior), np.tile(self.upper, self.n_interior))

    @property
    def terrain(self) -> TerrainModel:
        # hills share the obstacle table: top as height, radius as attenuation
        return TerrainModel(
            tuple(Slope(o.top, o.x, o.y, o.radius, o.radius) for o in self.obstacles),
            literal_slope_formula=self.literal_slope_formula,
        )

    @property
    def infeasible_cost(self) -> float:
        return self.params.infeasible_cost

    def decode(self, candidate) -> UavPath:
        return decode_candidate_to_path(candidate, self.n_interior, (self.start, self.end))

    def components(self, candidate) -> Tuple[float, float, float, float]:
        pts = self.decode(candidate).waypoints
        sentinel = self.params.infeasible_cost
        return (
            _finite(path_length_cost(pts), sentinel),
            _finite(_threat(pts, self._centers, self._radii, self.params), sentinel),
            _finite(altitude_cost(pts, self.params), sentinel),
            _finite(turn_and_pitch_cost(pts, self.params), sentinel),
        )

    def __call__(self, candidate) -> float:
        return sum(self.components(candidate)) / 4.0

    def feasible(self, candidate) -> bool:
        path = self.decode(candidate)
        d = segment_center_distances(path.waypoints[:-1, :2], path.waypoints[1:, :2], self._centers)
        return bool(np.all(d > self._radii) and np.all(path.waypoints[:, 2] > 0))

    def describe(self, candidate) -> dict:
        path = self.decode(candidate)
        f1, f2, f3, f4 = self.components(candidate)
        return {
            "waypoints": path.waypoints.tolist(),
            "terrain_height": np.atleast_1d(
                self.terrain.height(path.waypoints[:, 0], path.waypoints[:, 1])
            ).tolist(),
            "costs": {"length": f1, "threat": f2, "altitude": f3, "angle": f4},
            "total": (f1 + f2 + f3 + f4) / 4.0,
            "feasible": self.feasible(candidate),
        }

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "obstacles": [
                {"x": o.x, "y": o.y, "z": o.top, "radius": o.radius} for o in self.obstacles
            ],
            "params": asdict(self.params),
            "start": list(self.start),
            "end": list(self.end),
            "n_interior": self.n_interior,
            "lower": list(self.lower),
            "upper": list(self.upper),
        }


def uav_total_cost(candidate, scenario: UavScenario) -> float:
    return scenario(candidate)


def scenario_from_dict(data: dict) -> UavScenario:
    obstacles = [
        CylinderObstacle(float(o["x"]), float(o["y"]), float(o.get("z", 0.0)), float(o["radius"]))
        for o in data["obstacles"]
    ]
    kwargs = {}
    for key in ("start", "end", "lower", "upper"):
        if key in data:
            kwargs[key] = tuple(float(v) for v in data[key])
    if "n_interior" in data:
        kwargs["n_interior"] = int(data["n_interior"])
    if "name" in data:
        kwargs["name"] = str(data["name"])
    params = UavConstraintParams(**data.get("params", {}))
    return UavScenario(obstacles=obstacles, params=params, **kwargs)


def load_uav_scenario(path) -> UavScenario:
    with open(path) as fh:
        data = json.load(fh)
    if "name" not in data:
        data["name"] = Path(path).stem
    return scenario_from_dict(data)


def default_uav_scenario() -> UavScenario:
    text = resources.files("mcoa.data").joinpath("uav_default.json").read_text()
    return scenario_from_dict(json.loads(text))
