"""Shared optimizer plumbing: search box, population bookkeeping, schedules
and the randomness contract used by both COA and MCOA."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned box of feasible candidate vectors."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-D vectors of equal length")
        if lower.size < 1:
            raise ValueError("search space needs at least one dimension")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def uniform(cls, dim: int, low: float, high: float) -> "SearchSpace":
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return self.lower.size


@dataclass
class Individual:
    position: np.ndarray
    fitness: float = math.inf

    def copy(self) -> "Individual":
        return Individual(self.position.copy(), self.fitness)


@dataclass
class Population:
    """Member positions stored row-wise, with cached fitness per row.

    ``global_best`` is the best candidate seen during the whole run,
    ``local_best`` the best member of the most recent evaluation.
    """

    positions: np.ndarray
    fitness: np.ndarray
    fitness_valid: bool = False
    global_best: Optional[Individual] = None
    local_best: Optional[Individual] = None

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]


@dataclass
class RunConfig:
    """Run-level parameters. Defaults follow the benchmark protocol
    (50 crayfish, 1000 iterations, food factor 3)."""

    population_size: int = 50
    max_iterations: int = 1000
    food_factor: float = 3.0
    seed: int = 0
    temp_min: float = 20.0
    temp_max: float = 35.0
    intake_c1: float = 0.2
    intake_mu: float = 25.0
    intake_sigma: float = 3.0
    temp_per_individual: bool = False

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.food_factor > 1:
            raise ValueError("food_factor must exceed 1")
        if not self.temp_min < self.temp_max:
            raise ValueError("temp_min must be below temp_max")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass
class ReplicateResult:
    algorithm: str
    seed: int
    best_position: np.ndarray
    best_fitness: float
    trace: np.ndarray = field(repr=False)
    wall_time: float = 0.0


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic stream: same seed and call sequence give the same draws."""
    return np.random.Generator(np.random.PCG64(seed))


def clamp_to_bounds(position: np.ndarray, space: SearchSpace) -> np.ndarray:
    position = np.asarray(position, dtype=float)
    if position.shape[-1] != space.dim:
        raise ValueError(
            f"position has dimension {position.shape[-1]}, search space has {space.dim}"
        )
    return np.minimum(space.upper, np.maximum(space.lower, position))


def init_population_uniform(
    space: SearchSpace, config: RunConfig, rng: np.random.Generator
) -> Population:
    n = config.population_size
    positions = space.lower + rng.random((n, space.dim)) * (space.upper - space.lower)
    return Population(positions=positions, fitness=np.full(n, math.inf))


def _check_horizon(t: float, T: int) -> None:
    if T <= 0:
        raise ValueError("max iterations T must be positive")
    if not 0 <= t <= T:
        raise ValueError(f"iteration {t} outside [0, {T}]")


def c2_schedule(t: float, T: int) -> float:
    """Exploration step scale, falling linearly from 2 to 1."""
    _check_horizon(t, T)
    return 2.0 - t / T


def cc_schedule(t: float, T: int) -> float:
    """Adaptive competition coefficient (1 - t/T) ** (2t/T), equal to 0 at t = T."""
    _check_horizon(t, T)
    u = t / T
    if u >= 1.0:
        return 0.0
    return (1.0 - u) ** (2.0 * u)


def sample_temperature(rng: np.random.Generator, config: RunConfig) -> float:
    return float(rng.uniform(config.temp_min, config.temp_max))


def sample_food_intake(temp: float, config: RunConfig) -> float:
    """Gaussian intake curve peaking at ``intake_mu``.

    Deterministic in ``temp``; the randomness enters through the temperature.
    """
    sigma = config.intake_sigma
    if not sigma > 0:
        raise ValueError("intake_sigma must be positive")
    peak = config.intake_c1 / (sigma * math.sqrt(2.0 * math.pi))
    return peak * math.exp(-((temp - config.intake_mu) ** 2) / (2.0 * sigma**2))


def _sanitize(value: float) -> float:
    value = float(value)
    return value if math.isfinite(value) else math.inf


def evaluate_and_track(pop: Population, objective: Objective) -> Population:
    """Evaluate every member, refresh the iteration best and never let the
    global best get worse. Non-finite objective values count as +inf."""
    fitness = np.fromiter(
        (_sanitize(objective(x)) for x in pop.positions), dtype=float, count=pop.size
    )
    pop.fitness = fitness
    pop.fitness_valid = True
    best = int(np.argmin(fitness))
    pop.local_best = Individual(pop.positions[best].copy(), float(fitness[best]))
    if pop.global_best is None or pop.local_best.fitness < pop.global_best.fitness:
        pop.global_best = pop.local_best.copy()
    return pop
