"""Baseline crayfish optimization: summer resort, burrow competition and
two-mode foraging, dispatched each iteration by a sampled temperature."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from .core import (
    Objective,
    Population,
    ReplicateResult,
    RunConfig,
    SearchSpace,
    c2_schedule,
    clamp_to_bounds,
    evaluate_and_track,
    init_population_uniform,
    make_rng,
    sample_food_intake,
    sample_temperature,
)

TEMP_THRESHOLD = 30.0
FOOD_EPS = 1e-12

SUMMER = "summer"
COMPETE = "compete"
FORAGE = "forage"


@dataclass
class CoaState:
    pop: Population
    space: SearchSpace
    config: RunConfig
    rng: np.random.Generator
    objective: Objective
    t: int = 1
    temp: float = math.nan
    shade: Optional[np.ndarray] = None
    # rebuilt lazily by MCOA's exploration rule, reset every iteration
    centroids: object = None
    moves: List[str] = field(default_factory=list)
    trace: List[float] = field(default_factory=list)


UpdateRule = Callable[[int, CoaState], np.ndarray]


def shade_position(state: CoaState) -> np.ndarray:
    """Cave location: midpoint of the global best and the iteration best."""
    pop = state.pop
    return 0.5 * (pop.global_best.position + pop.local_best.position)


def _shade(state: CoaState) -> np.ndarray:
    if state.shade is None:
        state.shade = shade_position(state)
    return state.shade


def summer_resort_update(i: int, state: CoaState) -> np.ndarray:
    x = state.pop.positions[i]
    c2 = c2_schedule(state.t, state.config.max_iterations)
    step = c2 * state.rng.random(x.size) * (_shade(state) - x)
    return clamp_to_bounds(x + step, state.space)


def draw_competitor(rng: np.random.Generator, n: int) -> int:
    """Zero-based index of a random rival, ``round(rand * (N - 1))``."""
    # half-up rounding; numpy's round-half-even would bias the ends
    return int(math.floor(rng.random() * (n - 1) + 0.5))


def competition_update(i: int, state: CoaState) -> np.ndarray:
    positions = state.pop.positions
    z = draw_competitor(state.rng, positions.shape[0])
    return clamp_to_bounds(positions[i] - positions[z] + _shade(state), state.space)


def food_size(
    fitness_i: float, fitness_food: float, rng: np.random.Generator, food_factor: float
) -> float:
    denom = fitness_food if fitness_food != 0 else FOOD_EPS
    r = rng.random()
    if r == 0.0:
        return 0.0
    return food_factor * r * (fitness_i / denom)


def forage_update(i: int, state: CoaState) -> np.ndarray:
    cfg = state.config
    x = state.pop.positions[i]
    p = sample_food_intake(state.temp, cfg)
    food = state.pop.global_best.position
    q = food_size(state.pop.fitness[i], state.pop.global_best.fitness, state.rng, cfg.food_factor)
    if q > (cfg.food_factor + 1) / 2:
        food = math.exp(-1.0 / q) * food
        r_cos, r_sin = state.rng.random(2)
        x_new = x + food * p * math.cos(2 * math.pi * r_cos) - food * p * math.sin(2 * math.pi * r_sin)
    else:
        x_new = (x - food) * p + p * state.rng.random(x.size) * x
    return clamp_to_bounds(x_new, state.space)


def step(
    state: CoaState,
    explore: UpdateRule,
    compete: UpdateRule,
    temp: Optional[float] = None,
) -> CoaState:
    """One synchronous iteration with pluggable exploration/competition rules.

    All updates read the positions from the start of the iteration. ``temp``
    forces the temperature (tests use it to pin the dispatch).
    """
    cfg = state.config
    rng = state.rng
    state.shade = None
    state.centroids = None
    per_member = cfg.temp_per_individual and temp is None
    if not per_member:
        state.temp = sample_temperature(rng, cfg) if temp is None else float(temp)

    new_positions = np.empty_like(state.pop.positions)
    moves = []
    for i in range(state.pop.size):
        if per_member:
            state.temp = sample_temperature(rng, cfg)
        if state.temp > TEMP_THRESHOLD:
            if rng.random() < 0.5:
                new_positions[i] = explore(i, state)
                moves.append(SUMMER)
            else:
                new_positions[i] = compete(i, state)
                moves.append(COMPETE)
        else:
            new_positions[i] = forage_update(i, state)
            moves.append(FORAGE)

    state.pop.positions = new_positions
    evaluate_and_track(state.pop, state.objective)
    state.moves = moves
    state.trace.append(state.pop.global_best.fitness)
    state.t += 1
    return state


def coa_iteration(state: CoaState, temp: Optional[float] = None) -> CoaState:
    return step(state, summer_resort_update, competition_update, temp)


def initial_state(objective: Objective, space: SearchSpace, config: RunConfig) -> CoaState:
    rng = make_rng(config.seed)
    pop = init_population_uniform(space, config, rng)
    evaluate_and_track(pop, objective)
    return CoaState(pop=pop, space=space, config=config, rng=rng, objective=objective)


def run_coa(objective: Objective, space: SearchSpace, config: RunConfig) -> ReplicateResult:
    start = time.perf_counter()
    state = initial_state(objective, space, config)
    for _ in range(config.max_iterations):
        coa_iteration(state)
    elapsed = time.perf_counter() - start
    return result_from_state(state, "COA", elapsed)


def result_from_state(state: CoaState, algorithm: str, elapsed: float) -> ReplicateResult:
    best = state.pop.global_best
    return ReplicateResult(
        algorithm=algorithm,
        seed=state.config.seed,
        best_position=best.position.copy(),
        best_fitness=float(best.fitness),
        trace=np.asarray(state.trace, dtype=float),
        wall_time=elapsed,
    )
