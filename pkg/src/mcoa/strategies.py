"""The three MCOA enhancements on top of the baseline loop.

* refractive opposition: mirror each initial member through a randomly
  scaled box centre and keep the better of the pair;
* centroid-guided exploration: the summer-resort pull targets one of six
  anchors (bests, cave, full/small/large subset centroids) picked at random;
* adaptive competition: rivals' differences are scaled by a decaying
  coefficient and Gaussian noise around the cave.

Each strategy can be switched off; with all three off the run is draw for
draw identical to :func:`mcoa.coa.run_coa`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .coa import (
    CoaState,
    _shade,
    competition_update,
    draw_competitor,
    initial_state,
    result_from_state,
    step,
    summer_resort_update,
)
from .core import (
    Individual,
    Objective,
    Population,
    ReplicateResult,
    RunConfig,
    SearchSpace,
    _sanitize,
    c2_schedule,
    cc_schedule,
    clamp_to_bounds,
    evaluate_and_track,
)

CENTROID_NAMES = ("global_best", "local_best", "shade", "mean", "pmean", "qmean")


@dataclass
class McoaConfig(RunConfig):
    enable_opposition: bool = True
    enable_centroid: bool = True
    enable_adaptive_competition: bool = True
    opposition_every_iteration: bool = False
    p_subset_range: Tuple[int, int] = (2, 5)
    q_subset_range: Tuple[int, int] = (10, 0)  # 0 means "up to N"

    def __post_init__(self):
        super().__post_init__()
        n = self.population_size
        for name in ("p_subset_range", "q_subset_range"):
            lo, hi = self.subset_bounds(getattr(self, name))
            if not 1 <= lo <= hi <= n:
                raise ValueError(f"{name} resolves to [{lo}, {hi}], outside [1, {n}]")

    def subset_bounds(self, rng_range: Tuple[int, int]) -> Tuple[int, int]:
        n = self.population_size
        lo, hi = rng_range
        hi = n if hi <= 0 else min(hi, n)
        return min(lo, n), hi

    @classmethod
    def baseline(cls, **kwargs) -> "McoaConfig":
        """All three strategies disabled."""
        return cls(
            enable_opposition=False,
            enable_centroid=False,
            enable_adaptive_competition=False,
            **kwargs,
        )


@dataclass
class CentroidSet:
    candidates: np.ndarray  # shape (6, dim), rows ordered as CENTROID_NAMES

    def __getitem__(self, k: int) -> np.ndarray:
        return self.candidates[k]

    def __len__(self) -> int:
        return self.candidates.shape[0]


def refractive_opposition(
    x: np.ndarray, space: SearchSpace, rng: np.random.Generator
) -> np.ndarray:
    k = rng.random(space.dim)
    return clamp_to_bounds(k * (space.upper + space.lower) - x, space)


def opposition_select(
    pop: Population, objective: Objective, space: SearchSpace, rng: np.random.Generator
) -> Population:
    """Replace a member by its refracted mirror only on strict improvement."""
    if not pop.fitness_valid:
        evaluate_and_track(pop, objective)
    positions = pop.positions.copy()
    fitness = pop.fitness.copy()
    for i in range(pop.size):
        reverse = refractive_opposition(positions[i], space, rng)
        f_rev = _sanitize(objective(reverse))
        if f_rev < fitness[i]:
            positions[i] = reverse
            fitness[i] = f_rev
    pop.positions = positions
    pop.fitness = fitness
    best = int(np.argmin(fitness))
    pop.local_best = Individual(positions[best].copy(), float(fitness[best]))
    if pop.global_best is None or pop.local_best.fitness < pop.global_best.fitness:
        pop.global_best = pop.local_best.copy()
    return pop


def _subset_mean(positions: np.ndarray, bounds: Tuple[int, int], rng) -> np.ndarray:
    lo, hi = bounds
    size = int(rng.integers(lo, hi + 1))
    idx = rng.choice(positions.shape[0], size=size, replace=False)
    return positions[idx].mean(axis=0)


def build_centroid_set(state: CoaState, rng: np.random.Generator, cfg: McoaConfig) -> CentroidSet:
    pop = state.pop
    positions = pop.positions
    return CentroidSet(
        np.stack(
            [
                pop.global_best.position,
                pop.local_best.position,
                _shade(state),
                positions.mean(axis=0),
                _subset_mean(positions, cfg.subset_bounds(cfg.p_subset_range), rng),
                _subset_mean(positions, cfg.subset_bounds(cfg.q_subset_range), rng),
            ]
        )
    )


def centroid_exploration_update(
    i: int, state: CoaState, centroids: CentroidSet, rng: np.random.Generator
) -> np.ndarray:
    x = state.pop.positions[i]
    k1 = int(rng.integers(len(centroids)))
    c2 = c2_schedule(state.t, state.config.max_iterations)
    step_ = c2 * rng.random(x.size) * (centroids[k1] - x)
    return clamp_to_bounds(x + step_, state.space)


def adaptive_competition_update(i: int, state: CoaState, rng: np.random.Generator) -> np.ndarray:
    positions = state.pop.positions
    z = draw_competitor(rng, positions.shape[0])
    cc = cc_schedule(state.t, state.config.max_iterations)
    noise = rng.standard_normal(positions.shape[1])
    x_new = _shade(state) + cc * (positions[i] - positions[z]) * noise
    return clamp_to_bounds(x_new, state.space)


def _rules(cfg: McoaConfig):
    if cfg.enable_centroid:

        def explore(i, state):
            if state.centroids is None:
                state.centroids = build_centroid_set(state, state.rng, cfg)
            return centroid_exploration_update(i, state, state.centroids, state.rng)

    else:
        explore = summer_resort_update

    if cfg.enable_adaptive_competition:

        def compete(i, state):
            return adaptive_competition_update(i, state, state.rng)

    else:
        compete = competition_update
    return explore, compete


def mcoa_iteration(state: CoaState, cfg: McoaConfig, temp=None) -> CoaState:
    explore, compete = _rules(cfg)
    if cfg.enable_opposition and cfg.opposition_every_iteration:
        opposition_select(state.pop, state.objective, state.space, state.rng)
    return step(state, explore, compete, temp)


def run_mcoa(objective: Objective, space: SearchSpace, cfg: McoaConfig) -> ReplicateResult:
    start = time.perf_counter()
    state = initial_state(objective, space, cfg)
    if cfg.enable_opposition:
        opposition_select(state.pop, objective, space, state.rng)
    for _ in range(cfg.max_iterations):
        mcoa_iteration(state, cfg)
    elapsed = time.perf_counter() - start
    return result_from_state(state, "MCOA", elapsed)
