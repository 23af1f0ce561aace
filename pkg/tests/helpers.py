"""Shared test helpers."""

import numpy as np
from mcoa.coa import CoaState
from mcoa.core import Individual, Population, RunConfig, SearchSpace, make_rng


class ScriptedRng:
    """Stands in for ``np.random.Generator`` and replays fixed uniform draws."""

    def __init__(self, uniforms=(), normals=()):
        self.uniforms = list(uniforms)
        self.normals = list(normals)

    def _take(self, queue, size):
        if size is None:
            return queue.pop(0)
        return np.array([queue.pop(0) for _ in range(int(np.prod(size)))]).reshape(size)

    def random(self, size=None):
        return self._take(self.uniforms, size)

    def standard_normal(self, size=None):
        return self._take(self.normals, size)

    def integers(self, low, high=None, size=None):
        if high is None:
            low, high = 0, low
        return low + int(self._take(self.uniforms, None) * (high - low))


def sphere(x):
    x = np.asarray(x, dtype=float)
    return float(np.dot(x, x))


def make_state(positions, fitness=None, space=None, config=None, rng=None, t=1, objective=sphere):
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    n, dim = positions.shape
    if fitness is None:
        fitness = np.array([objective(x) for x in positions])
    fitness = np.asarray(fitness, dtype=float)
    best = int(np.argmin(fitness))
    pop = Population(
        positions=positions,
        fitness=fitness,
        fitness_valid=True,
        global_best=Individual(positions[best].copy(), float(fitness[best])),
        local_best=Individual(positions[best].copy(), float(fitness[best])),
    )
    return CoaState(
        pop=pop,
        space=space or SearchSpace.uniform(dim, -100, 100),
        config=config or RunConfig(population_size=max(n, 2), max_iterations=100),
        rng=rng if rng is not None else make_rng(0),
        objective=objective,
        t=t,
    )
