"""Seeded replicate batches, summary statistics and report files.

Replicate ``i`` of an experiment always runs with seed ``base_seed + i``,
so any row can be reproduced in isolation. Results are folded in replicate
order, which makes serial and parallel execution indistinguishable apart
from the timing columns.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from .coa import run_coa
from .core import ReplicateResult, RunConfig, SearchSpace
from .grid import GridScenario, read_grid_map, shipped_map
from .strategies import McoaConfig, run_mcoa
from .uav import UavScenario, default_uav_scenario, load_uav_scenario

SUMMARY_HEADER = ["algorithm", "scenario", "replicates", "mean", "optimal", "worst", "mean_time_s"]
REPLICATE_HEADER = ["algorithm", "scenario", "replicate", "seed", "best_fitness", "feasible", "time_s"]
SEED_RULE = "seed = base_seed + replicate_index"
SHIPPED_SCENARIOS = ("uav", "grid20", "grid40", "grid60", "sphere")


@dataclass
class SphereScenario:
    """Sum of squares on a symmetric box; a quick self-check objective."""

    dim: int = 10
    bound: float = 100.0
    name: str = "sphere"

    @property
    def space(self) -> SearchSpace:
        return SearchSpace.uniform(self.dim, -self.bound, self.bound)

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(np.dot(x, x))

    def feasible(self, x) -> bool:
        return True

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def describe(self, x) -> dict:
        return {"position": np.asarray(x, dtype=float).tolist(), "fitness": self(x), "feasible": True}


Scenario = Union[UavScenario, GridScenario, SphereScenario]


def load_scenario(ref: str, n_interior: Optional[int] = None) -> Scenario:
    """Resolve a shipped scenario name or a scenario/map file path.

    ``.json`` files are UAV scenarios, anything else is read as a grid map.
    Raises ``OSError`` or ``ValueError`` on unreadable or malformed input.
    """
    if ref == "uav":
        scenario = default_uav_scenario()
    elif ref in ("grid20", "grid40", "grid60"):
        scenario = GridScenario(shipped_map(int(ref[4:])))
    elif ref == "sphere":
        return SphereScenario()
    elif ref.endswith(".json"):
        scenario = load_uav_scenario(ref)
    else:
        scenario = GridScenario(read_grid_map(ref))
    if n_interior is not None:
        scenario = dataclasses.replace(scenario, n_interior=n_interior)
    return scenario


@dataclass
class ExperimentSpec:
    algorithm: str  # "coa" or "mcoa"
    scenario: str
    replicates: int = 30
    base_seed: int = 0
    overrides: Dict[str, object] = field(default_factory=dict)
    n_interior: Optional[int] = None

    def __post_init__(self):
        self.algorithm = self.algorithm.lower()
        if self.algorithm not in ("coa", "mcoa"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")

    def seed(self, i: int) -> int:
        return self.base_seed + i

    def config(self, i: int) -> RunConfig:
        cls = McoaConfig if self.algorithm == "mcoa" else RunConfig
        names = {f.name for f in dataclasses.fields(cls)}
        kwargs = {k: v for k, v in self.overrides.items() if k in names}
        return cls(**kwargs, seed=self.seed(i))

    @property
    def label(self) -> str:
        if self.algorithm == "coa":
            return "COA"
        cfg = self.config(0)
        off = [
            name
            for name, on in (
                ("opposition", cfg.enable_opposition),
                ("centroid", cfg.enable_centroid),
                ("adaptive-competition", cfg.enable_adaptive_competition),
            )
            if not on
        ]
        return "MCOA" + "".join(f"-no-{name}" for name in off)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["seed_rule"] = SEED_RULE
        d["effective_config"] = dataclasses.asdict(self.config(0))
        d["effective_config"].pop("seed")
        return d


@dataclass
class ReplicateRow:
    replicate: int
    seed: int
    best_fitness: float
    feasible: bool
    time_s: float


@dataclass
class AggregateStats:
    algorithm: str
    scenario: str
    rows: List[ReplicateRow]
    best: ReplicateResult = field(repr=False)

    @property
    def replicates(self) -> int:
        return len(self.rows)

    @property
    def fitness(self) -> np.ndarray:
        return np.array([r.best_fitness for r in self.rows])

    @property
    def mean(self) -> float:
        return float(np.mean(self.fitness))

    @property
    def optimal(self) -> float:
        return float(np.min(self.fitness))

    @property
    def worst(self) -> float:
        return float(np.max(self.fitness))

    @property
    def mean_time(self) -> float:
        return float(np.mean([r.time_s for r in self.rows]))

    @property
    def median_time(self) -> float:
        return float(np.median([r.time_s for r in self.rows]))


def run_replicate(spec: ExperimentSpec, scenario: Scenario, i: int) -> ReplicateResult:
    cfg = spec.config(i)
    space = scenario.space
    if spec.algorithm == "coa":
        return run_coa(scenario, space, cfg)
    return run_mcoa(scenario, space, cfg)


def _replicate_task(args):
    spec, scenario, i = args
    return run_replicate(spec, scenario, i)


def run_experiment(
    spec: ExperimentSpec, scenario: Optional[Scenario] = None, jobs: int = 1
) -> AggregateStats:
    if scenario is None:
        scenario = load_scenario(spec.scenario, spec.n_interior)
    tasks = [(spec, scenario, i) for i in range(spec.replicates)]
    if jobs > 1 and spec.replicates > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_replicate_task, tasks))
    else:
        results = [_replicate_task(t) for t in tasks]

    rows = [
        ReplicateRow(
            replicate=i,
            seed=r.seed,
            best_fitness=r.best_fitness,
            feasible=scenario.feasible(r.best_position),
            time_s=r.wall_time,
        )
        for i, r in enumerate(results)
    ]
    best = min(results, key=lambda r: r.best_fitness)
    name = getattr(scenario, "name", spec.scenario)
    return AggregateStats(algorithm=spec.label, scenario=name, rows=rows, best=best)


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def export_csv(stats: Union[AggregateStats, Sequence[AggregateStats]], destination) -> None:
    """Write the summary table, one row per experiment."""
    if isinstance(stats, AggregateStats):
        stats = [stats]
    with open(destination, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for s in stats:
            writer.writerow(
                [s.algorithm, s.scenario, s.replicates, _fmt(s.mean), _fmt(s.optimal), _fmt(s.worst), _fmt(s.mean_time)]
            )


def export_replicates_csv(stats: Union[AggregateStats, Sequence[AggregateStats]], destination) -> None:
    if isinstance(stats, AggregateStats):
        stats = [stats]
    with open(destination, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPLICATE_HEADER)
        for s in stats:
            for r in s.rows:
                writer.writerow(
                    [s.algorithm, s.scenario, r.replicate, r.seed, _fmt(r.best_fitness), int(r.feasible), _fmt(r.time_s)]
                )


def read_summary_csv(path) -> List[dict]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        row["replicates"] = int(row["replicates"])
        for key in ("mean", "optimal", "worst", "mean_time_s"):
            row[key] = float(row[key])
    return rows


def trajectory_document(result: ReplicateResult, scenario: Scenario) -> dict:
    doc = {
        "algorithm": result.algorithm,
        "scenario": getattr(scenario, "name", ""),
        "seed": result.seed,
        "best_fitness": result.best_fitness,
        "candidate": result.best_position.tolist(),
    }
    doc.update(scenario.describe(result.best_position))
    doc["convergence"] = [{"iteration": t + 1, "fitness": float(f)} for t, f in enumerate(result.trace)]
    return doc


def export_trajectory(result: ReplicateResult, scenario: Scenario, destination) -> None:
    with open(destination, "w") as fh:
        json.dump(trajectory_document(result, scenario), fh, indent=1)
        fh.write("\n")


def write_report(
    stats: AggregateStats,
    spec: ExperimentSpec,
    scenario: Scenario,
    out_dir,
    emit_trajectory: bool = False,
) -> Path:
    """Lay out ``out_dir/{summary.csv, replicates.csv, experiment.json}``
    plus ``best_trajectory.json`` when requested."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    export_csv(stats, out / "summary.csv")
    export_replicates_csv(stats, out / "replicates.csv")
    with open(out / "experiment.json", "w") as fh:
        json.dump(spec.to_dict(), fh, indent=2, default=str)
        fh.write("\n")
    if emit_trajectory:
        export_trajectory(stats.best, scenario, out / "best_trajectory.json")
    return out


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
