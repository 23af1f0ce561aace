"""Crayfish optimization (COA) and its multi-strategy variant (MCOA) with
UAV and grid-map path-planning benchmarks."""

from .bench import ExperimentSpec, load_scenario, run_experiment, write_report
from .coa import run_coa
from .core import ReplicateResult, RunConfig, SearchSpace
from .grid import GridMap, GridScenario, load_grid_map, shipped_map
from .strategies import McoaConfig, run_mcoa
from .uav import UavConstraintParams, UavScenario, default_uav_scenario

__version__ = "0.1.0"

__all__ = [
    "ExperimentSpec",
    "GridMap",
    "GridScenario",
    "McoaConfig",
    "ReplicateResult",
    "RunConfig",
    "SearchSpace",
    "UavConstraintParams",
    "UavScenario",
    "default_uav_scenario",
    "load_grid_map",
    "load_scenario",
    "run_coa",
    "run_experiment",
    "run_mcoa",
    "shipped_map",
    "write_report",
]
