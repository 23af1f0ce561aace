"""Acceptance checks at their stated tolerances.

Each test records one PASS/FAIL line, printed in the terminal summary.
Experiment batches are cached per module so the timing and determinism
checks reuse (and re-run) the same specifications.
"""

import math

import numpy as np
import pytest

from mcoa.bench import ExperimentSpec, load_scenario, run_experiment, write_report
from mcoa.coa import run_coa
from mcoa.core import Population, RunConfig, SearchSpace, c2_schedule, cc_schedule, evaluate_and_track, make_rng
from mcoa.geometry import point_segment_distance_2d, supercover_cells
from mcoa.strategies import McoaConfig, opposition_select, run_mcoa
from oracles import dense_distance, sampled_cells, sampled_cells_with_crossings

pytestmark = pytest.mark.slow

GRID_FULL = {"population_size": 50, "max_iterations": 1000}
REDUCED = {"population_size": 50, "max_iterations": 300}
FITNESS_COLUMNS = ("mean", "optimal", "worst")

_RUNS = {}


def sphere(x):
    return float(np.dot(x, x))


@pytest.fixture(scope="module")
def report_root(tmp_path_factory):
    return tmp_path_factory.mktemp("acceptance")


def _experiment(algorithm, scenario, replicates, overrides, root, attempt=0):
    """Run (once per attempt) and write the report; returns stats and the
    summary fitness columns as raw text."""
    key = (algorithm, scenario, replicates, tuple(sorted(overrides.items())), attempt)
    if key not in _RUNS:
        spec = ExperimentSpec(algorithm, scenario, replicates=replicates, base_seed=0, overrides=dict(overrides))
        sc = load_scenario(scenario)
        stats = run_experiment(spec, sc, jobs=1)
        out = write_report(stats, spec, sc, root / f"{scenario}-{spec.label.lower()}-{attempt}")
        lines = (out / "summary.csv").read_text().splitlines()
        header = lines[0].split(",")
        cols = [header.index(c) for c in FITNESS_COLUMNS]
        fitness_text = [",".join(line.split(",")[i] for i in cols) for line in lines[1:]]
        _RUNS[key] = (stats, fitness_text)
    return _RUNS[key]


def _pair(scenario, replicates, overrides, root, attempt=0):
    coa, _ = _experiment("coa", scenario, replicates, overrides, root, attempt)
    mcoa, _ = _experiment("mcoa", scenario, replicates, overrides, root, attempt)
    return coa, mcoa


def test_criterion_01_schedules(criterion):
    with criterion(1, "c2/cc schedules match closed forms to 1e-12") as note:
        worst = 0.0
        for T in (4, 100, 500, 1000):
            for t in (0, T / 4, T / 2, 3 * T / 4, T):
                worst = max(
                    worst,
                    abs(c2_schedule(t, T) - (2.0 - t / T)),
                    abs(cc_schedule(t, T) - (1.0 - t / T) ** (2.0 * t / T)),
                )
        note(f"max abs error {worst:.1e}")
        assert worst <= 1e-12


def test_criterion_02_opposition(criterion):
    # On a box symmetric about 0 the mirror is K * 0 - x = -x, which never
    # changes a sphere fitness; an offset box gives opposition room to act.
    with criterion(2, "opposition never worsens, lowers the mean in >= 95/100 seeds") as note:
        def count_improved(space):
            improved = 0
            for seed in range(100):
                rng = make_rng(seed)
                pop = Population(space.lower + rng.random((50, 30)) * (space.upper - space.lower), np.zeros(50))
                evaluate_and_track(pop, sphere)
                before = pop.fitness.copy()
                opposition_select(pop, sphere, space, rng)
                assert np.all(pop.fitness <= before)
                improved += pop.fitness.mean() < before.mean()
            return improved

        offset = count_improved(SearchSpace.uniform(30, -50.0, 100.0))
        symmetric = count_improved(SearchSpace.uniform(30, -100.0, 100.0))
        note(f"[-50,100]^30: {offset}/100 strictly lower; [-100,100]^30: {symmetric}/100")
        assert offset >= 95


def test_criterion_03_ablation_identity(criterion):
    with criterion(3, "MCOA with all strategies off reproduces COA bit for bit") as note:
        space = SearchSpace.uniform(10, -100.0, 100.0)
        for seed in range(5):
            coa = run_coa(sphere, space, RunConfig(max_iterations=500, seed=seed))
            mcoa = run_mcoa(sphere, space, McoaConfig.baseline(max_iterations=500, seed=seed))
            assert np.array_equal(coa.trace, mcoa.trace)
            assert np.array_equal(coa.best_position, mcoa.best_position)
        note("5/5 seeds identical")


def test_criterion_04_sphere(criterion):
    with criterion(4, "sphere: MCOA < 1e-5 and COA < 1e-3 in >= 28/30") as note:
        space = SearchSpace.uniform(10, -100.0, 100.0)
        m = sum(run_mcoa(sphere, space, McoaConfig(max_iterations=500, seed=s)).best_fitness < 1e-5 for s in range(30))
        c = sum(run_coa(sphere, space, RunConfig(max_iterations=500, seed=s)).best_fitness < 1e-3 for s in range(30))
        note(f"MCOA {m}/30, COA {c}/30")
        assert m >= 28 and c >= 28


def test_criterion_05_grid20(criterion, report_root):
    with criterion(5, "grid20: MCOA mean <= COA mean, MCOA mean in [26.87, 33.59]") as note:
        coa, mcoa = _pair("grid20", 30, GRID_FULL, report_root)
        low, high = math.sqrt(2) * 19, 1.25 * math.sqrt(2) * 19
        note(f"MCOA {mcoa.mean:.4f}, COA {coa.mean:.4f}")
        assert mcoa.mean <= coa.mean
        assert low <= mcoa.mean <= high


def _infeasible_penalty_exact(stats, n):
    return all(r.feasible or r.best_fitness == float(n * n) for r in stats.rows)


def test_criterion_06_grid_scaling(criterion, report_root):
    with criterion(6, "grid40/60 (T=300, 10 runs): MCOA mean <= COA, 60x60 spread <= COA, penalty n^2") as note:
        c40, m40 = _pair("grid40", 10, REDUCED, report_root)
        c60, m60 = _pair("grid60", 10, REDUCED, report_root)
        spread = lambda s: s.worst - s.optimal
        note(
            f"40: MCOA {m40.mean:.2f} vs COA {c40.mean:.2f}; 60: MCOA {m60.mean:.2f} vs COA {c60.mean:.2f}; "
            f"60 spread MCOA {spread(m60):.2f} vs COA {spread(c60):.2f}"
        )
        for stats, n in ((c40, 40), (m40, 40), (c60, 60), (m60, 60)):
            assert _infeasible_penalty_exact(stats, n)
        assert m40.mean <= c40.mean
        assert m60.mean <= c60.mean
        assert spread(m60) <= spread(c60)


def test_criterion_07_uav(criterion, report_root):
    with criterion(7, "UAV (T=300, 10 runs): MCOA mean <= COA mean, >= 9/10 MCOA feasible") as note:
        coa, mcoa = _pair("uav", 10, REDUCED, report_root)
        feasible = sum(r.feasible for r in mcoa.rows)
        note(f"MCOA {mcoa.mean:.2f}, COA {coa.mean:.2f}, feasible {feasible}/10")
        assert mcoa.mean <= coa.mean
        assert feasible >= 9


def test_criterion_08_timing(criterion, report_root):
    with criterion(8, "MCOA median wall time <= 1.10 x COA median (UAV runs)") as note:
        coa, mcoa = _pair("uav", 10, REDUCED, report_root)
        ratio = mcoa.median_time / coa.median_time
        note(f"MCOA {mcoa.median_time:.3f}s, COA {coa.median_time:.3f}s, ratio {ratio:.3f}")
        assert ratio <= 1.10


def test_criterion_09_geometry(criterion):
    with criterion(9, "distance vs 10,001-point sampling within 1e-6; supercover vs sampled cells") as note:
        rng = np.random.default_rng(909)
        worst = 0.0
        for _ in range(1000):
            c, a, b = rng.random((3, 2))
            worst = max(worst, abs(point_segment_distance_2d(c, a, b) - dense_distance(c, a, b, 10_001)))
        mismatched, coarse_misses, spurious = 0, 0, 0
        for n in (20, 40, 60):
            for _ in range(1000):
                a, b = rng.uniform(1, n, (2, 2))
                cells = set(supercover_cells(a, b))
                mismatched += cells != sampled_cells_with_crossings(a, b, 1e-3)
                plain = sampled_cells(a, b, 1e-3)
                coarse_misses += plain != cells
                spurious += not plain <= cells
        note(
            f"max distance error {worst:.1e}; {mismatched}/3000 cell-set mismatches; "
            f"plain 1e-3 sampling misses sliver cells on {coarse_misses}/3000, never adds one ({spurious})"
        )
        assert worst <= 1e-6
        assert mismatched == 0 and spurious == 0


def test_criterion_10_determinism(criterion, report_root):
    with criterion(10, "re-runs give byte-identical summary.csv fitness columns") as note:
        batches = [("grid20", 30, GRID_FULL), ("grid40", 10, REDUCED), ("grid60", 10, REDUCED), ("uav", 10, REDUCED)]
        compared = 0
        for scenario, reps, overrides in batches:
            for algorithm in ("coa", "mcoa"):
                _, first = _experiment(algorithm, scenario, reps, overrides, report_root, attempt=0)
                _, again = _experiment(algorithm, scenario, reps, overrides, report_root, attempt=1)
                assert first == again, (algorithm, scenario)
                compared += 1
        note(f"{compared}/8 experiments identical")
