"""Command-line entry point.

Subcommands ``uav``, ``grid``, ``sphere`` and ``bench`` all run a seeded
replicate batch and write ``<output-dir>/<experiment>/summary.csv`` and
``replicates.csv`` (plus ``best_trajectory.json`` with
``--emit-trajectory``). Exit status: 0 on success, 1 when a scenario or map
cannot be loaded, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bench import (
    SHIPPED_SCENARIOS,
    ExperimentSpec,
    SphereScenario,
    default_jobs,
    load_scenario,
    run_experiment,
    write_report,
)

EXIT_LOAD_ERROR = 1


def _positive(value: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _seed(value: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {value!r}")
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _common(p: argparse.ArgumentParser, default_algorithm: str) -> None:
    p.add_argument("--algorithm", choices=("coa", "mcoa", "both"), default=default_algorithm,
                   help=f"optimizer to run (default: {default_algorithm})")
    p.add_argument("--seed", type=_seed, default=0, help="base seed; replicate i uses seed + i (default: 0)")
    p.add_argument("--replicates", type=_positive, default=30, help="independent runs (default: 30)")
    p.add_argument("--population", type=_positive, default=50, help="population size (default: 50)")
    p.add_argument("--iterations", type=_positive, default=1000, help="iterations per run (default: 1000)")
    p.add_argument("--output-dir", default=None,
                   help="report root (default: $MCOA_OUTPUT_DIR or ./results)")
    p.add_argument("--name", default=None, help="experiment name prefix (default: scenario name)")
    p.add_argument("--jobs", type=_positive, default=None,
                   help="parallel replicate workers (default: available CPUs)")
    p.add_argument("--emit-trajectory", action="store_true",
                   help="also write best_trajectory.json for the best replicate")
    p.add_argument("--no-opposition", action="store_true", help="MCOA: skip refractive opposition at start")
    p.add_argument("--no-centroid", action="store_true", help="MCOA: use the baseline summer-resort move")
    p.add_argument("--no-adaptive-competition", action="store_true",
                   help="MCOA: use the baseline burrow competition move")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcoa", description="COA / MCOA path-planning benchmarks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    uav = sub.add_parser("uav", help="3D UAV flight-cost scenario")
    _common(uav, "mcoa")
    uav.add_argument("--scenario-file", default=None, help="UAV scenario JSON (default: shipped scenario)")
    uav.add_argument("--n-interior", type=_positive, default=None, help="interior waypoints (default: from file, 10)")

    grid = sub.add_parser("grid", help="2D grid-map scenario")
    _common(grid, "mcoa")
    grid.add_argument("--map", "--map-file", dest="map_file", default="grid20",
                      help="map file, or grid20/grid40/grid60 (default: grid20)")
    grid.add_argument("--n-interior", type=_positive, default=None, help="interior waypoints (default: 10)")

    sphere = sub.add_parser("sphere", help="sum-of-squares self-check")
    _common(sphere, "mcoa")
    sphere.add_argument("--dim", type=_positive, default=10, help="dimension (default: 10)")
    sphere.add_argument("--bound", type=float, default=100.0, help="box half-width (default: 100)")

    bench = sub.add_parser("bench", help="benchmark protocol on a shipped scenario or file")
    _common(bench, "both")
    bench.add_argument("--scenario", default="grid20",
                       help=f"one of {', '.join(SHIPPED_SCENARIOS)} or a .json/.txt file (default: grid20)")
    bench.add_argument("--n-interior", type=_positive, default=None, help="interior waypoints")
    return parser


def _scenario_ref(args) -> str:
    if args.command == "uav":
        return args.scenario_file or "uav"
    if args.command == "grid":
        return args.map_file
    if args.command == "sphere":
        return "sphere"
    return args.scenario


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    ref = _scenario_ref(args)
    try:
        if args.command == "sphere":
            scenario = SphereScenario(dim=args.dim, bound=args.bound)
        else:
            scenario = load_scenario(ref, args.n_interior)
    except (OSError, ValueError) as exc:
        print(f"mcoa: cannot load scenario {ref!r}: {exc}", file=sys.stderr)
        return EXIT_LOAD_ERROR

    algorithms = ("coa", "mcoa") if args.algorithm == "both" else (args.algorithm,)
    overrides = {
        "population_size": args.population,
        "max_iterations": args.iterations,
        "enable_opposition": not args.no_opposition,
        "enable_centroid": not args.no_centroid,
        "enable_adaptive_competition": not args.no_adaptive_competition,
    }
    root = Path(args.output_dir or os.environ.get("MCOA_OUTPUT_DIR") or "results")
    jobs = args.jobs or default_jobs()
    prefix = args.name or scenario.name

    try:
        specs = [
            ExperimentSpec(
                algorithm=alg,
                scenario=ref,
                replicates=args.replicates,
                base_seed=args.seed,
                overrides=dict(overrides),
                n_interior=getattr(scenario, "n_interior", None),
            )
            for alg in algorithms
        ]
        for spec in specs:
            spec.config(0)  # validates the overrides
    except ValueError as exc:
        parser.error(str(exc))

    for spec in specs:
        out_dir = root / f"{prefix}-{spec.label.lower()}"
        effective = {
            "command": args.command,
            "experiment": spec.to_dict(),
            "scenario": scenario.to_dict(),
            "jobs": jobs,
            "output_dir": str(out_dir),
            "emit_trajectory": args.emit_trajectory,
        }
        print("config " + json.dumps(effective, default=str), flush=True)
        stats = run_experiment(spec, scenario, jobs=jobs)
        try:
            write_report(stats, spec, scenario, out_dir, emit_trajectory=args.emit_trajectory)
        except OSError as exc:
            print(f"mcoa: cannot write report to {out_dir}: {exc}", file=sys.stderr)
            return EXIT_LOAD_ERROR
        print(
            f"{stats.algorithm} on {stats.scenario}: mean {stats.mean:.6g} "
            f"optimal {stats.optimal:.6g} worst {stats.worst:.6g} "
            f"mean time {stats.mean_time:.3f}s -> {out_dir}",
            flush=True,
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
