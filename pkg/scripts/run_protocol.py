#!/usr/bin/env python3
"""Run the full benchmark protocol: COA and MCOA, 30 replicates of N=50,
T=1000, on every shipped scenario, then print a combined summary table.

    python scripts/run_protocol.py --output-dir results --jobs 4

Use ``--iterations``/``--replicates`` for a reduced pass (e.g. T=300, 10).
"""

import argparse
import csv
import sys
from pathlib import Path

from mcoa.cli import main as cli_main

SCENARIOS = ("grid20", "grid40", "grid60", "uav")


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--output-dir", default="results")
    p.add_argument("--replicates", default="30")
    p.add_argument("--iterations", default="1000")
    p.add_argument("--population", default="50")
    p.add_argument("--seed", default="0")
    p.add_argument("--jobs", default=None)
    p.add_argument("--scenarios", nargs="+", default=list(SCENARIOS), choices=SCENARIOS)
    args = p.parse_args(argv)

    common = [
        "--algorithm", "both",
        "--replicates", args.replicates,
        "--iterations", args.iterations,
        "--population", args.population,
        "--seed", args.seed,
        "--output-dir", args.output_dir,
        "--emit-trajectory",
    ]
    if args.jobs:
        common += ["--jobs", args.jobs]
    for scenario in args.scenarios:
        code = cli_main(["bench", "--scenario", scenario, *common])
        if code:
            return code

    rows = []
    for summary in sorted(Path(args.output_dir).glob("*/summary.csv")):
        with open(summary, newline="") as fh:
            rows.extend(csv.DictReader(fh))
    print(f"\n{'algorithm':<10}{'scenario':<10}{'mean':>12}{'optimal':>12}{'worst':>12}{'time s':>10}")
    for r in rows:
        print(
            f"{r['algorithm']:<10}{r['scenario']:<10}{r['mean']:>12}{r['optimal']:>12}"
            f"{r['worst']:>12}{float(r['mean_time_s']):>10.2f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
