#!/usr/bin/env python3
"""Regenerate the shipped benchmark maps (grid20/40/60) in src/mcoa/data.

Construction, per map size n and its fixed seed:

1. plant a one-bend corridor (1,1) -> P -> (n,n), where P sits off the
   diagonal midpoint by a random perpendicular offset of 8-15% of n; the
   corridor's supercover cells and their 8-neighbours are kept free;
2. drop a square block centred on the diagonal midpoint, so the straight
   start-goal line is blocked;
3. drop random rectangular blocks (rejecting any that touch the corridor or
   the start/goal corners) until the blocked fraction reaches the target.

The planted corridor guarantees a feasible path that is a modest detour
from the diagonal; the random blocks keep the rest of the map cluttered.
"""

import argparse
from pathlib import Path

import numpy as np

from mcoa.geometry import supercover_cells

DATA = Path(__file__).resolve().parents[1] / "src" / "mcoa" / "data"
SEEDS = {20: 2020, 40: 4040, 60: 6060}


def corridor_mask(n: int, bend) -> np.ndarray:
    keep = np.zeros((n, n), dtype=bool)
    cells = supercover_cells((1, 1), bend) + supercover_cells(bend, (n, n))
    for c, r in cells:
        keep[max(0, r - 2) : min(n, r + 1), max(0, c - 2) : min(n, c + 1)] = True
    return keep


def generate(n: int, seed: int, density: float = 0.25):
    rng = np.random.default_rng(seed)
    mid = (n + 1) / 2
    offset = rng.uniform(0.08, 0.15) * n * rng.choice([-1.0, 1.0])
    bend = (mid - offset / np.sqrt(2), mid + offset / np.sqrt(2))
    keep = corridor_mask(n, bend)

    cells = np.zeros((n, n), dtype=np.int8)
    half = max(1, n // 20)
    m = int(round(mid)) - 1
    block = np.zeros_like(keep)
    block[m - half : m + half + 1, m - half : m + half + 1] = True
    cells[block & ~keep] = 1

    max_side = max(2, n // 6)
    margin = max(2, n // 10)
    while cells.mean() < density:
        h, w = rng.integers(1, max_side + 1, size=2)
        r, c = rng.integers(0, n - h + 1), rng.integers(0, n - w + 1)
        if (r < margin and c < margin) or (r + h > n - margin and c + w > n - margin):
            continue
        if keep[r : r + h, c : c + w].any():
            continue
        cells[r : r + h, c : c + w] = 1
    return cells, bend


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--density", type=float, default=0.25)
    parser.add_argument("--out", type=Path, default=DATA)
    args = parser.parse_args()
    for n, seed in SEEDS.items():
        cells, bend = generate(n, seed, args.density)
        header = (
            f"# {n}x{n} benchmark map: seed {seed}, density {cells.mean():.3f}, "
            f"planted bend ({bend[0]:.3f}, {bend[1]:.3f}); see scripts/generate_maps.py\n"
        )
        body = "\n".join("".join(str(v) for v in row) for row in cells) + "\n"
        (args.out / f"grid{n}.txt").write_text(header + body)
        print(f"grid{n}: density {cells.mean():.3f}, bend {bend}")


if __name__ == "__main__":
    main()
