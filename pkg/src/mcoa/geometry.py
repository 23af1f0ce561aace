"""Planar geometry helpers for the path-planning objectives."""

from __future__ import annotations

import math
from typing import Iterator, List, Sequence, Tuple

import numpy as np

Cell = Tuple[int, int]


def point_segment_distance_2d(c, a, b) -> float:
    """Distance from point ``c`` to the closed segment ``[a, b]``.

    A degenerate segment (``a == b``) is treated as the point ``a``.
    """
    ax, ay = float(a[0]), float(a[1])
    dx, dy = float(b[0]) - ax, float(b[1]) - ay
    px, py = float(c[0]) - ax, float(c[1]) - ay
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(px, py)
    s = min(1.0, max(0.0, (px * dx + py * dy) / seg2))
    return math.hypot(px - s * dx, py - s * dy)


def segment_center_distances(starts: np.ndarray, ends: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Vectorised distances: ``out[s, k]`` is the distance from ``centers[k]``
    to segment ``starts[s] -> ends[s]`` in the plane."""
    d = (ends - starts)[:, None, :]
    rel = centers[None, :, :] - starts[:, None, :]
    seg2 = np.sum(d * d, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(seg2 > 0, np.sum(rel * d, axis=-1) / seg2, 0.0)
    s = np.clip(s, 0.0, 1.0)
    return np.linalg.norm(rel - s[..., None] * d, axis=-1)


def _cell_span(lo: float, hi: float) -> range:
    # cells k with [k - 0.5, k + 0.5] meeting [lo, hi]
    return range(math.ceil(lo - 0.5), math.floor(hi + 0.5) + 1)


def _column_slices(a, b) -> Iterator[Tuple[int, float, float]]:
    """Yield ``(column, y_low, y_high)`` for each unit column the closed
    segment touches. Cell ``(c, r)`` is the closed square centred on
    ``(c, r)`` with side 1."""
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    if ax > bx:
        ax, ay, bx, by = bx, by, ax, ay
    dx = bx - ax
    if dx == 0.0:
        lo, hi = min(ay, by), max(ay, by)
        for c in _cell_span(ax, ax):
            yield c, lo, hi
        return
    slope = (by - ay) / dx
    for c in _cell_span(ax, bx):
        x0 = max(ax, c - 0.5)
        x1 = min(bx, c + 0.5)
        y0 = ay + (x0 - ax) * slope if x0 > ax else ay
        y1 = ay + (x1 - ax) * slope if x1 < bx else by
        if y0 > y1:
            y0, y1 = y1, y0
        yield c, y0, y1


def supercover_cells(a: Sequence[float], b: Sequence[float]) -> List[Cell]:
    """Every cell the continuous segment ``a -> b`` touches, corners included."""
    cells = []
    for c, y0, y1 in _column_slices(a, b):
        cells.extend((c, r) for r in _cell_span(y0, y1))
    return cells


def segment_hits(a, b, column_prefix: List[List[int]], n: int) -> bool:
    """True if the segment touches any blocked cell.

    ``column_prefix[c][r]`` counts blocked cells in column ``c`` for rows
    ``1..r`` (index 0 is a zero pad); cells outside ``[1, n]^2`` are ignored.
    """
    for c, y0, y1 in _column_slices(a, b):
        if c < 1 or c > n:
            continue
        r0 = max(1, math.ceil(y0 - 0.5))
        r1 = min(n, math.floor(y1 + 0.5))
        if r1 >= r0:
            col = column_prefix[c]
            if col[r1] - col[r0 - 1]:
                return True
    return False
