"""Independent reference computations for the geometry checks.

None of these reuse the package code paths: distances come from sampling
the segment, cell sets from sampling or from clipping the segment against
every candidate square.
"""

import math

import numpy as np


def dense_distance(c, a, b, samples=10_001):
    """Minimum distance from ``c`` to ``samples`` evenly spaced points on ``[a, b]``."""
    s = np.linspace(0.0, 1.0, samples)[:, None]
    pts = np.asarray(a, float) + s * (np.asarray(b, float) - np.asarray(a, float))
    return float(np.min(np.hypot(*(pts - np.asarray(c, float)).T)))


def _cells_of_points(pts):
    """Closed unit squares centred on integers that contain each point."""
    lo = np.ceil(pts - 0.5).astype(np.int64)
    hi = np.floor(pts + 0.5).astype(np.int64)
    # corners of the (at most 2 x 2) block of containing cells, packed into one key
    keys = np.concatenate(
        [(cx + 4096) * 8192 + (cy + 4096) for cx in (lo[:, 0], hi[:, 0]) for cy in (lo[:, 1], hi[:, 1])]
    )
    return {(int(k) // 8192 - 4096, int(k) % 8192 - 4096) for k in np.unique(keys)}


def sampled_cells(a, b, step=1e-3):
    """Cells met by points spaced at most ``step`` apart along the segment."""
    a, b = np.asarray(a, float), np.asarray(b, float)
    length = float(np.hypot(*(b - a)))
    m = max(2, int(math.ceil(length / step)) + 1)
    s = np.linspace(0.0, 1.0, m)[:, None]
    return _cells_of_points(a + s * (b - a))


def crossing_params(a, b):
    """Sorted parameters where the segment meets a cell boundary line."""
    a, b = np.asarray(a, float), np.asarray(b, float)
    params = [0.0, 1.0]
    for k in range(2):
        lo, hi = sorted((a[k], b[k]))
        if a[k] == b[k]:
            continue
        for line in np.arange(math.ceil(lo - 0.5), math.floor(hi - 0.5) + 1) + 0.5:
            params.append((line - a[k]) / (b[k] - a[k]))
    return np.unique(np.clip(params, 0.0, 1.0))


def sampled_cells_with_crossings(a, b, step=1e-3):
    """``sampled_cells`` plus the boundary crossings and the midpoint of every
    piece between consecutive crossings, so slivers shorter than ``step``
    are still sampled."""
    a, b = np.asarray(a, float), np.asarray(b, float)
    cells = sampled_cells(a, b, step)
    s = crossing_params(a, b)
    extra = np.concatenate([s, 0.5 * (s[:-1] + s[1:])])[:, None]
    cells |= _cells_of_points(a + extra * (b - a))
    return cells


def _clip_hits_square(a, b, cx, cy):
    """Liang-Barsky test of the closed segment against the closed square."""
    t0, t1 = 0.0, 1.0
    d = (b[0] - a[0], b[1] - a[1])
    for k, centre in ((0, cx), (1, cy)):
        lo, hi = centre - 0.5, centre + 0.5
        if d[k] == 0.0:
            if a[k] < lo or a[k] > hi:
                return False
            continue
        u, v = (lo - a[k]) / d[k], (hi - a[k]) / d[k]
        if u > v:
            u, v = v, u
        t0, t1 = max(t0, u), min(t1, v)
        if t0 > t1:
            return False
    return True


def clipped_cells(a, b):
    """Exact cell set: every square in the bounding box that the segment meets."""
    a = (float(a[0]), float(a[1]))
    b = (float(b[0]), float(b[1]))
    cols = range(math.floor(min(a[0], b[0])) - 1, math.ceil(max(a[0], b[0])) + 2)
    rows = range(math.floor(min(a[1], b[1])) - 1, math.ceil(max(a[1], b[1])) + 2)
    return {(c, r) for c in cols for r in rows if _clip_hits_square(a, b, c, r)}
