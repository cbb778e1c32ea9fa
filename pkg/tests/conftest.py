"""Shared brute-force oracles, independent of the engine's code paths.

The window oracle enumerates candidate start positions one by one; the
coverage oracle counts membership via indicator products.  Both are kept
deliberately dumb so they can vouch for the closed-form implementations.
"""

from __future__ import annotations

import numpy as np

from octile.geometry import EdgePolicy, Strategy, WindowSpec, grid_offsets


def _scan_interior_starts(extent: int, t: int, stride: int, anchor: int) -> list[int]:
    starts = []
    pos = anchor
    while pos + t <= extent:
        starts.append(pos)
        pos += stride
    return starts


def _scan_padded_sliding_starts(extent: int, t: int, stride: int) -> list[int]:
    # keep sliding until the window reaches the far edge
    starts = [0]
    while starts[-1] + t < extent:
        starts.append(starts[-1] + stride)
    return starts


def _scan_padded_grid_starts(extent: int, t: int, anchor: int) -> list[int]:
    # one window per started stride-t cell of the unshifted partition
    cells = len([s for s in range(0, extent, t)])
    return [anchor + k * t for k in range(cells)]


def oracle_windows(
    h: int, w: int, t: int, strategy: Strategy, edge: EdgePolicy
) -> list[WindowSpec]:
    """Enumerate the expected schedule by explicit scanning."""
    interior = edge is EdgePolicy.INTERIOR_ONLY
    out = []
    if strategy is Strategy.FLIP_N_SLIDE:
        anchors = grid_offsets(t)
    else:
        anchors = [(0, 0)]
    for grid, (ar, ac) in enumerate(anchors):
        if strategy is Strategy.OVERLAP50:
            stride = t // 2
            if interior:
                rows = _scan_interior_starts(h, t, stride, 0)
                cols = _scan_interior_starts(w, t, stride, 0)
            else:
                rows = _scan_padded_sliding_starts(h, t, stride)
                cols = _scan_padded_sliding_starts(w, t, stride)
        elif interior:
            rows = _scan_interior_starts(h, t, t, ar)
            cols = _scan_interior_starts(w, t, t, ac)
        else:
            rows = _scan_padded_grid_starts(h, t, ar)
            cols = _scan_padded_grid_starts(w, t, ac)
        out.extend(
            WindowSpec(grid, r, c, t) for r in rows for c in cols
        )
    return out


def oracle_coverage(h: int, w: int, specs: list[WindowSpec]) -> np.ndarray:
    """Membership-test coverage counts: rows-in x cols-in indicator product."""
    if not specs:
        return np.zeros((h, w), dtype=np.int64)
    r = np.arange(h)[:, None]
    c = np.arange(w)[:, None]
    r0 = np.array([s.row_offset for s in specs])[None, :]
    c0 = np.array([s.col_offset for s in specs])[None, :]
    size = np.array([s.size for s in specs])[None, :]
    rows_in = ((r >= r0) & (r < r0 + size)).astype(np.int64)
    cols_in = ((c >= c0) & (c < c0 + size)).astype(np.int64)
    return rows_in @ cols_in.T


def eight_coverage_band(h: int, w: int, t: int) -> tuple[slice, slice] | None:
    """Pixel band guaranteed to sit in exactly eight interior windows.

    A pixel qualifies when it is at least 3t/4 from every image edge and
    at least t before each grid's last full-window boundary.
    """
    q3 = 3 * t // 4
    row_lo, col_lo = q3, q3
    row_hi = min(
        min(a + ((h - a) // t) * t for a in (0, t // 4, t // 2, q3)) - t,
        h - 1 - q3,
    )
    col_hi = min(
        min(a + ((w - a) // t) * t for a in (0, t // 4, t // 2, q3)) - t,
        w - 1 - q3,
    )
    if row_hi < row_lo or col_hi < col_lo:
        return None
    return slice(row_lo, row_hi + 1), slice(col_lo, col_hi + 1)


def marker_image(h: int, w: int, channels: int = 1) -> np.ndarray:
    """An all-distinct-valued test image (u16, needs h*w*channels <= 65536)."""
    assert h * w * channels <= 65536
    return (
        np.arange(h * w * channels, dtype=np.uint16).reshape(channels, h, w)
    )
