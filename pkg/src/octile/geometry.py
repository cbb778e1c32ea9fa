"""Window schedule generation for the three tiling strategies.

A schedule is an ordered list of :class:`WindowSpec`.  All strategies use
square ``t x t`` windows:

  * ``none``       one stride-``t`` grid anchored at (0, 0);
  * ``overlap50``  one stride-``t/2`` sliding grid anchored at (0, 0);
  * ``flipnslide`` the union of eight stride-``t`` grids whose anchors
    step through the 0, 1/4, 1/2 and 3/4 fractions of the tile size on
    both axes, so that interior pixels fall in exactly eight windows.

Edge policy decides what happens near the image boundary:

  * ``interior``   only windows that lie fully inside the image;
  * ``pad``        the image is virtually extended by mirror reflection
    past its bottom/right edges and every grid emits exactly
    ``ceil(H/t) * ceil(W/t)`` windows (``overlap50`` emits the smallest
    stride-``t/2`` start set that reaches the far edge).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ImageTooSmallError, InvalidTileSizeError


class Strategy(Enum):
    NO_OVERLAP = "none"
    OVERLAP50 = "overlap50"
    FLIP_N_SLIDE = "flipnslide"


class EdgePolicy(Enum):
    INTERIOR_ONLY = "interior"
    PAD_REFLECT = "pad"


@dataclass(frozen=True, order=True)
class WindowSpec:
    """One square source window: which grid it belongs to and where it sits.

    ``grid_index`` is 0 for both baseline strategies and 0..7 for the
    eight-grid strategy.  Offsets are the window's top-left pixel; under
    the ``pad`` policy a window may extend past the bottom/right image
    edge (never past the top/left).
    """

    grid_index: int
    row_offset: int
    col_offset: int
    size: int


def validate_tile_size(t: int) -> int:
    """Check a tile size: at least 4 and divisible by 4 (quarter offsets
    must be whole pixels)."""
    if not isinstance(t, int) or isinstance(t, bool):
        raise InvalidTileSizeError(f"tile size must be an int, got {t!r}")
    if t < 4 or t % 4 != 0:
        raise InvalidTileSizeError(
            f"tile size must be >= 4 and divisible by 4, got {t}"
        )
    return t


def grid_offsets(t: int) -> list[tuple[int, int]]:
    """The eight grid anchors for tile size ``t``, in canonical order.

    The four axis-aligned half-stride anchors come first, then the four
    quarter/three-quarter diagonal anchors.
    """
    validate_tile_size(t)
    q, h, q3 = t // 4, t // 2, 3 * t // 4
    return [
        (0, 0), (0, h), (h, 0), (h, h),
        (q, q), (q, q3), (q3, q), (q3, q3),
    ]


def _interior_starts(extent: int, t: int, stride: int, offset: int) -> range:
    # last admissible start keeps the window fully inside
    last = extent - t
    if offset > last:
        return range(0, 0)
    return range(offset, last + 1, stride)


def _padded_grid_starts(extent: int, t: int, offset: int) -> range:
    # exactly ceil(extent / t) windows per axis for a stride-t grid
    n = math.ceil(extent / t)
    return range(offset, offset + n * t, t)


def _padded_sliding_starts(extent: int, t: int, stride: int) -> range:
    # smallest stride-aligned start set whose windows reach the far edge
    k = math.ceil((extent - t) / stride)
    return range(0, k * stride + 1, stride)


def windows(
    h: int,
    w: int,
    t: int,
    strategy: Strategy,
    edge: EdgePolicy = EdgePolicy.INTERIOR_ONLY,
) -> list[WindowSpec]:
    """Generate the ordered window schedule for an ``h x w`` image.

    Ordering is ascending ``(grid_index, row_offset, col_offset)`` and the
    function is pure: equal arguments always give the identical list.
    """
    validate_tile_size(t)
    if h < t or w < t:
        raise ImageTooSmallError(
            f"image {h}x{w} is smaller than the tile size {t}"
        )

    interior = edge is EdgePolicy.INTERIOR_ONLY
    if strategy is Strategy.FLIP_N_SLIDE:
        anchors = grid_offsets(t)
    else:
        anchors = [(0, 0)]

    out: list[WindowSpec] = []
    for grid_index, (ar, ac) in enumerate(anchors):
        if strategy is Strategy.OVERLAP50:
            stride = t // 2
            if interior:
                rows = _interior_starts(h, t, stride, 0)
                cols = _interior_starts(w, t, stride, 0)
            else:
                rows = _padded_sliding_starts(h, t, stride)
                cols = _padded_sliding_starts(w, t, stride)
        else:
            if interior:
                rows = _interior_starts(h, t, t, ar)
                cols = _interior_starts(w, t, t, ac)
            else:
                rows = _padded_grid_starts(h, t, ar)
                cols = _padded_grid_starts(w, t, ac)
        for r in rows:
            for c in cols:
                out.append(WindowSpec(grid_index, r, c, t))
    return out


def window_count(
    h: int, w: int, t: int, strategy: Strategy, edge: EdgePolicy
) -> int:
    """Closed-form size of ``windows(h, w, t, strategy, edge)``."""
    validate_tile_size(t)
    if h < t or w < t:
        raise ImageTooSmallError(
            f"image {h}x{w} is smaller than the tile size {t}"
        )
    interior = edge is EdgePolicy.INTERIOR_ONLY
    if strategy is Strategy.NO_OVERLAP:
        if interior:
            return (h // t) * (w // t)
        return math.ceil(h / t) * math.ceil(w / t)
    if strategy is Strategy.OVERLAP50:
        s = t // 2
        if interior:
            return ((h - t) // s + 1) * ((w - t) // s + 1)
        return (math.ceil((h - t) / s) + 1) * (math.ceil((w - t) / s) + 1)
    if interior:
        total = 0
        for ar, ac in grid_offsets(t):
            total += max(0, (h - ar) // t) * max(0, (w - ac) // t)
        return total
    return 8 * math.ceil(h / t) * math.ceil(w / t)
