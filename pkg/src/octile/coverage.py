"""Per-pixel window coverage counts and overlap redundancy reports.

``coverage_map`` counts, for every source pixel, how many scheduled
windows contain it (windows reaching past the image under the ``pad``
policy are clipped).  ``redundancy_report`` scans all window pairs for
spatial overlap and flags pairs that share pixels *and* carry the same
transform — the redundancy the eight-grid strategy is built to avoid.

Maps can be rendered to binary portable pixmaps: ``.pgm`` (P5) stores the
raw count per pixel, ``.ppm`` (P6) maps counts 0..8 through a fixed
false-color palette (counts above 8 clamp to the last entry).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BoundsError, WriteError
from .geometry import WindowSpec
from .pipeline import TileSet
from .transforms import TransformId

#: Fixed 9-entry palette for counts 0..8 (dark-to-bright perceptual ramp).
PALETTE: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0),
    (68, 1, 84),
    (70, 50, 127),
    (54, 92, 141),
    (39, 127, 142),
    (31, 161, 135),
    (74, 194, 109),
    (159, 218, 58),
    (253, 231, 37),
)


@dataclass(frozen=True, eq=False)
class CoverageMap:
    height: int
    width: int
    counts: np.ndarray  # (height, width) int32

    @property
    def max_count(self) -> int:
        return int(self.counts.max(initial=0))


@dataclass(frozen=True)
class PairOverlap:
    """Two overlapping windows plus the bounds of their shared region
    (half-open, in source coordinates)."""

    first_id: int
    second_id: int
    first: WindowSpec
    second: WindowSpec
    shared: tuple[int, int, int, int]  # row0, col0, row1, col1
    transform: str

    def to_dict(self) -> dict:
        return {
            "first_id": self.first_id,
            "second_id": self.second_id,
            "first": [self.first.row_offset, self.first.col_offset],
            "second": [self.second.row_offset, self.second.col_offset],
            "shared": list(self.shared),
            "transform": self.transform,
        }


@dataclass(frozen=True)
class RedundancyReport:
    overlapping_pairs: int
    same_transform_overlapping_pairs: int
    offending: tuple[PairOverlap, ...]

    def to_dict(self) -> dict:
        return {
            "overlapping_pairs": self.overlapping_pairs,
            "same_transform_overlapping_pairs":
                self.same_transform_overlapping_pairs,
            "offending": [p.to_dict() for p in self.offending],
        }


def coverage_map(h: int, w: int, specs: list[WindowSpec]) -> CoverageMap:
    """Exact per-pixel incidence counts for a window schedule.

    Windows may extend past the bottom/right edges (pad policy); anything
    starting outside the reflection-padded extent is rejected.
    """
    counts = np.zeros((h, w), dtype=np.int32)
    for s in specs:
        if s.row_offset < 0 or s.col_offset < 0:
            raise BoundsError(f"window at negative offset: {s}")
        if s.row_offset >= h + s.size or s.col_offset >= w + s.size:
            raise BoundsError(f"window starts beyond the padded extent: {s}")
        r1 = min(s.row_offset + s.size, h)
        c1 = min(s.col_offset + s.size, w)
        if s.row_offset < r1 and s.col_offset < c1:
            counts[s.row_offset:r1, s.col_offset:c1] += 1
    return CoverageMap(h, w, counts)


def schedule_redundancy(
    entries: list[tuple[WindowSpec, TransformId]]
) -> RedundancyReport:
    """Pair scan over (window, transform) entries.

    Counts every unordered pair of windows with a nonempty intersection
    and the subset carrying equal transforms; the offending subset is
    returned in full, ordered by (first_id, second_id).
    """
    n = len(entries)
    rows = np.array([w.row_offset for w, _ in entries], dtype=np.int64)
    cols = np.array([w.col_offset for w, _ in entries], dtype=np.int64)
    sizes = np.array([w.size for w, _ in entries], dtype=np.int64)
    codes = np.array(
        [list(TransformId).index(f) for _, f in entries], dtype=np.int64
    )

    overlapping = 0
    same = 0
    offending: list[PairOverlap] = []
    chunk = 2048
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        r, c, s = rows[lo:hi, None], cols[lo:hi, None], sizes[lo:hi, None]
        # overlap iff each axis's intervals intersect
        dr = (r < rows[None, :] + sizes[None, :]) & (rows[None, :] < r + s)
        dc = (c < cols[None, :] + sizes[None, :]) & (cols[None, :] < c + s)
        mask = dr & dc
        # keep i < j only
        idx_i = np.arange(lo, hi)[:, None]
        idx_j = np.arange(n)[None, :]
        mask &= idx_i < idx_j
        overlapping += int(mask.sum())
        same_mask = mask & (codes[lo:hi, None] == codes[None, :])
        same += int(same_mask.sum())
        for i, j in np.argwhere(same_mask):
            a, fa = entries[lo + int(i)]
            b, _ = entries[int(j)]
            shared = (
                max(a.row_offset, b.row_offset),
                max(a.col_offset, b.col_offset),
                min(a.row_offset + a.size, b.row_offset + b.size),
                min(a.col_offset + a.size, b.col_offset + b.size),
            )
            offending.append(
                PairOverlap(lo + int(i), int(j), a, b, shared, fa.value)
            )
    return RedundancyReport(overlapping, same, tuple(offending))


def redundancy_report(tiles: TileSet) -> RedundancyReport:
    """Pair scan over a tile set's manifest windows and transforms."""
    entries = [
        (record.window, record.transform) for record in tiles.records
    ]
    return schedule_redundancy(entries)


def _render_pgm(cmap: CoverageMap) -> bytes:
    if cmap.max_count > 255:
        raise BoundsError(
            f"counts up to {cmap.max_count} do not fit an 8-bit pixmap"
        )
    maxval = max(1, cmap.max_count)
    header = f"P5\n{cmap.width} {cmap.height}\n{maxval}\n".encode("ascii")
    return header + cmap.counts.astype(np.uint8).tobytes()


def _render_ppm(cmap: CoverageMap) -> bytes:
    palette = np.array(PALETTE, dtype=np.uint8)
    clipped = np.minimum(cmap.counts, len(PALETTE) - 1)
    pixels = palette[clipped]
    header = f"P6\n{cmap.width} {cmap.height}\n255\n".encode("ascii")
    return header + pixels.tobytes()


def emit_overlap_image(cmap: CoverageMap, path: str | Path) -> None:
    """Write the coverage map as a binary portable pixmap.

    The suffix picks the format: ``.pgm`` for raw-count grayscale,
    anything else (conventionally ``.ppm``) for the fixed false-color
    palette.
    """
    path = Path(path)
    payload = _render_pgm(cmap) if path.suffix == ".pgm" else _render_ppm(cmap)
    try:
        path.write_bytes(payload)
    except OSError as exc:
        raise WriteError(f"cannot write overlap image {path}: {exc}") from exc
