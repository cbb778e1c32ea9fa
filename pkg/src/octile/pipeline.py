"""Tile extraction pipeline: schedule -> extract -> transform -> records.

Each window is cut from the (possibly reflection-padded) source and
permuted by the transform assigned to its grid.  Grid 0 always carries
the identity transform, so the grid-0 subset of any run reconstructs the
source without an inverse pass; both baseline strategies emit identity
tiles only.

Tiles are stored in one contiguous ``(N, C, t, t)`` block in canonical
window order, which makes output deterministic regardless of how many
worker threads extract tiles.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    IncompleteCoverageError,
    InvalidGridError,
    OutOfStorageError,
)
from .geometry import EdgePolicy, Strategy, WindowSpec, windows
from .manifest import Manifest, TileEntry, tile_location
from .raster import Raster
from .transforms import ALL_TRANSFORMS, TransformId, inverse, orient

#: Fixed grid -> transform pairing.  Identity on grid 0; rotations on the
#: half-stride grids; mirror-bearing elements on the quarter-offset grids.
GRID_TRANSFORMS: tuple[TransformId, ...] = ALL_TRANSFORMS


def assign_transform(grid_index: int) -> TransformId:
    """Transform carried by every tile of the given grid."""
    if not 0 <= grid_index <= 7:
        raise InvalidGridError(f"grid index must be in 0..7, got {grid_index}")
    return GRID_TRANSFORMS[grid_index]


@dataclass(frozen=True)
class TileRecord:
    """One emitted tile: payload plus full provenance."""

    tile_id: int
    window: WindowSpec
    transform: TransformId
    payload: np.ndarray


class TileSet:
    """An ordered tile collection with its manifest.

    ``tiles`` is the contiguous (N, C, t, t) payload block; records are
    lightweight views into it, ordered like the manifest entries.
    """

    def __init__(self, manifest: Manifest, tiles: np.ndarray):
        self.manifest = manifest
        self.tiles = tiles

    def __len__(self) -> int:
        return len(self.manifest.tiles)

    @property
    def records(self) -> list[TileRecord]:
        return [self.record(i) for i in range(len(self))]

    def record(self, tile_id: int) -> TileRecord:
        entry = self.manifest.tiles[tile_id]
        window = WindowSpec(
            entry.grid_index,
            entry.row_offset,
            entry.col_offset,
            self.manifest.tile_size,
        )
        return TileRecord(
            tile_id=entry.tile_id,
            window=window,
            transform=TransformId(entry.transform),
            payload=self.tiles[tile_id],
        )


def transform_for(strategy: Strategy, grid_index: int) -> TransformId:
    """Transform a tile at ``grid_index`` receives under ``strategy``."""
    if strategy is Strategy.FLIP_N_SLIDE:
        return assign_transform(grid_index)
    return TransformId.R0


@dataclass(frozen=True)
class _GridJob:
    """One grid's extraction unit: a row x col lattice of window starts,
    its transform, and where its tiles begin in the output block."""

    rows: range
    cols: range
    transform: TransformId
    offset: int


def _grid_jobs(
    specs: list[WindowSpec], transforms: list[TransformId]
) -> list[_GridJob]:
    jobs: list[_GridJob] = []
    i = 0
    while i < len(specs):
        grid = specs[i].grid_index
        j = i
        while j < len(specs) and specs[j].grid_index == grid:
            j += 1
        row_starts = sorted({s.row_offset for s in specs[i:j]})
        col_starts = sorted({s.col_offset for s in specs[i:j]})
        assert len(row_starts) * len(col_starts) == j - i
        row_step = row_starts[1] - row_starts[0] if len(row_starts) > 1 else 1
        col_step = col_starts[1] - col_starts[0] if len(col_starts) > 1 else 1
        jobs.append(_GridJob(
            rows=range(row_starts[0], row_starts[-1] + 1, row_step),
            cols=range(col_starts[0], col_starts[-1] + 1, col_step),
            transform=transforms[i],
            offset=i,
        ))
        i = j
    return jobs


def _padded_source(data: np.ndarray, specs: list[WindowSpec]) -> np.ndarray:
    h, w = data.shape[1], data.shape[2]
    pad_bottom = max((s.row_offset + s.size for s in specs), default=0) - h
    pad_right = max((s.col_offset + s.size for s in specs), default=0) - w
    if pad_bottom <= 0 and pad_right <= 0:
        return data
    return np.pad(
        data,
        ((0, 0), (0, max(0, pad_bottom)), (0, max(0, pad_right))),
        mode="reflect",
    )


def tile_image(
    source: Raster,
    tile_size: int,
    strategy: Strategy,
    edge: EdgePolicy = EdgePolicy.INTERIOR_ONLY,
    *,
    threads: int | None = None,
) -> TileSet:
    """Run the full tile-and-transform loop over ``source``.

    Emits one record per scheduled window, in canonical window order.
    The source is never modified.  ``threads`` caps the worker pool
    (default: all cores); the output is byte-identical for any value.
    """
    specs = windows(source.height, source.width, tile_size, strategy, edge)
    transforms = [transform_for(strategy, s.grid_index) for s in specs]
    data = _padded_source(source.data, specs)

    n = len(specs)
    c = source.channels
    try:
        block = np.empty((n, c, tile_size, tile_size), dtype=source.data.dtype)
    except MemoryError as exc:
        raise OutOfStorageError(
            f"cannot hold {n} tiles of {c}x{tile_size}x{tile_size} "
            f"{source.dtype_tag} in memory"
        ) from exc

    jobs = _grid_jobs(specs, transforms)
    sw = np.lib.stride_tricks.sliding_window_view(
        data, (tile_size, tile_size), axis=(1, 2)
    )

    def extract(job: _GridJob) -> None:
        # windows of one grid form a regular row x col lattice, so a
        # strided slice of the window view materializes all of them in a
        # single bulk copy
        rows, cols = job.rows, job.cols
        src = sw[
            :,
            rows.start:rows.stop:rows.step,
            cols.start:cols.stop:cols.step,
        ].transpose(1, 2, 0, 3, 4)
        dst = block[job.offset:job.offset + len(rows) * len(cols)]
        dst = dst.reshape(len(rows), len(cols), c, tile_size, tile_size)
        np.copyto(dst, orient(job.transform, src))

    workers = threads if threads else (os.cpu_count() or 1)
    if workers <= 1 or len(jobs) <= 1:
        for job in jobs:
            extract(job)
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            for future in [pool.submit(extract, job) for job in jobs]:
                future.result()

    grids = sorted({s.grid_index for s in specs})
    manifest = Manifest(
        source_height=source.height,
        source_width=source.width,
        source_channels=c,
        source_dtype=source.dtype_tag,
        tile_size=tile_size,
        strategy=strategy.value,
        edge_policy=edge.value,
        transform_table={
            g: transform_for(strategy, g).value for g in grids
        },
        tiles=tuple(
            TileEntry(
                tile_id=i,
                grid_index=s.grid_index,
                row_offset=s.row_offset,
                col_offset=s.col_offset,
                transform=transforms[i].value,
                location=tile_location(i),
            )
            for i, s in enumerate(specs)
        ),
    )
    return TileSet(manifest, block)


def reconstruct(tiles: TileSet) -> Raster:
    """Rebuild the source raster from the identity (grid-0) tiles.

    Returns the covered extent: the full image under the ``pad`` policy,
    or the tile-aligned portion under ``interior``.  Raises
    :class:`IncompleteCoverageError` naming the missing window offsets if
    any grid-0 tile is absent.
    """
    m = tiles.manifest
    strategy = Strategy(m.strategy)
    edge = EdgePolicy(m.edge_policy)
    t = m.tile_size

    if strategy is Strategy.FLIP_N_SLIDE:
        expected = windows(
            m.source_height, m.source_width, t, Strategy.NO_OVERLAP, edge
        )
    else:
        expected = windows(m.source_height, m.source_width, t, strategy, edge)

    present: dict[tuple[int, int], int] = {}
    for entry in m.tiles:
        if entry.grid_index == 0:
            present[(entry.row_offset, entry.col_offset)] = entry.tile_id

    missing = [
        (s.row_offset, s.col_offset)
        for s in expected
        if (s.row_offset, s.col_offset) not in present
    ]
    if missing:
        shown = ", ".join(f"({r},{c})" for r, c in missing[:8])
        more = "" if len(missing) <= 8 else f" and {len(missing) - 8} more"
        raise IncompleteCoverageError(
            f"tileset is missing {len(missing)} grid-0 window(s) at {shown}{more}",
            missing=missing,
        )

    out_h = min(m.source_height, max(s.row_offset + t for s in expected))
    out_w = min(m.source_width, max(s.col_offset + t for s in expected))
    dtype = tiles.tiles.dtype
    out = np.zeros((m.source_channels, out_h, out_w), dtype=dtype)
    for s in expected:
        record = tiles.record(present[(s.row_offset, s.col_offset)])
        restored = orient(inverse(record.transform), record.payload)
        rows = min(t, out_h - s.row_offset)
        cols = min(t, out_w - s.col_offset)
        if rows <= 0 or cols <= 0:
            continue
        out[:, s.row_offset:s.row_offset + rows,
            s.col_offset:s.col_offset + cols] = restored[:, :rows, :cols]
    return Raster(out)
