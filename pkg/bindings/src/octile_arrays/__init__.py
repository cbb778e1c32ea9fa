"""Array-in/array-out facade over the tiling engine.

Meant for ML data pipelines that live in numpy: you hand in an array,
you get arrays and plain mappings back.  Only bulk operations are
exposed; results are bit-identical to the engine's native pipeline and
at most one bulk copy happens at the boundary (none for C-contiguous
inputs).

    tile(array, 256)                 -> BoundTileSet(tiles, manifest)
    coverage(1024, 1024, 256)        -> (1024, 1024) int32 counts
    redundancy_report(1024, 1024, 256) -> dict of pair counts
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from octile.coverage import coverage_map, schedule_redundancy
from octile.geometry import EdgePolicy, Strategy, windows
from octile.pipeline import tile_image, transform_for
from octile.raster import DTYPES, Raster

from ._errors import (
    BindingError,
    EngineFailure,
    InvalidArgument,
    UnsupportedInput,
    map_engine_errors,
)

__all__ = [
    "BindingError",
    "BoundTileSet",
    "EngineFailure",
    "InvalidArgument",
    "UnsupportedInput",
    "coverage",
    "redundancy_report",
    "tile",
]

_STRATEGIES = {s.value: s for s in Strategy}
_EDGES = {e.value: e for e in EdgePolicy}


@dataclass(frozen=True)
class BoundTileSet:
    """Contiguous (N, C, t, t) tile block plus the manifest as a dict."""

    tiles: np.ndarray
    manifest: dict


def _parse_strategy(strategy: str) -> Strategy:
    try:
        return _STRATEGIES[strategy]
    except KeyError:
        raise InvalidArgument(
            f"unknown strategy {strategy!r}; expected one of "
            f"{sorted(_STRATEGIES)}"
        ) from None


def _parse_edge(edge: str) -> EdgePolicy:
    try:
        return _EDGES[edge]
    except KeyError:
        raise InvalidArgument(
            f"unknown edge policy {edge!r}; expected one of {sorted(_EDGES)}"
        ) from None


def _as_raster(array: np.ndarray) -> Raster:
    arr = np.asarray(array)
    if arr.ndim not in (2, 3):
        raise UnsupportedInput(
            f"expected a 2-D or 3-D array, got {arr.ndim}-D"
        )
    if arr.dtype not in DTYPES.values():
        raise UnsupportedInput(
            f"unsupported dtype {arr.dtype.str!r}; expected one of "
            f"{sorted(DTYPES)}"
        )
    # the single permitted boundary copy, skipped for contiguous input
    return Raster.from_array(arr)


@map_engine_errors
def tile(
    array: np.ndarray,
    tile_size: int,
    strategy: str = "flipnslide",
    edge: str = "interior",
    *,
    threads: int | None = None,
) -> BoundTileSet:
    """Tile an array exactly as the native engine pipeline would.

    Returns the engine's own contiguous tile block (no extra copy) and a
    manifest mapping mirroring the on-disk manifest schema.
    """
    tiles = tile_image(
        _as_raster(array),
        tile_size,
        _parse_strategy(strategy),
        _parse_edge(edge),
        threads=threads,
    )
    return BoundTileSet(tiles=tiles.tiles, manifest=tiles.manifest.to_dict())


@map_engine_errors
def coverage(
    height: int,
    width: int,
    tile_size: int,
    strategy: str = "flipnslide",
    edge: str = "interior",
) -> np.ndarray:
    """Per-pixel window counts for the given schedule, as an int32 array."""
    specs = windows(
        height, width, tile_size, _parse_strategy(strategy), _parse_edge(edge)
    )
    return coverage_map(height, width, specs).counts


@map_engine_errors
def redundancy_report(
    height: int,
    width: int,
    tile_size: int,
    strategy: str = "flipnslide",
    edge: str = "interior",
) -> dict:
    """Overlap pair counts for the given schedule, as a plain dict."""
    parsed = _parse_strategy(strategy)
    specs = windows(height, width, tile_size, parsed, _parse_edge(edge))
    entries = [(s, transform_for(parsed, s.grid_index)) for s in specs]
    return schedule_redundancy(entries).to_dict()
