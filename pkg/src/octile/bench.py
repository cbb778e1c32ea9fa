"""Wall-clock timing matrix over strategies and tile sizes.

Each cell times ``tile_image`` only, on a synthetic in-memory image with
an in-memory sink, so results isolate tiling-and-transform cost from
disk I/O.  Cells run sequentially to avoid cross-cell interference.

The ``pad`` edge policy is used so tile counts hit the per-grid ceiling
laws exactly (the counts are also cross-checked against the geometry
prediction for every cell).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .geometry import EdgePolicy, Strategy, window_count
from .pipeline import tile_image
from .raster import Raster

DEFAULT_IMAGE_SIZE = 10240
DEFAULT_TILE_SIZES = (64, 128, 256, 512)
DEFAULT_REPS = 7
_SEED = 12345

CSV_HEADER = "strategy,tile_size,image_size,reps,mean_s,std_s,tile_count"


@dataclass(frozen=True)
class BenchResult:
    strategy: str
    tile_size: int
    image_size: int
    reps: int
    mean_s: float
    std_s: float
    tile_count: int

    def csv_row(self) -> str:
        return (
            f"{self.strategy},{self.tile_size},{self.image_size},"
            f"{self.reps},{self.mean_s:.6f},{self.std_s:.6f},{self.tile_count}"
        )


def synth_image(size: int, channels: int = 1) -> Raster:
    """Deterministic random u8 raster used for timing runs."""
    rng = np.random.default_rng(_SEED)
    data = rng.integers(0, 256, size=(channels, size, size), dtype=np.uint8)
    return Raster(data)


def run_matrix(
    image_size: int = DEFAULT_IMAGE_SIZE,
    tile_sizes: tuple[int, ...] = DEFAULT_TILE_SIZES,
    strategies: tuple[Strategy, ...] = tuple(Strategy),
    reps: int = DEFAULT_REPS,
    *,
    edge: EdgePolicy = EdgePolicy.PAD_REFLECT,
    threads: int | None = None,
) -> list[BenchResult]:
    """Time every (strategy, tile size) cell, ``reps`` runs each."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if image_size % max(tile_sizes) != 0:
        raise ValueError(
            f"image size {image_size} must be divisible by the largest "
            f"tile size {max(tile_sizes)}"
        )
    source = synth_image(image_size)
    results: list[BenchResult] = []
    for strategy in strategies:
        for t in tile_sizes:
            expected = window_count(image_size, image_size, t, strategy, edge)
            samples = []
            for _ in range(reps):
                start = time.perf_counter()
                tiles = tile_image(source, t, strategy, edge, threads=threads)
                samples.append(time.perf_counter() - start)
                if len(tiles) != expected:
                    raise AssertionError(
                        f"tile count {len(tiles)} does not match the "
                        f"geometry prediction {expected}"
                    )
                del tiles
            results.append(
                BenchResult(
                    strategy=strategy.value,
                    tile_size=t,
                    image_size=image_size,
                    reps=reps,
                    mean_s=float(np.mean(samples)),
                    std_s=float(np.std(samples)),
                    tile_count=expected,
                )
            )
    return results


def csv_lines(results: list[BenchResult]) -> list[str]:
    return [CSV_HEADER] + [r.csv_row() for r in results]
