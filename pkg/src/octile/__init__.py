"""Raster tiling engine with overlapping offset grids and square-symmetry
augmentation.

Three strategies are provided: a plain non-overlapping partition, the
conventional 50%-overlap sliding window, and an eight-grid schedule in
which every grid carries a distinct square-symmetry transform so that
overlapping tiles never repeat a region in the same orientation.
"""

from .bench import BenchResult, csv_lines, run_matrix
from .coverage import (
    CoverageMap,
    RedundancyReport,
    coverage_map,
    emit_overlap_image,
    redundancy_report,
    schedule_redundancy,
)
from .errors import (
    BadMagicError,
    BoundsError,
    CorruptionError,
    FormatError,
    FortranOrderError,
    ImageTooSmallError,
    IncompleteCoverageError,
    InvalidGridError,
    InvalidTileSizeError,
    OctileError,
    OutOfStorageError,
    ShapeError,
    TruncatedPayloadError,
    UnsupportedDtypeError,
    UnsupportedVersionError,
    WriteError,
)
from .geometry import (
    EdgePolicy,
    Strategy,
    WindowSpec,
    grid_offsets,
    validate_tile_size,
    window_count,
    windows,
)
from .io import (
    read_npy,
    read_raster,
    read_tileset,
    write_npy,
    write_raster,
    write_tileset,
)
from .manifest import Manifest, TileEntry
from .pipeline import (
    GRID_TRANSFORMS,
    TileRecord,
    TileSet,
    assign_transform,
    reconstruct,
    tile_image,
    transform_for,
)
from .raster import DTYPES, Raster, dtype_tag
from .transforms import ALL_TRANSFORMS, TransformId, apply, compose, inverse

__version__ = "0.1.0"
