"""Exception hierarchy for the tiling engine.

Every error carries a stable machine-readable ``code`` so the CLI and
bindings can map failures without string matching.
"""


class OctileError(Exception):
    """Base class for all engine errors."""

    code = "error"


class InvalidTileSizeError(OctileError):
    code = "invalid-tile-size"


class ImageTooSmallError(OctileError):
    code = "image-too-small"


class InvalidGridError(OctileError):
    code = "invalid-grid"


class ShapeError(OctileError):
    code = "shape"


class BoundsError(OctileError):
    code = "bounds"


class IncompleteCoverageError(OctileError):
    """Raised when a tileset is missing windows needed for reconstruction."""

    code = "incomplete-coverage"

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = list(missing)


class FormatError(OctileError):
    """Base class for raster/tileset file parsing failures."""

    code = "format"


class BadMagicError(FormatError):
    code = "bad-magic"


class UnsupportedVersionError(FormatError):
    code = "unsupported-version"


class UnsupportedDtypeError(FormatError):
    code = "unsupported-dtype"


class FortranOrderError(FormatError):
    code = "fortran-order"


class TruncatedPayloadError(FormatError):
    code = "truncated-payload"


class CorruptionError(OctileError):
    """A stored tileset is internally inconsistent or damaged."""

    code = "corruption"


class WriteError(OctileError):
    """Destination could not be written; any partial output was removed."""

    code = "io"


class OutOfStorageError(OctileError):
    """The tile sink cannot hold the complete tile set."""

    code = "out-of-storage"
