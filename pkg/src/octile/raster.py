"""In-memory raster block: channels x height x width with a dtype tag."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, UnsupportedDtypeError

#: Supported element types, keyed by their manifest tag.
DTYPES: dict[str, np.dtype] = {
    "u8": np.dtype(np.uint8),
    "u16": np.dtype(np.uint16),
    "f32": np.dtype(np.float32),
    "f64": np.dtype(np.float64),
}

_TAG_BY_DTYPE = {dt: tag for tag, dt in DTYPES.items()}


def dtype_tag(dtype: np.dtype) -> str:
    """Manifest tag for a numpy dtype, or raise for unsupported ones."""
    tag = _TAG_BY_DTYPE.get(np.dtype(dtype))
    if tag is None:
        raise UnsupportedDtypeError(
            f"unsupported element type {np.dtype(dtype).str!r}; "
            f"expected one of {sorted(DTYPES)}"
        )
    return tag


@dataclass(frozen=True, eq=False)
class Raster:
    """A C-contiguous pixel block of shape (channels, height, width)."""

    data: np.ndarray

    def __post_init__(self):
        if self.data.ndim != 3:
            raise ShapeError(
                f"raster data must be 3-D (C, H, W), got {self.data.shape!r}"
            )
        dtype_tag(self.data.dtype)
        if not self.data.flags.c_contiguous:
            raise ShapeError("raster data must be C-contiguous")

    @classmethod
    def from_array(cls, array: np.ndarray) -> "Raster":
        """Wrap a 2-D (H, W) or 3-D (C, H, W) array, copying only if the
        input is not C-contiguous."""
        arr = np.asarray(array)
        if arr.ndim == 2:
            arr = arr[np.newaxis, :, :]
        elif arr.ndim != 3:
            raise ShapeError(
                f"expected a 2-D or 3-D array, got {arr.ndim}-D"
            )
        dtype_tag(arr.dtype)
        return cls(np.ascontiguousarray(arr))

    @property
    def channels(self) -> int:
        return self.data.shape[0]

    @property
    def height(self) -> int:
        return self.data.shape[1]

    @property
    def width(self) -> int:
        return self.data.shape[2]

    @property
    def dtype_tag(self) -> str:
        return dtype_tag(self.data.dtype)
