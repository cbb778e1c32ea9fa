"""The eight square-symmetry transforms applied to tiles.

Conventions (fixed for the whole engine):
  * rows run top to bottom, columns left to right;
  * ``R90`` is a 90-degree counterclockwise rotation:
    ``out[r][c] = in[c][t-1-r]``;
  * ``R0H`` reverses columns, ``R0V`` reverses rows;
  * the composite elements rotate first, then reflect, so
    ``R90H = hflip(rot90(x))`` and ``R90V = vflip(rot90(x))``.

Together these are the eight symmetries of the square (rotations by
multiples of 90 degrees plus the four mirror elements), closed under
composition and inversion.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import ShapeError


class TransformId(Enum):
    R0 = "r0"
    R90 = "r90"
    R180 = "r180"
    R270 = "r270"
    R0H = "r0h"
    R0V = "r0v"
    R90H = "r90h"
    R90V = "r90v"

    def __repr__(self) -> str:  # terser in test output
        return f"TransformId.{self.name}"


#: All transforms in canonical order (matches grid assignment order).
ALL_TRANSFORMS: tuple[TransformId, ...] = tuple(TransformId)


def orient(f: TransformId, tile: np.ndarray) -> np.ndarray:
    """Return a (usually non-contiguous) view of ``tile`` permuted by ``f``.

    Operates on the last two axes; leading axes (channels) are untouched.
    """
    if tile.ndim < 2 or tile.shape[-1] != tile.shape[-2]:
        raise ShapeError(
            f"tile spatial dims must be square, got {tile.shape!r}"
        )
    if f is TransformId.R0:
        return tile
    if f is TransformId.R90:
        return np.rot90(tile, 1, axes=(-2, -1))
    if f is TransformId.R180:
        return np.rot90(tile, 2, axes=(-2, -1))
    if f is TransformId.R270:
        return np.rot90(tile, 3, axes=(-2, -1))
    if f is TransformId.R0H:
        return np.flip(tile, axis=-1)
    if f is TransformId.R0V:
        return np.flip(tile, axis=-2)
    if f is TransformId.R90H:
        return np.flip(np.rot90(tile, 1, axes=(-2, -1)), axis=-1)
    if f is TransformId.R90V:
        return np.flip(np.rot90(tile, 1, axes=(-2, -1)), axis=-2)
    raise TypeError(f"not a TransformId: {f!r}")


def apply(f: TransformId, tile: np.ndarray) -> np.ndarray:
    """Apply transform ``f`` to a square tile, returning a C-contiguous copy."""
    return np.ascontiguousarray(orient(f, tile))


# Composition table: COMPOSE[f][g] is the single element h with
# apply(h, x) == apply(f, apply(g, x)) for every tile x.  Derived once from
# the coordinate maps above; tests rebuild it by brute force on a marker
# tile and compare.
_T = TransformId
COMPOSE: dict[TransformId, dict[TransformId, TransformId]] = {
    _T.R0: {
        _T.R0: _T.R0, _T.R90: _T.R90, _T.R180: _T.R180, _T.R270: _T.R270,
        _T.R0H: _T.R0H, _T.R0V: _T.R0V, _T.R90H: _T.R90H, _T.R90V: _T.R90V,
    },
    _T.R90: {
        _T.R0: _T.R90, _T.R90: _T.R180, _T.R180: _T.R270, _T.R270: _T.R0,
        _T.R0H: _T.R90V, _T.R0V: _T.R90H, _T.R90H: _T.R0H, _T.R90V: _T.R0V,
    },
    _T.R180: {
        _T.R0: _T.R180, _T.R90: _T.R270, _T.R180: _T.R0, _T.R270: _T.R90,
        _T.R0H: _T.R0V, _T.R0V: _T.R0H, _T.R90H: _T.R90V, _T.R90V: _T.R90H,
    },
    _T.R270: {
        _T.R0: _T.R270, _T.R90: _T.R0, _T.R180: _T.R90, _T.R270: _T.R180,
        _T.R0H: _T.R90H, _T.R0V: _T.R90V, _T.R90H: _T.R0V, _T.R90V: _T.R0H,
    },
    _T.R0H: {
        _T.R0: _T.R0H, _T.R90: _T.R90H, _T.R180: _T.R0V, _T.R270: _T.R90V,
        _T.R0H: _T.R0, _T.R0V: _T.R180, _T.R90H: _T.R90, _T.R90V: _T.R270,
    },
    _T.R0V: {
        _T.R0: _T.R0V, _T.R90: _T.R90V, _T.R180: _T.R0H, _T.R270: _T.R90H,
        _T.R0H: _T.R180, _T.R0V: _T.R0, _T.R90H: _T.R270, _T.R90V: _T.R90,
    },
    _T.R90H: {
        _T.R0: _T.R90H, _T.R90: _T.R0V, _T.R180: _T.R90V, _T.R270: _T.R0H,
        _T.R0H: _T.R270, _T.R0V: _T.R90, _T.R90H: _T.R0, _T.R90V: _T.R180,
    },
    _T.R90V: {
        _T.R0: _T.R90V, _T.R90: _T.R0H, _T.R180: _T.R90H, _T.R270: _T.R0V,
        _T.R0H: _T.R90, _T.R0V: _T.R270, _T.R90H: _T.R180, _T.R90V: _T.R0,
    },
}

# Rotations invert by angle negation; the four mirror elements are
# involutions.
INVERSE: dict[TransformId, TransformId] = {
    _T.R0: _T.R0, _T.R90: _T.R270, _T.R180: _T.R180, _T.R270: _T.R90,
    _T.R0H: _T.R0H, _T.R0V: _T.R0V, _T.R90H: _T.R90H, _T.R90V: _T.R90V,
}


def compose(f: TransformId, g: TransformId) -> TransformId:
    """Return ``h`` with ``apply(h, x) == apply(f, apply(g, x))``."""
    return COMPOSE[f][g]


def inverse(f: TransformId) -> TransformId:
    """Return the transform undoing ``f``: ``compose(inverse(f), f) == R0``."""
    return INVERSE[f]
