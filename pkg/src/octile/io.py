"""Bit-exact readers and writers for rasters and tile sets.

Rasters travel as v1.0 ``.npy`` array files (magic ``\\x93NUMPY``,
version ``\\x01\\x00``, little-endian u16 header length, ASCII header
dict, C-order payload) or as raw binary with a JSON sidecar at
``<path>.json`` giving ``{"shape": [...], "dtype": "u8|u16|f32|f64"}``.

Tile sets are stored either as a directory (``manifest.json`` plus one
``tile_XXXXXX.npy`` per tile) or as a single packed container:

    bytes 0..3    magic ``FNS1``
    bytes 4..7    u32 little-endian manifest length
    bytes 8..11   u32 little-endian payload length
    ...           manifest JSON (UTF-8)
    ...           tile payloads, raw C-order bytes in tile_id order

All writers are deterministic: equal inputs produce identical bytes.
"""

from __future__ import annotations

import ast
import struct
from pathlib import Path

import numpy as np

from .errors import (
    BadMagicError,
    CorruptionError,
    FortranOrderError,
    ShapeError,
    TruncatedPayloadError,
    UnsupportedDtypeError,
    UnsupportedVersionError,
    WriteError,
)
from .manifest import Manifest
from .pipeline import TileSet
from .raster import DTYPES, Raster, dtype_tag

NPY_MAGIC = b"\x93NUMPY"
PACK_MAGIC = b"FNS1"

_DESCR_BY_TAG = {"u8": "|u1", "u16": "<u2", "f32": "<f4", "f64": "<f8"}
_TAG_BY_DESCR = {descr: tag for tag, descr in _DESCR_BY_TAG.items()}


# ---------------------------------------------------------------------------
# .npy rasters


def _npy_header_bytes(dtype_str: str, shape: tuple[int, ...]) -> bytes:
    shape_repr = "(" + ", ".join(str(d) for d in shape) + ("," if len(shape) == 1 else "") + ")"
    header = (
        "{'descr': '" + dtype_str + "', 'fortran_order': False, "
        "'shape': " + shape_repr + ", }"
    )
    # pad with spaces so magic+version+len+header is 64-byte aligned,
    # terminated by newline
    base = len(NPY_MAGIC) + 2 + 2
    total = base + len(header) + 1
    padding = (64 - total % 64) % 64
    header = header + " " * padding + "\n"
    return (
        NPY_MAGIC
        + b"\x01\x00"
        + struct.pack("<H", len(header))
        + header.encode("ascii")
    )


def write_npy(path: str | Path, array: np.ndarray) -> None:
    """Write a C-contiguous array as a v1.0 ``.npy`` file."""
    tag = dtype_tag(array.dtype)
    data = np.ascontiguousarray(array)
    blob = _npy_header_bytes(_DESCR_BY_TAG[tag], data.shape) + data.tobytes()
    try:
        Path(path).write_bytes(blob)
    except OSError as exc:
        raise WriteError(f"cannot write {path}: {exc}") from exc


def read_npy(path: str | Path) -> np.ndarray:
    """Read a v1.0 ``.npy`` file holding one of the supported dtypes."""
    blob = Path(path).read_bytes()
    return _parse_npy(blob, name=str(path))


def _parse_npy(blob: bytes, name: str) -> np.ndarray:
    if len(blob) < 10 or blob[:6] != NPY_MAGIC:
        raise BadMagicError(f"{name}: not an .npy array file")
    version = blob[6:8]
    if version != b"\x01\x00":
        raise UnsupportedVersionError(
            f"{name}: unsupported .npy version {version[0]}.{version[1]}"
        )
    (header_len,) = struct.unpack("<H", blob[8:10])
    header_end = 10 + header_len
    if len(blob) < header_end:
        raise TruncatedPayloadError(f"{name}: truncated header")
    try:
        header = ast.literal_eval(blob[10:header_end].decode("ascii"))
        descr = header["descr"]
        fortran = header["fortran_order"]
        shape = tuple(header["shape"])
    except (ValueError, SyntaxError, KeyError, TypeError) as exc:
        raise BadMagicError(f"{name}: malformed .npy header: {exc}") from exc
    if fortran:
        raise FortranOrderError(
            f"{name}: Fortran-order payloads are not supported"
        )
    tag = _TAG_BY_DESCR.get(descr)
    if tag is None:
        raise UnsupportedDtypeError(f"{name}: unsupported dtype {descr!r}")
    dtype = DTYPES[tag]
    expected = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
    payload = blob[header_end:]
    if len(payload) != expected:
        raise TruncatedPayloadError(
            f"{name}: payload is {len(payload)} bytes, expected {expected}"
        )
    return np.frombuffer(payload, dtype=dtype).reshape(shape).copy()


def read_raster(path: str | Path) -> Raster:
    """Load a raster from an ``.npy`` file or raw binary with a sidecar.

    2-D inputs come back with a single channel.
    """
    path = Path(path)
    blob = path.read_bytes()
    if blob[:6] == NPY_MAGIC:
        array = _parse_npy(blob, name=str(path))
    else:
        array = _read_sidecar_raw(path, blob)
    if array.ndim not in (2, 3):
        raise ShapeError(
            f"{path}: expected 2 or 3 dimensions, got {array.ndim}"
        )
    return Raster.from_array(array)


def _read_sidecar_raw(path: Path, blob: bytes) -> np.ndarray:
    import json

    sidecar = path.with_name(path.name + ".json")
    if not sidecar.exists():
        raise BadMagicError(
            f"{path}: not an .npy file and no sidecar {sidecar.name} found"
        )
    try:
        meta = json.loads(sidecar.read_text())
        shape = tuple(int(d) for d in meta["shape"])
        tag = str(meta["dtype"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise BadMagicError(f"{sidecar}: malformed sidecar: {exc}") from exc
    if tag not in DTYPES:
        raise UnsupportedDtypeError(f"{sidecar}: unsupported dtype {tag!r}")
    dtype = DTYPES[tag]
    expected = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
    if len(blob) != expected:
        raise TruncatedPayloadError(
            f"{path}: payload is {len(blob)} bytes, expected {expected}"
        )
    return np.frombuffer(blob, dtype=dtype).reshape(shape).copy()


def write_raster(path: str | Path, raster: Raster) -> None:
    """Write a raster as a 3-D (C, H, W) ``.npy`` file."""
    write_npy(path, raster.data)


# ---------------------------------------------------------------------------
# tile sets


def write_tileset(tiles: TileSet, mode: str, path: str | Path) -> None:
    """Persist a tile set.

    ``mode`` is ``dir`` (``manifest.json`` + one file per tile) or
    ``packed`` (single container file).  On failure every partially
    written output is removed.
    """
    path = Path(path)
    if mode in ("dir", "directory"):
        _write_directory(tiles, path)
    elif mode == "packed":
        _write_packed(tiles, path)
    else:
        raise ValueError(f"unknown tileset mode {mode!r}")


def _write_directory(tiles: TileSet, path: Path) -> None:
    created_dir = not path.exists()
    written: list[Path] = []
    try:
        path.mkdir(parents=True, exist_ok=True)
        manifest_path = path / "manifest.json"
        manifest_path.write_text(tiles.manifest.to_json())
        written.append(manifest_path)
        for entry in tiles.manifest.tiles:
            tile_path = path / entry.location
            write_npy(tile_path, tiles.tiles[entry.tile_id])
            written.append(tile_path)
    except (OSError, WriteError) as exc:
        for p in written:
            p.unlink(missing_ok=True)
        if created_dir:
            try:
                path.rmdir()
            except OSError:
                pass
        if isinstance(exc, WriteError):
            raise
        raise WriteError(f"cannot write tileset to {path}: {exc}") from exc


def _write_packed(tiles: TileSet, path: Path) -> None:
    manifest_bytes = tiles.manifest.to_json().encode("utf-8")
    payload = np.ascontiguousarray(tiles.tiles)
    payload_len = payload.nbytes
    if len(manifest_bytes) > 0xFFFFFFFF or payload_len > 0xFFFFFFFF:
        raise WriteError(
            "packed tileset sections are limited to 4 GiB by the u32 "
            "header fields; use directory mode"
        )
    header = PACK_MAGIC + struct.pack("<II", len(manifest_bytes), payload_len)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "wb") as fh:
            fh.write(header)
            fh.write(manifest_bytes)
            fh.write(payload.tobytes())
        tmp.replace(path)
    except OSError as exc:
        tmp.unlink(missing_ok=True)
        raise WriteError(f"cannot write tileset to {path}: {exc}") from exc


def read_tileset(path: str | Path) -> TileSet:
    """Load a tile set written by :func:`write_tileset` (either mode)."""
    path = Path(path)
    if path.is_dir():
        return _read_directory(path)
    return _read_packed(path)


def _tile_shape(manifest: Manifest) -> tuple[int, int, int]:
    return (manifest.source_channels, manifest.tile_size, manifest.tile_size)


def _read_directory(path: Path) -> TileSet:
    manifest_path = path / "manifest.json"
    if not manifest_path.exists():
        raise CorruptionError(f"{path}: no manifest.json")
    manifest = Manifest.from_json(manifest_path.read_bytes())
    shape = _tile_shape(manifest)
    dtype = DTYPES[manifest.source_dtype]
    block = np.empty((len(manifest.tiles),) + shape, dtype=dtype)
    for entry in manifest.tiles:
        tile_path = path / entry.location
        if not tile_path.exists():
            raise CorruptionError(
                f"{path}: manifest references missing tile_id "
                f"{entry.tile_id} ({entry.location})"
            )
        tile = read_npy(tile_path)
        if tile.shape != shape or tile.dtype != dtype:
            raise CorruptionError(
                f"{tile_path}: tile_id {entry.tile_id} has shape "
                f"{tile.shape}/{tile.dtype}, manifest says {shape}/{dtype}"
            )
        block[entry.tile_id] = tile
    return TileSet(manifest, block)


def _read_packed(path: Path) -> TileSet:
    blob = path.read_bytes()
    if len(blob) < 12 or blob[:4] != PACK_MAGIC:
        raise CorruptionError(f"{path}: not a packed tileset (bad magic)")
    manifest_len, payload_len = struct.unpack("<II", blob[4:12])
    if len(blob) != 12 + manifest_len + payload_len:
        raise CorruptionError(
            f"{path}: length mismatch, header promises "
            f"{12 + manifest_len + payload_len} bytes but file has {len(blob)}"
        )
    manifest = Manifest.from_json(blob[12:12 + manifest_len])
    shape = _tile_shape(manifest)
    dtype = DTYPES[manifest.source_dtype]
    expected = len(manifest.tiles) * int(np.prod(shape)) * dtype.itemsize
    if payload_len != expected:
        raise CorruptionError(
            f"{path}: payload is {payload_len} bytes, manifest implies "
            f"{expected}"
        )
    block = (
        np.frombuffer(blob, dtype=dtype, count=expected // dtype.itemsize,
                      offset=12 + manifest_len)
        .reshape((len(manifest.tiles),) + shape)
        .copy()
    )
    return TileSet(manifest, block)
