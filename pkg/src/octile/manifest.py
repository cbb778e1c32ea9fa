"""Serializable description of a tile set.

The manifest records everything needed to audit or rebuild a tiling run:
the source raster's geometry, the strategy and edge policy, the
grid-to-transform table, and one entry per tile.  JSON output uses sorted
keys and no insignificant whitespace so written bytes are reproducible.

``location`` names each tile's payload: in directory mode it is the tile
file's name; in packed mode payloads are concatenated in ``tile_id``
order with a fixed record size, and the name is kept as a stable label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import CorruptionError

MANIFEST_VERSION = "1"


def tile_location(tile_id: int) -> str:
    return f"tile_{tile_id:06d}.npy"


@dataclass(frozen=True)
class TileEntry:
    tile_id: int
    grid_index: int
    row_offset: int
    col_offset: int
    transform: str
    location: str

    def to_dict(self) -> dict:
        return {
            "tile_id": self.tile_id,
            "grid_index": self.grid_index,
            "row_offset": self.row_offset,
            "col_offset": self.col_offset,
            "transform": self.transform,
            "location": self.location,
        }


@dataclass(frozen=True)
class Manifest:
    source_height: int
    source_width: int
    source_channels: int
    source_dtype: str
    tile_size: int
    strategy: str
    edge_policy: str
    transform_table: dict[int, str]
    tiles: tuple[TileEntry, ...]
    version: str = MANIFEST_VERSION

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "source": {
                "height": self.source_height,
                "width": self.source_width,
                "channels": self.source_channels,
                "dtype": self.source_dtype,
            },
            "tile_size": self.tile_size,
            "strategy": self.strategy,
            "edge_policy": self.edge_policy,
            "transform_table": {
                str(k): v for k, v in sorted(self.transform_table.items())
            },
            "tiles": [entry.to_dict() for entry in self.tiles],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: dict) -> "Manifest":
        try:
            source = doc["source"]
            tiles = tuple(
                TileEntry(
                    tile_id=int(e["tile_id"]),
                    grid_index=int(e["grid_index"]),
                    row_offset=int(e["row_offset"]),
                    col_offset=int(e["col_offset"]),
                    transform=str(e["transform"]),
                    location=str(e["location"]),
                )
                for e in doc["tiles"]
            )
            manifest = cls(
                source_height=int(source["height"]),
                source_width=int(source["width"]),
                source_channels=int(source["channels"]),
                source_dtype=str(source["dtype"]),
                tile_size=int(doc["tile_size"]),
                strategy=str(doc["strategy"]),
                edge_policy=str(doc["edge_policy"]),
                transform_table={
                    int(k): str(v) for k, v in doc["transform_table"].items()
                },
                tiles=tiles,
                version=str(doc["version"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptionError(f"malformed manifest: {exc}") from exc
        if manifest.version != MANIFEST_VERSION:
            raise CorruptionError(
                f"unsupported manifest version {manifest.version!r}"
            )
        for i, entry in enumerate(manifest.tiles):
            if entry.tile_id != i:
                raise CorruptionError(
                    f"tile entries out of order: position {i} has "
                    f"tile_id {entry.tile_id}"
                )
        return manifest

    @classmethod
    def from_json(cls, text: str | bytes) -> "Manifest":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CorruptionError(f"manifest is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)
