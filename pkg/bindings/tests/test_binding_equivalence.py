"""Acceptance: facade output is bit-identical to the native engine, and
to the file-based CLI, across dtypes and edge policies."""

import io
import json
from contextlib import redirect_stdout

import numpy as np

import octile_arrays as oa
from octile.cli import main
from octile.geometry import EdgePolicy, Strategy
from octile.io import read_tileset, write_npy
from octile.pipeline import tile_image
from octile.raster import DTYPES, Raster


def random_array(rng, dtype):
    channels = int(rng.integers(1, 4))
    h = int(rng.integers(64, 160))
    w = int(rng.integers(64, 160))
    raw = rng.random((channels, h, w))
    if np.issubdtype(dtype, np.integer):
        return (raw * np.iinfo(dtype).max).astype(dtype)
    return raw.astype(dtype)


def test_binding_equivalence_corpus():
    """20 randomized inputs spanning all dtypes and both edge policies:
    exact byte equality with the native pipeline."""
    rng = np.random.default_rng(4242)
    dtypes = list(DTYPES.values())
    edges = ["interior", "pad"]
    for case in range(20):
        dtype = dtypes[case % len(dtypes)]
        edge = edges[case % 2]
        array = random_array(rng, dtype)
        t = int(rng.choice([16, 32]))

        bound = oa.tile(array, t, strategy="flipnslide", edge=edge)
        native = tile_image(
            Raster(np.ascontiguousarray(array)),
            t,
            Strategy.FLIP_N_SLIDE,
            EdgePolicy(edge),
        )
        assert bound.tiles.tobytes() == native.tiles.tobytes(), (case, dtype)
        assert bound.manifest == native.manifest.to_dict(), (case, dtype)
        assert bound.tiles.shape == native.tiles.shape
    print("ACCEPTANCE binding-equivalence: PASS", flush=True)


def test_facade_matches_file_based_cli(tmp_path):
    """The in-memory path and the CLI's file path agree byte for byte."""
    rng = np.random.default_rng(7)
    array = rng.integers(0, 255, (1, 256, 256), dtype=np.uint8)
    source_path = tmp_path / "img.npy"
    write_npy(source_path, array)
    packed = tmp_path / "tiles.fns"

    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main([
            "tile", "--input", str(source_path), "--output", str(packed),
            "--tile-size", "64", "--strategy", "flipnslide", "--edge", "pad",
            "--format", "packed",
        ])
    assert code == 0
    from_cli = read_tileset(packed)

    bound = oa.tile(array, 64, strategy="flipnslide", edge="pad")
    assert bound.tiles.tobytes() == from_cli.tiles.tobytes()
    assert bound.manifest == from_cli.manifest.to_dict()
    assert json.loads(buffer.getvalue())["tile_count"] == len(bound.tiles)
