"""Command-line interface.

Subcommands: ``tile``, ``coverage``, ``bench``, ``reconstruct``,
``inspect``.  Machine-readable results go to stdout (one JSON line, or
CSV for ``bench``); diagnostics go to stderr; exit code is 0 only on
success.  ``FNS_THREADS`` is honored when ``--threads`` is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import bench as bench_mod
from . import coverage as coverage_mod
from . import io as io_mod
from .errors import OctileError
from .geometry import EdgePolicy, Strategy, windows
from .pipeline import reconstruct, tile_image, transform_for

STRATEGIES = {s.value: s for s in Strategy}
EDGES = {e.value: e for e in EdgePolicy}


def _tile_size_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 4 or value % 4 != 0:
        raise argparse.ArgumentTypeError(
            f"tile size must be >= 4 and divisible by 4, got {value}"
        )
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _resolve_threads(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("FNS_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            value = 0
        if value >= 1:
            return value
        print(f"warning: ignoring invalid FNS_THREADS={env!r}",
              file=sys.stderr)
    return os.cpu_count() or 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tile-size", type=_tile_size_arg, default=256,
                        help="square tile side length (default 256)")
    parser.add_argument("--strategy", choices=sorted(STRATEGIES),
                        default="flipnslide",
                        help="tiling strategy (default flipnslide)")
    parser.add_argument("--edge", choices=sorted(EDGES), default="interior",
                        help="edge policy (default interior)")
    parser.add_argument("--threads", type=_positive_int, default=None,
                        help="worker thread cap (default: all cores, "
                             "or FNS_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octile",
        description="Tile large rasters with overlapping offset grids and "
                    "per-grid square-symmetry transforms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tile", help="tile a raster and write a tileset")
    _add_common(p)
    p.add_argument("--input", required=True, help="source raster (.npy)")
    p.add_argument("--output", required=True, help="tileset destination")
    p.add_argument("--format", choices=["dir", "packed"], default="dir",
                   help="tileset layout (default dir)")
    p.add_argument("--emit-coverage-map", action="store_true",
                   help="also write a false-color coverage map")

    p = sub.add_parser("coverage",
                       help="write an overlap map and redundancy report")
    _add_common(p)
    p.add_argument("--input", required=True, help="source raster (.npy)")
    p.add_argument("--output", required=True, help="output directory")

    p = sub.add_parser("bench", help="print a timing matrix as CSV")
    p.add_argument("--image-size", type=_positive_int,
                   default=bench_mod.DEFAULT_IMAGE_SIZE)
    p.add_argument("--tile-sizes", type=_tile_size_arg, nargs="+",
                   default=list(bench_mod.DEFAULT_TILE_SIZES))
    p.add_argument("--strategies", choices=sorted(STRATEGIES), nargs="+",
                   default=[s.value for s in Strategy])
    p.add_argument("--reps", type=_positive_int, default=bench_mod.DEFAULT_REPS)
    p.add_argument("--threads", type=_positive_int, default=None)

    p = sub.add_parser("reconstruct",
                       help="rebuild the source raster from a tileset")
    p.add_argument("--input", required=True, help="tileset path")
    p.add_argument("--output", required=True, help="raster destination (.npy)")

    p = sub.add_parser("inspect", help="print a tileset summary")
    p.add_argument("--input", required=True, help="tileset path")

    return parser


def _cmd_tile(args: argparse.Namespace) -> int:
    threads = _resolve_threads(args.threads)
    source = io_mod.read_raster(args.input)
    start = time.perf_counter()
    tiles = tile_image(
        source,
        args.tile_size,
        STRATEGIES[args.strategy],
        EDGES[args.edge],
        threads=threads,
    )
    elapsed = time.perf_counter() - start
    io_mod.write_tileset(tiles, args.format, args.output)
    if args.emit_coverage_map:
        specs = [record.window for record in tiles.records]
        cmap = coverage_mod.coverage_map(source.height, source.width, specs)
        out = Path(args.output)
        map_path = (out / "coverage.ppm" if args.format == "dir"
                    else out.with_name(out.name + ".coverage.ppm"))
        coverage_mod.emit_overlap_image(cmap, map_path)
    print(json.dumps(
        {
            "tile_count": len(tiles),
            "elapsed_s": round(elapsed, 6),
            "output": str(args.output),
        },
        sort_keys=True,
    ))
    return 0


def _cmd_coverage(args: argparse.Namespace) -> int:
    source = io_mod.read_raster(args.input)
    strategy = STRATEGIES[args.strategy]
    edge = EDGES[args.edge]
    specs = windows(source.height, source.width, args.tile_size, strategy, edge)
    cmap = coverage_mod.coverage_map(source.height, source.width, specs)
    entries = [(s, transform_for(strategy, s.grid_index)) for s in specs]
    report = coverage_mod.schedule_redundancy(entries)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    coverage_mod.emit_overlap_image(cmap, out / "coverage.ppm")
    (out / "redundancy.json").write_text(
        json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":"))
    )
    print(json.dumps(
        {
            "max_count": cmap.max_count,
            "overlapping_pairs": report.overlapping_pairs,
            "same_transform_overlapping_pairs":
                report.same_transform_overlapping_pairs,
            "windows": len(specs),
        },
        sort_keys=True,
    ))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.image_size % max(args.tile_sizes) != 0:
        print(
            f"error[usage]: image size {args.image_size} must be divisible "
            f"by the largest tile size {max(args.tile_sizes)}",
            file=sys.stderr,
        )
        return 2
    results = bench_mod.run_matrix(
        image_size=args.image_size,
        tile_sizes=tuple(args.tile_sizes),
        strategies=tuple(STRATEGIES[s] for s in args.strategies),
        reps=args.reps,
        threads=args.threads,
    )
    for line in bench_mod.csv_lines(results):
        print(line)
    return 0


def _cmd_reconstruct(args: argparse.Namespace) -> int:
    tiles = io_mod.read_tileset(args.input)
    restored = reconstruct(tiles)
    io_mod.write_raster(args.output, restored)
    print(json.dumps(
        {
            "height": restored.height,
            "width": restored.width,
            "channels": restored.channels,
            "output": str(args.output),
        },
        sort_keys=True,
    ))
    return 0


def _cmd_inspect(args: argparse.Namespace) -> int:
    tiles = io_mod.read_tileset(args.input)
    m = tiles.manifest
    print(json.dumps(
        {
            "strategy": m.strategy,
            "edge_policy": m.edge_policy,
            "grids": len(m.transform_table),
            "tile_count": len(m.tiles),
            "tile_size": m.tile_size,
            "source": {
                "height": m.source_height,
                "width": m.source_width,
                "channels": m.source_channels,
                "dtype": m.source_dtype,
            },
            "version": m.version,
        },
        sort_keys=True,
    ))
    return 0


_COMMANDS = {
    "tile": _cmd_tile,
    "coverage": _cmd_coverage,
    "bench": _cmd_bench,
    "reconstruct": _cmd_reconstruct,
    "inspect": _cmd_inspect,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except OctileError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
