"""Command-line front end.

Subcommands: ``transform``, ``chart``, ``labels`` and ``bench``.  Run
``distfield <command> --help`` for the flags of each.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _backend, exact, metrics, propagation, vector
from .grid import (
    BinaryImage,
    GrayImage,
    GridError,
    format_matrix,
    from_points,
    generate_random_image,
    read_points,
    to_gray,
)
from .netpbm import NetpbmError, read_netpbm, write_netpbm

METRIC_ALGORITHMS = {
    "euclidean": ("envelope", "simple", "improved", "bruteforce", "danielsson"),
    "cityblock": ("sequential", "separable"),
    "chamfer34": ("sequential",),
    "chessboard": ("sequential",),
}
BENCH_ALGORITHMS = exact.ALGORITHMS + ("danielsson", "cityblock", "chamfer34")
CSV_HEADER = ["cells", "algorithm", "size", "rep", "wall_ns", "candidates"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: str | None = None
    points_file: str | None = None
    size: tuple[int, int] | None = None
    metric: str = "euclidean"
    algorithm: str | None = None
    orient: str = "auto"
    polarity: str = "outside"
    dump: str | None = None
    sqrt: bool = False
    gray: str | None = None
    gray_mode: str | None = None
    plain: bool = False
    labels: str | None = None
    labels_dump: str | None = None
    offsets: str | None = None
    threads: int | None = None
    warnings: list[str] = field(default_factory=list)

    def validate(self):
        if (self.input is None) == (self.points_file is None):
            raise UsageError("give exactly one of an input PBM or --points-file")
        if self.points_file is not None and self.size is None:
            raise UsageError("--points-file needs --size ROWSxCOLS")
        allowed = METRIC_ALGORITHMS[self.metric]
        if self.algorithm is None:
            self.algorithm = allowed[0]
        if self.algorithm not in allowed:
            raise UsageError(
                f"algorithm {self.algorithm!r} does not apply to metric {self.metric!r} "
                f"(choose from {', '.join(allowed)})")
        if self.offsets and self.algorithm != "danielsson":
            raise UsageError("--offsets requires --algorithm danielsson")
        if (self.labels or self.labels_dump) and self.metric != "euclidean":
            raise UsageError("--labels requires --metric euclidean")
        if self.sqrt and self.metric != "euclidean":
            raise UsageError("--sqrt applies to squared-Euclidean maps only")
        if not any((self.dump, self.gray, self.labels, self.labels_dump, self.offsets)):
            raise UsageError("no output requested (use --dump, --gray, --labels or --offsets)")


def parse_size(text: str) -> tuple[int, int]:
    try:
        r, c = text.lower().split("x")
        rows, cols = int(r), int(c)
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like 9x10, got {text!r}") from None
    if rows < 1 or cols < 1:
        raise argparse.ArgumentTypeError("size must be at least 1x1")
    return rows, cols


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: str, data: bytes | str):
    if isinstance(data, str):
        data = data.encode()
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def load_image(cfg: RunConfig) -> BinaryImage:
    if cfg.points_file is not None:
        text = _read_bytes(cfg.points_file).decode()
        img = from_points(cfg.size[0], cfg.size[1], read_points(text))
    else:
        img = read_netpbm(_read_bytes(cfg.input))
        if not isinstance(img, BinaryImage):
            raise GridError(f"{cfg.input}: expected a bitmap (P1/P4), got a graymap")
    if cfg.polarity == "inside":
        img = img.invert()
    return img


def label_gray(labels: np.ndarray, n_features: int) -> GrayImage:
    return GrayImage(np.floor(labels * 255.0 / n_features + 0.5))


def run(cfg: RunConfig) -> int:
    cfg.validate()
    img = load_image(cfg)
    if img.n_objects == 0:
        cfg.warnings.append("no features: every distance is inf")

    offsets = None
    if cfg.metric == "euclidean":
        if cfg.algorithm == "danielsson":
            dm, offsets = vector.danielsson(img)
        else:
            dm = exact.edt(img, cfg.algorithm, cfg.orient, cfg.threads)
    elif cfg.metric == "cityblock":
        if cfg.algorithm == "separable":
            dm = propagation.cityblock_separable(img, cfg.threads)
        else:
            dm = propagation.cityblock_sequential(img)
    elif cfg.metric == "chamfer34":
        dm = propagation.chamfer34(img)
    else:
        dm = propagation.chessboard(img)

    if cfg.dump:
        _write(cfg.dump, dm.to_text(sqrt=cfg.sqrt))
    if cfg.offsets:
        _write(cfg.offsets, offsets.to_text())
    if cfg.gray:
        if img.n_objects == 0:
            cfg.warnings.append(f"no features: skipped {cfg.gray}")
        else:
            mode = cfg.gray_mode or ("sqrt-linear" if cfg.metric == "euclidean" else "linear")
            _write(cfg.gray, write_netpbm(to_gray(dm, mode), "P2" if cfg.plain else "P5"))
    if cfg.labels or cfg.labels_dump:
        write_labels(img, cfg)
    return 0


def write_labels(img: BinaryImage, cfg: RunConfig):
    if img.n_objects == 0:
        cfg.warnings.append("no features: label outputs skipped")
        return
    labels = exact.voronoi_labels(img, cfg.threads)
    if cfg.labels_dump:
        _write(cfg.labels_dump, format_matrix(labels))
    if cfg.labels:
        gray = label_gray(labels, img.n_objects)
        _write(cfg.labels, write_netpbm(gray, "P2" if cfg.plain else "P5"))


def run_chart(args) -> int:
    spec = metrics.MetricSpec.named(args.metric)
    if args.radius is not None:
        chart = metrics.reference_chart(spec, args.radius, args.squared, decimals=args.decimals)
    else:
        chart = metrics.reference_chart(spec, squared=args.squared, extents=args.extents,
                                        decimals=args.decimals)
    lines = []
    for row in chart.tolist():
        cells = []
        for v in row:
            if args.decimals is not None:
                v = round(v, args.decimals)
            cells.append(str(int(v)) if float(v).is_integer() else repr(v))
        lines.append(" ".join(cells))
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _bench_one(img: BinaryImage, algorithm: str):
    if algorithm in exact.ALGORITHMS:
        dm = exact.edt(img, algorithm, orient="rows")
        return dm.candidates
    if algorithm == "danielsson":
        vector.danielsson(img)
    elif algorithm == "cityblock":
        propagation.cityblock_sequential(img)
    else:
        propagation.chamfer34(img)
    return None


def bench_rows(sizes, density, algorithms, reps, seed, backend="auto"):
    """Yield one CSV record per (algorithm, size, rep)."""
    with _backend.use(backend):
        for size in sizes:
            for rep in range(reps):
                img = generate_random_image(size, size, density, seed + rep)
                for algorithm in algorithms:
                    t0 = time.perf_counter_ns()
                    cand = _bench_one(img, algorithm)
                    wall = time.perf_counter_ns() - t0
                    yield {
                        "cells": size * size,
                        "algorithm": algorithm,
                        "size": size,
                        "rep": rep,
                        "wall_ns": wall,
                        "candidates": "" if cand is None else cand,
                    }


def run_bench(args) -> int:
    for a in args.algorithms:
        if a not in BENCH_ALGORITHMS:
            raise UsageError(f"unknown bench algorithm {a!r} (choose from {', '.join(BENCH_ALGORITHMS)})")
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=CSV_HEADER, lineterminator="\n")
        writer.writeheader()
        for rec in bench_rows(args.sizes, args.density, args.algorithms, args.reps,
                              args.seed, args.backend):
            writer.writerow(rec)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _add_input(p):
    p.add_argument("input", nargs="?", help="input bitmap (P1/P4); '-' reads stdin")
    p.add_argument("--points-file", help="text file with one 0-based 'row col' pair per line")
    p.add_argument("--size", type=parse_size, help="grid size ROWSxCOLS for --points-file")
    p.add_argument("--polarity", choices=("outside", "inside"), default="outside",
                   help="outside: background-to-object distances; inside: invert first")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads for separable phases (default: $DISTFIELD_THREADS or 1)")
    p.add_argument("--plain", action="store_true", help="write plain P2 instead of raw P5")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distfield", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="distance transform of a bitmap or point list")
    _add_input(t)
    t.add_argument("--metric", choices=tuple(METRIC_ALGORITHMS), default="euclidean")
    t.add_argument("--algorithm", help="euclidean: envelope|simple|improved|bruteforce|danielsson; "
                                       "cityblock: sequential|separable")
    t.add_argument("--orient", choices=exact.ORIENTS, default="auto")
    t.add_argument("--dump", help="plain-text matrix output ('-' for stdout)")
    t.add_argument("--sqrt", action="store_true", help="dump real distances instead of squared")
    t.add_argument("--gray", help="grayscale PGM rendering of the distances")
    t.add_argument("--gray-mode", choices=("linear", "sqrt-linear"))
    t.add_argument("--labels", help="Voronoi label PGM (euclidean only)")
    t.add_argument("--labels-dump", help="raw label ids as a text matrix")
    t.add_argument("--offsets", help="danielsson offsets as 'dy,dx' per cell")

    c = sub.add_parser("chart", help="distance chart around a centre pixel")
    c.add_argument("--metric", default="euclidean", choices=tuple(metrics.NAMED))
    c.add_argument("--radius", type=int, help="square window of side 2*radius+1")
    c.add_argument("--extents", type=parse_int_list, default=list(metrics.CHART_WINDOW),
                   help="top,bottom,left,right around the centre (default 4,4,4,5)")
    c.add_argument("--squared", action="store_true")
    c.add_argument("--decimals", type=int, default=None)
    c.add_argument("--out", default="-")

    lab = sub.add_parser("labels", help="nearest-feature (Voronoi) labels")
    _add_input(lab)
    lab.add_argument("--out", help="label PGM")
    lab.add_argument("--dump", help="raw label ids as a text matrix")

    b = sub.add_parser("bench", help="time algorithms on random images, CSV output")
    b.add_argument("--sizes", type=parse_int_list, default=[64, 128, 256])
    b.add_argument("--density", type=float, default=0.02)
    b.add_argument("--algorithms", type=lambda s: s.split(","), default=["simple", "envelope"])
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
    b.add_argument("--out", default="-")
    return parser


def _config(args) -> RunConfig:
    common = dict(input=args.input, points_file=args.points_file, size=args.size,
                  polarity=args.polarity, threads=args.threads, plain=args.plain)
    if args.command == "labels":
        return RunConfig(metric="euclidean", labels=args.out, labels_dump=args.dump, **common)
    return RunConfig(metric=args.metric, algorithm=args.algorithm, orient=args.orient,
                     dump=args.dump, sqrt=args.sqrt, gray=args.gray, gray_mode=args.gray_mode,
                     labels=args.labels, labels_dump=args.labels_dump, offsets=args.offsets,
                     **common)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "chart":
            return run_chart(args)
        if args.command == "bench":
            return run_bench(args)
        cfg = _config(args)
        if args.command == "labels":
            cfg.validate()
            img = load_image(cfg)
            write_labels(img, cfg)
        else:
            run(cfg)
        for w in cfg.warnings:
            print(f"distfield: warning: {w}", file=sys.stderr)
        return 0
    except UsageError as exc:
        print(f"distfield: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, NetpbmError, GridError, ValueError) as exc:
        print(f"distfield: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
