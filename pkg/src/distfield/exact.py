"""Exact squared-Euclidean distance transform.

The squared distance splits into a vertical and a horizontal term, so
the transform runs in two phases:

1. :func:`vertical_pass` finds, per cell, the squared distance to the
   nearest feature in the same column.
2. A row scanner combines those values along each row:
   ``D(i, j) = min_k V(i, k) + (j - k)**2``.

Three scanners are provided: :func:`row_scan_simple` (all pairs,
O(M L^2)), :func:`row_scan_improved` (early exit) and
:func:`meijster_scan` (lower envelope of parabolas, O(M L)).
:func:`brute_force_edt` is an independent all-pairs oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend, _parallel
from .grid import INF, BinaryImage, DistanceMap, GridError, Kind, init_distance_map

ALGORITHMS = ("bruteforce", "simple", "improved", "envelope")
ORIENTS = ("auto", "rows", "columns")


@dataclass(frozen=True)
class CostEstimate:
    """Pair count of the all-pairs method: every background pixel
    against every object pixel."""

    n_O: int
    n_B: int

    @property
    def n_c(self) -> int:
        return self.n_B * self.n_O

    @classmethod
    def of(cls, img: BinaryImage) -> "CostEstimate":
        n_o = img.n_objects
        return cls(n_o, img.rows * img.cols - n_o)


@dataclass
class EnvelopeState:
    """Lower envelope of one row.

    ``ks[t]`` is the vertex column of the t-th parabola kept and
    ``js[t]`` the first column it owns; segment t covers
    ``[js[t], js[t + 1])``.  Slot 0 always refers to column 0 and owns
    an empty range unless column 0 itself holds the nearest feature.
    """

    ks: list[int]
    js: list[int]

    @property
    def idx(self) -> int:
        return len(self.ks) - 1

    def segments(self) -> list[tuple[int, int, int]]:
        """Non-empty ``(k, start, stop)`` triples."""
        return [(k, a, b) for k, a, b in zip(self.ks, self.js, self.js[1:]) if a < b]


def intersection(k: int, dk: int, m: int, dm: int) -> tuple[int, int]:
    """Crossing of the parabolas with vertices ``(k, dk)`` and ``(m, dm)``,
    ``k < m``, as an exact fraction ``(numerator, denominator)``."""
    if not k < m:
        raise ValueError("need k < m")
    return dm - dk - k * k + m * m, 2 * (m - k)


def ceil_div(num: int, den: int) -> int:
    return -(-num // den)


def envelope_row(row, prefer_left: bool = False) -> EnvelopeState:
    """Envelope bookkeeping for one row of vertical distances.

    By default a later parabola takes over at the first column where it
    is no worse (ties go to the larger column); ``prefer_left=True``
    hands ties to the smaller column instead.
    """
    ks, js = _backend.kernels.envelope_state(np.asarray(row, dtype=np.uint64), prefer_left)
    return EnvelopeState(ks, js)


def brute_force_edt(img: BinaryImage, return_cost: bool = False):
    """Minimum over all features of the squared distance, cell by cell."""
    pts = np.argwhere(img.cells).astype(np.int64)
    out = np.full(img.shape, INF, dtype=np.uint64)
    if len(pts):
        ii, jj = np.indices(img.shape, dtype=np.int64)
        best = np.full(img.shape, np.iinfo(np.int64).max, dtype=np.int64)
        for chunk in np.array_split(pts, max(1, len(pts) // 256)):
            d = (ii[..., None] - chunk[:, 0]) ** 2 + (jj[..., None] - chunk[:, 1]) ** 2
            np.minimum(best, d.min(axis=-1), out=best)
        out = best.astype(np.uint64)
    dm = DistanceMap(out, Kind.SQUARED_EUCLIDEAN)
    cost = CostEstimate.of(img)
    dm.candidates = cost.n_c
    if return_cost:
        return dm, cost
    return dm


def _vertical_init(img: BinaryImage, track: bool):
    dm = init_distance_map(img, Kind.SQUARED_EUCLIDEAN)
    near = None
    if track:
        near = np.full(img.shape, -1, dtype=np.int64)
        rr = np.indices(img.shape)[0]
        near[img.cells] = rr[img.cells]
    return dm, near


def vertical_down(img: BinaryImage) -> DistanceMap:
    """Only the downward half of :func:`vertical_pass`."""
    dm, _ = _vertical_init(img, False)
    _backend.kernels.vertical_down(dm.values, 0, dm.cols)
    return dm


def vertical_pass(img: BinaryImage, threads: int | None = None, nearest_row: bool = False):
    """Squared distance to the nearest feature in the same column.

    Squares are built incrementally: walking away from a feature the
    step grows 1, 3, 5, ... so no multiplication is needed.  With
    ``nearest_row=True`` also returns the row of that feature per cell
    (``-1`` for empty columns); ties go to the upper feature.
    """
    dm, near = _vertical_init(img, nearest_row)

    def work(a, b):
        _backend.kernels.vertical_down(dm.values, a, b, near)
        _backend.kernels.vertical_up(dm.values, a, b, near)

    _parallel.run_chunks(work, dm.cols, threads)
    if nearest_row:
        return dm, near
    return dm


def _scan(vert: DistanceMap, fn, threads) -> DistanceMap:
    out = np.empty_like(vert.values)
    count = _parallel.run_chunks(lambda a, b: fn(vert.values, out, a, b), vert.rows, threads)
    return DistanceMap(out, Kind.SQUARED_EUCLIDEAN, count)


def row_scan_simple(vert: DistanceMap, threads: int | None = None) -> DistanceMap:
    return _scan(vert, _backend.kernels.scan_simple, threads)


def row_scan_improved(vert: DistanceMap, threads: int | None = None) -> DistanceMap:
    return _scan(vert, _backend.kernels.scan_improved, threads)


def meijster_scan(vert: DistanceMap, threads: int | None = None, prefer_left: bool = False):
    """Lower-envelope row scan.

    Returns the distance map and, per cell, the column whose parabola
    supplied the value (``-1`` when the row has no feature at all).
    """
    out = np.empty_like(vert.values)
    near = np.empty(vert.shape, dtype=np.int64)

    def work(a, b):
        return _backend.kernels.scan_envelope(vert.values, out, near, a, b, prefer_left)

    count = _parallel.run_chunks(work, vert.rows, threads)
    return DistanceMap(out, Kind.SQUARED_EUCLIDEAN, count), near


def _edt_rows(img: BinaryImage, algorithm: str, threads) -> DistanceMap:
    if algorithm == "bruteforce":
        return brute_force_edt(img)
    vert = vertical_pass(img, threads)
    if algorithm == "simple":
        return row_scan_simple(vert, threads)
    if algorithm == "improved":
        return row_scan_improved(vert, threads)
    return meijster_scan(vert, threads)[0]


def edt(img: BinaryImage, algorithm: str = "envelope", orient: str = "auto",
        threads: int | None = None) -> DistanceMap:
    """Exact squared-Euclidean transform with a selectable row scanner.

    ``orient="columns"`` runs the same pipeline on the transposed image.
    ``auto`` picks that whenever it makes a quadratic scanner cheaper
    (fewer rows than columns); the envelope scanner is linear either
    way and always runs on rows.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    if orient not in ORIENTS:
        raise ValueError(f"unknown orientation {orient!r}; choose from {', '.join(ORIENTS)}")
    transpose = orient == "columns" or (
        orient == "auto" and algorithm in ("simple", "improved") and img.rows < img.cols
    )
    if transpose:
        return _edt_rows(img.transpose(), algorithm, threads).transpose()
    return _edt_rows(img, algorithm, threads)


def voronoi_labels(img: BinaryImage, threads: int | None = None) -> np.ndarray:
    """Id of the nearest feature for every cell.

    Ids follow :meth:`BinaryImage.features`.  Among equally near
    features the one in the smaller column wins, then the one in the
    smaller row.
    """
    feats = img.features()
    if not feats:
        raise GridError("no features: cannot label an image without object pixels")
    vert, near_row = vertical_pass(img, threads, nearest_row=True)
    _, near_col = meijster_scan(vert, threads, prefer_left=True)
    ids = np.zeros(img.shape, dtype=np.int64)
    for f in feats:
        ids[f.row, f.col] = f.id
    rows = np.take_along_axis(near_row, near_col, axis=1)
    return ids[rows, near_col]
