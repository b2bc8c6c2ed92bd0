"""Value-propagation transforms: city-block and chamfer 3-4.

Each full transform is a fixed sequence of passes.  The passes are
exported on their own so intermediate states can be inspected.
"""
from __future__ import annotations

import numpy as np

from . import _backend, _parallel
from .grid import BinaryImage, DistanceMap, Kind, init_distance_map

CHAMFER_STRAIGHT = 3
CHAMFER_DIAGONAL = 4


def cityblock_forward(dm: DistanceMap) -> DistanceMap:
    """Top-left to bottom-right raster pass over the left and top neighbours."""
    _backend.kernels.mask_forward(dm.values, 1, 0)
    return dm


def cityblock_backward(dm: DistanceMap) -> DistanceMap:
    _backend.kernels.mask_backward(dm.values, 1, 0)
    return dm


def cityblock_sequential(img: BinaryImage) -> DistanceMap:
    dm = init_distance_map(img, Kind.CITYBLOCK)
    return cityblock_backward(cityblock_forward(dm))


def cityblock_vertical(dm: DistanceMap, threads: int | None = None) -> DistanceMap:
    """Down then up pass in every column; columns are independent."""
    _parallel.run_chunks(lambda a, b: _backend.kernels.unit_columns(dm.values, a, b), dm.cols, threads)
    return dm


def cityblock_horizontal(dm: DistanceMap, threads: int | None = None) -> DistanceMap:
    _parallel.run_chunks(lambda a, b: _backend.kernels.unit_rows(dm.values, a, b), dm.rows, threads)
    return dm


def cityblock_separable(img: BinaryImage, threads: int | None = None) -> DistanceMap:
    """Same map as :func:`cityblock_sequential`, built from four 1-D scans."""
    dm = init_distance_map(img, Kind.CITYBLOCK)
    cityblock_vertical(dm, threads)
    return cityblock_horizontal(dm, threads)


def chamfer_forward(dm: DistanceMap) -> DistanceMap:
    _backend.kernels.mask_forward(dm.values, CHAMFER_STRAIGHT, CHAMFER_DIAGONAL)
    return dm


def chamfer_backward(dm: DistanceMap) -> DistanceMap:
    _backend.kernels.mask_backward(dm.values, CHAMFER_STRAIGHT, CHAMFER_DIAGONAL)
    return dm


def chamfer34(img: BinaryImage) -> DistanceMap:
    """Chamfer 3-4 transform; values are in thirds of a pixel step."""
    dm = init_distance_map(img, Kind.CHAMFER)
    return chamfer_backward(chamfer_forward(dm))


def chessboard(img: BinaryImage) -> DistanceMap:
    # a unit 8-neighbour mask is exact for the chessboard metric
    dm = init_distance_map(img, Kind.CHESSBOARD)
    _backend.kernels.mask_forward(dm.values, 1, 1)
    _backend.kernels.mask_backward(dm.values, 1, 1)
    return dm


def chamfer_normalized(dm: DistanceMap, decimals: int | None = 1) -> np.ndarray:
    """``(d / 3) ** 2`` per cell, i.e. a chamfer map in squared pixel units.

    Unreached cells become ``inf``.  Pass ``decimals=None`` for unrounded
    values.
    """
    if dm.kind is not Kind.CHAMFER:
        raise ValueError(f"expected a {Kind.CHAMFER.value} map, got {dm.kind.value}")
    out = (dm.values.astype(np.float64) / 3.0) ** 2
    out[dm.is_infinite()] = np.inf
    if decimals is not None:
        out = np.round(out, decimals)
    return out
