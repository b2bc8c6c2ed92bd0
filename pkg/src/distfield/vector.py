"""Danielsson-style vector propagation (approximate Euclidean transform).

Instead of distances, each cell carries the unsigned offset
``(dy, dx)`` to the feature it currently believes is nearest.  Two
vertical sweeps, each with a forward and a backward pass per row, move
those offsets across the grid; a candidate replaces the current one
only when its squared length is strictly smaller.

The result is an upper bound on the exact squared distance.  It is
exact on most inputs but can be wrong where the discrete nearest-feature
region of a pixel is disconnected.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .grid import INF, BinaryImage, DistanceMap, Kind, init_distance_map


class DistCache:
    """Lazily filled table of ``a*a + b*b`` for offset pairs.

    Symmetric: computing ``(a, b)`` also stores ``(b, a)``.
    """

    def __init__(self, side: int):
        self.side = side
        self.table = np.full((side, side), -1, dtype=np.int64)

    @classmethod
    def for_shape(cls, rows: int, cols: int) -> "DistCache":
        # one spare slot: a neighbour's offset plus one step can reach max(M, L)
        return cls(max(rows, cols) + 1)

    def get(self, a: int, b: int) -> int:
        if not (0 <= a < self.side and 0 <= b < self.side):
            raise IndexError(f"offset ({a}, {b}) outside cache of side {self.side}")
        v = int(self.table[a, b])
        if v < 0:
            v = a * a + b * b
            self.table[a, b] = v
            self.table[b, a] = v
        return v


def dist_cached(cache: DistCache, a: int, b: int) -> int:
    return cache.get(a, b)


@dataclass(eq=False)
class OffsetMap:
    """Per-cell unsigned offsets to the claimed nearest feature."""

    dy: np.ndarray
    dx: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.dy.shape

    def is_infinite(self) -> np.ndarray:
        return self.dy == INF

    def pairs(self) -> list[list[tuple[int, int] | None]]:
        out = []
        for ry, rx in zip(self.dy.tolist(), self.dx.tolist()):
            out.append([None if y == INF else (y, x) for y, x in zip(ry, rx)])
        return out

    def to_text(self) -> str:
        lines = []
        for row in self.pairs():
            lines.append(" ".join("inf" if p is None else f"{p[0]},{p[1]}" for p in row))
        return "\n".join(lines) + "\n"

    def transpose(self) -> "OffsetMap":
        return OffsetMap(self.dx.T.copy(), self.dy.T.copy())


class DanielssonState:
    """Mutable working state: distances, offsets and the lookup cache."""

    def __init__(self, img: BinaryImage):
        self.dist = init_distance_map(img, Kind.SQUARED_EUCLIDEAN)
        self.dy = np.full(img.shape, INF, dtype=np.uint64)
        self.dx = np.full(img.shape, INF, dtype=np.uint64)
        self.dy[img.cells] = 0
        self.dx[img.cells] = 0
        self.cache = DistCache.for_shape(*img.shape)

    def sweep_down(self) -> "DanielssonState":
        _backend.kernels.danielsson_sweep(self.dist.values, self.dy, self.dx, self.cache.table, True)
        return self

    def sweep_up(self) -> "DanielssonState":
        _backend.kernels.danielsson_sweep(self.dist.values, self.dy, self.dx, self.cache.table, False)
        return self

    def offsets(self) -> OffsetMap:
        return OffsetMap(self.dy.copy(), self.dx.copy())


def danielsson(img: BinaryImage) -> tuple[DistanceMap, OffsetMap]:
    state = DanielssonState(img)
    if img.rows == 1:
        # neither sweep has a second row to start from
        _backend.kernels.danielsson_inrow(state.dist.values, state.dy, state.dx, state.cache.table, 0)
    else:
        state.sweep_down().sweep_up()
    return state.dist, state.offsets()
