"""Grid types shared by every transform.

All coordinates are 0-based ``(row, col)``.  Distance values live in
``uint64`` arrays; cells that no feature has reached hold :data:`INF`,
the largest representable value, which never leaks into arithmetic
(kernels test for it before adding a step).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

INF = np.iinfo(np.uint64).max
DTYPE = np.uint64


class Kind(str, enum.Enum):
    CITYBLOCK = "cityblock"
    CHESSBOARD = "chessboard"
    CHAMFER = "chamfer-scaled-by-3"
    SQUARED_EUCLIDEAN = "squared-euclidean"

    def bound(self, rows: int, cols: int) -> int:
        """Largest finite value a transform of this kind can produce."""
        h, w = rows - 1, cols - 1
        if self is Kind.CITYBLOCK:
            return h + w
        if self is Kind.CHESSBOARD:
            return max(h, w)
        if self is Kind.CHAMFER:
            return 4 * (h + w)
        return h * h + w * w


class GridError(ValueError):
    pass


def is_infinite(values):
    """Elementwise test for the "no feature reached" marker."""
    return np.asarray(values) == INF


@dataclass(frozen=True)
class FeaturePoint:
    row: int
    col: int
    id: int


class BinaryImage:
    """M x L object/background grid; ``True`` marks an object pixel.

    Feature ids are 1-based ordinals.  Images built with
    :func:`from_points` number features in the order the points were
    given (first occurrence wins); all other images number them in
    row-major order.
    """

    def __init__(self, cells, order: Sequence[tuple[int, int]] | None = None):
        cells = np.array(cells, dtype=bool)
        if cells.ndim != 2 or cells.shape[0] < 1 or cells.shape[1] < 1:
            raise GridError(f"expected a non-empty 2-D grid, got shape {cells.shape}")
        cells.setflags(write=False)
        self._cells = cells
        self._order = None if order is None else tuple(order)

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def rows(self) -> int:
        return self._cells.shape[0]

    @property
    def cols(self) -> int:
        return self._cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._cells.shape

    @property
    def n_objects(self) -> int:
        return int(self._cells.sum())

    def features(self) -> list[FeaturePoint]:
        if self._order is not None:
            pts = self._order
        else:
            pts = [tuple(p) for p in np.argwhere(self._cells).tolist()]
        return [FeaturePoint(r, c, n) for n, (r, c) in enumerate(pts, start=1)]

    def invert(self) -> "BinaryImage":
        return BinaryImage(~self._cells)

    def transpose(self) -> "BinaryImage":
        order = None
        if self._order is not None:
            order = [(c, r) for r, c in self._order]
        return BinaryImage(self._cells.T, order)

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._cells, other._cells))

    def __repr__(self):
        return f"BinaryImage({self.rows}x{self.cols}, objects={self.n_objects})"


@dataclass(eq=False)
class DistanceMap:
    values: np.ndarray
    kind: Kind
    # candidate evaluations spent by the producing algorithm, when instrumented
    candidates: int | None = field(default=None, compare=False)

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=DTYPE)
        self.kind = Kind(self.kind)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def is_infinite(self) -> np.ndarray:
        return self.values == INF

    def finite_max(self) -> int | None:
        finite = self.values[~self.is_infinite()]
        return int(finite.max()) if finite.size else None

    def transpose(self) -> "DistanceMap":
        return DistanceMap(self.values.T.copy(), self.kind, self.candidates)

    def to_list(self) -> list[list[int | None]]:
        """Nested lists with ``None`` in place of the sentinel."""
        return [[None if v == INF else v for v in row] for row in self.values.tolist()]

    def to_text(self, sqrt: bool = False) -> str:
        return format_matrix(self.values, sqrt=sqrt)

    def __eq__(self, other):
        if not isinstance(other, DistanceMap):
            return NotImplemented
        return self.kind == other.kind and bool(np.array_equal(self.values, other.values))


@dataclass
class GrayImage:
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 2:
            raise GridError("gray image must be 2-D")
        if values.size and (values.min() < 0 or values.max() > 255):
            raise GridError("gray values must lie in [0, 255]")
        self.values = values.astype(np.uint8)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))


def from_points(rows: int, cols: int, points: Iterable[tuple[int, int]]) -> BinaryImage:
    if rows < 1 or cols < 1:
        raise GridError(f"grid must be at least 1x1, got {rows}x{cols}")
    cells = np.zeros((rows, cols), dtype=bool)
    order = []
    for r, c in points:
        r, c = int(r), int(c)
        if not (0 <= r < rows and 0 <= c < cols):
            raise GridError(f"point ({r}, {c}) lies outside the {rows}x{cols} grid")
        if not cells[r, c]:
            cells[r, c] = True
            order.append((r, c))
    return BinaryImage(cells, order)


def init_distance_map(img: BinaryImage, kind: Kind | str) -> DistanceMap:
    """Zero on object pixels, :data:`INF` everywhere else."""
    values = np.full(img.shape, INF, dtype=DTYPE)
    values[img.cells] = 0
    return DistanceMap(values, Kind(kind))


def to_gray(dm: DistanceMap, mode: str = "linear") -> GrayImage:
    """Scale a distance map onto 0..255 so that 0 stays black and the
    largest finite distance becomes white.

    ``sqrt-linear`` takes the square root first, which is what you want
    for squared-Euclidean maps.
    """
    if mode not in ("linear", "sqrt-linear"):
        raise ValueError(f"unknown gray mode {mode!r}")
    inf = dm.is_infinite()
    if inf.all():
        raise GridError("no features: distance map holds no finite value")
    vals = dm.values.astype(np.float64)
    if mode == "sqrt-linear":
        vals = np.sqrt(vals)
    top = vals[~inf].max()
    if top == 0:
        return GrayImage(np.zeros(dm.shape, dtype=np.uint8))
    gray = np.floor(255.0 * vals / top + 0.5)
    gray[inf] = 255
    return GrayImage(gray.astype(np.uint8))


def format_matrix(values, sqrt: bool = False) -> str:
    """Plain-text dump: space separated decimals, ``inf`` for the sentinel."""
    lines = []
    for row in np.asarray(values).tolist():
        cells = []
        for v in row:
            if v == INF:
                cells.append("inf")
            elif sqrt:
                cells.append(f"{math.sqrt(v):.6g}")
            else:
                cells.append(str(v))
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    """Inverse of :func:`format_matrix` for integer dumps."""
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        rows.append([INF if tok == "inf" else int(tok) for tok in line.split()])
    return np.array(rows, dtype=DTYPE)


def read_points(text: str) -> list[tuple[int, int]]:
    """Parse a point list: one ``row col`` pair per line, ``#`` comments."""
    points = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GridError(f"line {lineno}: expected 'row col', got {line!r}")
        try:
            points.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GridError(f"line {lineno}: non-integer coordinate in {line!r}") from None
    return points


def generate_random_image(rows: int, cols: int, density: float, seed: int) -> BinaryImage:
    """Reproducible random image; each pixel is an object with probability
    ``density`` (numpy PCG64 generator seeded with ``seed``)."""
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    rng = np.random.default_rng(seed)
    return BinaryImage(rng.random((rows, cols)) < density)
