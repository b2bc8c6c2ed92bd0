"""Point-pair metrics and distance charts around a centre pixel."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Exponent value selecting the chessboard (max) metric.
CHEBYSHEV = math.inf


@dataclass(frozen=True)
class MetricSpec:
    family: str  # "minkowski" or "chamfer"
    exponent: float = 2.0
    straight: float = 1.0
    diagonal: float = math.sqrt(2.0)

    def __post_init__(self):
        if self.family == "minkowski":
            if not self.exponent >= 1:
                raise ValueError(f"Minkowski exponent must be >= 1, got {self.exponent}")
        elif self.family == "chamfer":
            if self.straight <= 0 or self.diagonal <= 0:
                raise ValueError("chamfer steps must be positive")
            ratio = self.diagonal / self.straight
            if not 1 <= ratio <= 2:
                raise ValueError(f"diagonal/straight ratio must lie in [1, 2], got {ratio:.4g}")
        else:
            raise ValueError(f"unknown metric family {self.family!r}")

    @classmethod
    def named(cls, name: str) -> "MetricSpec":
        try:
            return NAMED[name]
        except KeyError:
            raise ValueError(f"unknown metric {name!r}; choose from {', '.join(NAMED)}") from None


NAMED = {
    "euclidean": MetricSpec("minkowski", 2.0),
    "cityblock": MetricSpec("minkowski", 1.0),
    "chessboard": MetricSpec("minkowski", CHEBYSHEV),
    "chamfer-sqrt2": MetricSpec("chamfer", straight=1.0, diagonal=math.sqrt(2.0)),
    "chamfer34": MetricSpec("chamfer", straight=1.0, diagonal=4.0 / 3.0),
    "chamfer-1.351": MetricSpec("chamfer", straight=1.0, diagonal=1.351),
}


def minkowski(p: Sequence[float], q: Sequence[float], e: float = 2.0) -> float:
    """Minkowski distance of order ``e``; ``e=CHEBYSHEV`` gives the max metric."""
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    if len(p) == 0:
        raise ValueError("points need at least one coordinate")
    if not e >= 1:
        raise ValueError(f"exponent must be >= 1, got {e}")
    diffs = [abs(a - b) for a, b in zip(p, q)]
    if math.isinf(e):
        return float(max(diffs))
    if e == 1:
        return float(sum(diffs))
    if e == 2:
        return math.sqrt(sum(d * d for d in diffs))
    return sum(d ** e for d in diffs) ** (1.0 / e)


def chamfer_length(dy: int, dx: int, straight: float, diagonal: float) -> float:
    """Path length using diagonal steps first, then straight ones."""
    dy, dx = abs(dy), abs(dx)
    lo, hi = min(dy, dx), max(dy, dx)
    return lo * diagonal + (hi - lo) * straight


def reference_chart(metric, n: int | None = None, squared: bool = False,
                    extents: tuple[int, int, int, int] | None = None,
                    decimals: int | None = None) -> np.ndarray:
    """Distances from a centre pixel over a window.

    The window is ``(2n+1) x (2n+1)``, or spans ``extents = (top,
    bottom, left, right)`` pixels around the centre.  ``metric`` is a
    :class:`MetricSpec` or one of the names in :data:`NAMED`.
    """
    if isinstance(metric, str):
        metric = MetricSpec.named(metric)
    if extents is None:
        if n is None or n < 1:
            raise ValueError("chart radius must be >= 1")
        extents = (n, n, n, n)
    top, bottom, left, right = extents
    if min(extents) < 0:
        raise ValueError("extents must be non-negative")
    chart = np.empty((top + bottom + 1, left + right + 1))
    for r in range(chart.shape[0]):
        for c in range(chart.shape[1]):
            dy, dx = r - top, c - left
            if metric.family == "chamfer":
                d = chamfer_length(dy, dx, metric.straight, metric.diagonal)
            else:
                d = minkowski((0, 0), (dy, dx), metric.exponent)
            chart[r, c] = d * d if squared else d
    if decimals is not None:
        chart = np.round(chart, decimals)
    return chart


# The 9 x 10 window used for the printed charts: centre at row 4, col 4.
CHART_WINDOW = (4, 4, 4, 5)


def chart_error_stats(chart: np.ndarray, reference: np.ndarray) -> tuple[float, float]:
    """Mean and max absolute difference of the square roots of two
    squared charts."""
    chart = np.asarray(chart, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    if chart.shape != reference.shape:
        raise ValueError(f"shape mismatch: {chart.shape} vs {reference.shape}")
    diff = np.abs(np.sqrt(reference) - np.sqrt(chart))
    return float(diff.mean()), float(diff.max())
