"""Distance transforms for binary images.

City-block, chessboard and chamfer 3-4 propagation, Danielsson's vector
propagation, and exact squared-Euclidean transforms with three row
scanners (all-pairs, early-exit, lower envelope), plus Voronoi labels,
Netpbm I/O and reference distance charts.
"""
from ._backend import name as backend_name
from .exact import (
    CostEstimate,
    EnvelopeState,
    brute_force_edt,
    edt,
    envelope_row,
    meijster_scan,
    row_scan_improved,
    row_scan_simple,
    vertical_pass,
    voronoi_labels,
)
from .grid import (
    INF,
    BinaryImage,
    DistanceMap,
    FeaturePoint,
    GrayImage,
    GridError,
    Kind,
    from_points,
    generate_random_image,
    init_distance_map,
    is_infinite,
    to_gray,
)
from .metrics import MetricSpec, chart_error_stats, minkowski, reference_chart
from .netpbm import NetpbmError, read_netpbm, write_netpbm
from .propagation import (
    chamfer34,
    chamfer_normalized,
    chessboard,
    cityblock_separable,
    cityblock_sequential,
)
from .vector import DistCache, OffsetMap, danielsson, dist_cached

__version__ = "0.1.0"
