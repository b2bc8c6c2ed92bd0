"""Acceptance criteria 1-7.

Each test records its outcome through the ``acceptance`` fixture; the
terminal summary prints one PASS/FAIL line per criterion.  Checks that
cannot pass without reproducing a misprint are strict xfails: they run
at full tolerance, are reported as FAIL, and would turn the suite red if
they ever started passing.
"""
import csv
import io
import math
import time

import numpy as np
import pytest

import oracles
import reference_matrices as figs
from conftest import p6_image
from distfield import (
    BinaryImage, Kind, brute_force_edt, chamfer34, chamfer_normalized, chart_error_stats,
    chessboard, cityblock_separable, cityblock_sequential, danielsson, edt, envelope_row,
    from_points, init_distance_map, meijster_scan, reference_chart, vertical_pass,
)
from distfield.cli import main
from distfield.exact import ALGORITHMS, vertical_down
from distfield.metrics import CHART_WINDOW
from distfield.propagation import chamfer_forward, cityblock_forward, cityblock_vertical
from distfield.vector import DanielssonState


def _diff(got, want):
    if isinstance(want, np.ndarray):
        return [tuple(p) for p in np.argwhere(np.asarray(got) != want).tolist()]
    return [(r, c) for r in range(len(want)) for c in range(len(want[0])) if got[r][c] != want[r][c]]


def _describe(name, cells, got):
    parts = []
    for r, c in cells:
        printed = figs.__dict__[name][r][c]
        parts.append(f"({r},{c}) printed {printed}, computed {got[r][c]}")
    return "; ".join(parts)


# --- criterion 1 -----------------------------------------------------------

PANELS = [
    ("cityblock forward pass", "CITYBLOCK_FORWARD",
     lambda img: cityblock_forward(init_distance_map(img, Kind.CITYBLOCK)).values),
    ("cityblock final", "CITYBLOCK_FINAL", lambda img: cityblock_sequential(img).values),
    ("cityblock vertical scans", "CITYBLOCK_VERTICAL",
     lambda img: cityblock_vertical(init_distance_map(img, Kind.CITYBLOCK)).values),
    ("chamfer forward pass", "CHAMFER_FORWARD",
     lambda img: chamfer_forward(init_distance_map(img, Kind.CHAMFER)).values),
    ("chamfer final", "CHAMFER_FINAL", lambda img: chamfer34(img).values),
    ("chamfer normalized", "CHAMFER_NORMALIZED", lambda img: chamfer_normalized(chamfer34(img), 1)),
    ("vertical pass, down only", "VERTICAL_DOWN", lambda img: vertical_down(img).values),
    ("vertical pass", "VERTICAL", lambda img: vertical_pass(img).values),
    ("exact squared EDT", "EEDT", lambda img: edt(img).values),
    ("danielsson offsets, sweep 1", "DANIELSSON_DOWN", lambda img: DanielssonState(img).sweep_down().offsets().pairs()),
    ("danielsson offsets, final", "DANIELSSON_FINAL", lambda img: danielsson(img)[1].pairs()),
]

MISPRINT = {
    "CITYBLOCK_FINAL": "printed (5,8)=3 but feature (6,7) is at city-block distance 2",
    "CHAMFER_FORWARD": "printed (8,1)=14 but the forward rule gives 9+3=12, as the printed final map shows",
    "DANIELSSON_FINAL": "printed (2,2)=(1,1) i.e. d^2=2, but the exact map reads 5 there",
}


def _panel_params():
    for label, name, fn in PANELS:
        marks = []
        if name in MISPRINT:
            marks.append(pytest.mark.xfail(strict=True, reason=MISPRINT[name]))
        yield pytest.param(label, name, fn, id=label, marks=marks)


@pytest.mark.parametrize("label,name,fn", list(_panel_params()))
def test_criterion_1_golden_panel(acceptance, label, name, fn):
    img = p6_image()
    t0 = time.perf_counter()
    got = fn(img)
    elapsed = time.perf_counter() - t0
    want = getattr(figs, name)
    if isinstance(got, np.ndarray):
        got = got.tolist() if want.dtype.kind == "f" else got
    cells = _diff(np.asarray(got) if isinstance(want, np.ndarray) else got, want)
    ok = not cells and elapsed < 1.0
    detail = f"{elapsed * 1e3:.1f} ms"
    if cells:
        detail += "; mismatch " + _describe(name, cells, got)
    acceptance(1, label, ok, detail)
    assert not cells
    assert elapsed < 1.0


# --- criterion 2 -----------------------------------------------------------

def test_criterion_2_envelope_row0(acceptance):
    vert = vertical_pass(p6_image())
    state = envelope_row(vert.values[0])
    ks = tuple(k + 1 for k in state.ks)
    js = tuple(j + 1 for j in state.js)
    dm, _ = meijster_scan(vert)
    row = tuple(dm.values[0].tolist())
    ok = ks == figs.ROW0_KS_1BASED and js == figs.ROW0_JS_1BASED and row == figs.ROW0_MIN
    acceptance(2, "row 0 envelope", ok, f"ks={ks} js={js} (1-based), min={row}")
    assert ks == figs.ROW0_KS_1BASED
    assert js == figs.ROW0_JS_1BASED
    assert row == figs.ROW0_MIN


# --- criteria 3 and 5 share the random suite ------------------------------

SIZES = [(16, 16), (64, 64), (33, 97)]
DENSITIES = [0.001, 0.02, 0.5]


def random_suite(count=200, seed=20240601):
    rng = np.random.default_rng(seed)
    combos = [(s, d) for s in SIZES for d in DENSITIES]
    for n in range(count):
        (rows, cols), density = combos[n % len(combos)]
        yield BinaryImage(oracles.random_cells(rng, rows, cols, density))


@pytest.fixture(scope="module")
def suite():
    return list(random_suite())


def test_criterion_3_oracle_equivalence(acceptance, suite):
    t0 = time.perf_counter()
    bad_edt = bad_city = 0
    for img in suite:
        want = brute_force_edt(img).values
        if not all(np.array_equal(edt(img, a).values, want) for a in ALGORITHMS[1:]):
            bad_edt += 1
        city = oracles.cityblock(img.cells)
        if not (np.array_equal(cityblock_sequential(img).values, city)
                and np.array_equal(cityblock_separable(img).values, city)):
            bad_city += 1
    rng = np.random.default_rng(77)
    small = []
    for n in range(60):
        rows, cols = (int(v) for v in rng.integers(1, 25, size=2))
        small.append(BinaryImage(oracles.random_cells(rng, rows, cols, DENSITIES[n % 3])))
    bad_chamfer = sum(not np.array_equal(chamfer34(img).values, oracles.chamfer_dijkstra(img.cells))
                      for img in small)
    elapsed = time.perf_counter() - t0
    acceptance(3, "exact scanners = brute force", bad_edt == 0, f"{len(suite)} images, {bad_edt} mismatching")
    acceptance(3, "city-block = e=1 brute force", bad_city == 0, f"{bad_city} mismatching")
    acceptance(3, "chamfer34 = Dijkstra (<=24x24)", bad_chamfer == 0,
               f"{len(small)} images, {bad_chamfer} mismatching")
    acceptance(3, "runtime <= 60 s", elapsed <= 60, f"{elapsed:.1f} s")
    assert bad_edt == bad_city == bad_chamfer == 0
    assert elapsed <= 60


def test_criterion_5_danielsson_bounds(acceptance, suite):
    below = 0
    for img in suite:
        if (danielsson(img)[0].values < brute_force_edt(img).values).any():
            below += 1
    acceptance(5, "danielsson >= exact on random suite", below == 0, f"{below} images violate")

    img = p6_image()
    p6_ok = danielsson(img)[0] == brute_force_edt(img)
    acceptance(5, "danielsson = exact on P6", p6_ok)

    w = from_points(9, 14, [(0, 13), (6, 12), (8, 11)])
    dw, off = danielsson(w)
    ew = brute_force_edt(w)
    cells = np.argwhere(dw.values != ew.values).tolist()
    w_ok = (len(cells) == 1 and dw.values[tuple(cells[0])] == 170
            and ew.values[tuple(cells[0])] == 169)
    detail = ", ".join(f"({r},{c}) {dw.values[r, c]} vs {ew.values[r, c]} offsets {off.pairs()[r][c]}"
                       for r, c in cells)
    acceptance(5, "witness: one cell 170 vs 169", w_ok, detail)
    assert below == 0 and p6_ok and w_ok


# --- criterion 4 -----------------------------------------------------------

def _charts():
    euc = reference_chart("euclidean", squared=True, extents=CHART_WINDOW)
    c2 = reference_chart("chamfer-sqrt2", squared=True, extents=CHART_WINDOW, decimals=1)
    c43 = reference_chart("chamfer34", squared=True, extents=CHART_WINDOW, decimals=1)
    return euc, c2, c43


@pytest.mark.xfail(strict=True, reason="the window's largest sqrt2-chamfer error sits at (2,9), "
                                       "not at the corner: 0.446 vs 0.253")
def test_criterion_4a_sqrt2_max_error(acceptance):
    euc, c2, _ = _charts()
    _, max_err = chart_error_stats(c2, euc)
    target = abs(math.sqrt(44.3) - math.sqrt(41))
    where = np.unravel_index(np.argmax(np.abs(np.sqrt(euc) - np.sqrt(c2))), euc.shape)
    ok = abs(max_err - target) <= 0.05
    acceptance(4, "sqrt2 max error = |sqrt(44.3)-sqrt(41)| +/- 0.05", ok,
               f"max {max_err:.4f} at {tuple(int(v) for v in where)}, target {target:.4f}")
    assert abs(max_err - target) <= 0.05


def test_criterion_4b_corner_error(acceptance):
    euc, c2, c43 = _charts()
    e2 = abs(math.sqrt(c2[-1, -1]) - math.sqrt(euc[-1, -1]))
    e43 = abs(math.sqrt(c43[-1, -1]) - math.sqrt(euc[-1, -1]))
    acceptance(4, "4/3 corner error < sqrt2 corner error", e43 < e2, f"{e43:.4f} < {e2:.4f}")
    assert e43 < e2


def test_criterion_4c_mean_error(acceptance):
    euc, c2, c43 = _charts()
    m2 = chart_error_stats(c2, euc)[0]
    m43 = chart_error_stats(c43, euc)[0]
    acceptance(4, "4/3 mean error <= sqrt2 mean error", m43 <= m2, f"{m43:.4f} <= {m2:.4f}")
    assert m43 <= m2


# --- criterion 6 -----------------------------------------------------------

def test_criterion_6_complexity(acceptance, tmp_path):
    out = tmp_path / "bench.csv"
    t0 = time.perf_counter()
    code = main(["bench", "--sizes", "64,128,256", "--density", "0.02",
                 "--algorithms", "simple,envelope", "--seed", "1", "--out", str(out)])
    elapsed = time.perf_counter() - t0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    counts = {(r["algorithm"], int(r["size"])): int(r["candidates"]) for r in rows}
    simple = counts[("simple", 256)] / counts[("simple", 64)]
    env = counts[("envelope", 256)] / counts[("envelope", 64)]
    acceptance(6, "simple count growth >= 8", simple >= 8, f"x{simple:.1f}")
    acceptance(6, "envelope count growth <= 24", env <= 24, f"x{env:.1f}")
    acceptance(6, "runtime < 30 s", elapsed < 30, f"{elapsed:.1f} s")
    assert code == 0
    assert simple >= 8 and env <= 24 and elapsed < 30


# --- criterion 7 -----------------------------------------------------------

def test_criterion_7_ordering_and_transpose(acceptance):
    rng = np.random.default_rng(7)
    order_bad = transpose_bad = 0
    for n in range(100):
        rows, cols = (int(v) for v in rng.integers(1, 65, size=2))
        img = BinaryImage(oracles.random_cells(rng, rows, cols, [0.01, 0.05, 0.3][n % 3]))
        if img.n_objects == 0:
            img = from_points(rows, cols, [(int(rng.integers(rows)), int(rng.integers(cols)))])
        d = edt(img).values.astype(np.int64)
        cb = chessboard(img).values.astype(np.int64)
        cy = cityblock_sequential(img).values.astype(np.int64)
        # chessboard <= sqrt(D) <= cityblock, squared to stay in integers
        if not ((cb * cb <= d).all() and (d <= cy * cy).all()):
            order_bad += 1
        for a in ALGORITHMS:
            if edt(img.transpose(), a) != edt(img, a).transpose():
                transpose_bad += 1
                break
    acceptance(7, "chessboard <= sqrt(D) <= cityblock", order_bad == 0, f"100 images, {order_bad} violate")
    acceptance(7, "edt transpose equivariance", transpose_bad == 0, f"{transpose_bad} violate")
    assert order_bad == 0 and transpose_bad == 0
