import numpy as np
import pytest

import oracles
import reference_matrices as figs
from distfield import BinaryImage, DistCache, brute_force_edt, danielsson, dist_cached, from_points
from distfield.vector import DanielssonState

# three features that split the plane so that one cell's discrete nearest
# region is cut off; found by exhaustive search over small grids
WITNESS_SHAPE = (9, 14)
WITNESS_POINTS = [(0, 13), (6, 12), (8, 11)]
WITNESS_CELL = (1, 0)


def witness():
    return from_points(*WITNESS_SHAPE, WITNESS_POINTS)


def test_cache_examples():
    cache = DistCache(20)
    assert dist_cached(cache, 0, 0) == 0
    assert dist_cached(cache, 3, 4) == 25
    assert cache.table[4, 3] == 25
    assert dist_cached(cache, 1, 13) == 170
    assert dist_cached(cache, 5, 12) == 169


def test_cache_bounds():
    cache = DistCache.for_shape(3, 5)
    assert cache.side == 6
    assert cache.get(5, 5) == 50
    with pytest.raises(IndexError):
        cache.get(6, 0)
    with pytest.raises(IndexError):
        cache.get(0, -1)


def test_sweep1_p6(p6):
    state = DanielssonState(p6).sweep_down()
    assert state.offsets().pairs() == figs.DANIELSSON_DOWN
    assert state.offsets().pairs()[3][5] == (0, 2)


def test_final_p6_offsets(p6):
    _, off = danielsson(p6)
    assert off.pairs() == figs.corrected("DANIELSSON_FINAL")


def test_printed_final_offsets_erratum(p6):
    dm, off = danielsson(p6)
    got = off.pairs()
    bad = [(r, c) for r in range(9) for c in range(10) if got[r][c] != figs.DANIELSSON_FINAL[r][c]]
    assert bad == [(2, 2)]
    # the printed (1,1) would mean d^2 = 2, yet every exact method gives 5 there
    assert figs.EEDT[2, 2] == 5 == dm.values[2, 2]


def test_final_p6_equals_exact(p6):
    dm, _ = danielsson(p6)
    assert np.array_equal(dm.values, figs.EEDT)
    assert dm == brute_force_edt(p6)


def test_witness_fixture():
    img = witness()
    dm, off = danielsson(img)
    exact = brute_force_edt(img)
    bad = np.argwhere(dm.values != exact.values).tolist()
    assert bad == [list(WITNESS_CELL)]
    assert dm.values[WITNESS_CELL] == 170 and exact.values[WITNESS_CELL] == 169
    assert off.pairs()[1][0] == (1, 13)


def test_single_row_and_column():
    dm, off = danielsson(from_points(1, 5, [(0, 1)]))
    assert dm.values.tolist() == [[1, 0, 1, 4, 9]]
    assert off.pairs()[0] == [(0, 1), (0, 0), (0, 1), (0, 2), (0, 3)]
    dm, _ = danielsson(from_points(4, 1, [(3, 0)]))
    assert dm.values.ravel().tolist() == [9, 4, 1, 0]


def test_empty_image():
    dm, off = danielsson(from_points(3, 3, []))
    assert dm.is_infinite().all() and off.is_infinite().all()
    assert off.to_text() == "inf inf inf\n" * 3


def test_offset_text(p6):
    _, off = danielsson(p6)
    first = off.to_text().splitlines()[0].split()
    assert first[:3] == ["4,1", "1,3", "1,2"]


def random_images(n, max_side, seed, densities=(0.001, 0.02, 0.1, 0.5)):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        rows, cols = (int(v) for v in rng.integers(1, max_side + 1, size=2))
        yield BinaryImage(oracles.random_cells(rng, rows, cols, float(rng.choice(densities))))


@pytest.mark.parametrize("img", list(random_images(40, 64, 21)))
def test_bound_consistency_realizability(img):
    dm, off = danielsson(img)
    exact = oracles.squared_euclidean(img.cells)
    assert np.array_equal(dm.is_infinite(), off.is_infinite())
    if img.n_objects == 0:
        assert dm.is_infinite().all()
        return
    assert not dm.is_infinite().any()
    assert (dm.values >= exact).all()
    dy = off.dy.astype(np.int64)
    dx = off.dx.astype(np.int64)
    assert np.array_equal(dm.values.astype(np.int64), dy * dy + dx * dx)
    assert np.array_equal(dm.values == 0, img.cells)
    # some feature sits at one of the four signed placements of each offset
    ii, jj = np.indices(img.shape)
    padded = np.pad(img.cells, [(img.rows, img.rows), (img.cols, img.cols)])
    hit = np.zeros(img.shape, bool)
    for sy in (-1, 1):
        for sx in (-1, 1):
            hit |= padded[ii + sy * dy + img.rows, jj + sx * dx + img.cols]
    assert hit.all()


def test_error_rarity():
    rng = np.random.default_rng(2024)
    wrong = total = 0
    for _ in range(100):
        img = BinaryImage(oracles.random_cells(rng, 64, 64, 0.02))
        dm, _ = danielsson(img)
        wrong += int((dm.values != brute_force_edt(img).values).sum())
        total += img.rows * img.cols
    assert wrong / total < 0.001
