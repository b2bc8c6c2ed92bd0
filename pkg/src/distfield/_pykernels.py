"""Pure-Python scan kernels.

Mirror of ``_kernels.pyx``; used when the compiled extension is not
available.  Every function works in place on C-contiguous ``uint64``
arrays and treats ``INF`` neighbours as absent.  Row/column range
arguments let callers split the independent phases across threads.
"""
import numpy as np

INF = (1 << 64) - 1
NAME = "python"


def _load(a):
    return a.tolist()


def _store(a, rows):
    a[...] = np.array(rows, dtype=a.dtype)


# -- value propagation ------------------------------------------------------

def mask_forward(d, straight, diag):
    """Raster pass with the causal half of a 3x3 mask.

    ``diag == 0`` restricts the mask to the 4-neighbourhood.
    """
    m, n = d.shape
    g = _load(d)
    for i in range(m):
        row = g[i]
        up = g[i - 1] if i > 0 else None
        for j in range(n):
            v = row[j]
            if j > 0 and row[j - 1] != INF and v > row[j - 1] + straight:
                v = row[j - 1] + straight
            if up is not None:
                if up[j] != INF and v > up[j] + straight:
                    v = up[j] + straight
                if diag:
                    if j > 0 and up[j - 1] != INF and v > up[j - 1] + diag:
                        v = up[j - 1] + diag
                    if j + 1 < n and up[j + 1] != INF and v > up[j + 1] + diag:
                        v = up[j + 1] + diag
            row[j] = v
    _store(d, g)


def mask_backward(d, straight, diag):
    m, n = d.shape
    g = _load(d)
    for i in range(m - 1, -1, -1):
        row = g[i]
        dn = g[i + 1] if i + 1 < m else None
        for j in range(n - 1, -1, -1):
            v = row[j]
            if j + 1 < n and row[j + 1] != INF and v > row[j + 1] + straight:
                v = row[j + 1] + straight
            if dn is not None:
                if dn[j] != INF and v > dn[j] + straight:
                    v = dn[j] + straight
                if diag:
                    if j > 0 and dn[j - 1] != INF and v > dn[j - 1] + diag:
                        v = dn[j - 1] + diag
                    if j + 1 < n and dn[j + 1] != INF and v > dn[j + 1] + diag:
                        v = dn[j + 1] + diag
            row[j] = v
    _store(d, g)


def _ramp(line):
    """Forward then backward unit-step relaxation of one line."""
    n = len(line)
    for k in range(1, n):
        p = line[k - 1]
        if p != INF and line[k] > p + 1:
            line[k] = p + 1
    for k in range(n - 2, -1, -1):
        p = line[k + 1]
        if p != INF and line[k] > p + 1:
            line[k] = p + 1


def unit_columns(d, c0, c1):
    for j in range(c0, c1):
        col = d[:, j].tolist()
        _ramp(col)
        d[:, j] = col


def unit_rows(d, r0, r1):
    for i in range(r0, r1):
        row = d[i].tolist()
        _ramp(row)
        d[i] = row


# -- vector propagation -----------------------------------------------------

def _cached(cache, a, b):
    v = cache[a][b]
    if v < 0:
        v = a * a + b * b
        cache[a][b] = v
        cache[b][a] = v
    return v


def _try(d, oy, ox, cache, i, j, ni, nj, sy, sx):
    yr = oy[ni][nj]
    if yr == INF:
        return
    a, b = yr + sy, ox[ni][nj] + sx
    dist = _cached(cache, a, b)
    if d[i][j] > dist:
        d[i][j] = dist
        oy[i][j] = a
        ox[i][j] = b


def _inrow(d, oy, ox, cache, i, vi, downward):
    # neighbour order matters: ties keep the first candidate
    n = len(d[0])
    for j in range(1, n):
        _try(d, oy, ox, cache, i, j, i, j - 1, 0, 1)
        if vi >= 0:
            _try(d, oy, ox, cache, i, j, vi, j - 1, 1, 1)
    for j in range(n - 2, -1, -1):
        if vi >= 0 and downward:
            _try(d, oy, ox, cache, i, j, vi, j + 1, 1, 1)
        _try(d, oy, ox, cache, i, j, i, j + 1, 0, 1)
        if vi >= 0 and not downward:
            _try(d, oy, ox, cache, i, j, vi, j + 1, 1, 1)


def danielsson_sweep(d, oy, ox, cache, downward):
    """One vertical sweep: per row a vertical step from the previous row,
    then a forward and a backward in-row pass."""
    m, n = d.shape
    g, gy, gx, c = _load(d), _load(oy), _load(ox), _load(cache)
    rows = range(1, m) if downward else range(m - 2, -1, -1)
    for i in rows:
        vi = i - 1 if downward else i + 1
        for j in range(n):
            _try(g, gy, gx, c, i, j, vi, j, 1, 0)
        _inrow(g, gy, gx, c, i, vi, downward)
    _store(d, g)
    _store(oy, gy)
    _store(ox, gx)
    _store(cache, c)


def danielsson_inrow(d, oy, ox, cache, i):
    g, gy, gx, c = _load(d), _load(oy), _load(ox), _load(cache)
    _inrow(g, gy, gx, c, i, -1, True)
    _store(d, g)
    _store(oy, gy)
    _store(ox, gx)
    _store(cache, c)


# -- exact Euclidean --------------------------------------------------------

def vertical_down(d, c0, c1, near=None):
    """Downward squared-distance propagation using the odd-number increment."""
    m = d.shape[0]
    for j in range(c0, c1):
        col = d[:, j].tolist()
        nr = near[:, j].tolist() if near is not None else None
        step = 1
        for i in range(1, m):
            p = col[i - 1]
            if p != INF and col[i] > p + step:
                col[i] = p + step
                if nr is not None:
                    nr[i] = nr[i - 1]
                step += 2
            else:
                step = 1
        d[:, j] = col
        if nr is not None:
            near[:, j] = nr


def vertical_up(d, c0, c1, near=None):
    m = d.shape[0]
    for j in range(c0, c1):
        col = d[:, j].tolist()
        nr = near[:, j].tolist() if near is not None else None
        step = 1
        for i in range(m - 2, -1, -1):
            p = col[i + 1]
            if p != INF and col[i] > p + step:
                col[i] = p + step
                if nr is not None:
                    nr[i] = nr[i + 1]
                step += 2
            else:
                step = 1
        d[:, j] = col
        if nr is not None:
            near[:, j] = nr


def scan_simple(v, out, r0, r1):
    """Every column of the row is a candidate for every cell."""
    n = v.shape[1]
    count = 0
    for i in range(r0, r1):
        row = v[i].tolist()
        res = []
        for j in range(n):
            best = row[j]
            for k in range(n):
                vk = row[k]
                if vk != INF:
                    dist = vk + (k - j) * (k - j)
                    if best > dist:
                        best = dist
            res.append(best)
        count += n * n
        out[i] = res
    return count


def scan_improved(v, out, r0, r1):
    """Outward scans that skip empty columns and stop once the horizontal
    term alone reaches the best distance so far."""
    n = v.shape[1]
    count = 0
    for i in range(r0, r1):
        row = v[i].tolist()
        res = []
        for j in range(n):
            best = row[j]
            for k in range(j + 1, n):
                vk = row[k]
                if vk != INF:
                    count += 1
                    h = (k - j) * (k - j)
                    if h >= best:
                        break
                    if best > vk + h:
                        best = vk + h
            for k in range(j - 1, -1, -1):
                vk = row[k]
                if vk != INF:
                    count += 1
                    h = (k - j) * (k - j)
                    if h >= best:
                        break
                    if best > vk + h:
                        best = vk + h
            res.append(best)
        out[i] = res
    return count


def _start(num, den, prefer_left):
    # first column owned by the newer parabola
    if prefer_left:
        return num // den + 1
    return -(-num // den)


def envelope_row(row, ks, js, prefer_left):
    """Build the lower envelope of one row in ``ks``/``js``.

    Slot 0 is column 0; when that column is empty it is a placeholder
    that can never be popped.  Returns ``(idx, count)``; on return
    ``js[0] == 0`` and ``js[idx + 1] == n``.
    """
    n = len(row)
    idx = 0
    ks[0] = 0
    js[0] = 0
    have0 = row[0] != INF
    count = 0
    for m in range(1, n):
        vm = row[m]
        if vm == INF:
            continue
        while True:
            k = ks[idx]
            if idx == 0 and not have0:
                j = None
                break
            count += 1
            j = _start(vm - row[k] - k * k + m * m, 2 * (m - k), prefer_left)
            if idx > 0 and j <= js[idx]:
                idx -= 1
                continue
            break
        if j is None or j < n:
            idx += 1
            js[idx] = 0 if j is None or j < 0 else j
            ks[idx] = m
    js[0] = 0
    js[idx + 1] = n
    return idx, count


def scan_envelope(v, out, near, r0, r1, prefer_left):
    n = v.shape[1]
    ks = [0] * (n + 1)
    js = [0] * (n + 2)
    count = 0
    for i in range(r0, r1):
        row = v[i].tolist()
        idx, c = envelope_row(row, ks, js, prefer_left)
        count += c
        res = [INF] * n
        nr = [-1] * n
        for t in range(idx + 1):
            k = ks[t]
            vk = row[k]
            if vk == INF:
                continue
            for j in range(js[t], js[t + 1]):
                res[j] = vk + (j - k) * (j - k)
                nr[j] = k
        count += n
        out[i] = res
        if near is not None:
            near[i] = nr
    return count


def envelope_state(row, prefer_left):
    n = len(row)
    ks = [0] * (n + 1)
    js = [0] * (n + 2)
    idx, _ = envelope_row([int(x) for x in row], ks, js, prefer_left)
    return ks[: idx + 1], js[: idx + 2]
