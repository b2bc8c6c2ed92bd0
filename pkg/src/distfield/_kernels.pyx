# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scan kernels; same API as ``_pykernels``.

All loops run without the GIL so the row/column phases can be split
across threads by the caller.
"""
import numpy as np

from libc.stdint cimport int64_t, uint64_t

cdef uint64_t INF_ = 0xFFFFFFFFFFFFFFFF
INF = INF_
NAME = "compiled"


# -- value propagation ------------------------------------------------------

cdef inline uint64_t _relax(uint64_t v, uint64_t nb, uint64_t w) noexcept nogil:
    if nb != INF_ and v > nb + w:
        return nb + w
    return v


def mask_forward(uint64_t[:, ::1] d, uint64_t straight, uint64_t diag):
    cdef Py_ssize_t m = d.shape[0], n = d.shape[1], i, j
    cdef uint64_t v
    with nogil:
        for i in range(m):
            for j in range(n):
                v = d[i, j]
                if j > 0:
                    v = _relax(v, d[i, j - 1], straight)
                if i > 0:
                    v = _relax(v, d[i - 1, j], straight)
                    if diag:
                        if j > 0:
                            v = _relax(v, d[i - 1, j - 1], diag)
                        if j + 1 < n:
                            v = _relax(v, d[i - 1, j + 1], diag)
                d[i, j] = v


def mask_backward(uint64_t[:, ::1] d, uint64_t straight, uint64_t diag):
    cdef Py_ssize_t m = d.shape[0], n = d.shape[1], i, j
    cdef uint64_t v
    with nogil:
        for i in range(m - 1, -1, -1):
            for j in range(n - 1, -1, -1):
                v = d[i, j]
                if j + 1 < n:
                    v = _relax(v, d[i, j + 1], straight)
                if i + 1 < m:
                    v = _relax(v, d[i + 1, j], straight)
                    if diag:
                        if j > 0:
                            v = _relax(v, d[i + 1, j - 1], diag)
                        if j + 1 < n:
                            v = _relax(v, d[i + 1, j + 1], diag)
                d[i, j] = v


def unit_columns(uint64_t[:, ::1] d, Py_ssize_t c0, Py_ssize_t c1):
    cdef Py_ssize_t m = d.shape[0], i, j
    with nogil:
        for j in range(c0, c1):
            for i in range(1, m):
                d[i, j] = _relax(d[i, j], d[i - 1, j], 1)
            for i in range(m - 2, -1, -1):
                d[i, j] = _relax(d[i, j], d[i + 1, j], 1)


def unit_rows(uint64_t[:, ::1] d, Py_ssize_t r0, Py_ssize_t r1):
    cdef Py_ssize_t n = d.shape[1], i, j
    with nogil:
        for i in range(r0, r1):
            for j in range(1, n):
                d[i, j] = _relax(d[i, j], d[i, j - 1], 1)
            for j in range(n - 2, -1, -1):
                d[i, j] = _relax(d[i, j], d[i, j + 1], 1)


# -- vector propagation -----------------------------------------------------

cdef inline void _try(uint64_t[:, ::1] d, uint64_t[:, ::1] oy, uint64_t[:, ::1] ox,
                      int64_t[:, ::1] cache, Py_ssize_t i, Py_ssize_t j,
                      Py_ssize_t ni, Py_ssize_t nj, uint64_t sy, uint64_t sx) noexcept nogil:
    cdef uint64_t yr = oy[ni, nj]
    cdef uint64_t a, b
    cdef int64_t dist
    if yr == INF_:
        return
    a = yr + sy
    b = ox[ni, nj] + sx
    dist = cache[a, b]
    if dist < 0:
        dist = <int64_t>(a * a + b * b)
        cache[a, b] = dist
        cache[b, a] = dist
    if d[i, j] > <uint64_t>dist:
        d[i, j] = <uint64_t>dist
        oy[i, j] = a
        ox[i, j] = b


cdef void _inrow(uint64_t[:, ::1] d, uint64_t[:, ::1] oy, uint64_t[:, ::1] ox,
                 int64_t[:, ::1] cache, Py_ssize_t i, Py_ssize_t vi, bint downward) noexcept nogil:
    cdef Py_ssize_t n = d.shape[1], j
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


def danielsson_sweep(uint64_t[:, ::1] d, uint64_t[:, ::1] oy, uint64_t[:, ::1] ox,
                     int64_t[:, ::1] cache, bint downward):
    cdef Py_ssize_t m = d.shape[0], n = d.shape[1], i, j, vi, t
    with nogil:
        for t in range(1, m):
            if downward:
                i = t
                vi = i - 1
            else:
                i = m - 1 - t
                vi = i + 1
            for j in range(n):
                _try(d, oy, ox, cache, i, j, vi, j, 1, 0)
            _inrow(d, oy, ox, cache, i, vi, downward)


def danielsson_inrow(uint64_t[:, ::1] d, uint64_t[:, ::1] oy, uint64_t[:, ::1] ox,
                     int64_t[:, ::1] cache, Py_ssize_t i):
    with nogil:
        _inrow(d, oy, ox, cache, i, -1, True)


# -- exact Euclidean --------------------------------------------------------

def vertical_down(uint64_t[:, ::1] d, Py_ssize_t c0, Py_ssize_t c1, near=None):
    cdef Py_ssize_t m = d.shape[0], i, j
    cdef uint64_t step, p
    cdef int64_t[:, ::1] nr
    cdef bint track = near is not None
    if track:
        nr = near
    with nogil:
        for j in range(c0, c1):
            step = 1
            for i in range(1, m):
                p = d[i - 1, j]
                if p != INF_ and d[i, j] > p + step:
                    d[i, j] = p + step
                    if track:
                        nr[i, j] = nr[i - 1, j]
                    step += 2
                else:
                    step = 1


def vertical_up(uint64_t[:, ::1] d, Py_ssize_t c0, Py_ssize_t c1, near=None):
    cdef Py_ssize_t m = d.shape[0], i, j
    cdef uint64_t step, p
    cdef int64_t[:, ::1] nr
    cdef bint track = near is not None
    if track:
        nr = near
    with nogil:
        for j in range(c0, c1):
            step = 1
            for i in range(m - 2, -1, -1):
                p = d[i + 1, j]
                if p != INF_ and d[i, j] > p + step:
                    d[i, j] = p + step
                    if track:
                        nr[i, j] = nr[i + 1, j]
                    step += 2
                else:
                    step = 1


def scan_simple(const uint64_t[:, ::1] v, uint64_t[:, ::1] out, Py_ssize_t r0, Py_ssize_t r1):
    cdef Py_ssize_t n = v.shape[1], i, j, k
    cdef uint64_t best, vk, dist
    cdef long long count = 0
    with nogil:
        for i in range(r0, r1):
            for j in range(n):
                best = v[i, j]
                for k in range(n):
                    vk = v[i, k]
                    if vk != INF_:
                        dist = vk + <uint64_t>((k - j) * (k - j))
                        if best > dist:
                            best = dist
                out[i, j] = best
            count += n * n
    return count


def scan_improved(const uint64_t[:, ::1] v, uint64_t[:, ::1] out, Py_ssize_t r0, Py_ssize_t r1):
    cdef Py_ssize_t n = v.shape[1], i, j, k
    cdef uint64_t best, vk, h
    cdef long long count = 0
    with nogil:
        for i in range(r0, r1):
            for j in range(n):
                best = v[i, j]
                for k in range(j + 1, n):
                    vk = v[i, k]
                    if vk != INF_:
                        count += 1
                        h = <uint64_t>((k - j) * (k - j))
                        if h >= best:
                            break
                        if best > vk + h:
                            best = vk + h
                for k in range(j - 1, -1, -1):
                    vk = v[i, k]
                    if vk != INF_:
                        count += 1
                        h = <uint64_t>((k - j) * (k - j))
                        if h >= best:
                            break
                        if best > vk + h:
                            best = vk + h
                out[i, j] = best
    return count


cdef inline int64_t _start(int64_t num, int64_t den, bint prefer_left) noexcept nogil:
    # den > 0; C division truncates toward zero
    if prefer_left:
        if num >= 0:
            return num / den + 1
        return -((-num + den - 1) / den) + 1
    if num >= 0:
        return (num + den - 1) / den
    return -((-num) / den)


cdef Py_ssize_t _envelope(const uint64_t[:, ::1] v, Py_ssize_t i, int64_t[::1] ks,
                          int64_t[::1] js, bint prefer_left, long long *count) noexcept nogil:
    cdef Py_ssize_t n = v.shape[1], idx = 0, m
    cdef int64_t k, j, vm
    cdef bint have0 = v[i, 0] != INF_
    cdef bint virtual
    ks[0] = 0
    js[0] = 0
    for m in range(1, n):
        if v[i, m] == INF_:
            continue
        vm = <int64_t>v[i, m]
        while True:
            k = ks[idx]
            virtual = idx == 0 and not have0
            if virtual:
                break
            count[0] += 1
            j = _start(vm - <int64_t>v[i, k] - k * k + m * m, 2 * (m - k), prefer_left)
            if idx > 0 and j <= js[idx]:
                idx -= 1
                continue
            break
        if virtual or j < n:
            idx += 1
            if virtual or j < 0:
                js[idx] = 0
            else:
                js[idx] = j
            ks[idx] = m
    js[0] = 0
    js[idx + 1] = n
    return idx


def scan_envelope(const uint64_t[:, ::1] v, uint64_t[:, ::1] out, near,
                  Py_ssize_t r0, Py_ssize_t r1, bint prefer_left):
    cdef Py_ssize_t n = v.shape[1], i, j, t, idx
    cdef int64_t k
    cdef uint64_t vk
    cdef long long count = 0
    cdef int64_t[::1] ks = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] js = np.zeros(n + 2, dtype=np.int64)
    cdef int64_t[:, ::1] nr
    cdef bint track = near is not None
    if track:
        nr = near
    with nogil:
        for i in range(r0, r1):
            idx = _envelope(v, i, ks, js, prefer_left, &count)
            for t in range(idx + 1):
                k = ks[t]
                vk = v[i, k]
                for j in range(js[t], js[t + 1]):
                    if vk == INF_:
                        out[i, j] = INF_
                        if track:
                            nr[i, j] = -1
                    else:
                        out[i, j] = vk + <uint64_t>((j - k) * (j - k))
                        if track:
                            nr[i, j] = k
            count += n
    return count


def envelope_state(row, bint prefer_left):
    cdef uint64_t[:, ::1] v = np.ascontiguousarray(np.asarray(row, dtype=np.uint64).reshape(1, -1))
    cdef Py_ssize_t n = v.shape[1], idx
    cdef int64_t[::1] ks = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] js = np.zeros(n + 2, dtype=np.int64)
    cdef long long count = 0
    idx = _envelope(v, 0, ks, js, prefer_left, &count)
    return [int(x) for x in ks[: idx + 1]], [int(x) for x in js[: idx + 2]]
