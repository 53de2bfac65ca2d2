# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sweep kernels; same contract as ``_kernels_py``.

The depth sweep keeps ``z`` on the boundary for the whole rotation, so each
data point crosses the moving boundary line at most once, at the closed-form
parameter ``t* = a / (a - c)``. The rotation steps are therefore read off a
sorted crossing schedule instead of re-sorting the data at every step.

The quantile sweep keeps its anchor between steps (it stays the K-th point),
so a step is a single O(N) scan plus a sort of the tie block.
"""
import numpy as np

from libc.math cimport fabs, nextafter
from libc.stdlib cimport free, malloc

from .errors import InvalidState

COMPILED = True

cdef extern from *:
    """
    #include <algorithm>
    #include <cstddef>
    struct Event { double t; double a; double c; Py_ssize_t idx; int delta; };
    struct Keyed { double key; Py_ssize_t idx; };
    static inline bool event_less(const Event& x, const Event& y) {
        return x.t < y.t || (x.t == y.t && x.idx < y.idx);
    }
    static inline bool keyed_less(const Keyed& x, const Keyed& y) {
        return x.key < y.key || (x.key == y.key && x.idx < y.idx);
    }
    #include <cstdint>
    #include <cstring>
    /* Stable LSD radix sort on the bit pattern of t, which is monotone for t > 0.
       Events are generated in index order, so ties stay ordered by index.
       Falls back to std::sort for short runs. */
    static inline void sort_events(Event* ev, Event* tmp, Py_ssize_t n) {
        if (n < 256) { std::sort(ev, ev + n, event_less); return; }
        Py_ssize_t count[256];
        Event* src = ev;
        Event* dst = tmp;
        for (int shift = 0; shift < 64; shift += 8) {
            std::memset(count, 0, sizeof(count));
            for (Py_ssize_t i = 0; i < n; ++i) {
                uint64_t k; std::memcpy(&k, &src[i].t, 8);
                ++count[(k >> shift) & 0xFF];
            }
            uint64_t k0; std::memcpy(&k0, &src[0].t, 8);
            if (count[(k0 >> shift) & 0xFF] == n) continue;
            Py_ssize_t sum = 0;
            for (int b = 0; b < 256; ++b) { Py_ssize_t c = count[b]; count[b] = sum; sum += c; }
            for (Py_ssize_t i = 0; i < n; ++i) {
                uint64_t k; std::memcpy(&k, &src[i].t, 8);
                dst[count[(k >> shift) & 0xFF]++] = src[i];
            }
            Event* sw = src; src = dst; dst = sw;
        }
        if (src != ev) std::memcpy(ev, src, n * sizeof(Event));
    }
    static inline void sort_keyed(Keyed* first, Py_ssize_t n) { std::sort(first, first + n, keyed_less); }
    /* Sort by key, then give each run of gaps <= eps its first key so the
       run falls back to index order. */
    static inline void sort_keyed_runs(Keyed* first, Py_ssize_t n, double eps) {
        std::sort(first, first + n, keyed_less);
        if (n < 2) return;
        double lead = first[0].key, prev = first[0].key;
        bool merged = false;
        for (Py_ssize_t i = 1; i < n; ++i) {
            double k = first[i].key;
            if (k - prev > eps) lead = k; else { first[i].key = lead; merged = true; }
            prev = k;
        }
        if (merged) std::sort(first, first + n, keyed_less);
    }
    """
    struct Event:
        double t
        double a
        double c
        Py_ssize_t idx
        int delta
    struct Keyed:
        double key
        Py_ssize_t idx
    void sort_events(Event* ev, Event* tmp, Py_ssize_t n) noexcept nogil
    void sort_keyed(Keyed* first, Py_ssize_t n) noexcept nogil
    void sort_keyed_runs(Keyed* first, Py_ssize_t n, double eps) noexcept nogil


cdef void _depth_core(const double[:, ::1] xy, double zx, double zy, Py_ssize_t iz,
                      double v1x, double v1y, double v2x, double v2y, double eps,
                      Event* ev, Py_ssize_t* k_out, double* t_lo, double* t_hi,
                      Py_ssize_t* steps_out) noexcept nogil:
    cdef Py_ssize_t n = xy.shape[0]
    cdef Py_ssize_t i, j, ne = 0, iz_eff = iz if iz >= 0 else n
    cdef double px, py, a, c, v1z, v2z, v2xi, t0, g
    cdef Py_ssize_t cur = 1, at_v2 = 1, k_min, steps = 0, delta

    v1z = v1x * zx + v1y * zy
    v2z = v2x * zx + v2y * zy
    for i in range(n):
        if i == iz:
            continue
        px = xy[i, 0]
        py = xy[i, 1]
        a = (v1x * px + v1y * py) - v1z
        v2xi = v2x * px + v2y * py
        c = v2xi - v2z
        if c <= eps:
            at_v2 += 1
        if fabs(a) <= eps:
            # tied at v1: the rotation toward v2 resolves it by v2-order
            if c < -eps or (c <= eps and i < iz_eff):
                cur += 1
        elif a < 0.0:
            cur += 1
            if c > eps:
                ev[ne].t = a / (a - c)
                ev[ne].a = a
                ev[ne].c = c
                ev[ne].idx = i
                ev[ne].delta = -1
                ne += 1
        elif c < -eps:
            ev[ne].t = a / (a - c)
            ev[ne].a = a
            ev[ne].c = c
            ev[ne].idx = i
            ev[ne].delta = 1
            ne += 1

    sort_events(ev, ev + n + 1, ne)
    k_min = cur
    t_lo[0] = 0.0
    t_hi[0] = ev[0].t if ne > 0 else 1.0
    j = 0
    while j < ne:
        # one rotation step: all crossings tied at the same direction
        t0 = ev[j].t
        delta = ev[j].delta
        j += 1
        while j < ne:
            g = (1.0 - t0) * ev[j].a + t0 * ev[j].c
            if fabs(g) > eps:
                break
            delta += ev[j].delta
            j += 1
        cur += delta
        steps += 1
        if cur < k_min:
            k_min = cur
            t_lo[0] = t0
            t_hi[0] = ev[j].t if j < ne else 1.0
    steps += 1
    if at_v2 < k_min:
        k_min = at_v2
        t_lo[0] = 1.0
        t_hi[0] = 1.0
    k_out[0] = k_min
    steps_out[0] = steps


def depth_sweep(xy, z, Py_ssize_t iz, v1, v2, double eps=1e-9, double eps_s=1e-12):
    cdef const double[:, ::1] data = np.ascontiguousarray(xy, dtype=np.float64)
    cdef Py_ssize_t n = data.shape[0], k, steps
    cdef double t_lo, t_hi
    cdef Event* ev = <Event*>malloc(2 * (n + 1) * sizeof(Event))
    if ev == NULL:
        raise MemoryError()
    try:
        _depth_core(data, float(z[0]), float(z[1]), iz, float(v1[0]), float(v1[1]),
                    float(v2[0]), float(v2[1]), eps, ev, &k, &t_lo, &t_hi, &steps)
    finally:
        free(ev)
    return int(k), t_lo, t_hi, int(steps)


def depth_many(xy, zs, v1, v2, double eps=1e-9):
    cdef const double[:, ::1] data = np.ascontiguousarray(xy, dtype=np.float64)
    cdef const double[:, ::1] qz = np.ascontiguousarray(np.reshape(zs, (-1, 2)), dtype=np.float64)
    cdef Py_ssize_t n = data.shape[0], m = qz.shape[0], i, j, iz, k, steps
    cdef double t_lo, t_hi, zx, zy
    cdef double a1x = float(v1[0]), a1y = float(v1[1]), a2x = float(v2[0]), a2y = float(v2[1])
    K_arr = np.empty(m, dtype=np.int64)
    orig_arr = np.zeros(m, dtype=np.uint8)
    cdef long long[::1] K = K_arr
    cdef unsigned char[::1] orig = orig_arr
    cdef Event* ev = <Event*>malloc(2 * (n + 1) * sizeof(Event))
    if ev == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(m):
                zx = qz[j, 0]
                zy = qz[j, 1]
                iz = -1
                for i in range(n):
                    if data[i, 0] == zx and data[i, 1] == zy:
                        iz = i
                _depth_core(data, zx, zy, iz, a1x, a1y, a2x, a2y, eps, ev, &k, &t_lo, &t_hi, &steps)
                K[j] = k
                orig[j] = iz >= 0
    finally:
        free(ev)
    return K_arr, orig_arr.astype(bool)


cdef inline Py_ssize_t _classify(double[::1] vals, Py_ssize_t n, double ref, double eps,
                                 Keyed* block, Py_ssize_t* L) noexcept:
    """Count values below ``ref - eps``; collect indices within ``eps`` of ``ref`` into ``block``."""
    cdef Py_ssize_t i, below = 0, m = 0
    cdef double d
    for i in range(n):
        d = vals[i] - ref
        if d < -eps:
            below += 1
        elif d <= eps:
            block[m].idx = i
            m += 1
    L[0] = m
    return below


def quantile_sweep(xy, Py_ssize_t K, v1, v2, double eps=1e-9, double eps_s=1e-12):
    cdef const double[:, ::1] data = np.ascontiguousarray(xy, dtype=np.float64)
    cdef Py_ssize_t n = data.shape[0]
    cdef double a1x = float(v1[0]), a1y = float(v1[1]), a2x = float(v2[0]), a2y = float(v2[1])
    vals_arr = np.empty(n, dtype=np.float64)
    v2v_arr = np.empty(n, dtype=np.float64)
    mark_arr = np.full(n, -1, dtype=np.int64)
    cdef double[::1] vals = vals_arr
    cdef double[::1] v2v = v2v_arr
    cdef long long[::1] mark = mark_arr
    cdef Keyed* block = <Keyed*>malloc(n * sizeof(Keyed))
    if block == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, below, L, anchor = -1, step = 0, max_steps = n * (n - 1) // 2 + 3
    cdef double t = 0.0, wx = a1x, wy = a1y, ref, q, d, a, c, s, s_bar, ax, ay, ux, uy, t_new
    ts, qs, anchors, counts = [], [], [], []
    try:
        for i in range(n):
            v2v[i] = a2x * data[i, 0] + a2y * data[i, 1]
        while True:
            for i in range(n):
                vals[i] = wx * data[i, 0] + wy * data[i, 1]
            if anchor < 0:
                ref = float(np.partition(vals_arr, K - 1)[K - 1])
            else:
                ref = vals[anchor]
            below = _classify(vals, n, ref, eps, block, &L)
            if not (below < K <= below + L):
                # round-off moved the anchor off rank K; re-select from scratch
                ref = float(np.partition(vals_arr, K - 1)[K - 1])
                below = _classify(vals, n, ref, eps, block, &L)
            # q is the K-th smallest value, not the carried anchor's value
            for i in range(L):
                block[i].key = vals[block[i].idx]
            sort_keyed(block, L)
            q = vals[block[K - below - 1].idx]
            if q != ref:
                ref = q
                below = _classify(vals, n, ref, eps, block, &L)
            if t >= 1.0:
                for i in range(L):
                    block[i].key = vals[block[i].idx]
                sort_keyed(block, L)
                ts.append(1.0)
                qs.append(ref)
                anchors.append(int(block[K - below - 1].idx))
                counts.append(int(below + L))
                return ts, qs, anchors, counts
            for i in range(L):
                block[i].key = v2v[block[i].idx]
                mark[block[i].idx] = step
            sort_keyed_runs(block, L, eps)
            anchor = block[K - below - 1].idx
            ts.append(t)
            qs.append(ref)
            anchors.append(int(anchor))
            counts.append(int(below + L))

            ax = data[anchor, 0]
            ay = data[anchor, 1]
            s_bar = 1.0
            for i in range(n):
                if mark[i] == step:
                    continue
                # difference first, as the pure kernel does, so both round alike
                ux = data[i, 0] - ax
                uy = data[i, 1] - ay
                a = ux * wx + uy * wy
                c = ux * a2x + uy * a2y
                if (a < 0.0 and c > eps) or (a > 0.0 and c < -eps):
                    s = a / (a - c)
                    if s > eps_s and s < s_bar:
                        s_bar = s
            step += 1
            if step > max_steps:
                raise InvalidState("quantile sweep did not reach the end of the segment")
            if s_bar >= 1.0:
                t = 1.0
            else:
                t_new = t + s_bar * (1.0 - t)
                if t_new <= t:
                    t_new = nextafter(t, 2.0)
                t = t_new if t_new < 1.0 else 1.0
            wx = (1.0 - t) * a1x + t * a2x
            wy = (1.0 - t) * a1y + t * a2y
    finally:
        free(block)
