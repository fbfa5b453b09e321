# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Mirrors ``_fallback`` exactly: same signatures, same semantics, same
result types.  See that module for the contract documentation.
"""

import numpy as np

from libc.math cimport fabs, pow

from genegeo._core.common import BitSweepResult, RealSweepResult

BACKEND = "cython"

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #  define GG_POPCOUNT64(x) __builtin_popcountll(x)
    #else
    static int GG_POPCOUNT64(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; ++c; }
        return c;
    }
    #endif
    """
    int GG_POPCOUNT64(unsigned long long x) nogil


# rank-pair code (lo * 4 + hi) of the two offspring -> census label index
cdef long long[16] _PAIR_CODE
for _i in range(16):
    _PAIR_CODE[_i] = -1
for _i, (_lo, _hi) in enumerate([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]):
    _PAIR_CODE[_lo * 4 + _hi] = _i


def census_bits(int n_bits):
    """Exhaustive crossover-outcome census for one bit-chromosome length."""
    if not 2 <= n_bits <= 12:
        raise ValueError(f"census supports 2..12 bits, got {n_bits}")
    counts = np.zeros(7, dtype=np.int64)
    cdef long long[::1] c = counts
    cdef unsigned long long size = 1ULL << n_bits
    cdef unsigned long long full = size - 1ULL
    cdef unsigned long long pa, pb, rr, half, exch, keep, oa, ob
    cdef int d_pa, d_pb, d_oa, d_ob, r_oa, r_ob
    cdef long long label
    with nogil:
        for half in range(1ULL, 1ULL << (n_bits - 1)):
            exch = half << 1
            keep = (~exch) & full
            for pa in range(size):
                for pb in range(size):
                    oa = (pa & keep) | (pb & exch)
                    ob = (pb & keep) | (pa & exch)
                    for rr in range(size):
                        d_pa = GG_POPCOUNT64(pa ^ rr)
                        d_pb = GG_POPCOUNT64(pb ^ rr)
                        d_oa = GG_POPCOUNT64(oa ^ rr)
                        d_ob = GG_POPCOUNT64(ob ^ rr)
                        if (d_oa == d_ob or d_oa == d_pa or d_oa == d_pb
                                or d_ob == d_pa or d_ob == d_pb or d_pa == d_pb):
                            c[6] += 1
                            continue
                        r_oa = (d_oa > d_pa) + (d_oa > d_pb) + (d_oa > d_ob)
                        r_ob = (d_ob > d_pa) + (d_ob > d_pb) + (d_ob > d_oa)
                        if r_oa < r_ob:
                            label = _PAIR_CODE[r_oa * 4 + r_ob]
                        else:
                            label = _PAIR_CODE[r_ob * 4 + r_oa]
                        c[label] += 1
    return counts


def bit_sweep(pa, pb, rr, masks):
    """Conservation checks on a batch of bit-chromosome triples."""
    cdef unsigned long long[::1] a = np.ascontiguousarray(pa, dtype=np.uint64)
    cdef unsigned long long[::1] b = np.ascontiguousarray(pb, dtype=np.uint64)
    cdef unsigned long long[::1] r = np.ascontiguousarray(rr, dtype=np.uint64)
    cdef unsigned long long[::1] m = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef Py_ssize_t t, n = a.shape[0]
    if b.shape[0] != n or r.shape[0] != n or m.shape[0] != n:
        raise ValueError("pa, pb, rr and masks must have equal length")
    cdef unsigned long long oa, ob, keep
    cdef long long pair_bad = 0, sum_bad = 0
    with nogil:
        for t in range(n):
            keep = ~m[t]
            oa = (a[t] & keep) | (b[t] & m[t])
            ob = (b[t] & keep) | (a[t] & m[t])
            if GG_POPCOUNT64(a[t] ^ b[t]) != GG_POPCOUNT64(oa ^ ob):
                pair_bad += 1
            if (GG_POPCOUNT64(a[t] ^ r[t]) + GG_POPCOUNT64(b[t] ^ r[t])
                    != GG_POPCOUNT64(oa ^ r[t]) + GG_POPCOUNT64(ob ^ r[t])):
                sum_bad += 1
    return BitSweepResult(int(pair_bad), int(sum_bad))


cdef inline double _ipow(double x, int p) nogil:
    if p == 1:
        return x
    if p == 2:
        return x * x
    if p == 3:
        return x * x * x
    cdef double acc = 1.0
    cdef int i
    for i in range(p):
        acc *= x
    return acc


cdef inline double _rel_dev(double lhs, double rhs) nogil:
    cdef double scale = fabs(lhs)
    if fabs(rhs) > scale:
        scale = fabs(rhs)
    if scale == 0.0:
        return 0.0
    return fabs(lhs - rhs) / scale


def real_sweep(pa, pb, rr, exchange, p_values, double rtol):
    """Conservation checks on a batch of real-gene chromosome triples."""
    cdef double[:, ::1] a = np.ascontiguousarray(pa, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(pb, dtype=np.float64)
    cdef double[:, ::1] r = np.ascontiguousarray(rr, dtype=np.float64)
    cdef unsigned char[:, ::1] x = np.ascontiguousarray(exchange, dtype=np.uint8)
    cdef Py_ssize_t t, k, rows = a.shape[0], cols = a.shape[1]
    if (b.shape[0] != rows or r.shape[0] != rows or x.shape[0] != rows
            or b.shape[1] != cols or r.shape[1] != cols or x.shape[1] != cols):
        raise ValueError("pa, pb, rr and exchange must share one (T, N) shape")

    ps = np.asarray(tuple(p_values), dtype=np.int32)
    cdef int[::1] pv = ps
    cdef Py_ssize_t j, nps = pv.shape[0]
    if nps > 16:
        raise ValueError("at most 16 p values per sweep")
    for j in range(nps):
        if pv[j] < 1:
            raise ValueError("p values must be >= 1")

    pair_counts = np.zeros(nps, dtype=np.int64)
    sum_counts = np.zeros(nps, dtype=np.int64)
    cdef long long[::1] pair_v = pair_counts
    cdef long long[::1] sum_v = sum_counts
    cdef long long linf_pair = 0, linf_sum = 0
    cdef double worst = 0.0

    cdef double va, vb, vr, woa, wob
    cdef double dpp, doo, dpar, dpbr, doar, dobr
    cdef double m_pp, m_oo, m_par, m_pbr, m_oar, m_obr
    cdef double lhs, rhs, dev
    cdef double[16] s_pp, s_oo, s_par, s_pbr, s_oar, s_obr
    with nogil:
        for t in range(rows):
            for j in range(nps):
                s_pp[j] = 0.0
                s_oo[j] = 0.0
                s_par[j] = 0.0
                s_pbr[j] = 0.0
                s_oar[j] = 0.0
                s_obr[j] = 0.0
            m_pp = m_oo = m_par = m_pbr = m_oar = m_obr = 0.0
            for k in range(cols):
                va = a[t, k]
                vb = b[t, k]
                vr = r[t, k]
                if x[t, k]:
                    woa = vb
                    wob = va
                else:
                    woa = va
                    wob = vb
                dpp = fabs(va - vb)
                doo = fabs(woa - wob)
                dpar = fabs(va - vr)
                dpbr = fabs(vb - vr)
                doar = fabs(woa - vr)
                dobr = fabs(wob - vr)
                for j in range(nps):
                    s_pp[j] += _ipow(dpp, pv[j])
                    s_oo[j] += _ipow(doo, pv[j])
                    s_par[j] += _ipow(dpar, pv[j])
                    s_pbr[j] += _ipow(dpbr, pv[j])
                    s_oar[j] += _ipow(doar, pv[j])
                    s_obr[j] += _ipow(dobr, pv[j])
                if dpp > m_pp:
                    m_pp = dpp
                if doo > m_oo:
                    m_oo = doo
                if dpar > m_par:
                    m_par = dpar
                if dpbr > m_pbr:
                    m_pbr = dpbr
                if doar > m_oar:
                    m_oar = doar
                if dobr > m_obr:
                    m_obr = dobr
            for j in range(nps):
                if _rel_dev(pow(s_pp[j], 1.0 / pv[j]), pow(s_oo[j], 1.0 / pv[j])) > rtol:
                    pair_v[j] += 1
                lhs = s_par[j] + s_pbr[j]
                rhs = s_oar[j] + s_obr[j]
                dev = _rel_dev(lhs, rhs)
                if dev > rtol:
                    sum_v[j] += 1
                if dev > worst:
                    worst = dev
            if _rel_dev(m_pp, m_oo) > rtol:
                linf_pair += 1
            if _rel_dev(m_par + m_pbr, m_oar + m_obr) > rtol:
                linf_sum += 1
    return RealSweepResult(
        tuple(int(v) for v in pair_counts),
        tuple(int(v) for v in sum_counts),
        int(linf_pair),
        int(linf_sum),
        float(worst),
    )
