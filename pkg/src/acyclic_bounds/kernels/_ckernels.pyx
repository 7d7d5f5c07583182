# cython: language_level=3
"""Compiled kernels; same contracts as ``acyclic_bounds.kernels._py``."""

import numpy as np

from libc.stdlib cimport calloc, free

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

ctypedef long long i64

cdef enum:
    IN = 1
    OUT = 2


cdef inline double _g(i64 x, i64 y, i64 t) noexcept nogil:
    return (1.0 / (x + 1) + 1.0 / (y + 1)) / (x + y - t + 2)


cdef double _psi(i64 du_out, i64 du_in, i64 du,
                 i64 dv_out, i64 dv_in, i64 dv,
                 i64* c, int case) noexcept nogil:
    # c: in_in, out_out, in_out, out_in, any_in, in_any, any_out, out_any, any_any
    cdef double s1 = 1.0 / (du_in + 1) + 1.0 / (du_out + 1) + 1.0 / (dv_in + 1) + 1.0 / (dv_out + 1)
    cdef double s2 = 1.0 / (du + 1) + 1.0 / (dv + 1)
    cdef double s3 = 0.0
    cdef double s4 = 0.0
    if case == 0:
        s2 += _g(du_in, dv_in, c[0]) + _g(du_in, dv_out, c[2]) + _g(du_out, dv_in, c[3]) + _g(du_out, dv_out, c[1])
        s3 = _g(du, dv_in, c[4]) + _g(du, dv_out, c[6]) + _g(du_in, dv, c[5]) + _g(du_out, dv, c[7])
        s4 = _g(du, dv, c[8])
    elif case == 1:
        s2 += (1.0 / ((du_in + dv_in - c[0] + 1) * (du_in + 1))
               + _g(du_in, dv_out, c[2])
               + 1.0 / ((du_out + dv_out - c[1] + 1) * (dv_out + 1)))
        s3 = (1.0 / ((du + dv_out - c[6] + 1) * (dv_out + 1))
              + 1.0 / ((du_in + dv - c[5] + 1) * (du_in + 1)))
    return s1 - s2 + s3 - s4


def covariance_sum(D, rho):
    """Sum of Cov(I_u, I_v) over unordered pairs u < v, lexicographic order."""
    csr = D.csr
    cdef i64[::1] nb_ptr = csr["nb_ptr"]
    cdef i64[::1] nb_idx = csr["nb_idx"]
    cdef i64[::1] nb_flag = csr["nb_flag"]
    cdef i64[::1] out_ptr = csr["out_ptr"]
    cdef i64[::1] in_ptr = csr["in_ptr"]
    cdef const double[::1] r = np.ascontiguousarray(rho, dtype=np.float64)
    cdef i64 n = D.n
    cdef i64 u, v, k, w, a, b, case
    cdef i64 su_out, su_in, su, sv_out, sv_in, sv
    cdef i64 c[9]
    cdef i64 cs[9]
    cdef double total = 0.0
    cdef double pu
    cdef i64* mark = <i64*> calloc(n if n > 0 else 1, sizeof(i64))
    if mark == NULL:
        raise MemoryError()
    try:
        with nogil:
            for u in range(n):
                for k in range(nb_ptr[u], nb_ptr[u + 1]):
                    mark[nb_idx[k]] = nb_flag[k]
                pu = 1.0 - r[u]
                for v in range(u + 1, n):
                    for k in range(9):
                        c[k] = 0
                    for k in range(nb_ptr[v], nb_ptr[v + 1]):
                        w = nb_idx[k]
                        a = mark[w]
                        if a == 0:
                            continue
                        b = nb_flag[k]
                        c[8] += 1
                        if b & IN:
                            c[4] += 1
                            if a & IN:
                                c[0] += 1
                            if a & OUT:
                                c[3] += 1
                        if b & OUT:
                            c[6] += 1
                            if a & IN:
                                c[2] += 1
                            if a & OUT:
                                c[1] += 1
                        if a & IN:
                            c[5] += 1
                        if a & OUT:
                            c[7] += 1
                    su_out = out_ptr[u + 1] - out_ptr[u]
                    su_in = in_ptr[u + 1] - in_ptr[u]
                    su = nb_ptr[u + 1] - nb_ptr[u]
                    sv_out = out_ptr[v + 1] - out_ptr[v]
                    sv_in = in_ptr[v + 1] - in_ptr[v]
                    sv = nb_ptr[v + 1] - nb_ptr[v]
                    case = mark[v]
                    if case == IN:
                        # only v -> u: evaluate as the pair (v, u)
                        cs[0] = c[0]; cs[1] = c[1]; cs[2] = c[3]; cs[3] = c[2]
                        cs[4] = c[5]; cs[5] = c[4]; cs[6] = c[7]; cs[7] = c[6]; cs[8] = c[8]
                        total += (1.0 - _psi(sv_out, sv_in, sv, su_out, su_in, su, cs, 1)
                                  - pu * (1.0 - r[v]))
                    else:
                        if case == OUT:
                            case = 1
                        total += (1.0 - _psi(su_out, su_in, su, sv_out, sv_in, sv, c, <int>case)
                                  - pu * (1.0 - r[v]))
                for k in range(nb_ptr[u], nb_ptr[u + 1]):
                    mark[nb_idx[k]] = 0
    finally:
        free(mark)
    return total


cdef inline bint _in_s(i64 u, const i64* rank, i64[::1] in_ptr, i64[::1] in_idx,
                       i64[::1] out_ptr, i64[::1] out_idx) noexcept nogil:
    cdef i64 k
    cdef i64 ru = rank[u]
    cdef bint right_in = False
    for k in range(in_ptr[u], in_ptr[u + 1]):
        if rank[in_idx[k]] > ru:
            right_in = True
            break
    if not right_in:
        return False
    for k in range(out_ptr[u], out_ptr[u + 1]):
        if rank[out_idx[k]] > ru:
            return True
    return False


def dl_members(D, rank):
    """Vertices with a higher-ranked in-neighbour and a higher-ranked out-neighbour."""
    csr = D.csr
    cdef i64[::1] in_ptr = csr["in_ptr"]
    cdef i64[::1] in_idx = csr["in_idx"]
    cdef i64[::1] out_ptr = csr["out_ptr"]
    cdef i64[::1] out_idx = csr["out_idx"]
    cdef const i64[::1] rk = np.ascontiguousarray(rank, dtype=np.int64)
    cdef i64 n = D.n
    cdef i64 u
    members = []
    if n == 0:
        return members
    for u in range(n):
        if _in_s(u, &rk[0], in_ptr, in_idx, out_ptr, out_idx):
            members.append(u)
    return members


def dl_sizes(D, ranks):
    """|S| for each row of a (trials, n) rank matrix."""
    csr = D.csr
    cdef i64[::1] in_ptr = csr["in_ptr"]
    cdef i64[::1] in_idx = csr["in_idx"]
    cdef i64[::1] out_ptr = csr["out_ptr"]
    cdef i64[::1] out_idx = csr["out_idx"]
    arr = np.ascontiguousarray(ranks, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != D.n:
        raise ValueError("ranks must have shape (trials, n)")
    cdef i64 trials = arr.shape[0]
    cdef i64 n = D.n
    out = np.zeros(trials, dtype=np.int64)
    if n == 0 or trials == 0:
        return out
    cdef const i64[:, ::1] rk = arr
    cdef i64[::1] sizes = out
    cdef i64 i, u, cnt
    with nogil:
        for i in range(trials):
            cnt = 0
            for u in range(n):
                if _in_s(u, &rk[i, 0], in_ptr, in_idx, out_ptr, out_idx):
                    cnt += 1
            sizes[i] = cnt
    return out


def max_acyclic_mask(int k, in_masks):
    """Bitmask of a maximum acyclic subset; same DP and tie rule as the Python kernel."""
    if k > 30:
        raise ValueError("subset DP limited to 30 vertices")
    cdef const i64[::1] im = np.ascontiguousarray(in_masks, dtype=np.int64)
    cdef i64 size = (<i64> 1) << k
    cdef unsigned char* acyclic = <unsigned char*> calloc(size, 1)
    if acyclic == NULL:
        raise MemoryError()
    cdef i64 mask, rest, low, best = 0
    cdef int v, pop, best_pop = 0
    try:
        acyclic[0] = 1
        with nogil:
            for mask in range(1, size):
                rest = mask
                while rest:
                    low = rest & -rest
                    v = __builtin_ctzll(<unsigned long long> low)
                    if not (im[v] & mask):
                        if acyclic[mask ^ low]:
                            acyclic[mask] = 1
                            pop = __builtin_popcountll(<unsigned long long> mask)
                            if pop > best_pop:
                                best = mask
                                best_pop = pop
                        break
                    rest ^= low
    finally:
        free(acyclic)
    return int(best)

