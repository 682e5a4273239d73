# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels mirroring ``_kernel_py`` neighbour-for-neighbour."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int32_t, uint8_t

from ._kernel_py import neighbour_plan, level_offsets

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef struct Side:
    int n
    uint64_t full
    int nplan
    int32_t *plan          # (n + 1) x nplan, other-side levels in visiting order
    int64_t *offset        # indexed by other-side level
    int64_t *binom         # 65 x 65


cdef inline int64_t rank_of(const Side *s, uint64_t t) nogil:
    cdef int64_t r = 0
    cdef int i = 0
    cdef uint64_t low
    while t:
        low = t & (~t + 1)
        i += 1
        r += s.binom[(63 - __builtin_clzll(low)) * 65 + i]
        t ^= low
    return r


cdef inline uint64_t lowest_bits(uint64_t pool, int k) nogil:
    cdef uint64_t out = 0
    cdef uint64_t low
    while k > 0:
        low = pool & (~pool + 1)
        out |= low
        pool ^= low
        k -= 1
    return out


cdef inline uint64_t highest_bits(uint64_t pool, int k) nogil:
    cdef uint64_t out = 0
    cdef uint64_t high
    while k > 0:
        high = (<uint64_t>1) << (63 - __builtin_clzll(pool))
        out |= high
        pool ^= high
        k -= 1
    return out


cdef inline uint64_t next_within(uint64_t sub, uint64_t pool) nogil:
    # next larger subset of pool with the same popcount; caller checks for the last one
    cdef uint64_t low = sub & (~sub + 1)
    cdef uint64_t r = ((sub | ~pool) + low) & pool
    cdef int d = __builtin_popcountll(sub) - __builtin_popcountll(r)
    return r | lowest_bits(pool, d)


cdef inline void level_pool(const Side *s, uint64_t mask, int a, int b,
                            uint64_t *pool, uint64_t *base, int *k) nogil:
    if b > a:
        pool[0] = s.full ^ mask
        base[0] = mask
        k[0] = b - a
    else:
        pool[0] = mask
        base[0] = 0
        k[0] = b


cdef inline int64_t next_neighbour(const Side *s, uint64_t mask, int32_t *it_j,
                                   uint64_t *it_sub, uint64_t *it_last) nogil:
    """Advance the iterator of one vertex; -1 when exhausted."""
    cdef int a = __builtin_popcountll(mask)
    cdef int j = it_j[0]
    cdef int b, k
    cdef uint64_t pool, base, sub
    if j >= s.nplan:
        return -1
    if j >= 0 and it_sub[0] != it_last[0]:
        b = s.plan[a * s.nplan + j]
        level_pool(s, mask, a, b, &pool, &base, &k)
        sub = next_within(it_sub[0], pool)
    else:
        j += 1
        if j >= s.nplan:
            it_j[0] = j
            return -1
        b = s.plan[a * s.nplan + j]
        level_pool(s, mask, a, b, &pool, &base, &k)
        sub = lowest_bits(pool, k)
        it_last[0] = highest_bits(pool, k)
    it_j[0] = j
    it_sub[0] = sub
    return s.offset[b] + rank_of(s, sub | base)


cdef class _SideHolder:
    cdef Side side
    cdef object _keep

    def __cinit__(self, int n, own_levels, other_levels):
        plan = neighbour_plan(own_levels, other_levels)
        offsets, self_size = level_offsets(n, other_levels)
        nplan = len(other_levels)
        plan_arr = np.full((n + 1) * max(nplan, 1), -1, dtype=np.int32)
        for a, order in plan.items():
            plan_arr[a * nplan:(a + 1) * nplan] = order
        off_arr = np.zeros(65, dtype=np.int64)
        for b, o in offsets.items():
            off_arr[b] = o
        binom_arr = np.zeros(65 * 65, dtype=np.int64)
        for i in range(64):
            binom_arr[i * 65] = 1
            for j in range(1, i + 1):
                binom_arr[i * 65 + j] = binom_arr[(i - 1) * 65 + j - 1] + binom_arr[(i - 1) * 65 + j]
        self._keep = (plan_arr, off_arr, binom_arr)
        cdef int32_t[::1] pv = plan_arr
        cdef int64_t[::1] ov = off_arr
        cdef int64_t[::1] bv = binom_arr
        self.side.n = n
        self.side.full = ((<uint64_t>1) << n) - 1 if n < 64 else ~(<uint64_t>0)
        self.side.nplan = nplan
        self.side.plan = &pv[0]
        self.side.offset = &ov[0]
        self.side.binom = &bv[0]


def hopcroft_karp(int n, a_levels, b_levels, left_masks, int64_t pin_left=-1, int64_t pin_right=-1):
    """Maximum matching; returns the right partner (or -1) of every left vertex."""
    holder = _SideHolder(n, list(a_levels), list(b_levels))
    cdef Side *s = &holder.side
    _, n_right_obj = level_offsets(n, b_levels)
    cdef int64_t n_right = n_right_obj
    cdef uint64_t[::1] masks = np.ascontiguousarray(left_masks, dtype=np.uint64)
    cdef int64_t n_left = masks.shape[0]
    match_l_arr = np.full(n_left, -1, dtype=np.int64)
    cdef int64_t[::1] match_l = match_l_arr
    cdef int64_t[::1] match_r = np.full(n_right, -1, dtype=np.int64)
    cdef int64_t[::1] dist = np.empty(n_left, dtype=np.int64)
    cdef int64_t[::1] queue = np.empty(n_left, dtype=np.int64)
    cdef int64_t[::1] stack = np.empty(n_left + 1, dtype=np.int64)
    cdef int64_t[::1] via = np.empty(n_left + 1, dtype=np.int64)
    cdef int32_t[::1] it_j = np.empty(n_left, dtype=np.int32)
    cdef uint64_t[::1] it_sub = np.empty(n_left, dtype=np.uint64)
    cdef uint64_t[::1] it_last = np.empty(n_left, dtype=np.uint64)
    cdef int64_t INF = 1 << 62
    cdef int64_t u, v, w, x, root, du, limit, head, tail, depth, i
    cdef bint moved

    if pin_left >= 0:
        match_l[pin_left] = pin_right
        match_r[pin_right] = pin_left

    with nogil:
        while True:
            head = 0
            tail = 0
            for u in range(n_left):
                if u != pin_left and match_l[u] < 0:
                    dist[u] = 0
                    queue[tail] = u
                    tail += 1
                else:
                    dist[u] = INF
            limit = INF
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u]
                if du + 1 >= limit:
                    break
                it_j[u] = -1
                while True:
                    v = next_neighbour(s, masks[u], &it_j[u], &it_sub[u], &it_last[u])
                    if v < 0:
                        break
                    if v == pin_right:
                        continue
                    w = match_r[v]
                    if w < 0:
                        limit = du + 1
                    elif dist[w] == INF:
                        dist[w] = du + 1
                        queue[tail] = w
                        tail += 1
            if limit == INF:
                break

            for u in range(n_left):
                it_j[u] = -1
            for root in range(n_left):
                if root == pin_left or match_l[root] >= 0:
                    continue
                depth = 1
                stack[0] = root
                while depth > 0:
                    x = stack[depth - 1]
                    moved = False
                    while True:
                        v = next_neighbour(s, masks[x], &it_j[x], &it_sub[x], &it_last[x])
                        if v < 0:
                            break
                        if v == pin_right:
                            continue
                        w = match_r[v]
                        if w < 0:
                            if dist[x] + 1 == limit:
                                via[depth - 1] = v
                                for i in range(depth):
                                    match_l[stack[i]] = via[i]
                                    match_r[via[i]] = stack[i]
                                depth = 0
                                moved = True
                                break
                        elif dist[w] == dist[x] + 1:
                            via[depth - 1] = v
                            stack[depth] = w
                            depth += 1
                            moved = True
                            break
                    if not moved:
                        dist[x] = INF
                        depth -= 1
    return match_l_arr


def coverage_counts(int n, a_levels, b_levels, right_masks, z_rows):
    """For each row of ``z_rows`` (a 0/1 selection of left vertices), the
    number of right vertices comparable to at least one selected left vertex."""
    holder = _SideHolder(n, list(b_levels), list(a_levels))
    cdef Side *s = &holder.side
    cdef uint64_t[::1] masks = np.ascontiguousarray(right_masks, dtype=np.uint64)
    cdef const uint8_t[:, ::1] z = np.ascontiguousarray(np.atleast_2d(z_rows), dtype=np.uint8)
    cdef int64_t rows = z.shape[0]
    cdef int64_t m = masks.shape[0]
    out_arr = np.zeros(rows, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    # the first PREFIX neighbours of every right vertex, -1 padded
    cdef int PREFIX = 16
    cdef int64_t[:, ::1] first = np.full((m, PREFIX), -1, dtype=np.int64)
    cdef int64_t row, j, u
    cdef int t
    cdef bint hit
    cdef int32_t state_j
    cdef uint64_t state_sub = 0, state_last = 0
    with nogil:
        for j in range(m):
            state_j = -1
            for t in range(PREFIX):
                u = next_neighbour(s, masks[j], &state_j, &state_sub, &state_last)
                if u < 0:
                    break
                first[j, t] = u
        for row in range(rows):
            for j in range(m):
                hit = False
                for t in range(PREFIX):
                    u = first[j, t]
                    if u < 0:
                        break
                    if z[row, u]:
                        hit = True
                        break
                if not hit and first[j, PREFIX - 1] >= 0:
                    state_j = -1
                    while True:
                        u = next_neighbour(s, masks[j], &state_j, &state_sub, &state_last)
                        if u < 0:
                            break
                        if z[row, u]:
                            hit = True
                            break
                if hit:
                    out[row] += 1
    return out_arr
