"""Pure-Python kernels; the reference behaviour for the compiled ``_kernel``.

Both backends visit neighbours in the same order and must return identical
results.  Vertex numbering on either side of the comparability graph: the
masks of the side's levels, levels ascending and masks ascending, so a mask
of size ``b`` sits at ``offset[b] + rank(mask)``.
"""
from __future__ import annotations

from collections import deque
from math import comb

INF = 1 << 62


def neighbour_plan(own_levels, other_levels):
    # nearest levels first, ties broken towards the lower level
    return {a: sorted(other_levels, key=lambda b: (abs(b - a), b)) for a in own_levels}


def level_offsets(n, levels):
    off, total = {}, 0
    for b in sorted(levels):
        off[b] = total
        total += comb(n, b)
    return off, total


class _Side:
    """Implicit adjacency from one side of the graph to the other."""

    def __init__(self, n, own_levels, other_levels):
        self.full = (1 << n) - 1
        self.plan = neighbour_plan(own_levels, other_levels)
        self.offset, self.size = level_offsets(n, other_levels)
        self.binom = [[comb(i, j) for j in range(n + 2)] for i in range(n + 1)]

    def neighbours(self, mask):
        """Indices of comparable vertices on the other side, in visiting order."""
        a = mask.bit_count()
        binom = self.binom
        for b in self.plan[a]:
            off = self.offset[b]
            if b > a:
                pool, k, base = self.full ^ mask, b - a, mask
            else:
                pool, k, base = mask, b, 0
            positions = []
            while pool:
                low = pool & -pool
                positions.append(low)
                pool ^= low
            c = (1 << k) - 1
            last = c << (len(positions) - k)
            while True:
                t = base
                bits = c
                while bits:
                    low = bits & -bits
                    t |= positions[low.bit_length() - 1]
                    bits ^= low
                r = i = 0
                while t:
                    low = t & -t
                    i += 1
                    r += binom[low.bit_length() - 1][i]
                    t ^= low
                yield off + r
                if c == last:
                    break
                # Gosper's hack
                low = c & -c
                ripple = c + low
                c = ripple | (((c ^ ripple) >> 2) // low)


def hopcroft_karp(n, a_levels, b_levels, left_masks, pin_left=-1, pin_right=-1):
    """Maximum matching; returns the right partner (or -1) of every left vertex.

    A pinned pair is matched up front and both endpoints are kept out of the
    search.
    """
    side = _Side(n, a_levels, b_levels)
    n_left = len(left_masks)
    match_l = [-1] * n_left
    match_r = [-1] * side.size
    if pin_left >= 0:
        match_l[pin_left] = pin_right
        match_r[pin_right] = pin_left
    active = [u for u in range(n_left) if u != pin_left]

    def adj(u):
        for v in side.neighbours(left_masks[u]):
            if v != pin_right:
                yield v

    while True:
        dist = [INF] * n_left
        queue = deque()
        for u in active:
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
        limit = INF
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du + 1 >= limit:
                break
            for v in adj(u):
                w = match_r[v]
                if w < 0:
                    limit = du + 1
                elif dist[w] == INF:
                    dist[w] = du + 1
                    queue.append(w)
        if limit == INF:
            break

        iters = {}
        for root in active:
            if match_l[root] >= 0:
                continue
            stack = [root]
            via = []
            while stack:
                x = stack[-1]
                it = iters.get(x)
                if it is None:
                    it = iters[x] = adj(x)
                moved = False
                for v in it:
                    w = match_r[v]
                    if w < 0:
                        if dist[x] + 1 == limit:
                            via.append(v)
                            for y, vy in zip(stack, via):
                                match_l[y] = vy
                                match_r[vy] = y
                            stack = []
                            moved = True
                            break
                    elif dist[w] == dist[x] + 1:
                        via.append(v)
                        stack.append(w)
                        moved = True
                        break
                if not moved:
                    dist[x] = INF
                    stack.pop()
                    if via:
                        via.pop()
    return match_l


def coverage_counts(n, a_levels, b_levels, right_masks, z_rows):
    """For each row of ``z_rows`` (a 0/1 selection of left vertices), the
    number of right vertices comparable to at least one selected left vertex.

    Scanning a right vertex stops at its first selected neighbour.
    """
    side = _Side(n, b_levels, a_levels)
    right_masks = [int(m) for m in right_masks]
    counts = []
    for z in z_rows:
        z = bytes(bytearray(z))
        hits = 0
        for mask in right_masks:
            for u in side.neighbours(mask):
                if z[u]:
                    hits += 1
                    break
        counts.append(hits)
    return counts
