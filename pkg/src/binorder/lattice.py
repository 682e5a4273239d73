"""Exact combinatorics on the boolean lattice of subsets of ``[n]``.

Subsets are plain ``int`` bit masks: element ``i`` of ``[n]`` is bit ``i - 1``.
Every k-subset has a *rank*, its position in the ascending numeric order of
all k-subsets (the colex order of the combinatorial number system).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

MAX_N = 64

# levels larger than this are deduplicated with a hash set instead of a
# rank-indexed presence array
_DENSE_LIMIT = 1 << 20


def binom(n: int, k: int) -> int:
    """Return C(n, k) exactly, or 0 when k lies outside ``0..n``."""
    if n < 0 or n > MAX_N:
        raise DomainError(f"n={n} outside 0..{MAX_N}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise DomainError(f"n={n} outside 1..{MAX_N}")


def check_mask(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise DomainError(f"mask {mask:#x} has bits outside [{n}]")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def complement(mask: int, n: int) -> int:
    return full_mask(n) ^ mask


def _next_same_popcount(c: int) -> int:
    # Gosper's hack
    low = c & -c
    ripple = c + low
    return ripple | (((c ^ ripple) >> 2) // low)


def level_iter(n: int, k: int) -> Iterator[int]:
    """Yield every k-subset of ``[n]`` in strictly ascending mask order."""
    if not 0 <= n <= MAX_N:
        raise DomainError(f"n={n} outside 0..{MAX_N}")
    if not 0 <= k <= n:
        raise DomainError(f"level {k} outside 0..{n}")
    if k == 0:
        yield 0
        return
    c = (1 << k) - 1
    limit = 1 << n
    while c < limit:
        yield c
        c = _next_same_popcount(c)


def combinations_within(avail: int, k: int) -> Iterator[int]:
    """Yield every k-subset of the bit set ``avail`` in ascending mask order."""
    positions = []
    rest = avail
    while rest:
        low = rest & -rest
        positions.append(low)
        rest ^= low
    w = len(positions)
    if k < 0 or k > w:
        return
    if k == 0:
        yield 0
        return
    c = (1 << k) - 1
    limit = 1 << w
    while c < limit:
        mask = 0
        bits = c
        while bits:
            low = bits & -bits
            mask |= positions[low.bit_length() - 1]
            bits ^= low
        yield mask
        c = _next_same_popcount(c)


def rank(mask: int) -> int:
    """Index of ``mask`` among all subsets of its cardinality, ascending."""
    r = 0
    i = 0
    while mask:
        low = mask & -mask
        i += 1
        r += comb(low.bit_length() - 1, i)
        mask ^= low
    return r


def unrank(r: int, k: int, n: int) -> int:
    """Inverse of :func:`rank` for k-subsets of ``[n]``."""
    if not 0 <= r < binom(n, k):
        raise DomainError(f"rank {r} outside level {k} of [{n}]")
    mask = 0
    top = n
    for i in range(k, 0, -1):
        top -= 1
        while comb(top, i) > r:
            top -= 1
        r -= comb(top, i)
        mask |= 1 << top
    return mask


def comparable(s: int, t: int) -> bool:
    """True iff one set strictly contains the other."""
    if s == t:
        return False
    common = s & t
    return common == s or common == t


@dataclass(frozen=True)
class SubFamily:
    """A family of subsets of ``[n]`` all of cardinality ``level``.

    Members are kept strictly ascending by mask value.
    """

    n: int
    level: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        check_n(self.n)
        if not 0 <= self.level <= self.n:
            raise DomainError(f"level {self.level} outside 0..{self.n}")
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        prev = -1
        for m in members:
            if m <= prev:
                raise DomainError("members must be strictly ascending")
            check_mask(m, self.n)
            if m.bit_count() != self.level:
                raise DomainError(f"member {m:#x} not of size {self.level}")
            prev = m

    @classmethod
    def from_masks(cls, n: int, level: int, masks: Iterable[int]) -> "SubFamily":
        return cls(n, level, tuple(sorted(set(masks))))

    @classmethod
    def full(cls, n: int, level: int) -> "SubFamily":
        return cls(n, level, tuple(level_iter(n, level)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask) -> bool:
        from bisect import bisect_left

        i = bisect_left(self.members, mask)
        return i < len(self.members) and self.members[i] == mask

    def complemented(self) -> "SubFamily":
        return SubFamily.from_masks(
            self.n, self.n - self.level, (complement(m, self.n) for m in self.members)
        )


def neighbors_at_level(mask: int, n: int, b: int) -> Iterator[int]:
    """All b-sets comparable to (or equal to) ``mask``, ascending."""
    a = mask.bit_count()
    if b >= a:
        for extra in combinations_within(complement(mask, n), b - a):
            yield mask | extra
    else:
        yield from combinations_within(mask, b)


@lru_cache(maxsize=16)
def _level_index(n: int, b: int) -> tuple[tuple[int, ...], dict[int, int]]:
    masks = tuple(level_iter(n, b))
    return masks, {m: r for r, m in enumerate(masks)}


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def _related(mask: int, n: int, b: int) -> Iterator[int]:
    # same sets as neighbors_at_level, unordered but faster
    a = mask.bit_count()
    if b >= a:
        for extra in combinations(_bits(complement(mask, n)), b - a):
            yield mask | sum(extra)
    else:
        for part in combinations(_bits(mask), b):
            yield sum(part)


def shadow_b(family: SubFamily, b: int) -> SubFamily:
    """The b-shadow: b-sets below (b <= level) or above (b >= level) a member."""
    n, a = family.n, family.level
    if not 0 <= b <= n:
        raise DomainError(f"level {b} outside 0..{n}")
    if b == a:
        return family
    if not family.members:
        return SubFamily(n, b)
    if binom(n, b) <= _DENSE_LIMIT:
        masks, index = _level_index(n, b)
        seen = bytearray(len(masks))
        for m in family.members:
            for t in _related(m, n, b):
                seen[index[t]] = 1
        out = tuple(masks[r] for r in range(len(masks)) if seen[r])
    else:
        hits = set()
        for m in family.members:
            hits.update(_related(m, n, b))
        out = tuple(sorted(hits))
    return SubFamily(n, b, out)


@dataclass(frozen=True)
class ShadowUnion:
    per_level: dict[int, SubFamily]

    @property
    def total(self) -> int:
        # levels are disjoint, so sizes add
        return sum(len(f) for f in self.per_level.values())


def shadow_B(family: SubFamily, levels: Sequence[int]) -> ShadowUnion:
    return ShadowUnion({b: shadow_b(family, b) for b in sorted(set(levels))})
