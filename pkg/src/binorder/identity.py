"""Binomial identities: validation, canonical form, and exhaustive search.

An identity over ``n`` is a pair of disjoint level sets ``A`` and ``B`` with
``sum(C(n, a) for a in A) == sum(C(n, b) for b in B)``.  The search joins two
half-enumerations of signed level sums (meet in the middle), so the cost per
half is ``3**h`` for ``h`` free levels instead of ``3**(n + 1)`` overall.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .lattice import MAX_N, binom

log = logging.getLogger(__name__)

SEARCH_MAX_N = 40
BRUTE_FORCE_MAX_N = 12
# the exhaustive join keeps one half sorted in memory (at most HALF_LIMIT
# sums) and streams the other (at most STREAM_LIMIT sums, CHUNK_LIMIT at a time)
HALF_LIMIT = 3**15
STREAM_LIMIT = 3**17
CHUNK_LIMIT = 3**13
# node budget for the pruned depth-first fallback
DFS_NODE_BUDGET = 2_000_000


class SearchProfile(str, enum.Enum):
    ANY = "any"
    FUNDAMENTAL = "fundamental"
    WSB = "wsb"


@dataclass(frozen=True)
class IdentitySpec:
    n: int
    A: tuple[int, ...]
    B: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))

    @property
    def left_size(self) -> int:
        return sum(binom(self.n, a) for a in self.A)

    @property
    def right_size(self) -> int:
        return sum(binom(self.n, b) for b in self.B)

    def sort_key(self):
        return (len(self.A) + len(self.B), self.A, self.B)

    def __str__(self) -> str:
        return f"n={self.n} A={_fmt(self.A)} B={_fmt(self.B)}"


@dataclass(frozen=True)
class InequalitySpec(IdentitySpec):
    """Level sets with ``sum_A C(n, a) <= sum_B C(n, b)``."""


def _fmt(levels) -> str:
    return ",".join(str(x) for x in levels)


class Violation(NamedTuple):
    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


def validate(spec: IdentitySpec, profile: SearchProfile | str = SearchProfile.ANY) -> list[Violation]:
    """Return every constraint violation of ``spec``; an empty list means valid."""
    profile = SearchProfile(profile)
    out: list[Violation] = []
    n, A, B = spec.n, spec.A, spec.B
    if not 1 <= n <= MAX_N:
        out.append(Violation("N_RANGE", f"n={n} outside 1..{MAX_N}"))
        return out
    for name, side in (("A", A), ("B", B)):
        if not side:
            out.append(Violation("EMPTY_SIDE", f"{name} is empty"))
        bad = [x for x in side if not 0 <= x <= n]
        if bad:
            out.append(Violation("LEVEL_RANGE", f"{name} has levels outside 0..{n}: {bad}"))
        if any(x >= y for x, y in zip(side, side[1:])):
            out.append(Violation("NOT_ASCENDING", f"{name} is not strictly ascending"))
    common = sorted(set(A) & set(B))
    if common:
        out.append(Violation("OVERLAP", f"A and B share levels {common}"))

    if profile is SearchProfile.FUNDAMENTAL:
        if 0 not in A:
            out.append(Violation("PROFILE", "fundamental identity needs 0 in A"))
        if any(not 1 <= a <= n - 1 for a in A if a != 0):
            out.append(Violation("PROFILE", f"A levels other than 0 must lie in 1..{n - 1}"))
        if any(not 1 <= b <= n - 1 for b in B):
            out.append(Violation("PROFILE", f"B levels must lie in 1..{n - 1}"))
    elif profile is SearchProfile.WSB:
        if 0 not in A:
            out.append(Violation("PROFILE", "wsb identity needs 0 in A"))
        if 1 not in B:
            out.append(Violation("PROFILE", "wsb identity needs 1 in B"))
        elif n < 2:
            out.append(Violation("PROFILE", "wsb identity needs n >= 2"))
        if any(not 3 <= a <= n - 1 for a in A if a != 0):
            out.append(Violation("PROFILE", f"A levels other than 0 must lie in 3..{n - 1}"))
        if any(not 2 <= b <= n - 1 for b in B if b != 1):
            out.append(Violation("PROFILE", f"B levels other than 1 must lie in 2..{n - 1}"))

    if not any(v.code == "LEVEL_RANGE" for v in out):
        left, right = spec.left_size, spec.right_size
        if isinstance(spec, InequalitySpec):
            if left > right:
                out.append(Violation("SUM_EXCEEDS", f"sum over A is {left} > {right}"))
        elif left != right:
            out.append(Violation("SUM_MISMATCH", f"sum over A is {left}, over B is {right}"))
    return out


def canonicalize(spec: IdentitySpec) -> IdentitySpec:
    """Orient the identity so that its smallest level sits on the A side."""
    if spec.B and (not spec.A or min(spec.B) < min(spec.A)):
        return type(spec)(spec.n, spec.B, spec.A)
    return spec


def level_options(n: int, profile: SearchProfile) -> list[tuple[int, ...]]:
    """Allowed signs per level: +1 puts the level in A, -1 in B, 0 in neither."""
    profile = SearchProfile(profile)
    free = (1, -1, 0)
    opts = [free] * (n + 1)
    if profile is SearchProfile.FUNDAMENTAL:
        opts[0] = (1,)
        opts[n] = (0,)
    elif profile is SearchProfile.WSB:
        opts[0] = (1,)
        opts[1] = (-1,)
        if n >= 3:
            opts[2] = (-1, 0)
        # level n is excluded even when n == 1, which leaves no solution
        opts[n] = (0,)
    return opts


def _split_halves(free: list[int], opts) -> tuple[list[int], list[int]]:
    """Split free levels so the first (sorted, in-memory) half is the smaller."""
    total = 1
    for lv in free:
        total *= len(opts[lv])
    left, size = [], 1
    for lv in free:
        if (size * len(opts[lv])) ** 2 > total:
            break
        left.append(lv)
        size *= len(opts[lv])
    return left, free[len(left):]


def _half_size(levels, opts) -> int:
    size = 1
    for lv in levels:
        size *= len(opts[lv])
    return size


def is_exhaustive(n: int, profile: SearchProfile | str) -> bool:
    """Whether ``search`` can enumerate every identity for this n and profile."""
    profile = SearchProfile(profile)
    opts = level_options(n, profile)
    free = [lv for lv in range(n + 1) if len(opts[lv]) > 1]
    left, right = _split_halves(free, opts)
    return _half_size(left, opts) <= HALF_LIMIT and _half_size(right, opts) <= STREAM_LIMIT


def _enumerate_half(n: int, levels: list[int], opts) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for lv in levels:
        c = binom(n, lv)
        sums = np.concatenate([sums + s * c for s in opts[lv]])
    return sums


def _decode(index: np.ndarray, levels: list[int], opts) -> np.ndarray:
    """Signs per level (columns follow ``levels``) for mixed-radix indices."""
    signs = np.zeros((len(index), len(levels)), dtype=np.int8)
    rest = index.copy()
    # _enumerate_half makes the last level the most significant digit
    radices = [len(opts[lv]) for lv in levels]
    place = 1
    for r in radices:
        place *= r
    for j in range(len(levels) - 1, -1, -1):
        place //= radices[j]
        digit, rest = np.divmod(rest, place)
        signs[:, j] = np.asarray(opts[levels[j]], dtype=np.int8)[digit]
    return signs


def _finish(candidates, profile: SearchProfile) -> list[IdentitySpec]:
    out = set()
    for spec in candidates:
        if not spec.A or not spec.B:
            continue
        if profile is SearchProfile.ANY and spec.A[0] > spec.B[0]:
            continue
        out.add(spec)
    return sorted(out, key=IdentitySpec.sort_key)


def _specs_from_signs(n: int, levels: list[int], signs: np.ndarray):
    lv = np.asarray(levels)
    for row in signs:
        yield IdentitySpec(n, tuple(int(x) for x in lv[row == 1]), tuple(int(x) for x in lv[row == -1]))


def _join(lsorted: np.ndarray, want: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All (i, j) with ``lsorted[i] == want[j]``; i indexes the sorted array."""
    lo = np.searchsorted(lsorted, want, side="left")
    hi = np.searchsorted(lsorted, want, side="right")
    counts = hi - lo
    j = np.repeat(np.arange(len(want)), counts)
    starts = np.repeat(lo, counts)
    within = np.arange(len(j)) - np.repeat(np.cumsum(counts) - counts, counts)
    return starts + within, j


def _mitm(n: int, profile: SearchProfile) -> list[IdentitySpec]:
    opts = level_options(n, profile)
    fixed = [lv for lv in range(n + 1) if len(opts[lv]) == 1]
    forced = sum(opts[lv][0] * binom(n, lv) for lv in fixed)
    free = [lv for lv in range(n + 1) if len(opts[lv]) > 1]
    left, right = _split_halves(free, opts)

    lsums = _enumerate_half(n, left, opts)
    order = np.argsort(lsums, kind="stable")
    lsorted = lsums[order]
    del lsums

    # stream the right half: an outer loop over its top levels, each chunk
    # enumerating the remaining inner levels in memory
    inner = []
    for lv in right:
        if _half_size(inner + [lv], opts) > CHUNK_LIMIT:
            break
        inner.append(lv)
    outer = right[len(inner):]
    isums = _enumerate_half(n, inner, opts)
    # descending inner sums make every chunk's lookups ascending, which keeps
    # the binary searches cache-friendly
    iorder = np.argsort(-isums, kind="stable")
    isums = isums[iorder]
    outer_size = _half_size(outer, opts)
    hits_l, hits_r = [], []
    for k in range(outer_size):
        osigns = _decode(np.array([k]), outer, opts)[0]
        offset = forced + sum(int(sg) * binom(n, lv) for sg, lv in zip(osigns, outer))
        li, ii = _join(lsorted, -(offset + isums))
        if len(li):
            hits_l.append(order[li])
            hits_r.append(iorder[ii] + k * len(isums))
    li = np.concatenate(hits_l) if hits_l else np.zeros(0, dtype=np.int64)
    ri = np.concatenate(hits_r) if hits_r else np.zeros(0, dtype=np.int64)
    log.debug("n=%d profile=%s halves %d x %d, %d joins", n, profile.value, len(lsorted), outer_size * len(isums), len(li))

    fixed_signs = np.tile(np.array([opts[lv][0] for lv in fixed], dtype=np.int8), (len(li), 1))
    signs = np.hstack([fixed_signs, _decode(li, left, opts), _decode(ri, right, opts)])
    levels = fixed + left + right
    perm = np.argsort(levels)
    return _finish(_specs_from_signs(n, sorted(levels), signs[:, perm]), profile)


def _dfs(n: int, profile: SearchProfile, limit: int) -> list[IdentitySpec]:
    opts = level_options(n, profile)
    forced = sum(opts[lv][0] * binom(n, lv) for lv in range(n + 1) if len(opts[lv]) == 1)
    fixed = {lv: opts[lv][0] for lv in range(n + 1) if len(opts[lv]) == 1}
    free = sorted((lv for lv in range(n + 1) if len(opts[lv]) > 1), key=lambda lv: (-binom(n, lv), lv))
    suffix = [0] * (len(free) + 1)
    for i in range(len(free) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + binom(n, free[i])
    found: list[IdentitySpec] = []
    chosen = dict(fixed)
    nodes = 0

    def walk(i: int, total: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > DFS_NODE_BUDGET:
            return True
        if abs(total) > suffix[i]:
            return False
        if i == len(free):
            if total == 0:
                A = tuple(sorted(lv for lv, s in chosen.items() if s == 1))
                B = tuple(sorted(lv for lv, s in chosen.items() if s == -1))
                spec = IdentitySpec(n, A, B)
                if A and B and (profile is not SearchProfile.ANY or A[0] < B[0]):
                    found.append(spec)
            return len(found) >= limit
        lv = free[i]
        # "neither" first keeps supports small
        for s in sorted(opts[lv], key=abs):
            chosen[lv] = s
            if walk(i + 1, total + s * binom(n, lv)):
                return True
        del chosen[lv]
        return False

    walk(0, forced)
    return sorted(set(found), key=IdentitySpec.sort_key)


def search(
    n: int,
    profile: SearchProfile | str = SearchProfile.ANY,
    limit: int | None = None,
    mode: str = "all",
) -> list[IdentitySpec]:
    """Identities over ``n`` satisfying ``profile``, sorted by support size then A, B.

    When :func:`is_exhaustive` holds the result is complete (before ``limit``).
    Beyond that bound only ``mode="first"`` or an explicit ``limit`` is accepted,
    and a budgeted depth-first search returns whatever it finds.
    """
    profile = SearchProfile(profile)
    if not 1 <= n <= SEARCH_MAX_N:
        raise DomainError(f"search supports 1 <= n <= {SEARCH_MAX_N}, got {n}")
    if mode not in ("all", "first"):
        raise DomainError(f"unknown mode {mode!r}")
    if limit is not None and limit < 1:
        raise DomainError("limit must be positive")
    if mode == "first":
        limit = 1
    if is_exhaustive(n, profile):
        found = _mitm(n, profile)
    else:
        if limit is None:
            raise DomainError(
                f"n={n} is beyond the exhaustive bound for profile {profile.value}; "
                "pass a limit or mode='first'"
            )
        found = _dfs(n, profile, limit)
    return found if limit is None else found[:limit]


def brute_force_search(n: int, profile: SearchProfile | str = SearchProfile.ANY) -> list[IdentitySpec]:
    """Reference enumeration of all ``3**(n + 1)`` level assignments."""
    profile = SearchProfile(profile)
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise DomainError(f"brute force supports 1 <= n <= {BRUTE_FORCE_MAX_N}")
    idx = np.arange(3 ** (n + 1), dtype=np.int64)
    total = np.zeros_like(idx)
    # digit 0: neither, 1: A, 2: B
    for lv in range(n + 1):
        digit = (idx // 3**lv) % 3
        c = binom(n, lv)
        total += np.where(digit == 1, c, np.where(digit == 2, -c, 0))
    idx = idx[total == 0]
    hits = np.stack([(idx // 3**lv) % 3 for lv in range(n + 1)], axis=1)
    specs = (
        IdentitySpec(
            n,
            tuple(int(lv) for lv in np.flatnonzero(row == 1)),
            tuple(int(lv) for lv in np.flatnonzero(row == 2)),
        )
        for row in hits
    )
    return _finish((s for s in specs if s.A and s.B and not validate(s, profile)), profile)


def sequence_of_levels(text: str) -> tuple[int, ...]:
    """Parse ``"0,4,6"`` into a level tuple (order kept for validation)."""
    text = text.strip()
    if not text:
        return ()
    return tuple(int(tok) for tok in text.split(","))
