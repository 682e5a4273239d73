"""Independent checks: certificates, local LYM, and Hall's condition with surplus.

Certificate checking deliberately avoids the matching code: the text is
re-read leniently (so every defect is reported, not just the first) and
containment is re-tested from raw masks.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ValidationError
from .identity import IdentitySpec, validate
from .lattice import SubFamily, level_iter, shadow_b
from .rng import SplitMix64

CERT_HEADER = "ORDERABLE-CERT v1"
LYM_MAX_N = 20
HALL_EXHAUSTIVE_MAX = 22


class Failure(NamedTuple):
    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


@dataclass
class _Claim:
    n: int | None = None
    A: tuple[int, ...] | None = None
    B: tuple[int, ...] | None = None
    kind: str | None = None
    declared: int | None = None
    pairs: list[tuple[int, int]] = field(default_factory=list)


_FIELD = {
    "n": re.compile(r"n=(0|[1-9][0-9]*)"),
    "A": re.compile(r"A=((?:0|[1-9][0-9]*)(?:,(?:0|[1-9][0-9]*))*)"),
    "B": re.compile(r"B=((?:0|[1-9][0-9]*)(?:,(?:0|[1-9][0-9]*))*)"),
    "type": re.compile(r"type=(perfect|injection)"),
    "pairs": re.compile(r"pairs=(0|[1-9][0-9]*)"),
}
_PAIR = re.compile(r"(0x(?:0|[1-9a-f][0-9a-f]*)) (0x(?:0|[1-9a-f][0-9a-f]*))")


def _read_claim(text: str, failures: list[Failure]) -> _Claim:
    claim = _Claim()
    if not text.endswith("\n"):
        failures.append(Failure("BAD_FORMAT", "file does not end with a newline (truncated?)"))
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != CERT_HEADER:
        failures.append(Failure("BAD_HEADER", f"line 1 is not {CERT_HEADER!r}"))
    keys = ["n", "A", "B", "type", "pairs"]
    for lineno, key in enumerate(keys, start=2):
        line = lines[lineno - 1] if len(lines) >= lineno else ""
        m = _FIELD[key].fullmatch(line)
        if not m:
            failures.append(Failure("BAD_FORMAT", f"line {lineno}: expected a valid '{key}=' field"))
            continue
        value = m.group(1)
        if key == "n":
            claim.n = int(value)
        elif key in ("A", "B"):
            levels = tuple(int(x) for x in value.split(","))
            if any(x >= y for x, y in zip(levels, levels[1:])):
                failures.append(Failure("BAD_FORMAT", f"line {lineno}: {key} not strictly ascending"))
            setattr(claim, key, levels)
        elif key == "type":
            claim.kind = value
        else:
            claim.declared = int(value)
    prev = -1
    for lineno, line in enumerate(lines[6:], start=7):
        m = _PAIR.fullmatch(line)
        if not m:
            failures.append(Failure("BAD_FORMAT", f"line {lineno}: malformed pair {line!r}"))
            continue
        s, t = int(m.group(1), 16), int(m.group(2), 16)
        if s < prev:
            failures.append(Failure("UNSORTED_PAIRS", f"line {lineno}: source {s:#x} out of order"))
        prev = s
        claim.pairs.append((s, t))
    return claim


def _claim_from_certificate(cert) -> _Claim:
    return _Claim(cert.n, tuple(cert.A), tuple(cert.B), cert.kind, len(cert.pairs), list(cert.pairs))


def verify(cert) -> list[Failure]:
    """Check a certificate (object or file text); an empty list means it is valid.

    Checks run in this order: format, disjoint levels, the sum condition for
    the declared type, levels of every set, distinct sources, distinct images,
    comparability of every pair, and the exact pair count.
    """
    failures: list[Failure] = []
    claim = _read_claim(cert, failures) if isinstance(cert, str) else _claim_from_certificate(cert)
    n, A, B = claim.n, claim.A, claim.B
    if n is None or A is None or B is None or claim.kind is None:
        return failures
    if not 1 <= n <= 64:
        failures.append(Failure("BAD_FORMAT", f"n={n} outside 1..64"))
        return failures
    if any(x > n for x in A + B):
        failures.append(Failure("BAD_FORMAT", f"level above n={n}"))
        return failures

    common = sorted(set(A) & set(B))
    if common:
        failures.append(Failure("OVERLAP", f"A and B share levels {common}"))

    left = sum(comb(n, a) for a in A)
    right = sum(comb(n, b) for b in B)
    if claim.kind == "perfect" and left != right:
        failures.append(Failure("SUM_MISMATCH", f"type=perfect but sums are {left} and {right}"))
    if claim.kind == "injection" and left > right:
        failures.append(Failure("SUM_MISMATCH", f"type=injection but {left} > {right}"))

    a_set, b_set = set(A), set(B)
    for s, t in claim.pairs:
        if s >> n or bin(s).count("1") not in a_set:
            failures.append(Failure("WRONG_LEVEL", f"source {s:#x} is not a set of a level in A"))
        if t >> n or bin(t).count("1") not in b_set:
            failures.append(Failure("WRONG_LEVEL", f"image {t:#x} is not a set of a level in B"))

    seen_src: set[int] = set()
    for s, _ in claim.pairs:
        if s in seen_src:
            failures.append(Failure("DUPLICATE_SOURCE", f"source {s:#x} appears more than once"))
        seen_src.add(s)
    seen_img: dict[int, int] = {}
    for s, t in claim.pairs:
        if t in seen_img:
            failures.append(Failure("NOT_INJECTIVE", f"image {t:#x} is used by {seen_img[t]:#x} and {s:#x}"))
        else:
            seen_img[t] = s

    for s, t in claim.pairs:
        if s == t or (s & t != s and s & t != t):
            failures.append(Failure("INCOMPARABLE_PAIR", f"{s:#x} and {t:#x} are not strictly nested"))

    if claim.declared is not None and claim.declared != len(claim.pairs):
        failures.append(Failure("PAIR_COUNT", f"declared {claim.declared} pairs, found {len(claim.pairs)}"))
    if len(claim.pairs) != left:
        failures.append(Failure("PAIR_COUNT", f"{len(claim.pairs)} pairs but the A side has {left} sets"))
    return failures


def verify_file(path) -> list[Failure]:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        return [Failure("BAD_FORMAT", "file is not valid UTF-8")]
    return verify(text)


@dataclass(frozen=True)
class LymReport:
    n: int
    a: int
    b: int
    label: str
    family_size: int
    shadow_size: int
    fraction: Fraction
    bound_holds: bool
    strict: bool

    @property
    def equality(self) -> bool:
        return self.bound_holds and not self.strict


def lym_report(family: SubFamily, b: int, label: str = "given") -> LymReport:
    """Compare ``|Sh_b(S)| * C(n, a)`` against ``|S| * C(n, b)`` exactly."""
    n, a = family.n, family.level
    shadow = len(shadow_b(family, b))
    lhs = shadow * comb(n, a)
    rhs = len(family) * comb(n, b)
    return LymReport(
        n, a, b, label, len(family), shadow, Fraction(len(family), comb(n, a)), lhs >= rhs, lhs > rhs
    )


def lym_test(n: int, a: int, b: int, trials: int, seed: int) -> list[LymReport]:
    """Boundary families (empty, one set, full level) followed by random ones.

    Each random family keeps every a-set independently with probability 1/2.
    """
    if not 1 <= n <= LYM_MAX_N:
        raise DomainError(f"lym_test supports 1 <= n <= {LYM_MAX_N}")
    if not (0 <= a <= n and 0 <= b <= n):
        raise DomainError(f"levels must lie in 0..{n}")
    if trials < 1:
        raise DomainError("trials must be at least 1")
    rng = SplitMix64(seed)
    level = np.fromiter(level_iter(n, a), dtype=np.uint64, count=comb(n, a))
    single = int(level[rng.next() % len(level)])
    reports = [
        lym_report(SubFamily(n, a), b, "empty"),
        lym_report(SubFamily(n, a, (single,)), b, "singleton"),
        lym_report(SubFamily(n, a, tuple(int(x) for x in level)), b, "full"),
    ]
    for _ in range(trials):
        keep = rng.coin_flips(len(level)).astype(bool)
        family = SubFamily(n, a, tuple(int(x) for x in level[keep]))
        reports.append(lym_report(family, b, "random"))
    return reports


def lym_failures(reports: list[LymReport]) -> list[str]:
    """Reports contradicting the bound or its equality case.

    Equality is expected exactly for the empty family and the full level
    (and always when ``a == b``, where the shadow is the family itself).
    """
    out = []
    for i, r in enumerate(reports):
        full = r.family_size == comb(r.n, r.a)
        expect_equal = r.a == r.b or r.family_size == 0 or full
        if not r.bound_holds:
            out.append(f"trial {i} ({r.label}): bound fails, shadow {r.shadow_size} for {r.family_size} sets")
        elif r.equality != expect_equal:
            want = "equality" if expect_equal else "strict inequality"
            out.append(f"trial {i} ({r.label}): expected {want}, shadow {r.shadow_size} for {r.family_size} sets")
    return out


@dataclass
class HallReport:
    spec: IdentitySpec
    mode: str
    samples_checked: int
    min_surplus: int | None
    violations: list[tuple[tuple[int, ...], int]]
    full_shadow_size: int
    left_size: int

    @property
    def full_equality(self) -> bool:
        return self.full_shadow_size == self.left_size

    @property
    def passed(self) -> bool:
        return not self.violations and self.full_equality

    def result_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"RESULT: {status} min_surplus={self.min_surplus} checked={self.samples_checked}"


_MAX_RECORDED = 20
_HALL_BATCH = 256


def _popcount(x: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(x).astype(np.int64)
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
    v = x.astype(np.uint64)
    return sum(table[(v >> np.uint64(8 * k)) & np.uint64(0xFF)] for k in range(8))


def _hall_exhaustive(spec: IdentitySpec) -> HallReport:
    n = spec.n
    left = [m for lv in spec.A for m in level_iter(n, lv)]
    right = [m for lv in spec.B for m in level_iter(n, lv)]
    if len(left) > HALL_EXHAUSTIVE_MAX:
        raise DomainError(
            f"exhaustive Hall check needs |A-family| <= {HALL_EXHAUSTIVE_MAX}, got {len(left)}; use sampled mode"
        )
    nbr = []
    for s in left:
        bits = 0
        for j, t in enumerate(right):
            if s != t and (s & t == s or s & t == t):
                bits |= 1 << j
        nbr.append(bits)
    # covered[z] = union of neighbourhoods of the members of subset z
    covered = np.zeros(1, dtype=np.uint64)
    for bits in nbr:
        covered = np.concatenate([covered, covered | np.uint64(bits)])
    size = _popcount(np.arange(len(covered), dtype=np.uint64))
    surplus = _popcount(covered) - size
    full = len(covered) - 1
    proper = surplus[1:full]
    bad = np.flatnonzero(proper < 1) + 1
    violations = [
        (tuple(left[i] for i in range(len(left)) if z >> i & 1), int(surplus[z])) for z in bad[:_MAX_RECORDED]
    ]
    return HallReport(
        spec,
        "exhaustive",
        int(len(proper)),
        int(proper.min()) if len(proper) else None,
        violations,
        int(_popcount(covered[full:])[0]),
        len(left),
    )


def _hall_sampled(spec: IdentitySpec, trials: int, seed: int, backend: str | None) -> HallReport:
    from .matching import get_kernel

    kernel = get_kernel(backend)
    n = spec.n
    left = np.array([m for lv in spec.A for m in level_iter(n, lv)], dtype=np.uint64)
    right = np.array([m for lv in spec.B for m in level_iter(n, lv)], dtype=np.uint64)

    def coverage(rows):
        return np.asarray(kernel.coverage_counts(n, spec.A, spec.B, right, rows), dtype=np.int64)

    full_shadow = int(coverage(np.ones((1, len(left)), dtype=np.uint8))[0])
    rng = SplitMix64(seed)
    checked = 0
    min_surplus = None
    violations = []
    done = 0
    while done < trials:
        batch = min(_HALL_BATCH, trials - done)
        done += batch
        z = rng.coin_flips(batch * len(left)).reshape(batch, len(left))
        sizes = z.sum(axis=1, dtype=np.int64)
        proper = (sizes > 0) & (sizes < len(left))
        z, sizes = z[proper], sizes[proper]
        if not len(z):
            continue
        surplus = coverage(z) - sizes
        checked += len(z)
        low = int(surplus.min())
        min_surplus = low if min_surplus is None else min(min_surplus, low)
        for i in np.flatnonzero(surplus < 1)[: _MAX_RECORDED - len(violations)]:
            violations.append((tuple(int(m) for m in left[z[i].astype(bool)]), int(surplus[i])))
    return HallReport(spec, "sampled", checked, min_surplus, violations, full_shadow, len(left))


def hall_test(
    spec: IdentitySpec, mode: str = "exhaustive", trials: int = 0, seed: int = 0, backend: str | None = None
) -> HallReport:
    """Check ``|N(Z)| >= |Z| + 1`` for proper nonempty Z and ``|N(A)| = |A|``.

    ``exhaustive`` scans every subset Z (small families only); ``sampled``
    draws ``trials`` subsets with each set included with probability 1/2.
    """
    problems = validate(spec)
    if problems:
        raise ValidationError(problems)
    if mode == "exhaustive":
        return _hall_exhaustive(spec)
    if mode == "sampled":
        if trials < 1:
            raise DomainError("sampled mode needs trials >= 1")
        return _hall_sampled(spec, trials, seed, backend)
    raise DomainError(f"unknown mode {mode!r}")
