"""One-sided number-theoretic certificates that no identity exists for ``n``.

Two criteria are implemented:

* prime powers: for ``n = p**alpha`` every ``C(n, t)`` with ``0 < t < n`` is
  divisible by ``p``, so ``C(n, 0) = 1`` cannot be balanced;
* two prime powers: for ``n = p**k * q**m`` with ``p >= 2**(q**m)``, reducing
  modulo ``p`` leaves a signed sum of ``C(q**m, i)`` that is too small in
  absolute value to be ``1 mod p`` without being exactly 1, and it is a
  multiple of ``q``.

Neither criterion ever proves existence; ``inconclusive`` means "search".
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .identity import SearchProfile
from .lattice import MAX_N
from .errors import DomainError

NONE_EXISTS = "none_exists"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NonexistenceVerdict:
    verdict: str
    reason: str | None = None
    witness: tuple[int, ...] | None = None

    @property
    def none_exists(self) -> bool:
        return self.verdict == NONE_EXISTS

    def __str__(self) -> str:
        if self.reason is None:
            return self.verdict
        if self.reason == "prime_power":
            p, alpha = self.witness
            return f"{self.verdict} reason=prime_power p={p} alpha={alpha}"
        if self.reason == "prop_pq":
            p, k, q, m = self.witness
            return f"{self.verdict} reason=prop_pq p={p} k={k} q={q} m={m}"
        return f"{self.verdict} reason={self.reason}"


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as ascending ``(prime, exponent)`` pairs."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _check_range(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise DomainError(f"n={n} outside 1..{MAX_N}")


def prime_power_check(n: int) -> NonexistenceVerdict:
    _check_range(n)
    if n == 1:
        return NonexistenceVerdict(NONE_EXISTS, "degenerate_n1")
    factors = factorize(n)
    if len(factors) == 1:
        return NonexistenceVerdict(NONE_EXISTS, "prime_power", factors[0])
    return NonexistenceVerdict(INCONCLUSIVE)


def prop8_check(n: int) -> NonexistenceVerdict:
    """Two-prime-power criterion ``p >= 2**(q**m)`` for wsb-type identities."""
    _check_range(n)
    factors = factorize(n)
    if len(factors) <= 1:
        return prime_power_check(n)
    if len(factors) != 2:
        return NonexistenceVerdict(INCONCLUSIVE)
    (r, e), (s, f) = factors
    for p, k, q, m in ((r, e, s, f), (s, f, r, e)):
        if p >= 2 ** (q**m):
            return NonexistenceVerdict(NONE_EXISTS, "prop_pq", (p, k, q, m))
    return NonexistenceVerdict(INCONCLUSIVE)


def verdict(n: int, profile: SearchProfile | str) -> NonexistenceVerdict:
    profile = SearchProfile(profile)
    if profile is SearchProfile.WSB:
        first = prime_power_check(n)
        return first if first.none_exists else prop8_check(n)
    if profile is SearchProfile.FUNDAMENTAL:
        return prime_power_check(n)
    raise DomainError("nonexistence criteria cover only the fundamental and wsb profiles")


def signed_sum_bound(q: int, m: int) -> int:
    """Largest ``|sum eps_i C(q**m, i)|`` over ``0 < i < q**m``, eps in {-1, 0, 1}."""
    qm = q**m
    return sum(comb(qm, i) for i in range(1, qm))
