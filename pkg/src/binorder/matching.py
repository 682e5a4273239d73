"""Containment-respecting matchings between unions of levels.

The comparability graph between the A-levels and the B-levels is never
built; each kernel regenerates a vertex's neighbours on demand.  The compiled
kernel is used when it imported cleanly, otherwise the pure-Python one.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from . import _kernel_py
from .errors import InternalInvariantViolation, ResourceError, ValidationError
from .identity import IdentitySpec, InequalitySpec, SearchProfile, validate
from .lattice import binom, level_iter

try:
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

log = logging.getLogger(__name__)

# left plus right vertex count accepted by a single run
MAX_VERTICES = 1 << 25

PERFECT = "perfect"
INJECTION = "injection"


def available_backends() -> list[str]:
    return (["compiled"] if _compiled is not None else []) + ["python"]


DEFAULT_BACKEND = available_backends()[0]


def get_kernel(backend: str | None = None):
    backend = backend or DEFAULT_BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise ResourceError("compiled kernel is not built")
        return _compiled
    if backend == "python":
        return _kernel_py
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class MatchingCertificate:
    """An explicit map from the A-side sets to comparable B-side sets."""

    n: int
    A: tuple[int, ...]
    B: tuple[int, ...]
    kind: str
    pairs: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


def _masks(n: int, levels: Sequence[int]) -> list[int]:
    return [m for lv in sorted(levels) for m in level_iter(n, lv)]


def _run(n, A, B, pin=None, backend=None) -> MatchingCertificate:
    A, B = tuple(sorted(A)), tuple(sorted(B))
    left_size = sum(binom(n, a) for a in A)
    right_size = sum(binom(n, b) for b in B)
    if left_size + right_size > MAX_VERTICES:
        raise ResourceError(f"{left_size + right_size} vertices exceeds the limit of {MAX_VERTICES}")
    left = _masks(n, A)
    right = _masks(n, B)
    pin_left = pin_right = -1
    if pin is not None:
        pin_left, pin_right = left.index(pin[0]), right.index(pin[1])
    kernel = get_kernel(backend)
    match = kernel.hopcroft_karp(n, A, B, left, pin_left, pin_right)
    pairs = sorted((left[u], right[int(v)]) for u, v in enumerate(match) if v >= 0)
    log.debug("n=%d A=%s B=%s matched %d of %d", n, A, B, len(pairs), left_size)
    if len(pairs) < left_size:
        if left_size <= right_size:
            raise InternalInvariantViolation(
                f"matching saturates only {len(pairs)} of {left_size} sets although "
                f"{left_size} <= {right_size}"
            )
        raise ValidationError([f"A side has {left_size} sets, more than the {right_size} on the B side"])
    kind = PERFECT if left_size == right_size else INJECTION
    return MatchingCertificate(n, A, B, kind, tuple(pairs))


def maximum_matching(n: int, A: Sequence[int], B: Sequence[int], backend: str | None = None) -> MatchingCertificate:
    """Match every set of the A-levels to a comparable set of the B-levels.

    Requires disjoint level sets with the A side no larger than the B side.
    """
    overlap = set(A) & set(B)
    if overlap:
        raise ValidationError([f"A and B share levels {sorted(overlap)}"])
    return _run(n, A, B, backend=backend)


def order(spec: IdentitySpec, pin_wsb: bool = False, backend: str | None = None) -> MatchingCertificate:
    """Perfect matching for an identity; optionally with the empty set sent to ``{n}``."""
    if isinstance(spec, InequalitySpec):
        spec = IdentitySpec(spec.n, spec.A, spec.B)
    problems = validate(spec, SearchProfile.WSB if pin_wsb else SearchProfile.ANY)
    if problems:
        raise ValidationError(problems)
    pin = (0, 1 << (spec.n - 1)) if pin_wsb else None
    cert = _run(spec.n, spec.A, spec.B, pin=pin, backend=backend)
    if cert.kind != PERFECT:
        raise InternalInvariantViolation("identity produced a non-perfect matching")
    return cert


def inject(spec: InequalitySpec, backend: str | None = None) -> MatchingCertificate:
    """Saturating matching of the smaller side into the larger one."""
    spec = InequalitySpec(spec.n, spec.A, spec.B)
    problems = validate(spec)
    if problems:
        raise ValidationError(problems)
    return _run(spec.n, spec.A, spec.B, backend=backend)
