"""Binomial identities, containment matchings between boolean-lattice levels,
and independent certificate checking."""
from .errors import (
    DomainError,
    InternalInvariantViolation,
    ParseError,
    ResourceError,
    ValidationError,
)
from .identity import (
    IdentitySpec,
    InequalitySpec,
    SearchProfile,
    brute_force_search,
    canonicalize,
    search,
    validate,
)
from .lattice import SubFamily, binom, comparable, level_iter, shadow_B, shadow_b
from .matching import DEFAULT_BACKEND, MatchingCertificate, inject, maximum_matching, order
from .nonexistence import NonexistenceVerdict, prime_power_check, prop8_check, verdict
from .verifier import hall_test, lym_test, verify

__all__ = [
    "DEFAULT_BACKEND",
    "DomainError",
    "IdentitySpec",
    "InequalitySpec",
    "InternalInvariantViolation",
    "MatchingCertificate",
    "NonexistenceVerdict",
    "ParseError",
    "ResourceError",
    "SearchProfile",
    "SubFamily",
    "ValidationError",
    "binom",
    "brute_force_search",
    "canonicalize",
    "comparable",
    "hall_test",
    "inject",
    "level_iter",
    "lym_test",
    "maximum_matching",
    "order",
    "prime_power_check",
    "prop8_check",
    "search",
    "shadow_B",
    "shadow_b",
    "validate",
    "verdict",
    "verify",
]
