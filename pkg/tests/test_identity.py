import itertools

import pytest

from binorder.errors import DomainError
from binorder.identity import (
    IdentitySpec,
    InequalitySpec,
    SearchProfile,
    brute_force_search,
    canonicalize,
    is_exhaustive,
    search,
    validate,
)
from binorder.lattice import binom
from binorder.nonexistence import factorize

N15 = IdentitySpec(15, (0, 4, 6, 13), (1, 3, 5, 10))


def codes(violations):
    return {v.code for v in violations}


def test_validate_examples():
    assert validate(N15, "wsb") == []
    assert "OVERLAP" in codes(validate(IdentitySpec(6, (0, 3), (1, 3))))
    spec = IdentitySpec(6, (0, 3), (1, 2))
    assert validate(spec) == []
    assert spec.left_size == spec.right_size == 1 + 20 == 6 + 15


def test_validate_reports_everything():
    bad = IdentitySpec(6, (3, 0, 9), ())
    found = codes(validate(bad, "wsb"))
    assert {"NOT_ASCENDING", "LEVEL_RANGE", "EMPTY_SIDE", "PROFILE"} <= found


def test_validate_profiles():
    assert validate(IdentitySpec(6, (0, 3), (1, 2)), "fundamental") == []
    # level n on the right is not fundamental
    assert "PROFILE" in codes(validate(IdentitySpec(2, (0,), (2,)), "fundamental"))
    # a_1 = 2 is not allowed by the wsb gaps
    spec = IdentitySpec(12, (0, 2), (1,))
    assert "PROFILE" in codes(validate(spec, "wsb"))


def test_validate_inequality():
    assert validate(InequalitySpec(4, (1,), (2,))) == []
    assert "SUM_EXCEEDS" in codes(validate(InequalitySpec(4, (2,), (1,))))
    assert "SUM_MISMATCH" in codes(validate(IdentitySpec(4, (1,), (2,))))


def test_canonicalize():
    assert canonicalize(IdentitySpec(2, (1,), (0, 2))) == IdentitySpec(2, (0, 2), (1,))
    spec = IdentitySpec(2, (0, 2), (1,))
    assert canonicalize(spec) == spec
    assert canonicalize(canonicalize(spec)) == spec
    assert canonicalize(IdentitySpec(5, (3,), (2,))) == IdentitySpec(5, (2,), (3,))


def test_search_examples():
    assert N15 in search(15, "wsb")
    assert search(7, "fundamental") == []
    assert IdentitySpec(6, (0, 3), (1, 2)) in search(6, "wsb")


def naive_oracle(n, profile):
    """Independent restatement: itertools over level assignments, no numpy."""
    out = []
    for assign in itertools.product((0, 1, 2), repeat=n + 1):
        A = tuple(lv for lv, d in enumerate(assign) if d == 1)
        B = tuple(lv for lv, d in enumerate(assign) if d == 2)
        if not A or not B:
            continue
        if sum(binom(n, a) for a in A) != sum(binom(n, b) for b in B):
            continue
        spec = IdentitySpec(n, A, B)
        if validate(spec, profile):
            continue
        if profile == "any" and A[0] > B[0]:
            continue
        out.append(spec)
    return sorted(out, key=IdentitySpec.sort_key)


def test_brute_force_examples():
    assert brute_force_search(6, "wsb") == search(6, "wsb")
    assert IdentitySpec(2, (0, 2), (1,)) in brute_force_search(2, "any")
    assert brute_force_search(5, "fundamental") == []


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("profile", ["any", "fundamental", "wsb"])
def test_brute_force_matches_naive(n, profile):
    assert brute_force_search(n, profile) == naive_oracle(n, profile)


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("profile", list(SearchProfile))
def test_search_matches_brute_force(n, profile):
    assert search(n, profile) == brute_force_search(n, profile)


@pytest.mark.parametrize("n", [6, 12, 15, 18, 20, 21])
@pytest.mark.parametrize("profile", list(SearchProfile))
def test_search_outputs_valid_and_totally_ordered(n, profile):
    if profile is SearchProfile.ANY and n > 15:
        pytest.skip("large output")
    found = search(n, profile)
    for spec in found:
        assert validate(spec, profile) == []
    keys = [s.sort_key() for s in found]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def prime_powers(limit):
    return [n for n in range(2, limit + 1) if len(factorize(n)) == 1]


@pytest.mark.parametrize("n", [1] + prime_powers(32))
def test_prime_powers_have_no_fundamental_identity(n):
    assert search(n, "fundamental") == []


@pytest.mark.parametrize("n", [6, 12, 18, 24])
def test_wsb_identities_exist_for_multiples_of_six(n):
    assert search(n, "wsb")


def test_displayed_six_t_family_fails_at_t1():
    # the displayed closed form would read C(6,0) = C(6,1); enumeration is the authority
    assert binom(6, 0) != binom(6, 1)


def test_limit_and_first_mode():
    full = search(12, "wsb")
    assert search(12, "wsb", limit=5) == full[:5]
    assert search(12, "wsb", mode="first") == full[:1]


def test_domain_errors():
    with pytest.raises(DomainError):
        search(0, "any")
    with pytest.raises(DomainError):
        search(41, "any")
    with pytest.raises(DomainError):
        brute_force_search(13, "any")
    with pytest.raises(DomainError):
        search(35, "any")


def test_exhaustive_bound():
    assert is_exhaustive(30, "any")
    assert not is_exhaustive(31, "any")
    assert is_exhaustive(32, "fundamental")
    assert not is_exhaustive(33, "fundamental")
    assert is_exhaustive(33, "wsb")
    assert not is_exhaustive(34, "wsb")


def test_beyond_bound_returns_valid_identities():
    found = search(36, "wsb", limit=1)
    for spec in found:
        assert validate(spec, "wsb") == []
    found = search(36, "any", limit=3)
    assert 1 <= len(found) <= 3
    for spec in found:
        assert validate(spec) == []
