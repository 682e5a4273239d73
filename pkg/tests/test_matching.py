from itertools import permutations

import pytest

from binorder import formats
from binorder.errors import ResourceError, ValidationError
from binorder.identity import IdentitySpec, InequalitySpec, search
from binorder.lattice import comparable, level_iter
from binorder.matching import (
    INJECTION,
    PERFECT,
    available_backends,
    get_kernel,
    inject,
    maximum_matching,
    order,
)
from binorder.verifier import verify

N15 = IdentitySpec(15, (0, 4, 6, 13), (1, 3, 5, 10))


def _check_pairs(cert):
    sources = [s for s, _ in cert.pairs]
    images = [t for _, t in cert.pairs]
    assert sources == sorted(sources)
    assert len(set(sources)) == len(sources)
    assert len(set(images)) == len(images)
    for s, t in cert.pairs:
        assert s.bit_count() in cert.A
        assert t.bit_count() in cert.B
        assert comparable(s, t)


def _all_perfect_matchings(n, A, B):
    # brute-force oracle for tiny instances
    left = [m for a in A for m in level_iter(n, a)]
    right = [m for b in B for m in level_iter(n, b)]
    out = set()
    for perm in permutations(right):
        if all(comparable(s, t) for s, t in zip(left, perm)):
            out.add(tuple(zip(left, perm)))
    return out


def test_n2_example_is_one_of_the_two_matchings(backend):
    cert = maximum_matching(2, (0, 2), (1,), backend=backend)
    oracle = _all_perfect_matchings(2, (0, 2), (1,))
    assert oracle == {((0, 1), (3, 2)), ((0, 2), (3, 1))}
    assert cert.pairs in oracle
    # the empty set meets 0x1 first in mask order
    assert cert.pairs == ((0, 1), (3, 2))
    assert cert.kind == PERFECT


@pytest.mark.parametrize(
    "n,A,B",
    [(3, (0, 2), (1, 3)), (4, (1,), (3,)), (3, (1,), (2,)), (4, (0, 3), (1, 4))],
)
def test_small_perfect_matchings_agree_with_oracle(n, A, B, backend):
    oracle = _all_perfect_matchings(n, A, B)
    spec = IdentitySpec(n, A, B)
    cert = order(spec, backend=backend)
    assert bool(oracle)
    assert cert.pairs in oracle


def test_symmetric_identity_sources_below_images(backend):
    cert = order(IdentitySpec(5, (2,), (3,)), backend=backend)
    assert len(cert.pairs) == 10
    for s, t in cert.pairs:
        assert s & t == s and s != t
    assert verify(cert) == []


def test_n6_identity(backend):
    cert = order(IdentitySpec(6, (0, 3), (1, 2)), backend=backend)
    assert cert.kind == PERFECT
    assert len(cert.pairs) == 21
    _check_pairs(cert)
    assert verify(cert) == []


def test_n15_identity_and_pinning():
    cert = order(N15)
    assert len(cert.pairs) == 6476
    _check_pairs(cert)
    pinned = order(N15, pin_wsb=True)
    assert (0x0, 0x4000) in pinned.pairs
    assert sum(1 for s, t in pinned.pairs if t == 0x4000) == 1
    assert verify(pinned) == []


@pytest.mark.parametrize("n", [6, 8, 9, 12])
def test_pinning_on_wsb_identities(n, backend):
    if backend == "python" and n > 9:
        pytest.skip("slow on the pure-Python kernel")
    for spec in search(n, "wsb"):
        cert = order(spec, pin_wsb=True, backend=backend)
        top = 1 << (n - 1)
        assert cert.as_dict()[0] == top
        assert [s for s, t in cert.pairs if t == top] == [0]
        assert verify(cert) == []


def test_pinning_requires_wsb_shape():
    with pytest.raises(ValidationError):
        # level n sits on the B side, which the wsb shape excludes
        order(IdentitySpec(4, (0, 3), (1, 4)), pin_wsb=True)


def test_backends_agree():
    backends = available_backends()
    for spec in [IdentitySpec(6, (0, 3), (1, 2)), IdentitySpec(5, (2,), (3,))] + search(9, "any")[:10] + search(12, "wsb")[:5]:
        certs = {b: order(spec, backend=b) for b in backends}
        assert len({c.pairs for c in certs.values()}) == 1


def test_order_is_deterministic():
    a = formats.write_certificate(order(N15))
    b = formats.write_certificate(order(N15))
    assert a == b


@pytest.mark.parametrize("n", range(2, 17))
def test_every_searched_identity_is_orderable(n):
    specs = search(n, "wsb") + search(n, "fundamental")
    if n <= 10:
        specs += search(n, "any")[:40]
    # evenly spaced sample keeps the larger n affordable
    specs = specs[:: max(1, len(specs) // 60)]
    for spec in specs:
        cert = order(spec)
        assert cert.kind == PERFECT
        assert verify(cert) == [], spec


def test_inject_examples(backend):
    cert = inject(InequalitySpec(4, (1,), (2,)), backend=backend)
    assert cert.kind == INJECTION and len(cert.pairs) == 4
    for s, t in cert.pairs:
        assert s & t == s
    cert = inject(InequalitySpec(6, (2,), (3,)), backend=backend)
    assert len(cert.pairs) == 15
    assert {s for s, _ in cert.pairs} == set(level_iter(6, 2))
    assert verify(cert) == []


def test_inject_equal_sums_is_perfect():
    cert = inject(InequalitySpec(6, (0, 3), (1, 2)))
    assert cert.kind == PERFECT


@pytest.mark.parametrize("n,A,B", [(7, (1, 6), (2,)), (8, (0, 2), (1, 3)), (10, (2, 8), (4,))])
def test_inject_saturates(n, A, B, backend):
    cert = inject(InequalitySpec(n, A, B), backend=backend)
    assert len(cert.pairs) == sum(1 for a in A for _ in level_iter(n, a))
    assert verify(cert) == []


def test_invalid_inputs():
    with pytest.raises(ValidationError):
        order(IdentitySpec(6, (0, 3), (1, 3)))
    with pytest.raises(ValidationError):
        order(IdentitySpec(6, (0,), (1,)))
    with pytest.raises(ValidationError):
        inject(InequalitySpec(6, (3,), (2,)))
    with pytest.raises(ValidationError):
        maximum_matching(4, (1, 2), (2, 3))
    with pytest.raises(ValidationError):
        maximum_matching(6, (3,), (1,))


def test_resource_limit(monkeypatch):
    import binorder.matching as m

    monkeypatch.setattr(m, "MAX_VERTICES", 10)
    with pytest.raises(ResourceError):
        order(IdentitySpec(6, (0, 3), (1, 2)))


def test_unknown_backend():
    with pytest.raises(ValueError):
        get_kernel("fortran")


def test_fallback_when_compiled_kernel_is_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['binorder._kernel'] = None\n"
        "from binorder.matching import DEFAULT_BACKEND, available_backends, order\n"
        "from binorder.identity import IdentitySpec\n"
        "assert available_backends() == ['python'] and DEFAULT_BACKEND == 'python'\n"
        "print(len(order(IdentitySpec(6, (0, 3), (1, 2))).pairs))\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "21"
