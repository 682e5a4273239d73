import numpy as np
from hypothesis import given, strategies as st

from binorder.rng import SplitMix64


def test_reference_vector_seed_zero():
    # published splitmix64 outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(min_value=0, max_value=50))
def test_vectorised_stream_matches_scalar(seed, count):
    a, b = SplitMix64(seed), SplitMix64(seed)
    assert [int(x) for x in a.draws(count)] == [b.next() for _ in range(count)]
    assert a.next() == b.next()


@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_coin_flips_are_top_bits(seed):
    a, b = SplitMix64(seed), SplitMix64(seed)
    flips = a.coin_flips(20)
    assert flips.dtype == np.uint8
    assert list(flips) == [b.next() >> 63 for _ in range(20)]


def test_coin_flips_are_roughly_fair():
    flips = SplitMix64(12345).coin_flips(100_000)
    assert abs(int(flips.sum()) - 50_000) < 1_000
