import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarcode.core import BitBuffer, CodeConfig, PairCase, classify_pair

EXAMPLE8 = CodeConfig(3, (1, 3, 5, 6, 7))


@given(st.lists(st.integers(0, 1), max_size=200), st.data())
def test_bitbuffer_read_after_write(bits, data):
    buf = BitBuffer.from_bits(bits)
    assert buf.to_list() == bits
    if not bits:
        return
    i = data.draw(st.integers(0, len(bits) - 1))
    v = data.draw(st.integers(0, 1))
    buf[i] = v
    expected = list(bits)
    expected[i] = v
    assert buf.to_list() == expected


@given(st.integers(0, 300).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 1), min_size=n, max_size=n),
                        st.lists(st.integers(0, 1), min_size=n, max_size=n))))
def test_bitbuffer_xor_is_elementwise_mod2(pair):
    a, b = pair
    buf = BitBuffer.from_bits(a)
    buf ^= BitBuffer.from_bits(b)
    assert buf.to_list() == [(p + q) % 2 for p, q in zip(a, b)]


def test_bitbuffer_packing_and_conversions():
    buf = BitBuffer.from_str("1011000011")
    assert len(buf) == 10
    assert buf.to_bytes() == bytes([0b00001101, 0b00000011])
    assert buf.to_int() == 0b1100001101
    assert BitBuffer.from_int(buf.to_int(), 10) == buf
    assert buf.take([0, 2, 9]).to_str() == "111"
    assert buf.count() == 5
    with pytest.raises(IndexError):
        buf[10]
    with pytest.raises(ValueError):
        buf ^= BitBuffer(9)
    with pytest.raises(ValueError):
        BitBuffer.from_bits([0, 2])


def test_codeconfig_fields():
    assert EXAMPLE8.N == 8 and EXAMPLE8.K == 5
    assert EXAMPLE8.frozen_set == (0, 2, 4)
    assert EXAMPLE8.frozen_values == (0, 0, 0)
    assert CodeConfig.from_mask(3, 0b11101010) == EXAMPLE8


@pytest.mark.parametrize("kwargs", [
    dict(n=0, info_set=()),
    dict(n=3, info_set=(3, 1)),
    dict(n=3, info_set=(1, 1)),
    dict(n=3, info_set=(8,)),
    dict(n=3, info_set=(1,), frozen_values=(0, 0)),
    dict(n=1, info_set=(), frozen_values=(0, 2)),
])
def test_codeconfig_rejects_invalid(kwargs):
    with pytest.raises(ValueError):
        CodeConfig(**kwargs)


def test_partition_property_random():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 9)
        config = CodeConfig.from_mask(n, rng.getrandbits(1 << n))
        info, frozen = set(config.info_set), set(config.frozen_set)
        assert info.isdisjoint(frozen)
        assert info | frozen == set(range(config.N))
        assert len(config.frozen_values) == len(frozen)


def test_scatter_places_known_bits():
    x, u = EXAMPLE8.scatter([1, 0, 1, 1, 0], [1, 0, 1])
    assert x.to_str() == "01000110"
    assert u.to_str() == "10001000"


@pytest.mark.parametrize("config,psi,expected", [
    (EXAMPLE8, 3, PairCase.A_BOTH_USER),
    (EXAMPLE8, 0, PairCase.C_FROZEN_TOP_USER_BOTTOM),
    (EXAMPLE8, 1, PairCase.C_FROZEN_TOP_USER_BOTTOM),
    (EXAMPLE8, 2, PairCase.C_FROZEN_TOP_USER_BOTTOM),
    (CodeConfig(1, ()), 0, PairCase.B_BOTH_FROZEN),
    (CodeConfig(2, (2,)), 1, PairCase.D_USER_TOP_FROZEN_BOTTOM),
])
def test_classify_pair(config, psi, expected):
    assert classify_pair(config, psi) is expected


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1))))
def test_classify_pair_total_and_by_membership(args):
    n, mask = args
    config = CodeConfig.from_mask(n, mask)
    table = {(True, True): PairCase.A_BOTH_USER, (False, False): PairCase.B_BOTH_FROZEN,
             (False, True): PairCase.C_FROZEN_TOP_USER_BOTTOM,
             (True, False): PairCase.D_USER_TOP_FROZEN_BOTTOM}
    for psi in range(config.N // 2):
        key = ((mask >> 2 * psi) & 1 == 1, (mask >> (2 * psi + 1)) & 1 == 1)
        assert classify_pair(config, psi) is table[key]
        assert classify_pair(config, psi) is classify_pair(config, psi)
    with pytest.raises(IndexError):
        classify_pair(config, config.N // 2)
