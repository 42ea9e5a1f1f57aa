import numpy as np
import pytest

from polarcode.construction import (bit_reversed, channel_llr_mean, construct, construct_awgn_ga,
                                    construct_bec, select_info_set)
from polarcode.oracle import kron_power
from polarcode.parallel import case_d_pairs


def _rank(vectors, width):
    rows = list(vectors)
    r = 0
    for col in range(width):
        p = next((k for k in range(r, len(rows)) if (rows[k] >> col) & 1), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for k in range(len(rows)):
            if k != r and (rows[k] >> col) & 1:
                rows[k] ^= rows[r]
        r += 1
    return r


def genie_erasure_probabilities(n, eps):
    """Exact P(u_i unrecoverable | u_0..u_{i-1} known) on a BEC, by enumeration.

    Unknowns are u_i..u_{N-1}; each unerased x_j contributes column j of G
    restricted to those rows. u_i is recoverable iff the unit vector for u_i
    lies in the span of those columns.
    """
    N = 1 << n
    G = kron_power(n)
    z = [0.0] * N
    for pattern in range(1 << N):
        seen = [j for j in range(N) if (pattern >> j) & 1]
        p = (1 - eps) ** len(seen) * eps ** (N - len(seen))
        for i in range(N):
            cols = [sum(G[k, j] << (k - i) for k in range(i, N)) for j in seen]
            if _rank(cols, N - i) != _rank(cols + [1], N - i):
                z[i] += p
    return z


def test_bec_examples():
    np.testing.assert_allclose(construct_bec(1, 0.5).z, [0.75, 0.25])
    np.testing.assert_allclose(construct_bec(2, 0.5).z, [0.9375, 0.5625, 0.4375, 0.0625])
    rel = construct_bec(6, 1e-9).reliability
    assert np.all(rel > 1 - 1e-6)


@pytest.mark.parametrize("n,eps", [(2, 0.5), (3, 0.5), (3, 0.2)])
def test_bec_matches_exact_enumeration(n, eps):
    np.testing.assert_allclose(construct_bec(n, eps).z, genie_erasure_probabilities(n, eps),
                               rtol=1e-12, atol=1e-15)


def test_bec_range():
    for eps in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            construct_bec(3, eps)


def test_bec_deep_recursion_is_finite():
    prof = construct_bec(12, 0.1)
    assert np.all(np.isfinite(prof.metric))


def test_select_examples():
    prof = construct_bec(3, 0.5)
    assert select_info_set(prof, 0).info_set == ()
    assert select_info_set(prof, 8).info_set == tuple(range(8))
    A = select_info_set(prof, 5).info_set
    # z(n=3) = .996 .879 .809 .316 .684 .191 .121 .004 from the recursion above.
    assert A == (3, 4, 5, 6, 7)
    assert 7 in A and 0 not in A
    with pytest.raises(ValueError):
        select_info_set(prof, 9)


def test_select_ties_go_to_larger_index():
    prof = construct_awgn_ga(3, 0.0, "ebno", rate=0.0)  # all means zero
    assert select_info_set(prof, 3).info_set == (5, 6, 7)


def test_bit_reversed_bec_gives_example8_set():
    assert select_info_set(bit_reversed(construct_bec(3, 0.5)), 5).info_set == (1, 3, 5, 6, 7)


def test_ga_polarization_ordering():
    for snr in (-2.0, 0.0, 3.0, 6.0):
        m = construct_awgn_ga(1, snr).metric
        assert m[0] < m[1]


def test_ga_n1_values():
    m0 = channel_llr_mean(0.0, "esno")
    assert m0 == pytest.approx(4.0)
    m = construct_awgn_ga(1, 0.0).metric
    assert m[1] == pytest.approx(8.0)
    # phi(4) from the lower segment; check-node output satisfies
    # phi(m_minus) = 1 - (1 - phi(4))^2.
    phi = lambda x: np.exp(-0.4527 * x**0.86 + 0.0218)
    assert phi(m[0]) == pytest.approx(1 - (1 - phi(4.0)) ** 2, rel=1e-9)


def test_ga_no_case_d_n10():
    config = construct(10, 512, "ga", 2.0, "ebno")
    assert config.K == 512
    assert case_d_pairs(config) == []


def test_ga_monotone_in_snr():
    # Nondecreasing up to rounding: very poor channels sit on a plateau near
    # m = 0.0294 (where the approximated phi crosses 1) and the bisection
    # there can wobble in the last bits.
    prev = None
    for snr in np.arange(-3.0, 7.01, 0.25):
        m = construct_awgn_ga(8, float(snr)).metric
        if prev is not None:
            assert np.all(m >= prev * (1 - 1e-12))
        prev = m


def test_ga_ebno_needs_rate():
    with pytest.raises(ValueError):
        construct_awgn_ga(3, 2.0, "ebno")
    with pytest.raises(ValueError):
        channel_llr_mean(float("inf"))
    assert channel_llr_mean(2.0, "ebno", 0.5) == pytest.approx(2 * 10 ** 0.2)


@pytest.mark.parametrize("method,param", [("bec", 0.3), ("ga", 1.0)])
def test_nesting_sanity(method, param):
    for n in (3, 6, 9):
        N = 1 << n
        for K in (1, N // 3, N - 1):
            A = construct(n, K, method, param).info_set
            assert N - 1 in A
            assert 0 not in A


def test_construct_rejects_unknowns():
    with pytest.raises(ValueError):
        construct(3, 2, "mc")
    with pytest.raises(ValueError):
        construct(3, 2, "bec", 0.5, order="random")
