import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sst.inversions import (build_reduction_general, build_reduction_small,
                            count_inversions_via_bwt, default_small_width,
                            extract_wavelet_blocks)
from sst.reference_oracles import (fenwick_inversions, naive_inversions,
                                   naive_wavelet_bitvectors)

from conftest import full_profile


def _bits(rt):
    return [rt.bits.char_at(i) for i in range(1, rt.bits.n + 1)]


def _padded(a, domain):
    m = 1
    while m < max(2, len(a)):
        m *= 2
    return list(a) + [domain - 1] * (m - len(a))


def test_small_layout_frozen():
    # [1, 0] with k=1: per entry rev(value), 01, 1, zero-interleaved
    # index bits, closing 0
    rt = build_reduction_small([1, 0], 1)
    assert (rt.m, rt.k, rt.variant) == (2, 1, "small")
    assert _bits(rt) == [1, 0, 1, 1, 0, 0, 0,
                         0, 0, 1, 1, 0, 1, 0]


def test_general_layout_frozen():
    rt = build_reduction_general([1, 0])
    assert (rt.m, rt.k, rt.variant) == (2, 1, "general")
    assert _bits(rt) == [1, 0, 1, 1, 0, 0, 0, 1, 0,
                         0, 0, 1, 1, 0, 1, 0, 1, 0]


def _pow2_len(m):
    p = 2
    while p < m:
        p *= 2
    return p


def test_layout_lengths(rng):
    for _ in range(10):
        m = rng.randrange(1, 40)
        logm = _pow2_len(m).bit_length() - 1
        k = rng.randrange(1, logm + 1)
        a = [rng.randrange(1 << k) for _ in range(m)]
        rt = build_reduction_small(a, k)
        assert rt.bits.n == rt.m * (3 + 2 * logm + 2 * k)
        rg = build_reduction_general(a)
        assert rg.bits.n == rg.m * (4 * logm + 5)


def test_domain_errors():
    with pytest.raises(ValueError):
        build_reduction_small([2], 1)
    with pytest.raises(ValueError):
        build_reduction_small([0], 0)
    with pytest.raises(ValueError):
        build_reduction_small([0, 1, 2, 3], 9)
    with pytest.raises(ValueError):
        build_reduction_general([4, 0])
    with pytest.raises(ValueError):
        build_reduction_general([-1])


def test_frozen_counts():
    assert count_inversions_via_bwt([2, 0, 1], "small", k=2) == 2
    assert count_inversions_via_bwt([2, 0, 1], "general") == 2
    assert count_inversions_via_bwt([2, 0, 3, 1], "general") == 3


def test_frozen_bitvectors():
    blocks = extract_wavelet_blocks([2, 0, 3, 1], "general")
    assert list(blocks[""]) == [1, 0, 1, 0]
    assert list(blocks["0"]) == [0, 1]
    assert list(blocks["1"]) == [0, 1]


def test_degenerate_arrays():
    assert count_inversions_via_bwt([], "general") == 0
    assert count_inversions_via_bwt([7], "general") == 0
    assert count_inversions_via_bwt([3, 3, 3, 3], "general") == 0
    assert count_inversions_via_bwt(list(range(16)), "general") == 0
    rev = list(range(15, -1, -1))
    assert count_inversions_via_bwt(rev, "general") == 15 * 16 // 2
    assert count_inversions_via_bwt(rev, "small", k=4) == 15 * 16 // 2


def test_random_arrays_both_variants(rng):
    trials = 120 if full_profile() else 50
    for _ in range(trials):
        m = rng.randrange(0, 70)
        mp = max(2, 1 << (m - 1).bit_length()) if m > 1 else 2
        logm = mp.bit_length() - 1
        k = rng.randrange(1, logm + 1)
        a = [rng.randrange(1 << k) for _ in range(m)]
        want = naive_inversions(a)
        assert fenwick_inversions(a) == want
        assert count_inversions_via_bwt(a, "small", k=k) == want
        assert count_inversions_via_bwt(a, "general") == want


def test_full_range_general(rng):
    for _ in range(30):
        m = rng.randrange(2, 130)
        mp = 1 << (m - 1).bit_length()
        a = [rng.randrange(mp) for _ in range(m)]
        assert count_inversions_via_bwt(a, "general") == naive_inversions(a)


def test_blocks_match_direct_wavelet(rng):
    for _ in range(25):
        m = rng.randrange(0, 40)
        mp = max(2, 1 << (m - 1).bit_length()) if m > 1 else 2
        logm = mp.bit_length() - 1
        k = rng.randrange(1, logm + 1)
        a = [rng.randrange(1 << k) for _ in range(m)]
        blocks = extract_wavelet_blocks(a, "small", k=k)
        for label, bits in naive_wavelet_bitvectors(
                _padded(a, 1 << k), k).items():
            assert list(blocks.get(label, [])) == bits
        a2 = [rng.randrange(mp) for _ in range(m)]
        blocks = extract_wavelet_blocks(a2, "general")
        for label, bits in naive_wavelet_bitvectors(
                _padded(a2, mp), logm).items():
            assert list(blocks.get(label, [])) == bits


def test_naive_bwt_backend(rng):
    for _ in range(8):
        m = rng.randrange(2, 40)
        mp = 1 << (m - 1).bit_length()
        a = [rng.randrange(mp) for _ in range(m)]
        assert count_inversions_via_bwt(
            a, "general", force_naive_bwt=True) == naive_inversions(a)


def test_default_small_width():
    assert default_small_width(10) == 1
    assert default_small_width(1 << 16) == 2
    assert count_inversions_via_bwt([1, 0, 1, 0]) == 3


def test_unknown_variant_rejected():
    with pytest.raises(ValueError):
        count_inversions_via_bwt([1, 0], variant="bogus")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 63), max_size=40))
def test_general_variant_property(raw):
    mp = _pow2_len(len(raw))
    a = [v % mp for v in raw]
    assert count_inversions_via_bwt(a, "general") == naive_inversions(a)
