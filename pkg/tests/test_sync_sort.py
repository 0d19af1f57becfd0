import numpy as np
import pytest

from sst.packed_text import pack
from sst.suffix_core import SuffixArrayIndex
from sst.sync_set import SyncSet, construct_deterministic
from sst.sync_sort import build_tprime, compute_d_values, sort_sync_suffixes

from conftest import all_binary_texts, full_profile, random_text


def _check_order(seq, tau):
    pt = pack(seq, max(2, max(seq) + 1))
    s = construct_deterministic(pt, tau)
    order = sort_sync_suffixes(pt, s)
    idx = SuffixArrayIndex(seq)
    want = sorted(s.positions, key=lambda p: idx.isa[p - 1])
    assert list(order.sorted_positions) == [int(p) for p in want]
    return order


def test_exhaustive_small_binary():
    nmax = 12 if full_profile() else 9
    for n in range(2, nmax + 1):
        for seq in all_binary_texts(n):
            for tau in (1, 2, 3):
                if 2 * tau > n:
                    continue
                _check_order(seq, tau)


def test_random_texts(rng):
    for sigma in (2, 4, 16):
        for _ in range(15):
            n = rng.randrange(12, 400)
            seq = random_text(rng, n, sigma)
            tau = rng.randrange(1, min(7, n // 2) + 1)
            _check_order(seq, tau)


def test_periodic_texts():
    for seq in ([0, 1] * 30, [0, 0, 1] * 20, [0] * 40 + [1] + [0] * 20):
        for tau in (2, 3, 6):
            _check_order(seq, tau)


def test_rank_of_index_inverts_order(rng):
    seq = random_text(rng, 150, 2)
    pt = pack(seq, 2)
    s = construct_deterministic(pt, 3)
    order = sort_sync_suffixes(pt, s)
    for t in range(len(order)):
        r = int(order.rank_of_index[t])
        assert int(order.order[r - 1]) == t + 1


def test_tprime_orders_like_text_suffixes(rng):
    seq = random_text(rng, 160, 2)
    pt = pack(seq, 2)
    s = construct_deterministic(pt, 4)
    tp = build_tprime(pt, s)
    idx = SuffixArrayIndex(seq)
    pos = list(s.positions)
    sym = list(tp.symbols)
    # suffix comparisons of the reduced string agree with text suffix
    # comparisons at the matching set positions
    for a in range(0, len(pos), 3):
        for b in range(0, len(pos), 3):
            assert ((sym[a:] < sym[b:])
                    == (idx.isa[pos[a] - 1] < idx.isa[pos[b] - 1]))


def test_d_is_zero_without_long_gaps(rng):
    seq = random_text(rng, 120, 4)
    pt = pack(seq, 4)
    s = construct_deterministic(pt, 3)
    sp = list(s.positions)
    gaps = [b - a for a, b in zip(sp, sp[1:])] + [s.sentinel - sp[-1]]
    d = compute_d_values(pt, 3, s.positions)
    for g, dv in zip(gaps, d):
        if g <= 3:
            assert dv == 0
        else:
            assert dv != 0


def test_run_gap_gets_signed_d():
    # one long unary run; positions straddling it get nonzero d
    seq = [0, 1, 1, 0] + [0] * 30 + [1, 0, 1, 1]
    pt = pack(seq, 2)
    s = construct_deterministic(pt, 3)
    d = compute_d_values(pt, 3, s.positions)
    assert np.any(d != 0)


def test_rejects_uncovered_gap():
    # tau=2 admits no highly periodic window, so a gap above tau is
    # always a precondition violation
    seq = [0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 0]
    pt = pack(seq, 2)
    bad = SyncSet(2, len(seq), np.array([1], dtype=np.int64))
    with pytest.raises(AssertionError):
        compute_d_values(pt, 2, bad.positions)
