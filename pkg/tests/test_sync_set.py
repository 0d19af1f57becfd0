import numpy as np
import pytest

from sst.packed_text import pack
from sst.sync_set import (SyncSet, compute_q_and_b, construct,
                          construct_deterministic, construct_packed_fast,
                          construct_randomized, load_sync_set,
                          packed_fast_applicable, save_sync_set,
                          validate_sync_set)
from sst.reference_oracles import naive_b_positions, naive_q_positions

from conftest import all_binary_texts, full_profile, random_text


def _modes(pt, tau, seeds=(0, 1)):
    yield construct_deterministic(pt, tau)
    if packed_fast_applicable(pt, tau):
        yield construct_packed_fast(pt, tau)
    for seed in seeds:
        yield construct_randomized(pt, tau, seed=seed)


def test_exhaustive_small_binary_valid():
    nmax = 12 if full_profile() else 9
    for n in range(2, nmax + 1):
        for seq in all_binary_texts(n):
            pt = pack(seq, 2)
            for tau in (1, 2, 3):
                if 2 * tau > n:
                    continue
                for s in _modes(pt, tau, seeds=(0,)):
                    assert validate_sync_set(pt, tau, s).ok


def test_random_texts_valid(rng):
    for sigma in (2, 4, 16):
        for _ in range(12):
            n = rng.randrange(20, 400)
            pt = pack(random_text(rng, n, sigma), sigma)
            tau = rng.randrange(1, n // 2 + 1)
            for s in _modes(pt, tau):
                assert validate_sync_set(pt, tau, s).ok


def test_deterministic_size_bound(rng):
    for _ in range(25):
        n = rng.randrange(30, 600)
        sigma = rng.choice([2, 4])
        pt = pack(random_text(rng, n, sigma), sigma)
        tau = rng.randrange(1, n // 6 + 2)
        s = construct_deterministic(pt, tau)
        assert len(s) <= 30 * n / tau


def test_empty_q_tighter_bound(rng):
    # without highly periodic windows the deterministic set stays small
    hits = 0
    while hits < 10:
        n = rng.randrange(40, 300)
        pt = pack(random_text(rng, n, 4), 4)
        tau = 6
        if 2 * tau > n or len(compute_q_and_b(pt, tau).q_positions):
            continue
        hits += 1
        s = construct_deterministic(pt, tau)
        assert len(s) <= 18 * n / tau


def test_boundary_layer_bound(rng):
    for _ in range(20):
        n = rng.randrange(30, 500)
        pt = pack(random_text(rng, n, 2), 2)
        tau = rng.randrange(3, n // 3 + 4)
        if 2 * tau > n:
            continue
        assert len(compute_q_and_b(pt, tau).b_positions) <= 6 * n / tau


def test_q_and_b_match_oracles(rng):
    for _ in range(15):
        n = rng.randrange(20, 120)
        seq = random_text(rng, n, 2)
        pt = pack(seq, 2)
        tau = rng.randrange(2, n // 2 + 1)
        psets = compute_q_and_b(pt, tau)
        assert list(psets.q_positions) == naive_q_positions(seq, tau)
        assert list(psets.b_positions) == naive_b_positions(seq, tau)


def test_unary_text_gives_empty_set():
    pt = pack([0] * 64, 2)
    s = construct_deterministic(pt, 8)
    assert len(s) == 0
    assert validate_sync_set(pt, 8, s).ok


def test_tampering_is_detected():
    # distinct contexts everywhere: all windows are selected, so emptying
    # one length-tau window by dropping two adjacent positions must be
    # reported as a density violation
    seq = list(range(24))
    pt = pack(seq, 24)
    s = construct_deterministic(pt, 2)
    assert validate_sync_set(pt, 2, s).ok
    keep = np.ones(len(s), dtype=bool)
    keep[10:12] = False
    smaller = SyncSet(2, pt.n, s.positions[keep])
    report = validate_sync_set(pt, 2, smaller)
    assert not report.ok and report.condition == "density"

    # repeating contexts: dropping one member of an equal-context class
    # leaves the rest behind and breaks consistency
    seq = [0, 1, 2, 3] * 10
    pt = pack(seq, 4)
    s = construct_deterministic(pt, 2)
    assert validate_sync_set(pt, 2, s).ok and len(s) >= 2
    drop = SyncSet(2, pt.n, s.positions[1:])
    report = validate_sync_set(pt, 2, drop)
    assert not report.ok and report.condition == "consistency"


def test_consistency_violation_witness():
    seq = [0, 1, 0, 1, 0, 0, 1, 0, 1, 0]
    pt = pack(seq, 2)
    s = construct_deterministic(pt, 1)
    drop = SyncSet(1, pt.n, s.positions[1:])
    report = validate_sync_set(pt, 1, drop)
    assert not report.ok
    if report.condition == "consistency":
        i, j = report.witness
        assert seq[i - 1:i + 1] == seq[j - 1:j + 1]


def test_structure_rejected():
    pt = pack([0, 1, 0, 1], 2)
    bad = SyncSet(1, 4, np.array([3, 2], dtype=np.int64))
    assert not validate_sync_set(pt, 1, bad).ok


def test_fast_equals_deterministic(rng):
    checked = 0
    while checked < 30:
        n = rng.randrange(20, 300)
        sigma = rng.choice([2, 4])
        pt = pack(random_text(rng, n, sigma), sigma)
        tau = rng.randrange(1, 9)
        if 2 * tau > n or not packed_fast_applicable(pt, tau):
            continue
        checked += 1
        a = construct_deterministic(pt, tau)
        b = construct_packed_fast(pt, tau)
        assert list(a.positions) == list(b.positions)


def test_construct_dispatch(rng):
    pt = pack(random_text(rng, 100, 2), 2)
    det = construct(pt, 3, mode="det")
    fast = construct(pt, 3, mode="fast")
    assert list(det.positions) == list(fast.positions)
    r0 = construct(pt, 3, mode="random", seed=5)
    r1 = construct(pt, 3, mode="random", seed=5)
    assert list(r0.positions) == list(r1.positions)
    with pytest.raises(ValueError):
        construct(pt, 3, mode="bogus")


def test_succ_and_sentinel(rng):
    pt = pack(random_text(rng, 60, 2), 2)
    s = construct_deterministic(pt, 4)
    assert s.sentinel == 60 - 8 + 2
    pos = list(s.positions)
    for i in range(1, 60 - 8 + 2):
        after = [p for p in pos if p >= i]
        assert s.succ(i) == (after[0] if after else s.sentinel)


def test_save_load_round_trip(tmp_path, rng):
    pt = pack(random_text(rng, 80, 2), 2)
    s = construct_deterministic(pt, 3)
    path = tmp_path / "set.txt"
    save_sync_set(s, path)
    back = load_sync_set(path)
    assert back.tau == 3 and back.n == 80
    assert list(back.positions) == list(s.positions)
    header = path.read_text().splitlines()[0]
    assert header == "# tau=3 n=80"


def test_load_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("tau=3 n=80\n1\n")
    with pytest.raises(ValueError):
        load_sync_set(path)
