"""Sorting the suffixes that start at synchronizing positions.

Each synchronizing position contributes one symbol of a reduced string:
the fragment of length up to 3tau starting there, padded so that equal
integer order means equal lexicographic order, plus a tie-breaking
integer d that accounts for long highly periodic runs.  Sorting the
suffixes of the reduced string then sorts the original suffixes at the
synchronizing positions.
"""

from dataclasses import dataclass

import numpy as np

from .packed_text import extract, substring_period
from .suffix_core import SuffixArrayIndex, build_suffix_array


@dataclass
class TPrimeString:
    """Reduced string: one rank-reduced symbol per synchronizing position."""

    tau: int
    n: int
    positions: np.ndarray
    symbols: np.ndarray
    d_values: np.ndarray

    @property
    def sentinel(self):
        return self.n - 2 * self.tau + 2

    def __len__(self):
        return len(self.symbols)


def _padded_value(key_value, length, tau, sigma):
    """Integer of the fragment padded with zeros then ones to 6tau digits."""
    zeros = 6 * tau - 2 * length
    ones = (sigma ** length - 1) // (sigma - 1)
    return key_value * sigma ** (zeros + length) + ones


def compute_d_values(pt, tau, positions):
    """Tie-breaker d for each position, given the next one in the set."""
    n = pt.n
    sp = np.asarray(positions, dtype=np.int64)
    m = len(sp)
    d = np.zeros(m, dtype=np.int64)
    if m == 0:
        return d
    nxt = np.empty(m, dtype=np.int64)
    nxt[:-1] = sp[1:]
    nxt[-1] = n - 2 * tau + 2
    gaps = nxt - sp
    for i in np.nonzero(gaps > tau)[0]:
        s = int(sp[i])
        p = substring_period(pt, s + 1, 3 * tau - 1)
        if 3 * p > tau:
            raise AssertionError(
                "gap > tau outside a highly periodic run at %d" % s)
        c = int(nxt[i]) + 2 * tau - 1
        if c <= n and pt.char_at(c) > pt.char_at(c - p):
            d[i] = n - int(gaps[i])
        else:
            d[i] = int(gaps[i]) - n
    return d


def build_tprime(pt, s):
    """Encode the reduced string for a synchronizing set."""
    n, tau = pt.n, s.tau
    sp = np.asarray(s.positions, dtype=np.int64)
    m = len(sp)
    sigma = pt.sigma
    d = compute_d_values(pt, tau, sp)
    if m == 0:
        return TPrimeString(tau, n, sp, np.zeros(0, dtype=np.int64), d)
    bits = pt.bits_per_symbol
    mod = 2 * n + 3
    if 6 * tau * bits + int(mod).bit_length() <= 62:
        sym = pt.symbols.astype(np.int64)
        full = sp <= n - 3 * tau + 1
        keys = np.zeros(m, dtype=np.int64)
        fp = sp[full] - 1
        acc = np.zeros(len(fp), dtype=np.int64)
        for t in range(3 * tau):
            acc = acc * sigma + sym[fp + t]
        keys[full] = _padded_value(0, 3 * tau, tau, sigma) \
            + acc * sigma ** (3 * tau)
        for i in np.nonzero(~full)[0]:
            ln = n - int(sp[i]) + 1
            kv = extract(pt, int(sp[i]), ln).value
            keys[i] = _padded_value(kv, ln, tau, sigma)
        encoded = keys * mod + (d + n + 1)
        _, reduced = np.unique(encoded, return_inverse=True)
    else:
        encoded = []
        for i in range(m):
            ln = min(3 * tau, n - int(sp[i]) + 1)
            kv = extract(pt, int(sp[i]), ln).value
            encoded.append(_padded_value(kv, ln, tau, sigma) * mod
                           + int(d[i]) + n + 1)
        ranks = {v: r for r, v in enumerate(sorted(set(encoded)))}
        reduced = np.array([ranks[v] for v in encoded], dtype=np.int64)
    return TPrimeString(tau, n, sp, reduced.astype(np.int64), d)


@dataclass
class SortedSyncOrder:
    """Suffix order of the reduced string, mapped back to text positions."""

    tprime: TPrimeString
    suffix_index: SuffixArrayIndex
    order: np.ndarray
    sorted_positions: np.ndarray
    rank_of_index: np.ndarray

    def __len__(self):
        return len(self.order)


def sort_sync_suffixes(pt, s):
    """Sort the text suffixes starting at synchronizing positions.

    Returns the order as indices into s.positions (1-based), the
    positions themselves in suffix order, and the inverse permutation.
    """
    tp = build_tprime(pt, s)
    idx = build_suffix_array(tp.symbols)
    order = idx.sa
    m = len(order)
    if m:
        sorted_positions = tp.positions[order - 1]
    else:
        sorted_positions = np.zeros(0, dtype=np.int64)
    return SortedSyncOrder(tp, idx, order, sorted_positions, idx.isa)
