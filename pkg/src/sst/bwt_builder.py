"""Burrows-Wheeler transform built from a synchronizing set.

The pipeline never sorts all suffixes of the text.  It sorts only the
suffixes starting at synchronizing positions, encodes the neighborhood
of each such position as an integer window, and reads the transform out
of a wavelet tree over those windows: every distinguishing label
contributes one contiguous block.  Positions inside long highly
periodic stretches carry no synchronizing position; their blocks are
filled with the dominant symbol and then patched by a rank computation
over the periodic runs.  A plain suffix-array fallback covers inputs
too small or too wide for the packed pipeline.
"""

from collections import Counter
from functools import cmp_to_key

import numpy as np

from .lce_index import LceIndex, default_tau
from .packed_text import bulk_keys, extract, period_of, substring_period
from .succinct import build_wavelet_degree
from .suffix_core import SuffixArrayIndex
from .sync_set import SyncSet, construct
from .sync_sort import sort_sync_suffixes


class BwtResult:
    """Transformed symbols, the rank of the whole text, and metadata."""

    __slots__ = ("bwt", "primary_index", "meta")

    def __init__(self, bwt, primary_index, meta):
        self.bwt = np.asarray(bwt)
        self.primary_index = int(primary_index)
        self.meta = dict(meta)

    def __len__(self):
        return len(self.bwt)


class PeriodicRun:
    """A maximal periodic run whose start needs a patched output slot.

    lsig holds (|U'|, k, |U''|) for the decomposition U' U^k U'' of the
    run body, where U is the canonical rotation of the period word.
    """

    __slots__ = ("j", "e", "type", "lroot_id", "lsig")

    def __init__(self, j, e, type, lroot_id, lsig):
        self.j = int(j)
        self.e = int(e)
        self.type = int(type)
        self.lroot_id = int(lroot_id)
        self.lsig = tuple(int(v) for v in lsig)


class FreqTable:
    """Occurrence counts of all substrings of one fixed length."""

    __slots__ = ("length", "keys", "counts")

    def __init__(self, length, keys, counts):
        self.length = int(length)
        self.keys = keys
        self.counts = counts

    def get(self, key_value):
        i = int(np.searchsorted(self.keys, key_value))
        if i < len(self.keys) and self.keys[i] == key_value:
            return int(self.counts[i])
        return 0

    def total(self):
        return int(np.sum(self.counts))


def choose_sentinel(pt, tau):
    """Smallest symbol c with c plus the text prefix not highly periodic.

    >>> from .packed_text import pack
    >>> choose_sentinel(pack([0, 0, 0, 0, 0, 0], 2), 3)
    1
    >>> choose_sentinel(pack([1, 1, 1, 1, 1, 1], 2), 3)
    0
    """
    if pt.n < 2 * tau - 1:
        raise ValueError("text shorter than the sentinel context")
    head = [pt.char_at(k) for k in range(1, 2 * tau)]
    for c in range(pt.sigma):
        if 3 * period_of([c] + head) > tau:
            return c
    raise AssertionError("every symbol extends a highly periodic prefix")


def augment_sync_set(pt, tau, s, b_sentinel):
    """Add every occurrence of b_sentinel plus T[1..2tau) to the set."""
    n = pt.n
    m = n - 2 * tau + 1
    if m < 1:
        return s
    head_len = 2 * tau - 1
    sym = np.asarray(pt.symbols, dtype=np.int64)
    if head_len * pt.bits_per_symbol <= 62:
        keys = bulk_keys(pt, head_len, start=2, stop=m + 1)
        want = extract(pt, 1, head_len).value
        hits = np.nonzero((sym[:m] == b_sentinel) & (keys == want))[0] + 1
    else:
        want = extract(pt, 1, head_len)
        hits = np.array([j for j in range(1, m + 1)
                         if sym[j - 1] == b_sentinel
                         and extract(pt, j + 1, head_len) == want],
                        dtype=np.int64)
    if not len(hits):
        return s
    merged = np.union1d(np.asarray(s.positions, dtype=np.int64), hits)
    return SyncSet(tau, n, merged)


def count_freq(pt, ell):
    """Frequency table of all length-ell substrings of the text."""
    if ell < 1:
        raise ValueError("length must be positive")
    if ell > pt.n:
        return FreqTable(ell, np.zeros(0, dtype=np.int64),
                         np.zeros(0, dtype=np.int64))
    if ell * pt.bits_per_symbol <= 62:
        u, c = np.unique(bulk_keys(pt, ell), return_counts=True)
        return FreqTable(ell, u, c.astype(np.int64))
    ctr = Counter(extract(pt, i, ell).value
                  for i in range(1, pt.n - ell + 2))
    u = np.array(sorted(ctr), dtype=object)
    c = np.array([ctr[v] for v in u], dtype=np.int64)
    return FreqTable(ell, u, c)


def _window_codes(pt, tau, positions, b_sentinel, base):
    # digit t carries T[s - tau + t]; T[0] = b_sentinel, T[k < 0] = 0
    sym = np.asarray(pt.symbols, dtype=np.int64)
    pad = np.zeros(tau, dtype=np.int64)
    pad[tau - 1] = b_sentinel
    ext = np.concatenate([pad, sym])
    starts = np.asarray(positions, dtype=np.int64) - 1
    w = np.zeros(len(starts), dtype=np.int64)
    for t in range(3 * tau - 1, -1, -1):
        w = w * base + ext[starts + t]
    return w


def build_w(pt, tau, sorted_order, b_sentinel):
    """Reversed context windows of the sorted positions, as integers.

    W[i] reads the window T[s - tau .. s + 2tau) of the i-th position in
    suffix order, least significant digit at the left edge, which equals
    the reversed window interpreted as a 3tau-digit base-sigma number.
    """
    return _window_codes(pt, tau, sorted_order.sorted_positions,
                         b_sentinel, pt.sigma)


def _label_digits(v, d, sigma):
    out = [0] * d
    for t in range(d - 1, -1, -1):
        out[t] = v % sigma
        v //= sigma
    return out


def _block_rank(wt, code, w_index, depth, bits):
    """Entries before w_index inside the depth-level node holding code."""
    sp2 = 1 << bits
    q = w_index
    label = 0
    for d in range(depth):
        c = (code >> (bits * (wt.depth - 1 - d))) & (sp2 - 1)
        digits = wt.node_by_value(d, label)
        q = int(np.count_nonzero(digits[:q] == c))
        label = (label << bits) | c
    return q


def _emit_blocks(pt, tau, saug, order, b_sentinel):
    """Preorder walk over occurring labels, emitting the unpatched output.

    Returns the output array, the block base offset of every periodic
    leaf label, and the slot of the whole-text suffix when its
    distinguishing label was reached during the walk.
    """
    n, sigma = pt.n, pt.sigma
    bits = pt.bits_per_symbol
    sp2 = 1 << bits
    dmax = 3 * tau - 1
    two_tau = 2 * tau

    occ = [None] * (dmax + 1)
    for d in range(1, dmax):
        occ[d] = np.unique(bulk_keys(pt, d))
    leaf_keys, leaf_counts = np.unique(bulk_keys(pt, dmax),
                                       return_counts=True)
    occ[dmax] = leaf_keys
    ft = FreqTable(dmax, leaf_keys, leaf_counts.astype(np.int64))

    tcodes = _window_codes(pt, tau, order.sorted_positions, b_sentinel, sp2)
    wt = build_wavelet_degree(tcodes, sp2, 3 * tau)

    sig2t = sigma ** two_tau
    yes_vals = bulk_keys(pt, two_tau)[np.asarray(saug.positions) - 1] \
        if len(saug) else np.zeros(0, dtype=np.int64)
    if sig2t <= 1 << 22:
        dense = np.zeros(sig2t, dtype=bool)
        dense[yes_vals] = True
        yes = dense.__getitem__
    else:
        yes = set(int(v) for v in yes_vals).__contains__

    suffix_key = {d: extract(pt, n - d + 1, d).value
                  for d in range(1, dmax)}
    prefix_key = {d: extract(pt, 1, d).value for d in range(1, dmax + 1)}
    if len(order):
        i1 = int(order.rank_of_index[0])
        code1 = int(tcodes[i1 - 1])

    parts = []
    emitted = 0
    fbase = {}
    primary = None
    stack = [(int(occ[1][t]), int(occ[1][t]), 1)
             for t in range(len(occ[1]) - 1, -1, -1)]
    while stack:
        v, rk, d = stack.pop()
        if d >= two_tau and yes(v % sig2t):
            block = wt.node_by_value(d, rk)
            if prefix_key[d] == v:
                # whole-text suffix sits in this block; pruning above
                # guarantees at most one label matches a text prefix
                assert primary is None
                primary = emitted + _block_rank(wt, code1, i1 - 1,
                                                d, bits) + 1
            parts.append(block)
            emitted += len(block)
            continue
        if d == dmax:
            f = ft.get(v)
            digs = _label_digits(v, d, sigma)
            fill = digs[period_of(digs) - 1]
            parts.append(np.full(f, fill, dtype=np.int64))
            fbase[v] = emitted
            emitted += f
            continue
        if suffix_key[d] == v:
            parts.append(np.array([pt.char_at(n - d)], dtype=np.int64))
            emitted += 1
        nxt = occ[d + 1]
        lo = int(np.searchsorted(nxt, v * sigma))
        hi = int(np.searchsorted(nxt, (v + 1) * sigma))
        step = 1 << (bits * d)
        for t in range(hi - 1, lo - 1, -1):
            cv = int(nxt[t])
            stack.append((cv, rk + (cv - v * sigma) * step, d + 1))
    assert emitted == n, "walk emitted a wrong total"
    bwt = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return bwt.astype(np.int64), fbase, primary


def derive_runs(pt, tau, s):
    """Periodic runs between synchronizing positions more than tau apart."""
    n = pt.n
    sp = np.asarray(s.positions, dtype=np.int64)
    prev = np.concatenate([[0], sp])
    nxt = np.concatenate([sp, [n - 2 * tau + 2]])
    runs = []
    roots = []
    root_ids = {}
    for i in np.nonzero(nxt - prev > tau)[0]:
        j = int(prev[i]) + 1
        e = int(nxt[i]) + 2 * tau - 1
        p = substring_period(pt, j, 3 * tau - 1)
        if 3 * p > tau:
            raise AssertionError("run at %d is not highly periodic" % j)
        w0 = [pt.char_at(j + t) for t in range(p)]
        delta = min(range(p), key=lambda r: w0[r:] + w0[:r])
        root = tuple(w0[delta:] + w0[:delta])
        rid = root_ids.setdefault(root, len(roots))
        if rid == len(roots):
            roots.append(root)
        k, u2 = divmod(e - j - delta, p)
        assert k >= 1
        if e <= n:
            assert pt.char_at(e) != pt.char_at(e - p), "no period break"
        typ = 1 if e <= n and pt.char_at(e) > pt.char_at(e - p) else -1
        runs.append(PeriodicRun(j, e, typ, rid, (delta, k, u2)))
    assert len(runs) <= len(sp) + 1
    return runs, roots


def offline_range_count(points, queries):
    """counts[q] = number of points with x >= x_min(q) and y <= y_max(q).

    >>> offline_range_count([(1, 1), (2, 2)], [(1, 2)])
    [2]
    """
    ys = sorted({y for _, y in points})
    comp = {y: i + 1 for i, y in enumerate(ys)}
    tree = [0] * (len(ys) + 1)

    def add(i):
        while i <= len(ys):
            tree[i] += 1
            i += i & (-i)

    def pref(i):
        t = 0
        while i > 0:
            t += tree[i]
            i -= i & (-i)
        return t

    pts = sorted(points, key=lambda t: t[0], reverse=True)
    out = [0] * len(queries)
    ptr = 0
    for q in sorted(range(len(queries)), key=lambda q: queries[q][0],
                    reverse=True):
        xmin, ymax = queries[q]
        while ptr < len(pts) and pts[ptr][0] >= xmin:
            add(comp[pts[ptr][1]])
            ptr += 1
        r = np.searchsorted(ys, ymax, side="right")
        out[q] = pref(int(r))
    return out


def _phase_tables(a, kk, dlt, p, t, cap):
    # valid exponents of one run form [A..B]; A from the length floor cap,
    # B from the run start; prefix sums let rank sums close in O(log)
    A = np.maximum(1, -((cap - t - a) // -p))
    B = kk - (t > dlt)
    w = np.maximum(0, B - A + 1)
    ls = np.sort(A)
    rs = np.sort(A + w)
    lp = np.concatenate([[0], np.cumsum(ls)])
    rp = np.concatenate([[0], np.cumsum(rs)])
    return ls, lp, rs, rp, int(w.sum())


def _ramp_sum(tables, kq):
    # sum over runs of max(0, min(kq, R) - L)
    ls, lp, rs, rp, _ = tables
    ir = int(np.searchsorted(rs, kq, side="right"))
    il = int(np.searchsorted(ls, kq, side="left"))
    return int(rp[ir]) - kq * ir + kq * il - int(lp[il])


def correct_periodic(pt, tau, runs, bwt, bases, roots, lce=None):
    """Patch the run-start slots of the filled blocks, in place.

    bases maps the integer key of each periodic leaf label to the output
    offset of its block.  Returns the slot of the whole-text suffix when
    position 1 starts a run, else None.  Without an lce argument the
    tail comparisons fall back to a full suffix sort.
    """
    if not runs:
        return None
    n = pt.n
    cap = 3 * tau - 1
    uniq_e = sorted({r.e for r in runs})
    body = [e for e in uniq_e if e <= n]
    if lce is None:
        idx = SuffixArrayIndex(np.asarray(pt.symbols, dtype=np.int64))
        tr = {e: (0 if e > n else int(idx.isa[e - 1])) for e in uniq_e}
    else:
        def cmp(ea, eb):
            if ea == eb:
                return 0
            la, lb = n - ea + 1, n - eb + 1
            ell = lce.query(ea, eb)
            if ell >= la or ell >= lb:
                return -1 if la < lb else 1
            return -1 if pt.char_at(ea + ell) < pt.char_at(eb + ell) else 1
        ordered = [e for e in uniq_e if e > n] + sorted(body,
                                                       key=cmp_to_key(cmp))
        tr = {e: i for i, e in enumerate(ordered)}

    m = len(runs)
    rid = np.array([r.lroot_id for r in runs], dtype=np.int64)
    typ = np.array([r.type for r in runs], dtype=np.int64)
    dlt = np.array([r.lsig[0] for r in runs], dtype=np.int64)
    kk = np.array([r.lsig[1] for r in runs], dtype=np.int64)
    u2 = np.array([r.lsig[2] for r in runs], dtype=np.int64)
    tailr = np.array([tr[r.e] for r in runs], dtype=np.int64)
    x = dlt + kk * np.array([len(roots[r.lroot_id]) for r in runs],
                            dtype=np.int64)
    rprime = np.zeros(m, dtype=np.int64)

    for root_val in np.unique(rid):
        p = len(roots[int(root_val)])
        for sign in (-1, 1):
            grp = np.nonzero((rid == root_val) & (typ == sign))[0]
            if not len(grp):
                continue
            # list order realizes the suffix order of equal-exponent
            # members: ascending tail break for sign -1, descending for +1
            key2 = u2[grp] if sign < 0 else -u2[grp]
            lorder = grp[np.lexsort((tailr[grp], key2))]
            pos_of = {int(g): i for i, g in enumerate(lorder)}
            points = [(int(x[g]), pos_of[int(g)]) for g in grp]
            queries = []
            qmap = []
            u2_sorted = u2[lorder]
            for g in grp:
                queries.append((int(x[g]), pos_of[int(g)]))
                qmap.append((int(g), 1))
                if sign < 0:
                    # equal-exponent members shorter than the label
                    # cannot exist; drop list entries below the floor
                    beta = cap - int(x[g])
                    ylo = int(np.searchsorted(u2_sorted, beta, side="left"))
                    if ylo > 0:
                        queries.append((int(x[g]), ylo - 1))
                        qmap.append((int(g), -1))
            counts = offline_range_count(points, queries)
            for (g, w_), c in zip(qmap, counts):
                rprime[g] += w_ * c

        neg = np.nonzero((rid == root_val) & (typ == -1))[0]
        pos = np.nonzero((rid == root_val) & (typ == 1))[0]
        tables = {}

        def tabs(tag, sel, t):
            if (tag, t) not in tables:
                tables[tag, t] = _phase_tables(u2[sel], kk[sel], dlt[sel],
                                               p, t, cap)
            return tables[tag, t]

        for g in neg:
            rprime[g] += _ramp_sum(tabs(-1, neg, int(dlt[g])), int(kk[g]))
        for g in pos:
            t = tabs(1, pos, int(dlt[g]))
            rprime[g] += t[4] - _ramp_sum(t, int(kk[g]) + 1)
            rprime[g] += tabs(-1, neg, int(dlt[g]))[4]

    bits = pt.bits_per_symbol
    leaf_keys = bulk_keys(pt, cap) if cap * bits <= 62 else None
    primary_slot = None
    for i, r in enumerate(runs):
        if leaf_keys is not None:
            key = int(leaf_keys[r.j - 1])
        else:
            key = extract(pt, r.j, cap).value
        if key not in bases:
            raise AssertionError("no block recorded for run at %d" % r.j)
        slot = bases[key] + int(rprime[i])
        if r.j == 1:
            primary_slot = slot
        else:
            bwt[slot - 1] = pt.char_at(r.j - 1)
    return primary_slot


def _naive_result(pt, tau, reason="naive-fallback"):
    sym = np.asarray(pt.symbols, dtype=np.int64)
    idx = SuffixArrayIndex(sym)
    sa = idx.sa
    bwt = sym[sa - 2]
    primary = int(np.nonzero(sa == 1)[0][0]) + 1
    meta = {"n": pt.n, "sigma": pt.sigma, "tau": int(tau),
            "primary_index": primary, "sync_size": 0, "pipeline": reason}
    if pt.sigma <= 256:
        bwt = bwt.astype(np.uint8)
    return BwtResult(bwt, primary, meta)


def build_bwt(pt, tau=None, force_naive=False):
    """Transform the text, preferring the synchronizing-set pipeline.

    >>> from .packed_text import pack
    >>> res = build_bwt(pack([1, 0, 2, 0, 2, 0], 3))
    >>> [int(c) for c in res.bwt], res.primary_index
    ([2, 2, 1, 0, 0, 0], 4)
    """
    n = pt.n
    if tau is None:
        tau = default_tau(n, pt.sigma)
    tau = int(tau)
    if tau < 1:
        raise ValueError("tau must be positive")
    if force_naive or n < 3 * tau - 1 or 3 * tau * pt.bits_per_symbol > 62:
        return _naive_result(pt, tau)
    b_sent = choose_sentinel(pt, tau)
    s = construct(pt, tau, mode="fast")
    saug = augment_sync_set(pt, tau, s, b_sent)
    order = sort_sync_suffixes(pt, saug)
    bwt, fbase, primary = _emit_blocks(pt, tau, saug, order, b_sent)
    runs, roots = derive_runs(pt, tau, saug)
    if runs:
        lce = LceIndex(pt, tau, sync=saug, order=order)
        slot = correct_periodic(pt, tau, runs, bwt, fbase, roots, lce=lce)
        if slot is not None:
            assert primary is None
            primary = slot
    assert primary is not None, "whole-text suffix slot never located"
    bwt[primary - 1] = pt.char_at(n)
    meta = {"n": n, "sigma": pt.sigma, "tau": tau,
            "primary_index": primary, "sync_size": len(saug),
            "pipeline": "sync", "range_count": "fenwick"}
    if pt.sigma <= 256:
        bwt = bwt.astype(np.uint8)
    return BwtResult(bwt, primary, meta)


def invert_bwt(res):
    """Recover the text by walking the last-to-first mapping backwards."""
    bwt = np.asarray(res.bwt, dtype=np.int64)
    n = len(bwt)
    p = int(res.primary_index)
    if not 1 <= p <= n:
        raise ValueError("primary index out of range")
    counts = np.bincount(bwt)
    csum = np.concatenate([[0], np.cumsum(counts)])
    order = np.argsort(bwt, kind="stable")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    lf = rank + 1
    # entries above the primary slot with its symbol shift one rank down
    lf[(np.arange(n) < p - 1) & (bwt == bwt[p - 1])] += 1
    lf[p - 1] = int(csum[bwt[p - 1]]) + 1
    out = np.zeros(n, dtype=np.int64)
    lf_l = lf.tolist()
    bwt_l = bwt.tolist()
    i = p
    for k in range(n - 1, -1, -1):
        out[k] = bwt_l[i - 1]
        i = lf_l[i - 1]
    return out


def write_bwt(res, path, meta_path):
    """Raw symbol bytes plus an ASCII key=value sidecar."""
    arr = np.asarray(res.bwt)
    if arr.size and int(arr.max()) > 255:
        raise ValueError("symbols beyond byte range")
    with open(path, "wb") as fh:
        fh.write(arr.astype(np.uint8).tobytes())
    meta = dict(res.meta)
    meta["primary_index"] = res.primary_index
    with open(meta_path, "w") as fh:
        for key in ("n", "sigma", "tau", "primary_index", "sync_size",
                    "pipeline", "range_count"):
            if key in meta:
                fh.write("%s=%s\n" % (key, meta[key]))


def read_bwt(path, meta_path):
    """Load a transform written by write_bwt."""
    meta = {}
    with open(meta_path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("malformed metadata line: %r" % line)
            key, _, val = line.partition("=")
            try:
                meta[key] = int(val)
            except ValueError:
                meta[key] = val
    for key in ("n", "sigma", "primary_index"):
        if key not in meta:
            raise ValueError("metadata missing %r" % key)
    data = np.frombuffer(open(path, "rb").read(), dtype=np.uint8)
    if len(data) != meta["n"]:
        raise ValueError("payload length disagrees with metadata")
    return BwtResult(np.array(data), meta["primary_index"], meta)
