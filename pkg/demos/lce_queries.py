"""Constant-time longest-common-extension queries over a megabyte of text."""

import time

import numpy as np

from sst.lce_index import LceIndex
from sst.packed_text import pack
from sst.reference_oracles import naive_lce

rng = np.random.default_rng(3)
n = 1 << 20
arr = rng.integers(0, 2, size=n, dtype=np.uint8)
# plant two long identical stretches far apart
arr[200000:200000 + 5000] = arr[900000:900000 + 5000]

pt = pack(arr, 2)
t0 = time.perf_counter()
idx = LceIndex(pt)
print("index built over n=%d in %.2fs (tau=%d, |S|=%d)"
      % (n, time.perf_counter() - t0, idx.tau, len(idx.sync.positions)))

print("lce(200001, 900001) =", idx.query(200001, 900001))

# a batch of random queries, checked against a direct scan
ii = rng.integers(1, n + 1, size=2000)
jj = rng.integers(1, n + 1, size=2000)
lst = arr.tolist()
t0 = time.perf_counter()
answers = [idx.query(int(i), int(j)) for i, j in zip(ii, jj)]
dt = time.perf_counter() - t0
assert all(a == naive_lce(lst, int(i), int(j))
           for a, i, j in zip(answers, ii, jj))
print("2000 queries in %.4fs (%.1f us each), all match the scan"
      % (dt, 1e6 * dt / 2000))
print("longest seen:", max(answers))
