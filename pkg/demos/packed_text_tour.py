"""Tour of the packed text layer: keys, fragment LCP, and periods."""

import numpy as np

from sst.packed_text import (bulk_keys, extract, lcp_fragments, pack,
                             substring_period)

# pack stores ceil(log2 sigma) bits per symbol inside 64-bit words
text = "abaababaabaab"
symbols = [ord(c) - ord('a') for c in text]
pt = pack(symbols, 2)
print("text   ", text)
print("n=%d sigma=%d bits_per_symbol=%d words=%d"
      % (pt.n, pt.sigma, pt.bits_per_symbol, len(pt.words)))

# extract returns an integer key that orders like the substring itself
for i in (1, 2, 4):
    key = extract(pt, i, 5)
    print("key of T[%d..%d) = %d  (%s)" % (i, i + 5, key.value, text[i - 1:i + 4]))
assert extract(pt, 1, 5).value < extract(pt, 2, 5).value  # "abaab" < "baaba"

# bulk_keys computes every window key in one vectorised pass
keys = bulk_keys(pt, 3)
order = np.argsort(keys, kind="stable") + 1
print("3-windows sorted:", [text[i - 1:i + 2] for i in order[:5]], "...")

# fragment LCP compares word-sized chunks, so long matches are cheap
hit = lcp_fragments(pt, 1, 4, cap=8)
print("lcp of suffixes 1 and 4 capped at 8:", hit)

# smallest periods, with a memo behind short fragments
for i, length in ((1, 6), (1, 13), (4, 5)):
    print("per(%s) = %d" % (text[i - 1:i + length - 1],
                            substring_period(pt, i, length)))
