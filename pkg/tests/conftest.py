"""Shared text generators and scale profiles for the test suite.

Set SST_ACCEPTANCE_FULL=1 to run the acceptance suite at its stated
sample counts; the default desk profile keeps the same checks at
reduced scale so the whole suite stays fast.
"""

import os
import random

import numpy as np
import pytest

from sst.packed_text import pack


def full_profile():
    return os.environ.get("SST_ACCEPTANCE_FULL", "") == "1"


def random_text(rng, n, sigma):
    return [rng.randrange(sigma) for _ in range(n)]


def random_packed(rng, n, sigma):
    return pack(random_text(rng, n, sigma), sigma)


def fibonacci_word(n):
    """Prefix of the infinite word over {0, 1} from s -> s(0->01, 1->0)."""
    a, b = [0], [0, 1]
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def thue_morse(n):
    bits = np.arange(n, dtype=np.int64)
    return list(np.bitwise_count(bits) & 1)


def periodic_mosaic(rng, n, sigma):
    """Random concatenation of repeated short blocks and noise stretches."""
    out = []
    while len(out) < n:
        if rng.random() < 0.5:
            p = rng.randrange(1, 5)
            block = random_text(rng, p, sigma)
            reps = rng.randrange(2, 40)
            out.extend(block * reps)
        else:
            out.extend(random_text(rng, rng.randrange(1, 30), sigma))
    return out[:n]


def all_binary_texts(n):
    for v in range(1 << n):
        yield [(v >> (n - 1 - t)) & 1 for t in range(n)]


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
