"""Counter-based keyed random streams.

Every draw is addressed by ``(seed, block, stream)``: the Philox key is
``(seed, block)`` and ``stream`` selects a disjoint counter range.  Rows are
grouped in fixed blocks of ``BLOCK_ROWS`` so the value of any row depends only
on the seed and its index, never on how blocks are scheduled across threads.
"""

from concurrent.futures import ThreadPoolExecutor
import hashlib

import numpy as np

BLOCK_ROWS = 1 << 16
_MASK64 = (1 << 64) - 1


def keyed_generator(seed, block, stream=0):
    """Return a ``numpy.random.Generator`` for one (seed, block, stream) cell."""
    key = np.array([int(seed) & _MASK64, int(block) & _MASK64], dtype=np.uint64)
    counter = np.array([0, 0, 0, int(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def derive_seed(master_seed, *path):
    """Stable 64-bit child seed from a master seed and an index path."""
    h = hashlib.blake2b(digest_size=8)
    h.update(int(master_seed & _MASK64).to_bytes(8, "little"))
    for p in path:
        h.update(int(p & _MASK64).to_bytes(8, "little"))
    return int.from_bytes(h.digest(), "little")


def block_slices(n, block_rows=BLOCK_ROWS):
    """Yield ``(block_index, start, stop)`` covering ``range(n)``."""
    for b, start in enumerate(range(0, n, block_rows)):
        yield b, start, min(start + block_rows, n)


def fill_blocks(out, seed, fill, threads=1, block_rows=BLOCK_ROWS):
    """Fill ``out`` block by block with ``fill(seed, block, m) -> array``.

    The result is identical for any ``threads`` value.
    """
    n = out.shape[0]
    jobs = list(block_slices(n, block_rows))

    def work(job):
        b, start, stop = job
        out[start:stop] = fill(seed, b, stop - start)

    if threads <= 1 or len(jobs) <= 1:
        for job in jobs:
            work(job)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, jobs))
    return out
