"""Small shared helpers: bit tricks, seeded streams, thread count."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

MASK64 = (1 << 64) - 1


def popcounts(k: int) -> np.ndarray:
    """Number of set bits for every mask in [0, 2**k), as int64."""
    out = np.zeros(1 << k, dtype=np.int64)
    for i in range(k):
        step = 1 << i
        out[step : 2 * step] = out[:step] + 1
    return out


def mask_positions(mask: int) -> frozenset[int]:
    """Local positions set in a bitmask."""
    pos = []
    i = 0
    while mask:
        if mask & 1:
            pos.append(i)
        mask >>= 1
        i += 1
    return frozenset(pos)


def positions_mask(positions) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


def stream(seed: int, index: int) -> np.random.Generator:
    """Counter-based per-item RNG stream.

    Keyed by (seed, index) so draws for item i never depend on how many
    draws other items made, on iteration order, or on thread scheduling.
    """
    return np.random.Generator(np.random.Philox(key=[seed & MASK64, index & MASK64]))


def substream_seed(seed: int, *key: int) -> int:
    """Derive a stable sub-seed for a pipeline stage."""
    ss = np.random.SeedSequence(entropy=seed & MASK64, spawn_key=tuple(k & MASK64 for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def thread_count() -> int:
    """Worker count from SUBSPARSE_THREADS (default 1)."""
    raw = os.environ.get("SUBSPARSE_THREADS", "1")
    try:
        val = int(raw)
    except ValueError:
        return 1
    return max(1, val)


def parallel_chunks(total: int, chunk: int, work, workers: int | None = None):
    """Apply work(lo, hi) over [0, total) in fixed chunks, possibly threaded.

    Results are returned in chunk order regardless of scheduling, so callers
    combining them get identical output at any worker count.
    """
    spans = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(spans) <= 1:
        return [work(lo, hi) for lo, hi in spans]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = [pool.submit(work, lo, hi) for lo, hi in spans]
        return [f.result() for f in futs]
