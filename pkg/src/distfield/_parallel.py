import os
from concurrent.futures import ThreadPoolExecutor


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("DISTFIELD_THREADS", "1")))
    except ValueError:
        return 1


def run_chunks(fn, n: int, threads: int | None = None) -> int:
    """Call ``fn(start, stop)`` over contiguous chunks of ``range(n)``.

    Chunks are independent (one owner per row or column); the call
    returns once all of them are done and sums their return values.
    """
    threads = default_threads() if threads is None else max(1, threads)
    threads = min(threads, max(n, 1))
    if threads == 1:
        return fn(0, n) or 0
    bounds = [n * t // threads for t in range(threads + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, a, b) for a, b in zip(bounds, bounds[1:])]
        return sum(f.result() or 0 for f in futures)
