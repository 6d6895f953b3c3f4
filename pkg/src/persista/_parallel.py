import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "PERSISTA_THREADS"


def effective_threads(n_jobs=None):
    """Resolve a worker count; ``None`` defers to ``PERSISTA_THREADS`` (0 = auto)."""
    if n_jobs is None:
        raw = os.environ.get(ENV_THREADS, "0").strip() or "0"
        try:
            n_jobs = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_THREADS} must be an integer, got {raw!r}") from None
    if n_jobs < 0:
        raise ValueError(f"thread count must be >= 0, got {n_jobs}")
    if n_jobs == 0:
        n_jobs = os.cpu_count() or 1
    return n_jobs


def ordered_map(fn, items, n_jobs=None):
    """``list(map(fn, items))``, possibly on a thread pool; result order is preserved."""
    items = list(items)
    workers = min(effective_threads(n_jobs), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
