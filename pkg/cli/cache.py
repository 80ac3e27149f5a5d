"""
Bounded in-memory memoisation for built trees.

Thread-safe; evicts the least recently inserted entry when full. Trees are
immutable, so a cached tree can be shared by every run that asks for it.
"""
from __future__ import annotations

import functools
import threading
from collections import OrderedDict
from typing import Any, Callable

MAX_ENTRIES = 64

_lock = threading.Lock()
_cache: OrderedDict[str, Any] = OrderedDict()


def memoize(max_entries: int = MAX_ENTRIES) -> Callable:
    """Decorator caching return values by function name + arguments.

    Skips caching if the function raises.
    """
    def decorator(fn: Callable) -> Callable:
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            key = f"{fn.__qualname__}:{args}:{sorted(kwargs.items())}"
            with _lock:
                if key in _cache:
                    return _cache[key]

            result = fn(*args, **kwargs)

            with _lock:
                while len(_cache) >= max_entries:
                    _cache.popitem(last=False)
                _cache[key] = result
            return result
        return wrapper
    return decorator


def clear_cache() -> int:
    """Clear all cached entries. Returns the number of entries cleared."""
    with _lock:
        count = len(_cache)
        _cache.clear()
        return count


def cache_size() -> int:
    with _lock:
        return len(_cache)
