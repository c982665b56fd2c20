"""Caching utilities for amortized-bounds.

Structural enumerations are pure functions of their generator settings, so the
bound, oracle and timing suites share them through a process-wide LRU cache.
"""

import threading
from typing import Any, Dict, Optional, Generic, TypeVar, Callable, Hashable, cast
from collections import OrderedDict
from functools import wraps

K = TypeVar("K")
V = TypeVar("V")
R = TypeVar("R")
F = TypeVar("F", bound=Callable[..., Any])

_MISSING = object()


class LRUCache(Generic[K, V]):
    """Thread-safe LRU (Least Recently Used) cache implementation."""

    def __init__(self, max_size: int = 128):
        """
        Initialize LRU cache.

        Args:
            max_size: Maximum number of items to store
        """
        self.max_size = max_size
        self._cache: OrderedDict[K, V] = OrderedDict()
        self._lock = threading.RLock()
        self.hits = 0
        self.misses = 0

    def get(self, key: K, default: Optional[V] = None) -> Optional[V]:
        """Get value from cache."""
        with self._lock:
            if key not in self._cache:
                self.misses += 1
                return default

            self.hits += 1
            self._cache.move_to_end(key)
            return self._cache[key]

    def put(self, key: K, value: V) -> None:
        """Put value in cache."""
        with self._lock:
            self._cache[key] = value
            self._cache.move_to_end(key)

            if len(self._cache) > self.max_size:
                self._cache.popitem(last=False)

    def resize(self, max_size: int) -> None:
        """Change the capacity, evicting the oldest entries if needed."""
        with self._lock:
            self.max_size = max_size
            while len(self._cache) > self.max_size:
                self._cache.popitem(last=False)

    def clear(self) -> None:
        """Clear all items from cache."""
        with self._lock:
            self._cache.clear()
            self.hits = 0
            self.misses = 0

    def size(self) -> int:
        """Get current cache size."""
        with self._lock:
            return len(self._cache)


def cache_key(*args: Hashable, **kwargs: Hashable) -> tuple:
    """Build a cache key from hashable function arguments."""
    return (args, tuple(sorted(kwargs.items())))


class CachedFunctionWrapper(Generic[R]):
    """Wrapper for cached functions with cache management methods."""

    def __init__(
        self,
        func: Callable[..., R],
        cache: LRUCache[Any, Any],
        key_func: Optional[Callable[..., Hashable]] = None,
    ):
        self._func = func
        self.cache: LRUCache[Any, Any] = cache
        self._key_func = key_func or cache_key
        self.cache_clear = cache.clear
        wraps(func)(self)

    def cache_info(self) -> Dict[str, int]:
        return {
            "size": self.cache.size(),
            "max_size": self.cache.max_size,
            "hits": self.cache.hits,
            "misses": self.cache.misses,
        }

    def __call__(self, *args: Any, **kwargs: Any) -> R:
        key = (self._func.__qualname__, self._key_func(*args, **kwargs))

        cached_result = self.cache.get(key, cast(Any, _MISSING))
        if cached_result is not _MISSING:
            return cast(R, cached_result)

        result = self._func(*args, **kwargs)
        self.cache.put(key, result)
        return result


def cached(
    cache: LRUCache[Any, Any], key_func: Optional[Callable[..., Hashable]] = None
) -> Callable[[F], F]:
    """
    Decorator to cache function results.

    Args:
        cache: LRUCache instance to use
        key_func: Function to generate cache key (default: use cache_key)
    """

    def decorator(func: F) -> F:
        wrapper = CachedFunctionWrapper(func, cache, key_func)
        return cast(F, wrapper)

    return decorator


enumeration_cache: LRUCache[Any, Any] = LRUCache(max_size=32)
