"""Tests for cache utilities."""

from concurrent.futures import ThreadPoolExecutor

from amortized_bounds.utils.cache import (
    LRUCache,
    cache_key,
    cached,
    enumeration_cache,
)


class TestLRUCache:
    """Test cases for LRUCache implementation."""

    def test_cache_put_and_get(self):
        """Test basic put and get operations."""
        cache = LRUCache[str, str](max_size=3)
        cache.put("key1", "value1")

        assert cache.get("key1") == "value1"
        assert cache.get("key2") is None
        assert cache.get("key2", "default") == "default"
        assert cache.size() == 1
        assert cache.hits == 1
        assert cache.misses == 2

    def test_cache_lru_eviction(self):
        """Test LRU eviction when cache is full."""
        cache = LRUCache[str, int](max_size=2)
        cache.put("a", 1)
        cache.put("b", 2)
        cache.get("a")
        cache.put("c", 3)

        assert cache.get("a") == 1
        assert cache.get("b") is None
        assert cache.get("c") == 3

    def test_resize_evicts_oldest(self):
        """Test shrinking the cache drops least recently used entries."""
        cache = LRUCache[int, int](max_size=4)
        for i in range(4):
            cache.put(i, i)
        cache.resize(2)

        assert cache.size() == 2
        assert cache.get(0) is None
        assert cache.get(3) == 3

    def test_clear_resets_counters(self):
        cache = LRUCache[str, int]()
        cache.put("a", 1)
        cache.get("a")
        cache.clear()

        assert cache.size() == 0
        assert cache.hits == 0

    def test_cache_thread_safety(self):
        """Test concurrent puts keep the size bound."""
        cache = LRUCache[int, int](max_size=50)

        def worker(start: int) -> None:
            for i in range(start, start + 100):
                cache.put(i, i)
                cache.get(i)

        with ThreadPoolExecutor(max_workers=4) as pool:
            list(pool.map(worker, range(0, 400, 100)))

        assert cache.size() == 50


class TestCacheKey:
    def test_args_and_kwargs(self):
        assert cache_key(1, 2) == ((1, 2), ())
        assert cache_key(a=1, b=2) == cache_key(b=2, a=1)


class TestCachedDecorator:
    """Test the cached decorator."""

    def test_cached_function(self):
        calls = []
        cache = LRUCache(max_size=8)

        @cached(cache)
        def square(x):
            calls.append(x)
            return x * x

        assert square(3) == 9
        assert square(3) == 9
        assert calls == [3]
        assert square.cache_info()["hits"] == 1

    def test_functions_sharing_a_cache_do_not_collide(self):
        cache = LRUCache(max_size=8)

        @cached(cache)
        def double(x):
            return 2 * x

        @cached(cache)
        def triple(x):
            return 3 * x

        assert double(2) == 4
        assert triple(2) == 6

    def test_cached_none_result(self):
        calls = []
        cache = LRUCache(max_size=8)

        @cached(cache)
        def nothing(x):
            calls.append(x)
            return None

        nothing(1)
        nothing(1)
        assert calls == [1]


class TestEnumerationCache:
    def test_shared_cache_resizes(self):
        enumeration_cache.put("shape", (1, 2))
        enumeration_cache.resize(1)

        assert enumeration_cache.max_size == 1
        assert enumeration_cache.get("shape") == (1, 2)
        enumeration_cache.resize(32)
