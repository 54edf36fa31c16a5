"""
Memo cache for q-Euler numbers
"""

import logging
from collections import OrderedDict
from fractions import Fraction
from threading import Lock
from typing import Any, Callable, Dict, Hashable, Optional, Tuple

logger = logging.getLogger(__name__)

EulerKey = Tuple[str, int, int, Fraction]


class EulerCache:
    """Thread-safe LRU cache of exact Euler-type numbers

    Keys are ``(kind, index, base exponent, q)``; values are immutable
    ``Fraction`` objects, so entries never expire.
    """

    def __init__(self, max_size: int = 4096):
        self.max_size = max_size
        self._cache: OrderedDict[Hashable, Fraction] = OrderedDict()
        self._lock = Lock()
        self._hits = 0
        self._misses = 0

    @staticmethod
    def make_key(kind: str, index: int, base_exp: int, q: Fraction) -> EulerKey:
        """Generate cache key from the defining parameters"""
        return (kind, index, base_exp, Fraction(q))

    def get(self, key: Hashable) -> Optional[Fraction]:
        """Get value from cache if present"""
        with self._lock:
            if key in self._cache:
                self._cache.move_to_end(key)
                self._hits += 1
                return self._cache[key]
            self._misses += 1
            return None

    def set(self, key: Hashable, value: Fraction) -> None:
        """Store a value, evicting the least recently used entry when full"""
        with self._lock:
            if key in self._cache:
                del self._cache[key]
            elif len(self._cache) >= self.max_size:
                self._cache.popitem(last=False)
            self._cache[key] = value

    def get_or_compute(self, key: Hashable, compute: Callable[[], Fraction]) -> Fraction:
        """Return the cached value for key, computing and storing it on a miss"""
        cached = self.get(key)
        if cached is not None:
            logger.debug(f"Cache hit for {key!r}")
            return cached
        value = compute()
        self.set(key, value)
        return value

    def clear(self) -> None:
        """Clear all cache entries"""
        with self._lock:
            self._cache.clear()
            self._hits = 0
            self._misses = 0

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)

    def stats(self) -> Dict[str, Any]:
        """Get cache statistics"""
        with self._lock:
            total = self._hits + self._misses
            hit_rate = (self._hits / total * 100) if total > 0 else 0
            return {
                "size": len(self._cache),
                "max_size": self.max_size,
                "hits": self._hits,
                "misses": self._misses,
                "hit_rate": f"{hit_rate:.2f}%",
            }


_cache: Optional[EulerCache] = EulerCache()


def get_cache() -> Optional[EulerCache]:
    """Get the process-wide cache, or None when caching is disabled"""
    return _cache


def configure_cache(enabled: bool = True, max_size: int = 4096) -> Optional[EulerCache]:
    """Replace the process-wide cache according to configuration"""
    global _cache
    _cache = EulerCache(max_size=max_size) if enabled else None
    logger.info(f"Euler cache {'enabled' if enabled else 'disabled'} (max_size={max_size})")
    return _cache
