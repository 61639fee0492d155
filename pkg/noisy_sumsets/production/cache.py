"""
Oracle result cache for noisy-sumsets.
Exact search results never go stale, so entries carry no expiry.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger("noisy_sumsets.cache")


def oracle_key(n: int, k: int, ell: int, noise_literal: str) -> str:
    """Cache key for one oracle instance."""
    return f"mu:n={n}:k={k}:l={ell}:noise={noise_literal}"


class OracleCache:
    """In-memory cache of oracle results with optional JSON persistence.

    Values must be JSON-serializable dictionaries. When ``cache_dir`` is None the
    cache lives only for the current process.
    """

    def __init__(self, cache_dir: Optional[str] = None, enabled: bool = True):
        self.cache_dir = Path(cache_dir) if cache_dir else None
        if self.cache_dir is not None:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.enabled = enabled
        self._memory_cache: Dict[str, Dict[str, Any]] = {}
        self.hits = 0
        self.misses = 0

    def get(self, key: str) -> Optional[Dict[str, Any]]:
        """Get value from cache."""
        if not self.enabled:
            return None

        cache_key = self._hash_key(key)

        if cache_key in self._memory_cache:
            self.hits += 1
            return self._memory_cache[cache_key]

        if self.cache_dir is not None:
            cache_file = self.cache_dir / f"{cache_key}.json"
            if cache_file.exists():
                try:
                    with open(cache_file, "r") as f:
                        data = json.load(f)
                    if data.get("key") == key:
                        self._memory_cache[cache_key] = data["value"]
                        self.hits += 1
                        return data["value"]
                except (json.JSONDecodeError, KeyError):
                    logger.warning("Dropping corrupted cache file %s", cache_file)
                    cache_file.unlink()

        self.misses += 1
        return None

    def set(self, key: str, value: Dict[str, Any]) -> None:
        """Set value in cache."""
        if not self.enabled:
            return

        cache_key = self._hash_key(key)
        self._memory_cache[cache_key] = value

        if self.cache_dir is not None:
            cache_file = self.cache_dir / f"{cache_key}.json"
            with open(cache_file, "w") as f:
                json.dump({"key": key, "value": value}, f, indent=2, sort_keys=True)

    def clear(self) -> None:
        """Clear all cache entries."""
        self._memory_cache.clear()
        if self.cache_dir is not None:
            for cache_file in self.cache_dir.glob("*.json"):
                cache_file.unlink()

    def get_stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        disk_entries = 0
        if self.cache_dir is not None:
            disk_entries = len(list(self.cache_dir.glob("*.json")))

        return {
            "enabled": self.enabled,
            "memory_entries": len(self._memory_cache),
            "disk_entries": disk_entries,
            "hits": self.hits,
            "misses": self.misses,
            "cache_dir": str(self.cache_dir) if self.cache_dir else None,
        }

    def _hash_key(self, key: str) -> str:
        """Create hash of cache key."""
        return hashlib.sha256(key.encode("utf-8")).hexdigest()[:16]


# Global cache instance
_global_cache: Optional[OracleCache] = None


def get_global_cache() -> OracleCache:
    """Get the global cache instance."""
    global _global_cache
    if _global_cache is None:
        _global_cache = OracleCache()
    return _global_cache


def configure_global_cache(
    cache_dir: Optional[str] = None, enabled: bool = True
) -> OracleCache:
    """Configure the global cache."""
    global _global_cache
    _global_cache = OracleCache(cache_dir=cache_dir, enabled=enabled)
    return _global_cache
