# qdcss/utils/cache.py

import hashlib
import json
import logging
import time
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

logger = logging.getLogger(__name__)


class MatrixCache:
    """
    Disk cache of expanded parity-check matrices, keyed by the spec document that built them.
    Entries are dense 0/1 ``.npy`` files and expire after a TTL.
    """

    def __init__(self, cache_dir: str = ".qdcss_cache", ttl_days: int = 30):
        """
        Initialize the cache.

        Args:
            cache_dir: Directory to store cache files
            ttl_days: Time-to-live for cache entries in days
        """
        self.cache_dir = Path(cache_dir)
        self.ttl_seconds = ttl_days * 24 * 60 * 60
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _get_cache_key(self, document: Dict[str, Any]) -> str:
        """MD5 of the canonical (sorted-key) JSON of the document."""
        canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
        return hashlib.md5(canonical.encode("utf-8")).hexdigest()

    def _get_cache_path(self, cache_key: str) -> Path:
        return self.cache_dir / f"{cache_key}.npy"

    def get(self, document: Dict[str, Any]) -> Optional[np.ndarray]:
        """
        Get the cached matrix for a document if available and not expired.

        Returns:
            Dense uint8 matrix or None if not found, expired or unreadable
        """
        cache_path = self._get_cache_path(self._get_cache_key(document))
        if not cache_path.exists():
            return None
        if time.time() - cache_path.stat().st_mtime > self.ttl_seconds:
            logger.debug("cache expired: %s", cache_path.name)
            return None
        try:
            matrix = np.load(cache_path, allow_pickle=False)
        except (OSError, ValueError) as e:
            logger.warning("discarding corrupt cache entry %s: %s", cache_path.name, e)
            cache_path.unlink(missing_ok=True)
            return None
        logger.debug("cache hit: %s", cache_path.name)
        return matrix.astype(np.uint8)

    def set(self, document: Dict[str, Any], matrix: np.ndarray) -> None:
        """Store a dense matrix; write failures are logged and ignored."""
        cache_path = self._get_cache_path(self._get_cache_key(document))
        try:
            np.save(cache_path, np.asarray(matrix, dtype=np.uint8), allow_pickle=False)
            logger.debug("cache set: %s", cache_path.name)
        except OSError as e:
            logger.warning("error writing to cache: %s", e)

    def invalidate(self, document: Optional[Dict[str, Any]] = None) -> None:
        """
        Invalidate cache entries.

        Args:
            document: Document to invalidate, or None to invalidate all entries
        """
        if document is None:
            for cache_file in self.cache_dir.glob("*.npy"):
                cache_file.unlink(missing_ok=True)
            logger.info("all cache entries invalidated")
        else:
            self._get_cache_path(self._get_cache_key(document)).unlink(missing_ok=True)

    def clean_expired(self) -> int:
        """
        Clean expired cache entries.

        Returns:
            Number of entries cleaned
        """
        cleaned = 0
        now = time.time()
        for cache_file in self.cache_dir.glob("*.npy"):
            if now - cache_file.stat().st_mtime > self.ttl_seconds:
                cache_file.unlink(missing_ok=True)
                cleaned += 1
        if cleaned:
            logger.info("cleaned %d expired cache entries", cleaned)
        return cleaned
