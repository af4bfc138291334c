"""On-disk cache of command outputs.

Entries are JSON files named by a SHA-256 key over the input bytes, the
command line and the galeforge version.
"""
import hashlib
import json
import logging
import os
import tempfile
import time
from dataclasses import asdict, dataclass
from typing import Optional

from galeforge.version import __version__

logger = logging.getLogger(__name__)

CACHE_ENV_VAR = "GALEFORGE_CACHE"


@dataclass(frozen=True)
class CacheEntry:
    key: str
    value: str
    created_at: float


def cache_key(input_bytes: bytes, command: str, version: str = __version__) -> str:
    """Content hash of the input, the command and the version."""
    digest = hashlib.sha256()
    for part in (input_bytes, command.encode("utf-8"), version.encode("utf-8")):
        digest.update(len(part).to_bytes(8, "big"))
        digest.update(part)
    return digest.hexdigest()


class ResultCache:
    """A directory of cached outputs."""

    def __init__(self, directory: str):
        """
        :param str directory:
            Cache directory, created on first write.
        """
        self.directory = directory

    @classmethod
    def from_env(cls) -> Optional["ResultCache"]:
        """The cache named by ``GALEFORGE_CACHE``, or None when it is unset."""
        directory = os.environ.get(CACHE_ENV_VAR)
        return cls(directory) if directory else None

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, f"{key}.json")

    def get(self, key: str) -> Optional[str]:
        path = self._path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path) as f:
                entry = CacheEntry(**json.load(f))
        except (OSError, ValueError, TypeError):
            logger.debug("ignoring unreadable cache entry %s", path)
            return None
        logger.debug("cache hit %s", key)
        return entry.value

    def put(self, key: str, value: str) -> None:
        """Store ``value`` atomically: write a temporary file, then rename it."""
        if not os.path.exists(self.directory):
            os.makedirs(self.directory, exist_ok=True)
        entry = CacheEntry(key, value, time.time())
        fd, tmp_path = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as f:
                json.dump(asdict(entry), f)
            os.replace(tmp_path, self._path(key))
        except BaseException:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise
        logger.debug("cached %s", key)
