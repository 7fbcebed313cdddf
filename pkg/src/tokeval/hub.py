"""Fetch and cache public vocabulary files by model identifier."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import requests

from .errors import HubUnavailableError, IntegrityError, ModelNotFoundError

DEFAULT_BASE_URL = "https://huggingface.co"
# Joined as {base_url}/{model_id}/{vocab_filename}; mirrors that serve flat
# {model_id}/vocab.txt layouts just override the filename.
DEFAULT_VOCAB_FILENAME = "resolve/main/vocab.txt"
CACHE_DIR_ENV = "TOKEVAL_CACHE_DIR"
INDEX_FILENAME = "index.json"


@dataclass(frozen=True)
class CacheEntry:
    model_id: str
    url: str
    local_path: Path
    content_digest: str
    fetched_at: str


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "tokeval"


def _sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _index_path(cache_dir: Path) -> Path:
    return cache_dir / INDEX_FILENAME


def _load_index(cache_dir: Path) -> dict:
    path = _index_path(cache_dir)
    if not path.exists():
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (json.JSONDecodeError, OSError):
        return {}


def _store_index(cache_dir: Path, index: dict) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".index-", suffix=".part")
    with os.fdopen(fd, "w", encoding="utf-8") as handle:
        json.dump(index, handle, sort_keys=True, indent=2)
        handle.write("\n")
    os.replace(tmp, _index_path(cache_dir))


def _local_path(cache_dir: Path, model_id: str) -> Path:
    return cache_dir / model_id.replace("/", "__") / "vocab.txt"


def read_cache_entry(model_id: str, cache_dir: Path | None = None) -> CacheEntry | None:
    """Return the recorded entry for a model id, or None."""
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    raw = _load_index(cache_dir).get(model_id)
    if raw is None:
        return None
    return CacheEntry(
        model_id=raw["model_id"],
        url=raw["url"],
        local_path=Path(raw["local_path"]),
        content_digest=raw["content_digest"],
        fetched_at=raw["fetched_at"],
    )


def fetch_vocab(
    model_id: str,
    base_url: str = DEFAULT_BASE_URL,
    cache_dir: Path | str | None = None,
    vocab_filename: str = DEFAULT_VOCAB_FILENAME,
    timeout: float = 30.0,
) -> Path:
    """Return a local path to the model's vocab file, downloading if needed.

    A cache hit (recorded digest matches the file on disk) never touches the
    network. Downloads stream to a temp file in the target directory and are
    renamed into place, so readers only ever see complete files; concurrent
    fetches of the same id race benignly (last complete write wins).
    """
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    local = _local_path(cache_dir, model_id)
    entry = _load_index(cache_dir).get(model_id)
    if entry and local.exists() and _sha256_file(local) == entry.get("content_digest"):
        return local

    url = f"{base_url.rstrip('/')}/{model_id}/{vocab_filename.lstrip('/')}"
    try:
        response = requests.get(url, timeout=timeout, stream=True)
    except requests.RequestException as exc:
        raise HubUnavailableError(
            f"cannot reach {url} and no valid cache entry exists: {exc}"
        ) from exc
    if response.status_code == 404:
        raise ModelNotFoundError(f"no vocabulary found for model id {model_id!r} at {url}")
    if response.status_code != 200:
        raise HubUnavailableError(f"unexpected status {response.status_code} fetching {url}")

    digest = hashlib.sha256()
    local.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=local.parent, prefix=".vocab-", suffix=".part")
    try:
        with os.fdopen(fd, "wb") as handle:
            for chunk in response.iter_content(chunk_size=1 << 16):
                handle.write(chunk)
                digest.update(chunk)
        os.replace(tmp, local)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)

    expected = digest.hexdigest()
    written = _sha256_file(local)
    if written != expected:
        local.unlink(missing_ok=True)
        raise IntegrityError(
            f"digest mismatch after download of {model_id!r}: {written} != {expected}"
        )

    index = _load_index(cache_dir)
    index[model_id] = {
        "model_id": model_id,
        "url": url,
        "local_path": str(local),
        "content_digest": expected,
        "fetched_at": datetime.now(timezone.utc).isoformat(),
    }
    _store_index(cache_dir, index)
    return local
