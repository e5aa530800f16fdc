"""HTTP client for a scholarly-graph API with an on-disk response cache.

Every response is cached keyed by a digest of the request, written atomically
(write-then-rename) so concurrent workers can share one cache directory. In
replay mode the client never touches the network: a cache miss is an error,
which is what makes discovery runs hermetic and reproducible.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import requests

DEFAULT_BASE_URL = "https://api.semanticscholar.org/graph/v1"
TOKEN_ENV_VAR = "RESAUDIT_SCHOLAR_TOKEN"
BASE_URL_ENV_VAR = "RESAUDIT_SCHOLAR_BASE_URL"

SEARCH_FIELDS = "title,year,venue,abstract"
REFERENCE_FIELDS = "contexts,title,year,venue"
CITATION_FIELDS = "contexts,title,year,venue"


class ScholarError(Exception):
    pass


class RateLimited(ScholarError):
    def __init__(self, retry_after: float | None):
        super().__init__(f"rate limited, retry_after={retry_after}")
        self.retry_after = retry_after


class TransportFailure(ScholarError):
    pass


class MalformedResponse(ScholarError):
    pass


class ReplayMiss(ScholarError):
    """Raised in replay mode when a request has no recorded response."""


def request_digest(path: str, params: Mapping[str, Any]) -> str:
    """Stable content address for a request; auth never participates."""
    canonical = json.dumps(
        {"path": path, "params": {k: str(v) for k, v in sorted(params.items())}},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class RateLimiter:
    """Serializes request admission across threads at a minimum interval."""

    def __init__(self, min_interval: float):
        self.min_interval = min_interval
        self._lock = threading.Lock()
        self._next_allowed = 0.0

    def acquire(self) -> None:
        with self._lock:
            now = time.monotonic()
            wait = self._next_allowed - now
            if wait > 0:
                time.sleep(wait)
                now = time.monotonic()
            self._next_allowed = now + self.min_interval


@dataclass
class ClientConfig:
    base_url: str = DEFAULT_BASE_URL
    api_token: str | None = None
    cache_dir: Path = Path("cache/api")
    replay: bool = False
    max_attempts: int = 5
    backoff_base: float = 0.5
    min_interval: float = 1.0
    timeout: float = 30.0
    page_size: int = 100

    @classmethod
    def from_env(cls, cache_dir: Path, replay: bool = False) -> "ClientConfig":
        return cls(
            base_url=os.environ.get(BASE_URL_ENV_VAR, DEFAULT_BASE_URL),
            api_token=os.environ.get(TOKEN_ENV_VAR),
            cache_dir=cache_dir,
            replay=replay,
        )


class ScholarClient:
    def __init__(self, config: ClientConfig, session: requests.Session | None = None):
        self.config = config
        self.session = session or requests.Session()
        self._limiter = RateLimiter(config.min_interval)
        self.config.cache_dir.mkdir(parents=True, exist_ok=True)

    # -- cache ------------------------------------------------------------

    def _cache_path(self, digest: str) -> Path:
        return self.config.cache_dir / f"{digest}.json"

    def _cache_read(self, digest: str) -> dict | None:
        path = self._cache_path(digest)
        if not path.exists():
            return None
        with path.open(encoding="utf-8") as handle:
            return json.load(handle)["response"]

    def _cache_write(self, digest: str, path: str, params: Mapping[str, Any], response: dict) -> None:
        target = self._cache_path(digest)
        payload = {
            "request": {"path": path, "params": {k: str(v) for k, v in sorted(params.items())}},
            "response": response,
        }
        tmp = target.with_suffix(f".tmp.{os.getpid()}.{threading.get_ident()}")
        tmp.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        os.replace(tmp, target)

    # -- transport ---------------------------------------------------------

    def _headers(self) -> dict[str, str]:
        headers = {"User-Agent": "resaudit/0.1 (dataset visibility audit)"}
        if self.config.api_token:
            headers["x-api-key"] = self.config.api_token
        return headers

    def _request(self, path: str, params: Mapping[str, Any]) -> dict:
        digest = request_digest(path, params)
        cached = self._cache_read(digest)
        if cached is not None:
            return cached
        if self.config.replay:
            raise ReplayMiss(f"no recorded response for {path} {dict(params)}")

        url = self.config.base_url.rstrip("/") + path
        last_retry_after: float | None = None
        for attempt in range(1, self.config.max_attempts + 1):
            self._limiter.acquire()
            try:
                response = self.session.get(
                    url, params=params, headers=self._headers(), timeout=self.config.timeout
                )
            except requests.RequestException as exc:
                if attempt == self.config.max_attempts:
                    raise TransportFailure(str(exc)) from exc
                self._sleep_backoff(attempt, None)
                continue
            if response.status_code == 429 or response.status_code >= 500:
                retry_after = _parse_retry_after(response.headers.get("Retry-After"))
                last_retry_after = retry_after
                if attempt == self.config.max_attempts:
                    if response.status_code == 429:
                        raise RateLimited(last_retry_after)
                    raise TransportFailure(f"HTTP {response.status_code} from {url}")
                self._sleep_backoff(attempt, retry_after)
                continue
            if response.status_code >= 400:
                raise TransportFailure(f"HTTP {response.status_code} from {url}")
            try:
                payload = response.json()
            except ValueError as exc:
                raise MalformedResponse(f"non-JSON response from {url}") from exc
            if not isinstance(payload, dict):
                raise MalformedResponse(f"expected object, got {type(payload).__name__}")
            self._cache_write(digest, path, params, payload)
            return payload
        raise TransportFailure(f"retries exhausted for {url}")

    def _sleep_backoff(self, attempt: int, retry_after: float | None) -> None:
        delay = self.config.backoff_base * (2 ** (attempt - 1))
        delay += random.uniform(0, delay / 2)
        if retry_after is not None:
            delay = max(delay, retry_after)
        time.sleep(delay)

    # -- endpoints ----------------------------------------------------------

    def search(self, query: str, k: int) -> list[dict]:
        """Relevance-ordered search results, paginated up to k items."""
        if k < 1:
            raise ValueError("k must be >= 1")
        results: list[dict] = []
        offset = 0
        while len(results) < k:
            limit = min(self.config.page_size, k - len(results))
            payload = self._request(
                "/paper/search",
                {"query": query, "offset": offset, "limit": limit, "fields": SEARCH_FIELDS},
            )
            data = payload.get("data")
            if not isinstance(data, list):
                raise MalformedResponse("search payload missing 'data' list")
            results.extend(data)
            offset += limit
            if "next" not in payload or not data:
                break
        return results[:k]

    def _paginate(self, path: str, fields: str) -> list[dict]:
        items: list[dict] = []
        offset = 0
        while True:
            payload = self._request(
                path, {"offset": offset, "limit": self.config.page_size, "fields": fields}
            )
            data = payload.get("data")
            if not isinstance(data, list):
                raise MalformedResponse(f"payload for {path} missing 'data' list")
            items.extend(data)
            offset += self.config.page_size
            if "next" not in payload or not data:
                break
        return items

    def references(self, paper_id: str) -> list[dict]:
        """Outgoing edges: works this paper cites, with citation contexts."""
        return self._paginate(f"/paper/{paper_id}/references", REFERENCE_FIELDS)

    def citations(self, paper_id: str) -> list[dict]:
        """Incoming edges: works citing this paper, with citation contexts."""
        return self._paginate(f"/paper/{paper_id}/citations", CITATION_FIELDS)


def _parse_retry_after(value: str | None) -> float | None:
    if value is None:
        return None
    try:
        return float(value)
    except ValueError:
        return None
