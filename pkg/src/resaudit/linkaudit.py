"""Dataset attribute auditing: emergence year and link accessibility.

Temporal attribution ties a dataset to a unique canonical source paper when
one exists; the paper's publication year is the emergence year. Accessibility
is probed over HTTP with bounded, polite requests, and a dataset only counts
as openly available when a resolving link exposes a direct download or an
annotator confirms an unrestricted access procedure on a page about the same
dataset. Gated or paywalled distribution never qualifies.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Iterable, Sequence
from urllib.parse import urlsplit

import requests

from .discovery import PaperRef
from .validation import DatasetRecord


class AttributionStatus(Enum):
    UNIQUE = "UNIQUE"
    AMBIGUOUS = "AMBIGUOUS"
    NO_PAPER = "NO_PAPER"


@dataclass(frozen=True)
class TemporalAttribution:
    dataset_id: str
    canonical_paper: PaperRef | None
    emergence_year: int | None
    status: AttributionStatus


class ProbeOutcome(Enum):
    RESOLVED = "RESOLVED"
    DEAD = "DEAD"
    TIMEOUT = "TIMEOUT"
    TLS_FAILURE = "TLS_FAILURE"


class ContentKind(Enum):
    FILE = "FILE"
    PAGE = "PAGE"
    UNKNOWN = "UNKNOWN"


class AccessStatus(Enum):
    OPEN = "OPEN"
    NOT_OPEN = "NOT_OPEN"


class LinkAuditError(Exception):
    pass


class InvalidUrl(LinkAuditError):
    pass


class NoProbes(LinkAuditError):
    pass


@dataclass(frozen=True)
class UrlProbe:
    url: str
    final_url: str
    http_status: int | None
    outcome: ProbeOutcome
    content_kind: ContentKind
    probed_at: str


@dataclass(frozen=True)
class AccessibilityResult:
    dataset_id: str
    status: AccessStatus
    probes: tuple[UrlProbe, ...]
    annotator_confirmation: bool | None
    decided_at: str


@dataclass
class ProbePolicy:
    connect_timeout: float = 10.0
    read_timeout: float = 30.0
    max_redirects: int = 10
    user_agent: str = "resaudit-linkcheck/0.1 (dataset accessibility audit)"
    sniff_bytes: int = 64 * 1024


FILE_CONTENT_TYPES = (
    "application/zip",
    "application/gzip",
    "application/x-gzip",
    "application/x-tar",
    "application/x-bzip2",
    "application/octet-stream",
    "application/x-7z-compressed",
    "text/csv",
    "text/tab-separated-values",
    "application/json",
)


def attribute_emergence(
    dataset: DatasetRecord,
    candidate_papers: Sequence[PaperRef],
    confirmed_paper_id: str | None = None,
) -> TemporalAttribution:
    """Pick the canonical source paper among the mentions' cited papers.

    UNIQUE needs exactly one plausible paper (or an annotator pointing at
    one of several); the emergence year is always that paper's own year,
    never invented. Evidence consisting only of project pages or repositories
    yields NO_PAPER.
    """
    papers = [p for p in candidate_papers if p.paper_id]
    if confirmed_paper_id is not None:
        papers = [p for p in papers if p.paper_id == confirmed_paper_id]
    if not papers:
        return TemporalAttribution(dataset.dataset_id, None, None, AttributionStatus.NO_PAPER)
    distinct = {p.paper_id: p for p in papers}
    if len(distinct) > 1:
        return TemporalAttribution(dataset.dataset_id, None, None, AttributionStatus.AMBIGUOUS)
    paper = next(iter(distinct.values()))
    if paper.year is None:
        # a source paper without a publication year cannot anchor emergence
        return TemporalAttribution(dataset.dataset_id, None, None, AttributionStatus.NO_PAPER)
    return TemporalAttribution(dataset.dataset_id, paper, paper.year, AttributionStatus.UNIQUE)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _content_kind(response: requests.Response) -> ContentKind:
    disposition = response.headers.get("Content-Disposition", "")
    if "attachment" in disposition.lower():
        return ContentKind.FILE
    content_type = (response.headers.get("Content-Type") or "").split(";")[0].strip().lower()
    if not content_type:
        return ContentKind.UNKNOWN
    if content_type in FILE_CONTENT_TYPES:
        return ContentKind.FILE
    if content_type.startswith("text/html") or content_type.startswith("application/xhtml"):
        return ContentKind.PAGE
    return ContentKind.UNKNOWN


def probe_url(url: str, policy: ProbePolicy | None = None) -> UrlProbe:
    """One bounded GET: follow redirects, read a prefix, classify the outcome.

    Network failures are recorded outcomes, never exceptions; only a
    syntactically invalid URL raises.
    """
    policy = policy or ProbePolicy()
    parts = urlsplit(url)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise InvalidUrl(url)
    session = requests.Session()
    session.max_redirects = policy.max_redirects
    probed_at = _now()
    try:
        response = session.get(
            url,
            timeout=(policy.connect_timeout, policy.read_timeout),
            headers={"User-Agent": policy.user_agent},
            stream=True,
            allow_redirects=True,
        )
    except requests.exceptions.SSLError:
        return UrlProbe(url, url, None, ProbeOutcome.TLS_FAILURE, ContentKind.UNKNOWN, probed_at)
    except requests.exceptions.Timeout:
        return UrlProbe(url, url, None, ProbeOutcome.TIMEOUT, ContentKind.UNKNOWN, probed_at)
    except requests.exceptions.TooManyRedirects:
        return UrlProbe(url, url, None, ProbeOutcome.DEAD, ContentKind.UNKNOWN, probed_at)
    except requests.RequestException:
        return UrlProbe(url, url, None, ProbeOutcome.DEAD, ContentKind.UNKNOWN, probed_at)
    try:
        kind = _content_kind(response)
        status = response.status_code
        final_url = response.url
        if status < 400:
            # read no more than the sniff prefix, then drop the connection
            try:
                next(response.iter_content(chunk_size=policy.sniff_bytes), b"")
            except requests.exceptions.Timeout:
                return UrlProbe(url, final_url, status, ProbeOutcome.TIMEOUT, kind, probed_at)
            except requests.RequestException:
                return UrlProbe(url, final_url, status, ProbeOutcome.DEAD, kind, probed_at)
            return UrlProbe(url, final_url, status, ProbeOutcome.RESOLVED, kind, probed_at)
        return UrlProbe(url, final_url, status, ProbeOutcome.DEAD, kind, probed_at)
    finally:
        response.close()


class HostBoundedProber:
    """Concurrent prober with a global bound and a per-host in-flight cap."""

    def __init__(self, policy: ProbePolicy | None = None, max_workers: int = 8, per_host: int = 2):
        self.policy = policy or ProbePolicy()
        self.max_workers = max_workers
        self.per_host = per_host
        self._host_locks: dict[str, threading.Semaphore] = {}
        self._guard = threading.Lock()

    def _semaphore_for(self, url: str) -> threading.Semaphore:
        host = urlsplit(url).netloc
        with self._guard:
            if host not in self._host_locks:
                self._host_locks[host] = threading.Semaphore(self.per_host)
            return self._host_locks[host]

    def probe_one(self, url: str) -> UrlProbe:
        semaphore = self._semaphore_for(url)
        with semaphore:
            return probe_url(url, self.policy)

    def probe_all(self, urls: Sequence[str]) -> list[UrlProbe]:
        from concurrent.futures import ThreadPoolExecutor

        if not urls:
            return []
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(pool.map(self.probe_one, urls))


def classify_accessibility(
    dataset: DatasetRecord,
    probes: Sequence[UrlProbe],
    annotator_confirmation: bool | None = None,
) -> AccessibilityResult:
    """OPEN only with a resolving probe that is a direct file, or a resolving
    page the annotator confirmed as an unrestricted same-dataset access
    procedure. Everything else, including gated distribution, is NOT_OPEN."""
    if not probes:
        raise NoProbes(dataset.dataset_id)
    open_access = False
    for probe in probes:
        if probe.outcome is not ProbeOutcome.RESOLVED:
            continue
        if probe.content_kind is ContentKind.FILE:
            open_access = True
            break
        if annotator_confirmation is True:
            open_access = True
            break
    return AccessibilityResult(
        dataset_id=dataset.dataset_id,
        status=AccessStatus.OPEN if open_access else AccessStatus.NOT_OPEN,
        probes=tuple(probes),
        annotator_confirmation=annotator_confirmation,
        decided_at=_now(),
    )


def usage_years(
    dataset: DatasetRecord, citing_papers: Iterable[PaperRef]
) -> tuple[Counter, int]:
    """Publication years of citing papers; papers without a year are counted
    as skipped rather than silently dropped."""
    years: Counter = Counter()
    skipped = 0
    for paper in citing_papers:
        if paper.year is None:
            skipped += 1
            continue
        years[paper.year] += 1
    return years, skipped
