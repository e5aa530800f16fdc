"""Candidate dataset-mention discovery from citation evidence.

For each target language, papers matching the language name plus
resource-related terms are retrieved, their citation graph is expanded in
both directions, and every citation context becomes a candidate tuple of
{language, citing paper, cited paper, context}. Candidate identity is a
content hash, so re-running over the same recorded responses reproduces the
same set.
"""

from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .registry import Registry
from .scholar import ScholarClient

logger = logging.getLogger(__name__)

DEFAULT_K = 400
DEFAULT_QUERY_TERMS: tuple[str, ...] = ("corpus", "dataset", "data")


class Direction(Enum):
    OUTGOING = "OUTGOING"  # the retrieved paper cites the candidate dataset paper
    INCOMING = "INCOMING"  # another paper cites the retrieved (dataset-creation) paper


@dataclass(frozen=True)
class PaperRef:
    paper_id: str
    title: str = ""
    year: int | None = None
    venue: str | None = None
    abstract: str | None = None

    @classmethod
    def from_api(cls, payload: dict) -> "PaperRef":
        return cls(
            paper_id=str(payload.get("paperId") or payload.get("paper_id") or ""),
            title=payload.get("title") or "",
            year=payload.get("year"),
            venue=payload.get("venue") or None,
            abstract=payload.get("abstract") or None,
        )


@dataclass(frozen=True)
class CitationContext:
    citing: PaperRef
    cited: PaperRef
    context_text: str
    direction: Direction


def context_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def mention_id(language: str, citing_id: str, cited_id: str, digest: str) -> str:
    raw = f"{language}|{citing_id}|{cited_id}|{digest}"
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class CandidateMention:
    mention_id: str
    language: str
    context: CitationContext
    extracted_name: str | None = None

    @classmethod
    def build(cls, language: str, context: CitationContext) -> "CandidateMention":
        return cls(
            mention_id=mention_id(
                language,
                context.citing.paper_id,
                context.cited.paper_id,
                context_digest(context.context_text),
            ),
            language=language,
            context=context,
        )


@dataclass
class DiscoveryConfig:
    k: int = DEFAULT_K
    query_terms: tuple[str, ...] = DEFAULT_QUERY_TERMS
    workers: int = 4

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not self.query_terms:
            raise ValueError("query_terms must be nonempty")


def build_query(language_name: str, query_terms: Sequence[str] = DEFAULT_QUERY_TERMS) -> str:
    """Conjunction of the language name with the resource-term disjunction."""
    if not language_name.strip():
        raise ValueError("language_name must be nonempty")
    if not query_terms:
        raise ValueError("query_terms must be nonempty")
    disjunction = " OR ".join(f'"{term}"' for term in query_terms)
    return f'"{language_name.strip()}" AND ({disjunction})'


def search_papers(client: ScholarClient, query: str, k: int) -> list[PaperRef]:
    """At most k relevance-ordered papers; provider ranking is kept as-is."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return [PaperRef.from_api(item) for item in client.search(query, k)]


def expand_citations(client: ScholarClient, paper: PaperRef) -> list[CitationContext]:
    """Outgoing reference contexts plus incoming citation contexts.

    Edges without any context text are skipped (and logged): a bare
    bibliography entry carries no evidence to classify.
    """
    contexts: list[CitationContext] = []
    skipped = 0
    for item in client.references(paper.paper_id):
        cited = PaperRef.from_api(item.get("citedPaper") or {})
        if not cited.paper_id:
            continue
        texts = [t for t in (item.get("contexts") or []) if t and t.strip()]
        if not texts:
            skipped += 1
            continue
        for text in texts:
            contexts.append(CitationContext(paper, cited, text.strip(), Direction.OUTGOING))
    for item in client.citations(paper.paper_id):
        citing = PaperRef.from_api(item.get("citingPaper") or {})
        if not citing.paper_id:
            continue
        texts = [t for t in (item.get("contexts") or []) if t and t.strip()]
        if not texts:
            skipped += 1
            continue
        for text in texts:
            contexts.append(CitationContext(citing, paper, text.strip(), Direction.INCOMING))
    if skipped:
        logger.info("skipped %d context-less citation edges for %s", skipped, paper.paper_id)
    return contexts


def assemble_candidates(language: str, contexts: Iterable[CitationContext]) -> list[CandidateMention]:
    """One mention per unique content hash, in first-seen order (idempotent)."""
    seen: set[str] = set()
    mentions: list[CandidateMention] = []
    for context in contexts:
        if context.citing.paper_id == context.cited.paper_id:
            continue
        if not context.context_text.strip():
            continue
        mention = CandidateMention.build(language, context)
        if mention.mention_id in seen:
            continue
        seen.add(mention.mention_id)
        mentions.append(mention)
    return mentions


def discover_language(
    client: ScholarClient,
    registry: Registry,
    code: str,
    config: DiscoveryConfig,
) -> list[CandidateMention]:
    record = registry.get(code)
    if record is None:
        raise KeyError(f"language {code!r} not in registry")
    query = build_query(record.canonical_name, config.query_terms)
    papers = search_papers(client, query, config.k)
    contexts: list[CitationContext] = []
    for paper in papers:
        contexts.extend(expand_citations(client, paper))
    return assemble_candidates(code, contexts)


def run_discovery(
    client: ScholarClient,
    registry: Registry,
    codes: Sequence[str],
    config: DiscoveryConfig,
) -> list[CandidateMention]:
    """Per-language discovery on a bounded pool; output is in language order."""
    results: dict[str, list[CandidateMention]] = {}
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        futures = {
            code: pool.submit(discover_language, client, registry, code, config)
            for code in codes
        }
        for code, future in futures.items():
            results[code] = future.result()
    merged: list[CandidateMention] = []
    for code in codes:
        merged.extend(results[code])
    return merged


# -- candidate file format ----------------------------------------------------


def mention_to_record(mention: CandidateMention, verdict: dict | None = None) -> dict:
    record = {
        "mention_id": mention.mention_id,
        "language": mention.language,
        "citing": {
            "paper_id": mention.context.citing.paper_id,
            "title": mention.context.citing.title,
            "year": mention.context.citing.year,
        },
        "cited": {
            "paper_id": mention.context.cited.paper_id,
            "title": mention.context.cited.title,
            "year": mention.context.cited.year,
        },
        "context": mention.context.context_text,
        "direction": mention.context.direction.value,
    }
    if mention.extracted_name:
        record["extracted_name"] = mention.extracted_name
    if verdict is not None:
        record["verdict"] = verdict
    return record


def record_to_mention(record: dict) -> CandidateMention:
    citing = PaperRef(
        paper_id=record["citing"]["paper_id"],
        title=record["citing"].get("title", ""),
        year=record["citing"].get("year"),
    )
    cited = PaperRef(
        paper_id=record["cited"]["paper_id"],
        title=record["cited"].get("title", ""),
        year=record["cited"].get("year"),
    )
    context = CitationContext(
        citing, cited, record["context"], Direction(record.get("direction", "OUTGOING"))
    )
    return CandidateMention(
        mention_id=record["mention_id"],
        language=record["language"],
        context=context,
        extracted_name=record.get("extracted_name"),
    )


def write_candidates(path: str | Path, mentions: Iterable[CandidateMention]) -> int:
    """Newline-delimited candidate records with stable key order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8") as handle:
        for mention in mentions:
            handle.write(json.dumps(mention_to_record(mention), sort_keys=True) + "\n")
            count += 1
    return count


def read_candidate_records(path: str | Path) -> list[dict]:
    records = []
    with Path(path).open(encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records
