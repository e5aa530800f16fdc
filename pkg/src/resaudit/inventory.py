"""Attribute records for consolidated datasets and inventory enrichment.

The attributes file carries the annotator-confirmed outcome per dataset:
emergence status (with the canonical paper's year when unique), the link
verification result, and the task/modality labels used by the flow report.
Enrichment replays those outcomes onto consolidated records, deriving the
accessibility status through the same classification rule the live audit
uses.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .discovery import PaperRef
from .linkaudit import (
    AccessibilityResult,
    AccessStatus,
    AttributionStatus,
    ContentKind,
    ProbeOutcome,
    TemporalAttribution,
    UrlProbe,
    classify_accessibility,
)
from .validation import DatasetRecord, ValidationStore

# How the annotator's manual URL check ended: a direct file, a resolving page
# confirmed as gated/restricted, or a dead link.
LINK_STATES = ("file", "gated", "dead")

FIXED_PROBE_TIME = "2025-07-01T00:00:00+00:00"


@dataclass(frozen=True)
class AttributeRow:
    dataset_id: str
    emergence_status: AttributionStatus
    emergence_year: int | None
    accessibility: AccessStatus
    link_state: str
    url: str
    task: str
    modality: str


def read_attributes(path: str | Path) -> dict[str, AttributeRow]:
    rows: dict[str, AttributeRow] = {}
    with Path(path).open(newline="", encoding="utf-8") as handle:
        for record in csv.DictReader(handle):
            year_text = (record.get("emergence_year") or "").strip()
            rows[record["dataset_id"]] = AttributeRow(
                dataset_id=record["dataset_id"],
                emergence_status=AttributionStatus(record["emergence_status"]),
                emergence_year=int(year_text) if year_text else None,
                accessibility=AccessStatus(record["accessibility"]),
                link_state=record.get("link_state", "dead"),
                url=record.get("url", ""),
                task=record.get("task", ""),
                modality=record.get("modality", ""),
            )
    return rows


def write_attributes(rows: Iterable[AttributeRow], path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            [
                "dataset_id",
                "emergence_status",
                "emergence_year",
                "accessibility",
                "link_state",
                "url",
                "task",
                "modality",
            ]
        )
        for row in rows:
            writer.writerow(
                [
                    row.dataset_id,
                    row.emergence_status.value,
                    row.emergence_year if row.emergence_year is not None else "",
                    row.accessibility.value,
                    row.link_state,
                    row.url,
                    row.task,
                    row.modality,
                ]
            )


def _probe_for(row: AttributeRow) -> UrlProbe:
    if row.link_state == "file":
        return UrlProbe(row.url, row.url, 200, ProbeOutcome.RESOLVED, ContentKind.FILE, FIXED_PROBE_TIME)
    if row.link_state == "gated":
        return UrlProbe(row.url, row.url, 200, ProbeOutcome.RESOLVED, ContentKind.PAGE, FIXED_PROBE_TIME)
    return UrlProbe(row.url, row.url, 404, ProbeOutcome.DEAD, ContentKind.UNKNOWN, FIXED_PROBE_TIME)


def _usage_years_for(record: DatasetRecord, store: ValidationStore) -> tuple[int, ...]:
    """One usage year per distinct citing paper with a known year."""
    by_paper: dict[str, int] = {}
    anonymous: list[int] = []
    for mention_id in sorted(record.member_mention_ids):
        candidate = store.candidates[mention_id]
        if candidate.citing_year is None:
            continue
        if candidate.citing_paper_id:
            by_paper[candidate.citing_paper_id] = candidate.citing_year
        else:
            anonymous.append(candidate.citing_year)
    return tuple(sorted(list(by_paper.values()) + anonymous))


def _emergence_for(
    record: DatasetRecord, row: AttributeRow, store: ValidationStore
) -> TemporalAttribution:
    if row.emergence_status is AttributionStatus.UNIQUE:
        anchor = min(record.member_mention_ids & set(store.candidates))
        paper = None
        for mention_id in sorted(record.member_mention_ids):
            candidate = store.candidates[mention_id]
            if candidate.cited_year == row.emergence_year and candidate.cited_paper_id:
                paper = PaperRef(
                    candidate.cited_paper_id, candidate.cited_title, candidate.cited_year
                )
                break
        if paper is None:
            candidate = store.candidates[anchor]
            paper = PaperRef(
                candidate.cited_paper_id or "", candidate.cited_title, row.emergence_year
            )
        return TemporalAttribution(
            record.dataset_id, paper, row.emergence_year, AttributionStatus.UNIQUE
        )
    return TemporalAttribution(record.dataset_id, None, None, row.emergence_status)


def enrich_records(
    records: Sequence[DatasetRecord],
    store: ValidationStore,
    attributes: Mapping[str, AttributeRow],
) -> list[DatasetRecord]:
    """Attach emergence, accessibility, labels, and usage years to records."""
    from dataclasses import replace

    enriched: list[DatasetRecord] = []
    for record in records:
        usage = _usage_years_for(record, store)
        row = attributes.get(record.dataset_id)
        if row is None:
            enriched.append(replace(record, usage_years=usage))
            continue
        accessibility = classify_accessibility(
            record,
            [_probe_for(row)],
            annotator_confirmation=False if row.link_state == "gated" else None,
        )
        enriched.append(
            replace(
                record,
                emergence=_emergence_for(record, row, store),
                accessibility=accessibility,
                task=row.task or None,
                modality=row.modality or None,
                usage_years=usage,
            )
        )
    return enriched
