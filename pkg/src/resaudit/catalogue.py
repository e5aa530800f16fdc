"""Catalogue export parsing and per-language documented-dataset counts.

Two registries are supported: a community-driven map of reported resources
(semicolon-separated multi-language field) and a curated institutional
catalogue (single language column). The two sources are counted
independently and never cross-deduplicated; they are complementary
observations of documented visibility, not a union.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .registry import MissingFile, Outcome, Registry, RuleSet, normalize_label


class Source(Enum):
    LRE_MAP = "LRE_MAP"
    LDC = "LDC"


class CatalogueError(Exception):
    pass


class MalformedRecord(CatalogueError):
    def __init__(self, position: int, detail: str):
        super().__init__(f"record {position}: {detail}")
        self.position = position


class DuplicateResourceId(CatalogueError):
    def __init__(self, source: Source, resource_id: str):
        super().__init__(f"duplicate resource id {resource_id!r} in {source.value}")
        self.resource_id = resource_id


@dataclass(frozen=True)
class CatalogueEntry:
    source: Source
    resource_id: str
    raw_language_labels: tuple[str, ...]
    resource_name: str
    year: int | None = None
    resource_type: str | None = None


@dataclass(frozen=True)
class ExceptionRow:
    source: Source
    resource_id: str
    label: str
    outcome: Outcome  # BROAD or UNMAPPED


@dataclass
class CatalogueCounts:
    counts: dict[tuple[str, Source], int] = field(default_factory=dict)
    exceptions: list[ExceptionRow] = field(default_factory=list)

    def count(self, code: str, source: Source) -> int:
        return self.counts.get((code, source), 0)


def parse_catalogue(path: str | Path, source: Source) -> list[CatalogueEntry]:
    """Read one export; LRE Map rows may carry several `;`-separated labels."""
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    entries: list[CatalogueEntry] = []
    seen_ids: set[str] = set()
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        language_column = "languages" if source is Source.LRE_MAP else "language"
        required = {"resource_id", "resource_name", language_column}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise MalformedRecord(0, f"header must contain {sorted(required)}")
        for position, row in enumerate(reader, start=1):
            resource_id = (row.get("resource_id") or "").strip()
            if not resource_id:
                raise MalformedRecord(position, "empty resource_id")
            if resource_id in seen_ids:
                raise DuplicateResourceId(source, resource_id)
            seen_ids.add(resource_id)
            raw_field = (row.get(language_column) or "").strip()
            labels = tuple(part.strip() for part in raw_field.split(";") if part.strip())
            if not labels:
                raise MalformedRecord(position, "no language labels")
            year_text = (row.get("year") or "").strip()
            year: int | None = None
            if year_text:
                try:
                    year = int(year_text)
                except ValueError:
                    raise MalformedRecord(position, f"bad year {year_text!r}") from None
            resource_type = (row.get("type") or "").strip() or None
            entries.append(
                CatalogueEntry(
                    source=source,
                    resource_id=resource_id,
                    raw_language_labels=labels,
                    resource_name=(row.get("resource_name") or "").strip(),
                    year=year,
                    resource_type=resource_type,
                )
            )
    return entries


def filter_by_type(entries: Iterable[CatalogueEntry], types: Sequence[str]) -> list[CatalogueEntry]:
    """Optional narrowing by resource type; counting is unfiltered by default."""
    wanted = {t.strip().lower() for t in types if t.strip()}
    if not wanted:
        return list(entries)
    return [e for e in entries if (e.resource_type or "").lower() in wanted]


def count_by_language(
    entries: Iterable[CatalogueEntry],
    registry: Registry,
    rules: RuleSet,
) -> CatalogueCounts:
    """Fold entries into per-(language, source) counts.

    A resource contributes at most 1 to each language it maps to, however many
    of its raw labels resolve there. Broad and unmapped labels contribute
    nothing and are preserved verbatim in the exceptions list.
    """
    result = CatalogueCounts()
    for entry in entries:
        mapped_codes: set[str] = set()
        for label in entry.raw_language_labels:
            outcome = normalize_label(label, rules, registry)
            if outcome.kind is Outcome.MAPPED:
                mapped_codes.add(outcome.value)
            else:
                result.exceptions.append(
                    ExceptionRow(entry.source, entry.resource_id, label, outcome.kind)
                )
        for code in mapped_codes:
            key = (code, entry.source)
            result.counts[key] = result.counts.get(key, 0) + 1
    return result


def write_counts_csv(counts: CatalogueCounts, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["iso639_3", "source", "count"])
        for (code, source), value in sorted(
            counts.counts.items(), key=lambda item: (item[0][0], item[0][1].value)
        ):
            writer.writerow([code, source.value, value])


def write_exceptions_csv(counts: CatalogueCounts, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["source", "resource_id", "label", "outcome"])
        for row in counts.exceptions:
            writer.writerow([row.source.value, row.resource_id, row.label, row.outcome.value])


def read_counts_csv(path: str | Path) -> CatalogueCounts:
    """Load a previously written (or shipped) long-form counts file."""
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    result = CatalogueCounts()
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        for position, row in enumerate(reader, start=1):
            try:
                code = row["iso639_3"].strip()
                source = Source(row["source"].strip())
                value = int(row["count"])
            except (KeyError, ValueError) as exc:
                raise MalformedRecord(position, str(exc)) from None
            if value < 0:
                raise MalformedRecord(position, f"negative count {value}")
            result.counts[(code, source)] = value
    return result
