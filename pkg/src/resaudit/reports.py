"""Comparison, distribution, trend, and flow reports over the audited inventory.

Everything here is pure aggregation emitted as delimited text plus one JSON
bundle; plotting is left to external tools. Mined per-language counts
attribute a multilingual dataset once to every language it covers.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .linkaudit import AccessStatus, AttributionStatus
from .catalogue import Source
from .rdi import DistributionSummary, RdiEntry, SourceDensity, compute_rdi, display_value
from .registry import Registry
from .validation import DatasetRecord


class Pattern(Enum):
    ABSENT_IN_CATALOGUES = "ABSENT_IN_CATALOGUES"
    UNDERCOUNTED = "UNDERCOUNTED"
    OTHER = "OTHER"


class Modality(Enum):
    TEXT = "TEXT"
    SPEECH = "SPEECH"
    MULTIMODAL = "MULTIMODAL"


@dataclass(frozen=True)
class ComparisonRow:
    iso639_3: str
    language_name: str
    population_millions: Decimal
    mined: SourceDensity
    lre: SourceDensity
    ldc: SourceDensity
    avg_catalogue_rdi: Decimal
    pattern: Pattern


@dataclass
class TrendSeries:
    emergence_counts: dict[int, int] = field(default_factory=dict)
    usage_counts: dict[int, int] = field(default_factory=dict)
    median_lag: float | None = None
    lag_quartiles: tuple[float, float] | None = None
    lag_sample_size: int = 0


@dataclass(frozen=True)
class FlowTriple:
    task: str
    modality: Modality
    iso639_3: str
    count: int


def mined_counts_by_language(records: Iterable[DatasetRecord]) -> dict[str, int]:
    """A dataset counts once for every language it covers."""
    counts: dict[str, int] = {}
    for record in records:
        for code in record.languages:
            counts[code] = counts.get(code, 0) + 1
    return counts


def _pattern_for(mined_count: int, lre_count: int, ldc_count: int) -> Pattern:
    if mined_count > 0 and lre_count == 0 and ldc_count == 0:
        return Pattern.ABSENT_IN_CATALOGUES
    if mined_count > 0 and (lre_count + ldc_count) > 0:
        return Pattern.UNDERCOUNTED
    return Pattern.OTHER


def comparison_table(
    rdi_entries: Sequence[RdiEntry],
    dataset_records: Sequence[DatasetRecord],
    registry: Registry,
) -> list[ComparisonRow]:
    """Catalogue-versus-research rows, grouped by pattern.

    Within each pattern, rows are ordered by the rounded mined RDI,
    descending, keeping the input order among display ties.
    """
    mined = mined_counts_by_language(dataset_records)
    rows: list[ComparisonRow] = []
    for entry in rdi_entries:
        record = registry.get(entry.iso639_3)
        name = record.canonical_name if record is not None else entry.iso639_3
        mined_count = mined.get(entry.iso639_3, 0)
        mined_density = SourceDensity(
            mined_count, compute_rdi(mined_count, entry.population_millions)
        )
        lre = entry.per_source[Source.LRE_MAP]
        ldc = entry.per_source[Source.LDC]
        rows.append(
            ComparisonRow(
                iso639_3=entry.iso639_3,
                language_name=name,
                population_millions=entry.population_millions,
                mined=mined_density,
                lre=lre,
                ldc=ldc,
                avg_catalogue_rdi=entry.avg_catalogue_rdi,
                pattern=_pattern_for(mined_count, lre.count, ldc.count),
            )
        )
    pattern_order = {
        Pattern.ABSENT_IN_CATALOGUES: 0,
        Pattern.UNDERCOUNTED: 1,
        Pattern.OTHER: 2,
    }
    rows.sort(key=lambda row: -display_value(row.mined.rdi))  # stable: ties keep input order
    rows.sort(key=lambda row: pattern_order[row.pattern])
    return rows


def emergence_usage_trends(dataset_records: Sequence[DatasetRecord]) -> TrendSeries:
    """Yearly emergence and usage histograms plus the emergence-to-first-use lag.

    Lag is defined per dataset as first usage year minus emergence year and
    only for datasets with a UNIQUE attribution and at least one usage year.
    """
    series = TrendSeries()
    lags: list[int] = []
    for record in dataset_records:
        attribution = record.emergence
        has_unique_year = (
            attribution is not None
            and attribution.status is AttributionStatus.UNIQUE
            and attribution.emergence_year is not None
        )
        if has_unique_year:
            year = attribution.emergence_year
            series.emergence_counts[year] = series.emergence_counts.get(year, 0) + 1
        for usage_year in record.usage_years:
            series.usage_counts[usage_year] = series.usage_counts.get(usage_year, 0) + 1
        if has_unique_year and record.usage_years:
            lags.append(min(record.usage_years) - attribution.emergence_year)
    if lags:
        series.lag_sample_size = len(lags)
        series.median_lag = float(statistics.median(lags))
        if len(lags) >= 2:
            quartiles = statistics.quantiles(lags, n=4, method="inclusive")
            series.lag_quartiles = (float(quartiles[0]), float(quartiles[2]))
        else:
            series.lag_quartiles = (float(lags[0]), float(lags[0]))
    return series


def flow_export(dataset_records: Sequence[DatasetRecord]) -> list[FlowTriple]:
    """Aggregate task -> modality -> language assignments.

    Total flow mass equals the number of (dataset, language, task)
    assignments; unlabeled tasks are routed to "Unlabeled" and an unlabeled
    modality defaults to TEXT.
    """
    tallies: dict[tuple[str, Modality, str], int] = {}
    for record in dataset_records:
        task = record.task or "Unlabeled"
        try:
            modality = Modality(record.modality) if record.modality else Modality.TEXT
        except ValueError:
            modality = Modality.TEXT
        for code in sorted(record.languages):
            key = (task, modality, code)
            tallies[key] = tallies.get(key, 0) + 1
    return [
        FlowTriple(task, modality, code, count)
        for (task, modality, code), count in sorted(
            tallies.items(), key=lambda item: (item[0][0], item[0][1].value, item[0][2])
        )
    ]


def histogram_export(summary: DistributionSummary) -> list[tuple[str, int]]:
    """One row per class, exact zeros first."""
    return summary.bin_labels()


# -- serialization --------------------------------------------------------------


def comparison_to_csv(rows: Sequence[ComparisonRow], path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            [
                "iso639_3",
                "language",
                "population_millions",
                "mined_count",
                "mined_rdi",
                "lre_count",
                "lre_rdi",
                "ldc_count",
                "ldc_rdi",
                "avg_rdi",
                "pattern",
            ]
        )
        for row in rows:
            writer.writerow(_comparison_row_values(row))


def _comparison_row_values(row: ComparisonRow) -> list:
    return [
        row.iso639_3,
        row.language_name,
        str(row.population_millions),
        row.mined.count,
        str(display_value(row.mined.rdi)),
        row.lre.count,
        str(display_value(row.lre.rdi)),
        row.ldc.count,
        str(display_value(row.ldc.rdi)),
        str(display_value(row.avg_catalogue_rdi)),
        row.pattern.value,
    ]


def trends_to_csv(series: TrendSeries, path: str | Path) -> None:
    path = Path(path)
    years = sorted(set(series.emergence_counts) | set(series.usage_counts))
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["year", "emergence_count", "usage_count"])
        for year in years:
            writer.writerow(
                [year, series.emergence_counts.get(year, 0), series.usage_counts.get(year, 0)]
            )


def flows_to_csv(triples: Sequence[FlowTriple], path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["task", "modality", "iso639_3", "count"])
        for triple in triples:
            writer.writerow([triple.task, triple.modality.value, triple.iso639_3, triple.count])


def histogram_to_csv(rows: Sequence[tuple[str, int]], path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["bin", "count"])
        for label, count in rows:
            writer.writerow([label, count])


def build_report(
    comparison: Sequence[ComparisonRow],
    trends: TrendSeries,
    flows: Sequence[FlowTriple],
    histogram: Sequence[tuple[str, int]],
    metadata: Mapping[str, object],
) -> dict:
    return {
        "metadata": dict(metadata),
        "comparison": [
            {
                "iso639_3": row.iso639_3,
                "language": row.language_name,
                "population_millions": str(row.population_millions),
                "mined": {"count": row.mined.count, "rdi": str(display_value(row.mined.rdi))},
                "lre": {"count": row.lre.count, "rdi": str(display_value(row.lre.rdi))},
                "ldc": {"count": row.ldc.count, "rdi": str(display_value(row.ldc.rdi))},
                "avg_rdi": str(display_value(row.avg_catalogue_rdi)),
                "pattern": row.pattern.value,
            }
            for row in comparison
        ],
        "trends": {
            "emergence": {str(y): c for y, c in sorted(trends.emergence_counts.items())},
            "usage": {str(y): c for y, c in sorted(trends.usage_counts.items())},
            "median_lag": trends.median_lag,
            "lag_quartiles": list(trends.lag_quartiles) if trends.lag_quartiles else None,
            "lag_sample_size": trends.lag_sample_size,
        },
        "flows": [
            {
                "task": t.task,
                "modality": t.modality.value,
                "iso639_3": t.iso639_3,
                "count": t.count,
            }
            for t in flows
        ],
        "histogram": [{"bin": label, "count": count} for label, count in histogram],
    }


def write_report_json(report: dict, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(report, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def accessibility_split(records: Sequence[DatasetRecord]) -> dict[str, int]:
    split = {"OPEN": 0, "NOT_OPEN": 0, "UNAUDITED": 0}
    for record in records:
        if record.accessibility is None:
            split["UNAUDITED"] += 1
        elif record.accessibility.status is AccessStatus.OPEN:
            split["OPEN"] += 1
        else:
            split["NOT_OPEN"] += 1
    return split


def attribution_split(records: Sequence[DatasetRecord]) -> dict[str, int]:
    split = {status.value: 0 for status in AttributionStatus}
    split["UNATTRIBUTED"] = 0
    for record in records:
        if record.emergence is None:
            split["UNATTRIBUTED"] += 1
        else:
            split[record.emergence.status.value] += 1
    return split
