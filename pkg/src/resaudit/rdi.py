"""Resource Density Index: documented datasets per one million speakers.

Internal arithmetic keeps the exact unrounded quotient (rational values, so
identities like homogeneity hold exactly); only display values are rounded,
half-up to two places. The per-language catalogue estimate is the mean of
the two per-source RDI values computed before any rounding, which is what
reproduces rows like an average of 0.0789 displaying as 0.08.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .catalogue import CatalogueCounts, Source
from .registry import Registry

TWO_PLACES = Decimal("0.01")
DEFAULT_THRESHOLD = Decimal("0.1")
DEFAULT_BIN_EDGES: tuple[Decimal, ...] = (
    Decimal("0"),
    Decimal("0.1"),
    Decimal("0.25"),
    Decimal("0.5"),
    Decimal("1.0"),
)


class RdiError(Exception):
    pass


class NonPositivePopulation(RdiError):
    pass


class MissingSource(RdiError):
    pass


class InvalidBins(RdiError):
    pass


def compute_rdi(count: int, population_millions: Decimal | Fraction) -> Fraction:
    """count / population_millions as an exact, unrounded quotient."""
    if population_millions <= 0:
        raise NonPositivePopulation(f"population {population_millions} must be > 0")
    if count < 0:
        raise RdiError(f"negative count {count}")
    return Fraction(count) / Fraction(population_millions)


def display_value(value: Fraction | Decimal | int) -> Decimal:
    """Round half-up to two decimals for presentation."""
    if isinstance(value, Fraction):
        with localcontext() as ctx:
            ctx.prec = 50
            value = Decimal(value.numerator) / Decimal(value.denominator)
    return Decimal(value).quantize(TWO_PLACES, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class SourceDensity:
    count: int
    rdi: Fraction


@dataclass
class RdiEntry:
    iso639_3: str
    population_millions: Decimal
    per_source: dict[Source, SourceDensity]
    avg_catalogue_rdi: Fraction
    mined: SourceDensity | None = None


def average_catalogue_rdi(per_source: Mapping[Source, SourceDensity]) -> Fraction:
    """Arithmetic mean of the two unrounded per-source values."""
    missing = [s for s in (Source.LRE_MAP, Source.LDC) if s not in per_source]
    if missing:
        raise MissingSource(", ".join(s.value for s in missing))
    return (per_source[Source.LRE_MAP].rdi + per_source[Source.LDC].rdi) / 2


def build_entries(
    registry: Registry,
    counts: CatalogueCounts,
    mined_counts: Mapping[str, int] | None = None,
) -> list[RdiEntry]:
    """One entry per registry language, in registry order; absent counts are 0."""
    entries: list[RdiEntry] = []
    for record in registry:
        per_source = {
            source: SourceDensity(
                counts.count(record.iso639_3, source),
                compute_rdi(counts.count(record.iso639_3, source), record.population_millions),
            )
            for source in (Source.LRE_MAP, Source.LDC)
        }
        mined = None
        if mined_counts is not None:
            mined_count = mined_counts.get(record.iso639_3, 0)
            mined = SourceDensity(
                mined_count, compute_rdi(mined_count, record.population_millions)
            )
        entries.append(
            RdiEntry(
                iso639_3=record.iso639_3,
                population_millions=record.population_millions,
                per_source=per_source,
                avg_catalogue_rdi=average_catalogue_rdi(per_source),
                mined=mined,
            )
        )
    return entries


def low_visibility_filter(
    entries: Sequence[RdiEntry], threshold: Decimal = DEFAULT_THRESHOLD
) -> list[RdiEntry]:
    """Entries whose average catalogue RDI falls strictly below the threshold."""
    return [entry for entry in entries if entry.avg_catalogue_rdi < threshold]


@dataclass
class DistributionSummary:
    total: int
    zero_count: int
    bin_counts: dict[tuple[Decimal, Decimal | None], int] = field(default_factory=dict)
    over_one_count: int = 0

    def bin_labels(self) -> list[tuple[str, int]]:
        rows: list[tuple[str, int]] = [("0", self.zero_count)]
        for (lo, hi), count in self.bin_counts.items():
            if lo == 0:
                label = f"(0,{hi})"
            elif hi is None:
                label = f"[{lo},inf)"
            else:
                label = f"[{lo},{hi})"
            rows.append((label, count))
        return rows


def distribution_summary(
    entries: Sequence[RdiEntry],
    bin_edges: Sequence[Decimal] = DEFAULT_BIN_EDGES,
) -> DistributionSummary:
    """Histogram of average catalogue RDI with exact zeros kept apart.

    Interior bins are half-open [lo, hi); the final bin is [last_edge, inf).
    Zeros never fall into a bin, and over_one_count is the strict count of
    values above 1.0 regardless of the edges supplied.
    """
    edges = [Decimal(edge) for edge in bin_edges]
    if len(edges) < 2 or any(a >= b for a, b in zip(edges, edges[1:])):
        raise InvalidBins(f"edges must be strictly increasing, got {edges}")
    intervals: list[tuple[Decimal, Decimal | None]] = [
        (edges[i], edges[i + 1]) for i in range(len(edges) - 1)
    ]
    intervals.append((edges[-1], None))
    summary = DistributionSummary(total=len(entries), zero_count=0)
    summary.bin_counts = {interval: 0 for interval in intervals}
    for entry in entries:
        value = entry.avg_catalogue_rdi
        if value > 1:
            summary.over_one_count += 1
        if value == 0:
            summary.zero_count += 1
            continue
        for lo, hi in intervals:
            if value >= lo and (hi is None or value < hi):
                summary.bin_counts[(lo, hi)] += 1
                break
        else:
            # values below the first edge (possible with nonzero first edge)
            summary.bin_counts[intervals[0]] += 1
    return summary


def write_rdi_csv(entries: Sequence[RdiEntry], path, include_mined: bool | None = None) -> None:
    """Emit `rdi.csv` with display-rounded values."""
    import csv
    from pathlib import Path

    path = Path(path)
    if include_mined is None:
        include_mined = any(entry.mined is not None for entry in entries)
    header = [
        "iso639_3",
        "population_millions",
        "lre_count",
        "lre_rdi",
        "ldc_count",
        "ldc_rdi",
        "avg_rdi",
    ]
    if include_mined:
        header += ["mined_count", "mined_rdi"]
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for entry in entries:
            lre = entry.per_source[Source.LRE_MAP]
            ldc = entry.per_source[Source.LDC]
            row = [
                entry.iso639_3,
                str(entry.population_millions),
                lre.count,
                str(display_value(lre.rdi)),
                ldc.count,
                str(display_value(ldc.rdi)),
                str(display_value(entry.avg_catalogue_rdi)),
            ]
            if include_mined:
                mined = entry.mined or SourceDensity(0, Decimal("0"))
                row += [mined.count, str(display_value(mined.rdi))]
            writer.writerow(row)
