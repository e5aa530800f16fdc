from __future__ import annotations

import csv
from decimal import Decimal

import pytest

from resaudit.catalogue import Source
from resaudit.inventory import read_attributes, enrich_records
from resaudit.linkaudit import AttributionStatus, TemporalAttribution
from resaudit.rdi import build_entries, display_value, distribution_summary
from resaudit.reports import (
    Modality,
    Pattern,
    comparison_table,
    emergence_usage_trends,
    flow_export,
    histogram_export,
    mined_counts_by_language,
)
from resaudit.validation import DatasetRecord, consolidate


def dataset(
    dataset_id: str,
    languages: set[str],
    task: str | None = "Sentiment Analysis",
    modality: str | None = "TEXT",
    emergence_year: int | None = None,
    usage_years: tuple[int, ...] = (),
) -> DatasetRecord:
    emergence = None
    if emergence_year is not None:
        emergence = TemporalAttribution(dataset_id, None, emergence_year, AttributionStatus.UNIQUE)
        # canonical paper omitted: trends only need status + year
    return DatasetRecord(
        dataset_id=dataset_id,
        canonical_name=f"DS {dataset_id}",
        languages=frozenset(languages),
        member_mention_ids=frozenset({f"m-{dataset_id}"}),
        emergence=emergence,
        task=task,
        modality=modality,
        usage_years=usage_years,
    )


@pytest.fixture(scope="module")
def enriched_reference(reference_store, data_dir):
    records = consolidate(reference_store)
    attributes = read_attributes(data_dir / "attributes.csv")
    return enrich_records(records, reference_store, attributes)


@pytest.fixture(scope="module")
def reference_comparison(registry, reference_counts, enriched_reference):
    mined = mined_counts_by_language(enriched_reference)
    entries = build_entries(registry, reference_counts, mined_counts=mined)
    return comparison_table(entries, enriched_reference, registry)


def test_setswana_row_matches_published_values(reference_comparison):
    row = next(r for r in reference_comparison if r.iso639_3 == "tsn")
    assert row.pattern is Pattern.ABSENT_IN_CATALOGUES
    assert row.mined.count == 26
    assert str(display_value(row.mined.rdi)) == "1.90"
    assert row.lre.count == 0 and row.ldc.count == 0
    assert str(display_value(row.avg_catalogue_rdi)) == "0.00"


def test_indonesian_row_matches_published_values(reference_comparison):
    row = next(r for r in reference_comparison if r.iso639_3 == "ind")
    assert row.pattern is Pattern.UNDERCOUNTED
    assert row.mined.count == 196
    assert str(display_value(row.mined.rdi)) == "0.78"
    assert row.lre.count == 31 and str(display_value(row.lre.rdi)) == "0.12"
    assert row.ldc.count == 3 and str(display_value(row.ldc.rdi)) == "0.01"
    assert str(display_value(row.avg_catalogue_rdi)) == "0.07"


def test_language_without_any_evidence_is_other(reference_comparison):
    row = next(r for r in reference_comparison if r.iso639_3 == "hak")
    assert row.pattern is Pattern.OTHER
    assert row.mined.count == 0


def test_pattern_one_has_35_languages(reference_comparison):
    absent = [r for r in reference_comparison if r.pattern is Pattern.ABSENT_IN_CATALOGUES]
    assert len(absent) == 35


def test_pattern_partition_of_mined_rows(reference_comparison):
    for row in reference_comparison:
        if row.mined.count > 0:
            assert row.pattern in (Pattern.ABSENT_IN_CATALOGUES, Pattern.UNDERCOUNTED)
        else:
            assert row.pattern is Pattern.OTHER


def test_rows_sorted_by_rounded_mined_rdi_within_pattern(reference_comparison):
    for pattern in (Pattern.ABSENT_IN_CATALOGUES, Pattern.UNDERCOUNTED):
        values = [
            display_value(r.mined.rdi) for r in reference_comparison if r.pattern is pattern
        ]
        assert values == sorted(values, reverse=True)


def test_displayed_rdi_recomputable_from_count_and_population(reference_comparison):
    from resaudit.rdi import compute_rdi

    for row in reference_comparison:
        recomputed = compute_rdi(row.mined.count, row.population_millions)
        assert display_value(recomputed) == display_value(row.mined.rdi)


# -- trends --------------------------------------------------------------------


def test_median_lag_of_two_datasets():
    records = [
        dataset("a", {"tsn"}, emergence_year=2020, usage_years=(2021,)),
        dataset("b", {"tsn"}, emergence_year=2020, usage_years=(2022, 2023)),
    ]
    series = emergence_usage_trends(records)
    assert series.median_lag == 1.5
    assert series.emergence_counts == {2020: 2}
    assert series.usage_counts == {2021: 1, 2022: 1, 2023: 1}


def test_dataset_without_usage_in_emergence_only():
    records = [dataset("a", {"tsn"}, emergence_year=2019, usage_years=())]
    series = emergence_usage_trends(records)
    assert series.emergence_counts == {2019: 1}
    assert series.median_lag is None
    assert series.lag_sample_size == 0


def test_empty_inventory_gives_empty_series():
    series = emergence_usage_trends([])
    assert series.emergence_counts == {} and series.usage_counts == {}
    assert series.median_lag is None


def test_trend_conservation_on_reference(enriched_reference):
    series = emergence_usage_trends(enriched_reference)
    unique = sum(
        1
        for r in enriched_reference
        if r.emergence is not None and r.emergence.status is AttributionStatus.UNIQUE
    )
    assert sum(series.emergence_counts.values()) == unique == 549


# -- flows -----------------------------------------------------------------------


def test_two_matching_datasets_aggregate_to_one_triple():
    records = [
        dataset("a", {"ind"}, task="Sentiment Analysis", modality="TEXT"),
        dataset("b", {"ind"}, task="Sentiment Analysis", modality="TEXT"),
    ]
    triples = flow_export(records)
    assert len(triples) == 1
    triple = triples[0]
    assert (triple.task, triple.modality, triple.iso639_3, triple.count) == (
        "Sentiment Analysis",
        Modality.TEXT,
        "ind",
        2,
    )


def test_unlabeled_task_routed_to_unlabeled():
    triples = flow_export([dataset("a", {"tsn"}, task=None)])
    assert triples[0].task == "Unlabeled"


def test_empty_inventory_gives_no_flows():
    assert flow_export([]) == []


def test_flow_conservation(enriched_reference):
    triples = flow_export(enriched_reference)
    total_mass = sum(t.count for t in triples)
    expected = sum(len(r.languages) for r in enriched_reference)
    assert total_mass == expected
    per_task_by_modality: dict[str, int] = {}
    for t in triples:
        per_task_by_modality[t.task] = per_task_by_modality.get(t.task, 0) + t.count
    assert sum(per_task_by_modality.values()) == total_mass


# -- histogram --------------------------------------------------------------------


def test_histogram_zero_row_is_118(reference_entries):
    rows = histogram_export(distribution_summary(reference_entries))
    assert rows[0] == ("0", 118)


def test_histogram_bins_sum_to_total(reference_entries):
    rows = histogram_export(distribution_summary(reference_entries))
    assert sum(count for _, count in rows) == 200


def test_all_zero_fixture_single_nonempty_row():
    from fractions import Fraction

    from resaudit.rdi import RdiEntry, SourceDensity

    zero = Fraction(0)
    entry = RdiEntry(
        "aaa",
        Decimal("10"),
        {Source.LRE_MAP: SourceDensity(0, zero), Source.LDC: SourceDensity(0, zero)},
        zero,
    )
    rows = histogram_export(distribution_summary([entry]))
    nonempty = [row for row in rows if row[1] > 0]
    assert nonempty == [("0", 1)]
