from __future__ import annotations

import random

import pytest

from resaudit.catalogue import (
    CatalogueEntry,
    DuplicateResourceId,
    MalformedRecord,
    Source,
    count_by_language,
    filter_by_type,
    parse_catalogue,
)
from resaudit.registry import Outcome

LDC_HEADER = "resource_id,resource_name,language,type,year\n"
LRE_HEADER = "resource_id,resource_name,languages,type,year\n"


def test_multilanguage_ldc_row_keeps_both_labels(tmp_path):
    path = tmp_path / "ldc.csv"
    path.write_text(LDC_HEADER + "LDC-1,Khmer-English Parallel Text,Khmer;English,Corpus,2018\n")
    entries = parse_catalogue(path, Source.LDC)
    assert len(entries) == 1
    assert entries[0].raw_language_labels == ("Khmer", "English")


def test_empty_export_yields_no_entries(tmp_path):
    path = tmp_path / "lre.csv"
    path.write_text(LRE_HEADER)
    assert parse_catalogue(path, Source.LRE_MAP) == []


def test_duplicate_resource_id_rejected(tmp_path):
    path = tmp_path / "lre.csv"
    path.write_text(LRE_HEADER + "R1,A,French,Corpus,2020\nR1,B,German,Corpus,2021\n")
    with pytest.raises(DuplicateResourceId):
        parse_catalogue(path, Source.LRE_MAP)


def test_row_without_labels_is_malformed(tmp_path):
    path = tmp_path / "lre.csv"
    path.write_text(LRE_HEADER + "R1,A,;,Corpus,2020\n")
    with pytest.raises(MalformedRecord):
        parse_catalogue(path, Source.LRE_MAP)


def test_case_variants_in_one_resource_count_once(registry, rules):
    entry = CatalogueEntry(Source.LRE_MAP, "R1", ("italian", "Italian"), "Corpus")
    counts = count_by_language([entry], registry, rules)
    assert counts.count("ita", Source.LRE_MAP) == 1


def test_broad_label_counts_zero_and_lands_in_exceptions(registry, rules):
    entry = CatalogueEntry(Source.LRE_MAP, "R1", ("Punjabi",), "Some Resource")
    counts = count_by_language([entry], registry, rules)
    assert counts.count("pan", Source.LRE_MAP) == 0
    assert counts.count("pnb", Source.LRE_MAP) == 0
    assert len(counts.exceptions) == 1
    assert counts.exceptions[0].outcome is Outcome.BROAD
    assert counts.exceptions[0].label == "Punjabi"


def test_unmapped_only_entry_adds_exception_changes_no_count(registry, rules):
    base = [CatalogueEntry(Source.LDC, "R1", ("Khmer",), "K")]
    with_junk = base + [CatalogueEntry(Source.LDC, "R2", ("Klingonish",), "X")]
    counts_a = count_by_language(base, registry, rules)
    counts_b = count_by_language(with_junk, registry, rules)
    assert counts_a.counts == counts_b.counts
    assert len(counts_b.exceptions) == 1


def test_counts_are_order_independent(registry, rules, data_dir):
    entries = parse_catalogue(data_dir / "ldc_export.csv", Source.LDC)
    shuffled = entries[:]
    random.Random(7).shuffle(shuffled)
    assert count_by_language(entries, registry, rules).counts == \
        count_by_language(shuffled, registry, rules).counts


def test_shipped_exports_reproduce_indonesian_totals(registry, rules, data_dir):
    entries = parse_catalogue(data_dir / "lre_map_export.csv", Source.LRE_MAP)
    entries += parse_catalogue(data_dir / "ldc_export.csv", Source.LDC)
    counts = count_by_language(entries, registry, rules)
    assert counts.count("ind", Source.LRE_MAP) == 31
    assert counts.count("ind", Source.LDC) == 3


def test_per_language_count_bounded_by_source_size(registry, rules, data_dir):
    lre = parse_catalogue(data_dir / "lre_map_export.csv", Source.LRE_MAP)
    counts = count_by_language(lre, registry, rules)
    for (code, source), value in counts.counts.items():
        assert source is Source.LRE_MAP
        assert 0 <= value <= len(lre), (code, value)


def test_type_filter_narrows_entries():
    entries = [
        CatalogueEntry(Source.LDC, "R1", ("Khmer",), "a", resource_type="Corpus"),
        CatalogueEntry(Source.LDC, "R2", ("Khmer",), "b", resource_type="Speech"),
    ]
    assert len(filter_by_type(entries, ["corpus"])) == 1
    assert len(filter_by_type(entries, [])) == 2
