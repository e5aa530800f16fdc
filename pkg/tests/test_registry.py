from __future__ import annotations

from decimal import Decimal

import pytest

from resaudit.registry import (
    DuplicateCode,
    MalformedRow,
    MissingFile,
    NonPositivePopulation,
    NormalizationRule,
    Outcome,
    Registry,
    RuleAction,
    RuleSet,
    LanguageRecord,
    load_language_table,
    normalize_label,
    validate_rules,
)

HEADER = "iso639_3,name,population_millions,aliases\n"


def write_table(tmp_path, body: str):
    path = tmp_path / "table.csv"
    path.write_text(HEADER + body, encoding="utf-8")
    return path


def test_parses_population_row(tmp_path):
    registry = load_language_table(write_table(tmp_path, "tsn,Setswana,13.7,\n"))
    record = registry["tsn"]
    assert record.canonical_name == "Setswana"
    assert record.population_millions == Decimal("13.7")


def test_header_only_file_yields_empty_registry(tmp_path):
    registry = load_language_table(write_table(tmp_path, ""))
    assert len(registry) == 0


def test_zero_population_rejected(tmp_path):
    with pytest.raises(NonPositivePopulation):
        load_language_table(write_table(tmp_path, "xxx,Foo,0,\n"))


def test_duplicate_code_rejects_whole_file(tmp_path):
    with pytest.raises(DuplicateCode):
        load_language_table(write_table(tmp_path, "aaa,Foo,1.0,\naaa,Bar,2.0,\n"))


def test_malformed_row_reports_line_number(tmp_path):
    with pytest.raises(MalformedRow) as excinfo:
        load_language_table(write_table(tmp_path, "aaa,Foo,1.0,\nbb,Bar,2.0,\n"))
    assert excinfo.value.line_number == 3


def test_missing_file(tmp_path):
    with pytest.raises(MissingFile):
        load_language_table(tmp_path / "nope.csv")


def test_shipped_registry_has_exactly_200_languages(registry):
    assert len(registry) == 200


def test_modern_greek_maps_to_ell(registry, rules):
    outcome = normalize_label("Modern Greek", rules, registry)
    assert outcome.kind is Outcome.MAPPED and outcome.value == "ell"


def test_lowercase_french_maps_via_case_folding(registry, rules):
    outcome = normalize_label("french", rules, registry)
    assert outcome.kind is Outcome.MAPPED and outcome.value == "fra"


def test_punjabi_stays_broad_never_mapped(registry, rules):
    outcome = normalize_label("Punjabi", rules, registry)
    assert outcome.kind is Outcome.BROAD
    assert outcome.value == "Punjabi"


def test_unknown_label_is_unmapped(registry, rules):
    outcome = normalize_label("Klingonish", rules, registry)
    assert outcome.kind is Outcome.UNMAPPED
    assert outcome.value == "Klingonish"


def test_canonical_names_normalize_to_own_code(registry, rules):
    for record in registry:
        outcome = normalize_label(record.canonical_name, rules, registry)
        assert outcome.kind is Outcome.MAPPED
        assert outcome.value == record.iso639_3


def test_validate_rules_flags_unknown_target(registry):
    ruleset = RuleSet([NormalizationRule("Foo", RuleAction.MAP_TO, "zzz")])
    errors = validate_rules(ruleset, registry)
    assert len(errors) == 1 and errors[0].kind == "UnknownTarget"


def test_validate_rules_flags_duplicate_source(registry):
    ruleset = RuleSet(
        [
            NormalizationRule("Persian", RuleAction.MAP_TO, "pes"),
            NormalizationRule("persian", RuleAction.MAP_TO, "tgk"),
        ]
    )
    errors = validate_rules(ruleset, registry)
    assert [e.kind for e in errors] == ["DuplicateSource"]


def test_shipped_rules_validate_cleanly(registry, rules):
    assert validate_rules(rules, registry) == []


def test_alias_shared_by_two_records_rejected():
    with pytest.raises(Exception):
        Registry(
            [
                LanguageRecord("aaa", "Foo", Decimal("1"), frozenset({"Shared"})),
                LanguageRecord("bbb", "Bar", Decimal("2"), frozenset({"shared"})),
            ]
        )
