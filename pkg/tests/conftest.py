from __future__ import annotations

import json
from pathlib import Path

import pytest

from resaudit.catalogue import read_counts_csv
from resaudit.registry import load_language_table, load_rules
from resaudit.rdi import build_entries
from resaudit.validation import Decision, ValidationStore

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "resaudit" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def registry():
    return load_language_table(DATA_DIR / "ethnologue200.csv")


@pytest.fixture(scope="session")
def rules():
    return load_rules(DATA_DIR / "normalization_rules.tsv")


@pytest.fixture(scope="session")
def reference_counts():
    return read_counts_csv(DATA_DIR / "catalogue_counts.csv")


@pytest.fixture(scope="session")
def reference_entries(registry, reference_counts):
    return build_entries(registry, reference_counts)


@pytest.fixture(scope="session")
def candidate_records() -> list[dict]:
    lines = (DATA_DIR / "candidates.jsonl").read_text(encoding="utf-8").splitlines()
    return [json.loads(line) for line in lines if line.strip()]


@pytest.fixture(scope="session")
def reference_decisions() -> list[Decision]:
    lines = (DATA_DIR / "decisions_reference.jsonl").read_text(encoding="utf-8").splitlines()
    return [Decision.from_record(json.loads(line)) for line in lines if line.strip()]


@pytest.fixture(scope="session")
def reference_store(candidate_records, reference_decisions) -> ValidationStore:
    store = ValidationStore.from_records(candidate_records)
    for decision in reference_decisions:
        store.apply(decision)
    return store


@pytest.fixture()
def fresh_store(candidate_records, reference_decisions) -> ValidationStore:
    store = ValidationStore.from_records(candidate_records)
    for decision in reference_decisions:
        store.apply(decision)
    return store
