from __future__ import annotations

import json
import os
from pathlib import Path

import pytest

from resaudit.cli import main
from resaudit.fixtureserver import FixtureServer
from resaudit.inventory import AttributeRow, write_attributes
from resaudit.linkaudit import AccessStatus, AttributionStatus
from resaudit.validation import (
    CandidateState,
    Decision,
    ValidationStore,
    append_decision,
)
from resaudit.workspace import Stage, Workspace, WorkspaceLock, WorkspaceLocked

GOLDEN = Path(__file__).resolve().parent / "golden" / "report.json"


def run_cli(*args: str) -> int:
    return main(list(args))


@pytest.fixture()
def reference_ws(tmp_path) -> Path:
    root = tmp_path / "ws"
    assert run_cli("--workspace", str(root), "init", "--reference") == 0
    return root


def test_rdi_before_ingest_is_missing_prerequisite(tmp_path):
    root = tmp_path / "ws"
    assert run_cli("--workspace", str(root), "init", "--reference") == 0
    assert run_cli("--workspace", str(root), "rdi") == 3


def test_full_replay_pipeline_matches_golden_report(reference_ws):
    root = str(reference_ws)
    assert run_cli("--workspace", root, "ingest") == 0
    assert run_cli("--workspace", root, "rdi") == 0
    assert run_cli("--workspace", root, "report", "--replay") == 0
    produced = (reference_ws / "reports" / "report.json").read_bytes()
    assert produced == GOLDEN.read_bytes()


def test_ingest_counts_match_shipped_counts(reference_ws, data_dir, registry):
    from resaudit.catalogue import Source, read_counts_csv

    root = str(reference_ws)
    assert run_cli("--workspace", root, "ingest") == 0
    produced = read_counts_csv(reference_ws / "reports" / "counts.csv")
    shipped = read_counts_csv(data_dir / "catalogue_counts.csv")
    for record in registry:
        for source in Source:
            assert produced.count(record.iso639_3, source) == shipped.count(
                record.iso639_3, source
            ), (record.iso639_3, source)


def test_completed_stage_with_unchanged_inputs_is_noop(reference_ws, capsys):
    root = str(reference_ws)
    assert run_cli("--workspace", root, "ingest") == 0
    marker = Workspace(reference_ws).marker_path(Stage.INGEST)
    first_marker = marker.read_bytes()
    counts = (reference_ws / "reports" / "counts.csv").read_bytes()
    capsys.readouterr()
    assert run_cli("--workspace", root, "ingest") == 0
    assert "up to date" in capsys.readouterr().out
    assert marker.read_bytes() == first_marker
    assert (reference_ws / "reports" / "counts.csv").read_bytes() == counts


def test_changed_inputs_invalidate_marker(reference_ws):
    root = str(reference_ws)
    assert run_cli("--workspace", root, "ingest") == 0
    before = Workspace(reference_ws).stage_digest(Stage.INGEST)
    exports = reference_ws / "inputs" / "ldc_export.csv"
    exports.write_text(exports.read_text() , encoding="utf-8")  # same bytes: still no-op
    assert run_cli("--workspace", root, "ingest") == 0
    assert Workspace(reference_ws).stage_digest(Stage.INGEST) == before
    with exports.open("a", encoding="utf-8") as handle:
        handle.write("LDC-99999,Extra Khmer Corpus,Khmer,Corpus,2024\n")
    assert run_cli("--workspace", root, "ingest") == 0
    assert Workspace(reference_ws).stage_digest(Stage.INGEST) != before


def test_discover_replay_runs_are_byte_identical(tmp_path):
    outputs = []
    for name in ("a", "b"):
        root = tmp_path / name
        assert run_cli("--workspace", str(root), "init", "--reference") == 0
        assert run_cli("--workspace", str(root), "ingest") == 0
        assert run_cli("--workspace", str(root), "rdi") == 0
        assert run_cli(
            "--workspace", str(root), "discover", "--languages", "tsn,npi",
            "--k", "400", "--replay",
        ) == 0
        outputs.append((root / "candidates" / "candidates.jsonl").read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) > 0


def test_discover_scopes_to_requested_languages(reference_ws):
    root = str(reference_ws)
    assert run_cli("--workspace", root, "ingest") == 0
    assert run_cli("--workspace", root, "rdi") == 0
    assert run_cli(
        "--workspace", root, "discover", "--languages", "tsn,npi", "--k", "400", "--replay"
    ) == 0
    records = [
        json.loads(line)
        for line in (reference_ws / "candidates" / "candidates.jsonl").read_text().splitlines()
    ]
    assert {record["language"] for record in records} == {"tsn", "npi"}


def test_discover_replay_without_cache_fails(tmp_path):
    root = tmp_path / "ws"
    assert run_cli("--workspace", str(root), "init", "--reference") == 0
    assert run_cli("--workspace", str(root), "ingest") == 0
    assert run_cli("--workspace", str(root), "rdi") == 0
    for cached in (root / "cache" / "api").glob("*.json"):
        cached.unlink()
    assert run_cli(
        "--workspace", str(root), "discover", "--languages", "tsn", "--replay"
    ) == 1


def test_classify_replay_attaches_heuristic_verdicts(reference_ws):
    root = str(reference_ws)
    assert run_cli("--workspace", root, "ingest") == 0
    assert run_cli("--workspace", root, "rdi") == 0
    assert run_cli(
        "--workspace", root, "discover", "--languages", "tsn,npi", "--k", "400", "--replay"
    ) == 0
    assert run_cli("--workspace", root, "classify", "--replay") == 0
    records = [
        json.loads(line)
        for line in (reference_ws / "candidates" / "candidates.jsonl").read_text().splitlines()
    ]
    assert all(record.get("verdict", {}).get("backend") == "HEURISTIC" for record in records)
    assert any(record["verdict"]["is_dataset"] for record in records)


def test_status_reports_reference_ledger(reference_ws, capsys):
    assert run_cli("--workspace", str(reference_ws), "status") == 0
    out = capsys.readouterr().out
    assert "ledger revision 812" in out
    assert "'unique_datasets': 609" in out


def test_audit_links_probes_and_classifies(tmp_path):
    root = tmp_path / "ws"
    ws = Workspace(root).create()
    candidates = [
        {
            "mention_id": f"m{i}",
            "language": "tsn",
            "citing": {"paper_id": f"c{i}", "title": "Citing", "year": 2022},
            "cited": {"paper_id": f"d{i}", "title": "Cited", "year": 2020},
            "context": f"We use the Fixture Corpus {i}.",
            "direction": "OUTGOING",
            "extracted_name": f"Fixture Corpus {i}",
        }
        for i in range(2)
    ]
    with ws.candidates_path.open("w", encoding="utf-8") as handle:
        for record in candidates:
            handle.write(json.dumps(record) + "\n")
    store = ValidationStore.from_records(candidates)
    for seq, mid in enumerate(["m0", "m1"], start=1):
        decision = Decision(seq, mid, CandidateState.CONFIRMED, "t",
                            f"2025-01-01T00:0{seq}:00+00:00")
        store.apply(decision)
        append_decision(ws.ledger_path, decision)

    with FixtureServer() as server:
        rows = [
            AttributeRow(
                dataset_id=store.dataset_of_anchor("m0"),
                emergence_status=AttributionStatus.UNIQUE,
                emergence_year=2020,
                accessibility=AccessStatus.OPEN,
                link_state="file",
                url=f"{server.base_url}/data/file.zip",
                task="Parsing",
                modality="TEXT",
            ),
            AttributeRow(
                dataset_id=store.dataset_of_anchor("m1"),
                emergence_status=AttributionStatus.UNIQUE,
                emergence_year=2020,
                accessibility=AccessStatus.NOT_OPEN,
                link_state="dead",
                url=f"{server.base_url}/data/missing",
                task="Parsing",
                modality="TEXT",
            ),
        ]
        write_attributes(rows, ws.input("attributes.csv"))
        assert run_cli("--workspace", str(root), "audit-links") == 0

    lines = (root / "reports" / "accessibility.csv").read_text().strip().splitlines()
    assert lines[0] == "dataset_id,status,n_probes,last_probed_at"
    statuses = {line.split(",")[0]: line.split(",")[1] for line in lines[1:]}
    assert statuses[store.dataset_of_anchor("m0")] == "OPEN"
    assert statuses[store.dataset_of_anchor("m1")] == "NOT_OPEN"
    evidence = (root / "reports" / "probes.jsonl").read_text().strip().splitlines()
    assert len(evidence) == 2


def test_workspace_lock_is_exclusive(tmp_path):
    ws = Workspace(tmp_path / "ws").create()
    with WorkspaceLock(ws):
        with pytest.raises(WorkspaceLocked):
            with WorkspaceLock(ws):
                pass


def test_setting_precedence_flag_env_config(tmp_path, monkeypatch):
    ws = Workspace(tmp_path / "ws").create()
    ws.config_path.write_text(json.dumps({"classifier_endpoint": "from-config"}), encoding="utf-8")
    assert ws.setting("classifier_endpoint", env_var="X_TEST_ENDPOINT") == "from-config"
    monkeypatch.setenv("X_TEST_ENDPOINT", "from-env")
    assert ws.setting("classifier_endpoint", env_var="X_TEST_ENDPOINT") == "from-env"
    assert ws.setting("classifier_endpoint", "from-flag", env_var="X_TEST_ENDPOINT") == "from-flag"
