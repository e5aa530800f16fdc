"""Command-line pipeline: workspace-based, resumable stages.

Stages read and write well-known workspace paths and record an input digest
when they finish, so re-running a completed stage with unchanged inputs is a
no-op and a crashed run can simply be restarted. `--replay` restricts the
discovery and classification stages to recorded responses.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from decimal import Decimal
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .catalogue import (
    Source,
    count_by_language,
    filter_by_type,
    parse_catalogue,
    read_counts_csv,
    write_counts_csv,
    write_exceptions_csv,
)
from .classifier import DEFAULT_MODEL, BackendConfig, VerdictCache, classify_batch
from .classifier import ENDPOINT_ENV_VAR, MODEL_ENV_VAR
from .discovery import (
    DiscoveryConfig,
    mention_to_record,
    read_candidate_records,
    record_to_mention,
    run_discovery,
    write_candidates,
)
from .inventory import enrich_records, read_attributes
from .rdi import build_entries, distribution_summary, low_visibility_filter, write_rdi_csv
from .registry import load_language_table, load_rules, validate_rules
from .reports import (
    accessibility_split,
    attribution_split,
    build_report,
    comparison_table,
    comparison_to_csv,
    emergence_usage_trends,
    flow_export,
    flows_to_csv,
    histogram_export,
    histogram_to_csv,
    mined_counts_by_language,
    trends_to_csv,
    write_report_json,
)
from .scholar import ClientConfig, ScholarClient
from .validation import consolidate, load_store, pipeline_summary, write_datasets_csv
from .workspace import (
    MissingPrerequisite,
    Stage,
    Workspace,
    WorkspaceError,
    WorkspaceLock,
    combined_digest,
)

DATA_PACKAGE = "resaudit.data"


def _data_path(name: str):
    return resources.files(DATA_PACKAGE).joinpath(name)


def _flag_digest(paths: Sequence[Path], *flags: object) -> str:
    import hashlib

    digest = hashlib.sha256(combined_digest(paths).encode("ascii"))
    for flag in flags:
        digest.update(repr(flag).encode("utf-8"))
    return digest.hexdigest()


def _maybe_skip(ws: Workspace, stage: Stage, digest: str) -> bool:
    if ws.stage_complete(stage) and ws.stage_digest(stage) == digest:
        print(f"[{stage.value}] up to date, skipping")
        return True
    return False


# -- stage implementations -------------------------------------------------------


def run_ingest(ws: Workspace, types: Sequence[str] | None = None) -> None:
    stage = Stage.INGEST
    ws.check_prerequisites(stage)
    inputs = [
        ws.input("language_table.csv"),
        ws.input("normalization_rules.tsv"),
        ws.input("lre_map_export.csv"),
        ws.input("ldc_export.csv"),
    ]
    digest = _flag_digest(inputs, tuple(types or ()))
    if _maybe_skip(ws, stage, digest):
        return
    with WorkspaceLock(ws):
        registry = load_language_table(inputs[0])
        rules = load_rules(inputs[1])
        problems = validate_rules(rules, registry)
        if problems:
            raise WorkspaceError(f"rules file invalid: {problems[:3]}")
        entries = parse_catalogue(inputs[2], Source.LRE_MAP)
        entries += parse_catalogue(inputs[3], Source.LDC)
        if types:
            entries = filter_by_type(entries, types)
        counts = count_by_language(entries, registry, rules)
        ws.reports_dir.mkdir(parents=True, exist_ok=True)
        write_counts_csv(counts, ws.report("counts.csv"))
        write_exceptions_csv(counts, ws.report("exceptions.csv"))
        ws.mark_stage(stage, digest)
        print(
            f"[ingest] {len(entries)} catalogue entries -> "
            f"{len(counts.counts)} language-source counts, {len(counts.exceptions)} exceptions"
        )


def run_rdi(ws: Workspace, threshold: Decimal) -> None:
    stage = Stage.RDI
    ws.check_prerequisites(stage)
    inputs = [ws.input("language_table.csv"), ws.report("counts.csv")]
    digest = _flag_digest(inputs, str(threshold))
    if _maybe_skip(ws, stage, digest):
        return
    with WorkspaceLock(ws):
        registry = load_language_table(inputs[0])
        counts = read_counts_csv(inputs[1])
        entries = build_entries(registry, counts)
        write_rdi_csv(entries, ws.report("rdi.csv"))
        low = low_visibility_filter(entries, threshold)
        ws.report("low_visibility.txt").write_text(
            "".join(entry.iso639_3 + "\n" for entry in low), encoding="utf-8"
        )
        summary = distribution_summary(entries)
        ws.mark_stage(stage, digest)
        print(
            f"[rdi] {len(entries)} languages; {summary.zero_count} at zero, "
            f"{len(low)} below {threshold}, {summary.over_one_count} above 1.0"
        )


def run_discover(
    ws: Workspace,
    languages: Sequence[str] | None,
    k: int,
    replay: bool,
    workers: int = 4,
) -> None:
    stage = Stage.DISCOVER
    ws.check_prerequisites(stage)
    scope_file = ws.report("low_visibility.txt")
    codes = list(languages) if languages else [
        line.strip() for line in scope_file.read_text(encoding="utf-8").splitlines() if line.strip()
    ]
    digest = _flag_digest(
        [ws.input("language_table.csv"), scope_file], tuple(codes), k, replay
    )
    if _maybe_skip(ws, stage, digest):
        return
    with WorkspaceLock(ws):
        registry = load_language_table(ws.input("language_table.csv"))
        client = ScholarClient(ClientConfig.from_env(ws.api_cache_dir, replay=replay))
        config = DiscoveryConfig(k=k, workers=workers)
        mentions = run_discovery(client, registry, codes, config)
        written = write_candidates(ws.candidates_path, mentions)
        ws.mark_stage(stage, digest)
        print(f"[discover] {len(codes)} languages -> {written} candidate mentions")


def run_classify(ws: Workspace, replay: bool) -> None:
    stage = Stage.CLASSIFY
    ws.check_prerequisites(stage)
    inputs = [ws.candidates_path]
    digest = _flag_digest(inputs, replay)
    if _maybe_skip(ws, stage, digest):
        return
    with WorkspaceLock(ws):
        records = read_candidate_records(ws.candidates_path)
        mentions = [record_to_mention(record) for record in records]
        config = BackendConfig(
            endpoint="" if replay else (ws.setting("classifier_endpoint", env_var=ENDPOINT_ENV_VAR) or ""),
            model=ws.setting("classifier_model", env_var=MODEL_ENV_VAR) or DEFAULT_MODEL,
        )
        cache = VerdictCache(ws.verdict_cache_dir)
        result = classify_batch(mentions, config, cache, use_heuristic=replay)
        if result.errors:
            raise WorkspaceError(f"{len(result.errors)} mentions failed classification")
        with ws.candidates_path.open("w", encoding="utf-8") as handle:
            for mention in mentions:
                verdict = result.verdicts[mention.mention_id].to_record()
                handle.write(json.dumps(mention_to_record(mention, verdict), sort_keys=True) + "\n")
        positives = sum(1 for v in result.verdicts.values() if v.is_dataset)
        ws.mark_stage(stage, digest)
        print(f"[classify] {len(mentions)} mentions, {positives} classified as datasets")


def run_audit(ws: Workspace) -> None:
    from .linkaudit import HostBoundedProber, classify_accessibility

    stage = Stage.AUDIT
    ws.check_prerequisites(stage)
    inputs = [ws.candidates_path, ws.ledger_path, ws.input("attributes.csv")]
    digest = _flag_digest(inputs)
    if _maybe_skip(ws, stage, digest):
        return
    with WorkspaceLock(ws):
        store = load_store(ws.candidates_path, ws.ledger_path)
        records = consolidate(store)
        attributes = read_attributes(ws.input("attributes.csv"))
        prober = HostBoundedProber()
        import csv as _csv

        evidence_path = ws.report("probes.jsonl")
        with ws.report("accessibility.csv").open("w", newline="", encoding="utf-8") as out, \
                evidence_path.open("w", encoding="utf-8") as evidence:
            writer = _csv.writer(out, lineterminator="\n")
            writer.writerow(["dataset_id", "status", "n_probes", "last_probed_at"])
            for record in records:
                row = attributes.get(record.dataset_id)
                if row is None or not row.url:
                    continue
                probe = prober.probe_one(row.url)
                evidence.write(json.dumps({
                    "dataset_id": record.dataset_id,
                    "url": probe.url,
                    "final_url": probe.final_url,
                    "http_status": probe.http_status,
                    "outcome": probe.outcome.value,
                    "content_kind": probe.content_kind.value,
                    "probed_at": probe.probed_at,
                }, sort_keys=True) + "\n")
                result = classify_accessibility(record, [probe])
                writer.writerow([record.dataset_id, result.status.value, 1, probe.probed_at])
        ws.mark_stage(stage, digest)
        print(f"[audit] probed links for {len(records)} datasets")


def run_report(ws: Workspace, threshold: Decimal, replay: bool) -> None:
    stage = Stage.REPORT
    ws.check_prerequisites(stage)
    inputs = [
        ws.input("language_table.csv"),
        ws.input("normalization_rules.tsv"),
        ws.input("attributes.csv"),
        ws.report("counts.csv"),
        ws.candidates_path,
        ws.ledger_path,
    ]
    digest = _flag_digest(inputs, str(threshold), replay)
    if _maybe_skip(ws, stage, digest):
        return
    with WorkspaceLock(ws):
        registry = load_language_table(inputs[0])
        counts = read_counts_csv(ws.report("counts.csv"))
        store = load_store(ws.candidates_path, ws.ledger_path)
        records = consolidate(store)
        attributes = read_attributes(ws.input("attributes.csv"))
        records = enrich_records(records, store, attributes)

        mined = mined_counts_by_language(records)
        entries = build_entries(registry, counts, mined_counts=mined)
        write_rdi_csv(entries, ws.report("rdi.csv"))

        comparison = comparison_table(entries, records, registry)
        trends = emergence_usage_trends(records)
        flows = flow_export(records)
        histogram = histogram_export(distribution_summary(entries))

        comparison_to_csv(comparison, ws.report("comparison.csv"))
        trends_to_csv(trends, ws.report("trends.csv"))
        flows_to_csv(flows, ws.report("flows.csv"))
        histogram_to_csv(histogram, ws.report("histogram.csv"))
        write_datasets_csv(records, ws.report("datasets.csv"))

        summary = pipeline_summary(store)
        generated_at = (
            f"replay:{digest[:12]}"
            if replay
            else datetime.now(timezone.utc).isoformat(timespec="seconds")
        )
        metadata = {
            "snapshot_id": digest,
            "rules_version": combined_digest([ws.input("normalization_rules.tsv")])[:12],
            "generated_at": generated_at,
            "threshold": str(threshold),
            "pipeline": summary.as_dict(),
            "attribution": attribution_split(records),
            "accessibility": accessibility_split(records),
            "version": __version__,
        }
        report = build_report(comparison, trends, flows, histogram, metadata)
        write_report_json(report, ws.report("report.json"))
        ws.mark_stage(stage, digest)
        print(
            f"[report] {summary.unique_datasets} datasets across "
            f"{summary.languages_covered} languages; reports/ updated"
        )


def run_status(ws: Workspace) -> None:
    print(f"workspace: {ws.root}")
    for stage in Stage:
        if stage is Stage.SERVE:
            continue
        state = "done" if ws.stage_complete(stage) else "pending"
        print(f"  {stage.value:10s} {state}")
    if ws.ledger_path.exists() and ws.candidates_path.exists():
        store = load_store(ws.candidates_path, ws.ledger_path)
        summary = pipeline_summary(store)
        print(f"  ledger revision {store.revision}: {summary.as_dict()}")


def run_init(ws: Workspace, reference: bool) -> None:
    ws.create()
    if not reference:
        print(f"initialized empty workspace at {ws.root}")
        return
    copies = [
        ("ethnologue200.csv", ws.input("language_table.csv")),
        ("normalization_rules.tsv", ws.input("normalization_rules.tsv")),
        ("lre_map_export.csv", ws.input("lre_map_export.csv")),
        ("ldc_export.csv", ws.input("ldc_export.csv")),
        ("attributes.csv", ws.input("attributes.csv")),
        ("candidates.jsonl", ws.candidates_path),
        ("decisions_reference.jsonl", ws.ledger_path),
    ]
    for name, target in copies:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(_data_path(name).read_bytes())
    cache_fixture = resources.files(DATA_PACKAGE).joinpath("api_cache_fixture")
    if cache_fixture.is_dir():
        for item in cache_fixture.iterdir():
            if item.name.endswith(".json"):
                (ws.api_cache_dir / item.name).write_bytes(item.read_bytes())
    print(f"initialized workspace at {ws.root} with reference fixtures")


def run_serve(ws: Workspace, bind: str) -> None:
    import uvicorn

    from .api import create_app

    ws.check_prerequisites(Stage.SERVE)
    host, _, port = bind.partition(":")
    app = create_app(ws)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8040), log_level="info")


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resaudit",
        description="Audit multilingual dataset visibility: catalogue RDI metrics, "
        "citation-mined candidates, human validation, and comparison reports.",
    )
    parser.add_argument("--workspace", "-w", default="workspace", help="workspace directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p_init = sub.add_parser("init", help="create a workspace directory")
    p_init.add_argument("--reference", action="store_true", help="seed the shipped reference fixtures")

    p_ingest = sub.add_parser("ingest", help="parse catalogue exports into per-language counts")
    p_ingest.add_argument("--types", help="comma-separated resource types to keep (default: all)")

    p_rdi = sub.add_parser("rdi", help="compute per-language RDI values")
    p_rdi.add_argument("--threshold", default="0.1", help="low-visibility threshold (default 0.1)")

    p_disc = sub.add_parser("discover", help="mine candidate dataset mentions per language")
    p_disc.add_argument("--languages", help="comma-separated ISO 639-3 codes (default: low-visibility set)")
    p_disc.add_argument("--k", type=int, default=400, help="top-k papers per language (default 400)")
    p_disc.add_argument("--replay", action="store_true", help="serve exclusively from the response cache")
    p_disc.add_argument("--workers", type=int, default=4)

    p_cls = sub.add_parser("classify", help="classify candidate mentions")
    p_cls.add_argument("--replay", action="store_true",
                       help="no remote calls: cached verdicts plus the heuristic backend")

    p_serve = sub.add_parser("serve", help="run the annotation console API")
    p_serve.add_argument("--bind", default="127.0.0.1:8040")

    sub.add_parser("audit-links", help="probe dataset URLs and classify accessibility")

    p_rep = sub.add_parser("report", help="emit comparison, trends, flows, and histogram reports")
    p_rep.add_argument("--threshold", default="0.1")
    p_rep.add_argument("--replay", action="store_true", help="derive timestamps from input digests")

    sub.add_parser("status", help="show stage completion and ledger state")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    ws = Workspace(Path(args.workspace))
    try:
        if args.command == "init":
            run_init(ws, args.reference)
        elif args.command == "ingest":
            ws.create()
            run_ingest(ws, args.types.split(",") if args.types else None)
        elif args.command == "rdi":
            run_rdi(ws, Decimal(args.threshold))
        elif args.command == "discover":
            run_discover(
                ws,
                args.languages.split(",") if args.languages else None,
                args.k,
                args.replay,
                args.workers,
            )
        elif args.command == "classify":
            run_classify(ws, args.replay)
        elif args.command == "serve":
            run_serve(ws, args.bind)
        elif args.command == "audit-links":
            run_audit(ws)
        elif args.command == "report":
            run_report(ws, Decimal(args.threshold), args.replay)
        elif args.command == "status":
            run_status(ws)
        else:  # pragma: no cover - argparse guards this
            return 2
    except MissingPrerequisite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except WorkspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # surface anything else with a nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
