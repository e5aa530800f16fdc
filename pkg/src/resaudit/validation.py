"""Candidate lifecycle: decision ledger, state machine, and consolidation.

All candidate and dataset state is derived from an append-only ledger of
decision events, so replaying the ledger from an empty store reproduces the
live state exactly. Confirming a mention registers a dataset record anchored
at it; merge decisions move duplicate mentions under an existing record;
translations and simple reslicings are excluded with a NON_DISTINCT reason
code rather than a dedicated state.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .linkaudit import AccessibilityResult, TemporalAttribution

NON_DISTINCT = "NON_DISTINCT"


class CandidateState(Enum):
    PENDING = "PENDING"
    CONFIRMED = "CONFIRMED"
    UNCONFIRMABLE = "UNCONFIRMABLE"
    NON_DATASET = "NON_DATASET"
    MERGED = "MERGED"


class LedgerError(Exception):
    pass


class UnknownMention(LedgerError):
    pass


class UnknownMergeTarget(LedgerError):
    pass


class SequenceGap(LedgerError):
    pass


class InvalidDecision(LedgerError):
    pass


class DanglingMerge(LedgerError):
    pass


class NoDecisions(LedgerError):
    pass


@dataclass(frozen=True)
class Decision:
    sequence: int
    mention_id: str
    new_state: CandidateState
    annotator_id: str
    timestamp: str
    note: str = ""
    reason: str | None = None          # e.g. NON_DISTINCT on step-3 exclusions
    merge_target: str | None = None    # dataset_id, required when MERGED
    canonical_name: str | None = None  # optional override on CONFIRMED

    def to_record(self) -> dict:
        record = {
            "sequence": self.sequence,
            "mention_id": self.mention_id,
            "new_state": self.new_state.value,
            "annotator_id": self.annotator_id,
            "timestamp": self.timestamp,
            "note": self.note,
        }
        if self.reason is not None:
            record["reason"] = self.reason
        if self.merge_target is not None:
            record["merge_target"] = self.merge_target
        if self.canonical_name is not None:
            record["canonical_name"] = self.canonical_name
        return record

    @classmethod
    def from_record(cls, record: dict) -> "Decision":
        return cls(
            sequence=int(record["sequence"]),
            mention_id=record["mention_id"],
            new_state=CandidateState(record["new_state"]),
            annotator_id=record.get("annotator_id", ""),
            timestamp=record.get("timestamp", ""),
            note=record.get("note", ""),
            reason=record.get("reason"),
            merge_target=record.get("merge_target"),
            canonical_name=record.get("canonical_name"),
        )


@dataclass(frozen=True)
class Candidate:
    """Identity view of a mention as seen by the validation store."""

    mention_id: str
    language: str
    extracted_name: str | None = None
    is_dataset_verdict: bool | None = None
    confidence: float | None = None
    context: str = ""
    citing_paper_id: str | None = None
    citing_year: int | None = None
    cited_paper_id: str | None = None
    cited_year: int | None = None
    cited_title: str = ""

    @classmethod
    def from_record(cls, record: dict) -> "Candidate":
        verdict = record.get("verdict") or {}
        return cls(
            mention_id=record["mention_id"],
            language=record["language"],
            extracted_name=record.get("extracted_name") or verdict.get("extracted_name"),
            is_dataset_verdict=verdict.get("is_dataset"),
            confidence=verdict.get("confidence"),
            context=record.get("context", ""),
            citing_paper_id=(record.get("citing") or {}).get("paper_id"),
            citing_year=(record.get("citing") or {}).get("year"),
            cited_paper_id=(record.get("cited") or {}).get("paper_id"),
            cited_year=(record.get("cited") or {}).get("year"),
            cited_title=(record.get("cited") or {}).get("title", ""),
        )


@dataclass
class DatasetRecord:
    dataset_id: str
    canonical_name: str
    languages: frozenset[str]
    member_mention_ids: frozenset[str]
    emergence: "TemporalAttribution | None" = None
    accessibility: "AccessibilityResult | None" = None
    task: str | None = None
    modality: str | None = None
    usage_years: tuple[int, ...] = ()


def dataset_id_for(canonical_name: str, language: str, anchor_mention_id: str) -> str:
    raw = f"{canonical_name}|{language}|{anchor_mention_id}"
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()[:16]


@dataclass
class PipelineSummary:
    total: int = 0
    pending: int = 0
    unconfirmable: int = 0
    non_dataset: int = 0
    genuine: int = 0
    merged_away: int = 0
    unique_datasets: int = 0
    languages_covered: int = 0

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "pending": self.pending,
            "unconfirmable": self.unconfirmable,
            "non_dataset": self.non_dataset,
            "genuine": self.genuine,
            "merged_away": self.merged_away,
            "unique_datasets": self.unique_datasets,
            "languages_covered": self.languages_covered,
        }


class ValidationStore:
    """Mention states plus registered dataset anchors, derived from decisions."""

    def __init__(self, candidates: Iterable[Candidate]):
        self.candidates: dict[str, Candidate] = {}
        for candidate in candidates:
            if candidate.mention_id in self.candidates:
                raise InvalidDecision(f"duplicate candidate {candidate.mention_id}")
            self.candidates[candidate.mention_id] = candidate
        self.states: dict[str, CandidateState] = {
            mid: CandidateState.PENDING for mid in self.candidates
        }
        self.reasons: dict[str, str | None] = {mid: None for mid in self.candidates}
        self.merge_targets: dict[str, str] = {}
        self.decisions: list[Decision] = []
        # dataset_id -> (anchor mention_id, canonical_name)
        self.registered: dict[str, tuple[str, str]] = {}
        self._anchor_dataset: dict[str, str] = {}

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "ValidationStore":
        return cls(Candidate.from_record(record) for record in records)

    @property
    def revision(self) -> int:
        return len(self.decisions)

    def state_of(self, mention_id: str) -> CandidateState:
        return self.states[mention_id]

    def canonical_name_for(self, mention_id: str) -> str:
        candidate = self.candidates[mention_id]
        return candidate.extracted_name or f"unnamed:{mention_id}"

    def dataset_of_anchor(self, mention_id: str) -> str | None:
        return self._anchor_dataset.get(mention_id)

    def apply(self, decision: Decision) -> None:
        """Validate and apply one event; identical re-application is a no-op."""
        next_sequence = len(self.decisions) + 1
        if decision.sequence < next_sequence:
            if self.decisions[decision.sequence - 1] == decision:
                return
            raise SequenceGap(
                f"sequence {decision.sequence} already applied with different content"
            )
        if decision.sequence > next_sequence:
            raise SequenceGap(
                f"expected sequence {next_sequence}, got {decision.sequence}"
            )
        if decision.mention_id not in self.candidates:
            raise UnknownMention(decision.mention_id)
        if decision.new_state is CandidateState.MERGED:
            if not decision.merge_target:
                raise InvalidDecision("MERGED decision requires merge_target")
            target = self.registered.get(decision.merge_target)
            if target is None:
                raise UnknownMergeTarget(decision.merge_target)
            if target[0] == decision.mention_id:
                raise InvalidDecision("mention cannot merge into its own dataset")

        previous = self.states[decision.mention_id]
        self.states[decision.mention_id] = decision.new_state
        self.reasons[decision.mention_id] = decision.reason
        if decision.new_state is CandidateState.MERGED:
            self.merge_targets[decision.mention_id] = decision.merge_target  # type: ignore[arg-type]
        elif decision.mention_id in self.merge_targets:
            del self.merge_targets[decision.mention_id]

        if decision.new_state is CandidateState.CONFIRMED:
            name = decision.canonical_name or self.canonical_name_for(decision.mention_id)
            candidate = self.candidates[decision.mention_id]
            if decision.canonical_name:
                self.candidates[decision.mention_id] = replace(
                    candidate, extracted_name=decision.canonical_name
                )
            dataset_id = dataset_id_for(name, candidate.language, decision.mention_id)
            stale = self._anchor_dataset.get(decision.mention_id)
            if stale is not None and stale != dataset_id:
                del self.registered[stale]
            self.registered[dataset_id] = (decision.mention_id, name)
            self._anchor_dataset[decision.mention_id] = dataset_id
        elif previous is CandidateState.CONFIRMED:
            # anchor left CONFIRMED; the registration stays so existing merge
            # targets remain resolvable, and consolidation flags dangling ones.
            pass

        self.decisions.append(decision)

    def counts(self) -> dict[str, int]:
        tally: dict[str, int] = {
            "pending": 0,
            "confirmed": 0,
            "unconfirmable": 0,
            "non_dataset": 0,
            "non_distinct": 0,
            "merged": 0,
        }
        for mention_id, state in self.states.items():
            if state is CandidateState.PENDING:
                tally["pending"] += 1
            elif state is CandidateState.CONFIRMED:
                tally["confirmed"] += 1
            elif state is CandidateState.UNCONFIRMABLE:
                tally["unconfirmable"] += 1
            elif state is CandidateState.NON_DATASET:
                if self.reasons.get(mention_id) == NON_DISTINCT:
                    tally["non_distinct"] += 1
                else:
                    tally["non_dataset"] += 1
            elif state is CandidateState.MERGED:
                tally["merged"] += 1
        return tally

    def snapshot(self) -> dict:
        """Canonical serializable view used for replay-equality checks."""
        return {
            "revision": self.revision,
            "states": {
                mid: {
                    "state": state.value,
                    "reason": self.reasons.get(mid),
                    "merge_target": self.merge_targets.get(mid),
                }
                for mid, state in sorted(self.states.items())
            },
            "datasets": {
                dataset_id: {"anchor": anchor, "canonical_name": name}
                for dataset_id, (anchor, name) in sorted(self.registered.items())
            },
        }

    def snapshot_bytes(self) -> bytes:
        return json.dumps(self.snapshot(), sort_keys=True, separators=(",", ":")).encode("utf-8")


def apply_decision(store: ValidationStore, decision: Decision) -> ValidationStore:
    store.apply(decision)
    return store


def consolidate(store: ValidationStore) -> list[DatasetRecord]:
    """Assemble one record per surviving canonical dataset.

    Confirmed mentions anchor records; merged mentions attach to their
    target's record. A merge whose target record no longer has a confirmed
    anchor is an integrity error.
    """
    records: dict[str, DatasetRecord] = {}
    for dataset_id, (anchor, name) in store.registered.items():
        if store.states.get(anchor) is not CandidateState.CONFIRMED:
            continue
        if store._anchor_dataset.get(anchor) != dataset_id:
            continue
        candidate = store.candidates[anchor]
        records[dataset_id] = DatasetRecord(
            dataset_id=dataset_id,
            canonical_name=name,
            languages=frozenset({candidate.language}),
            member_mention_ids=frozenset({anchor}),
        )
    for mention_id, state in store.states.items():
        if state is not CandidateState.MERGED:
            continue
        target = store.merge_targets.get(mention_id)
        record = records.get(target or "")
        if record is None:
            raise DanglingMerge(f"mention {mention_id} merged into inactive dataset {target}")
        candidate = store.candidates[mention_id]
        records[target] = replace(
            record,
            languages=record.languages | {candidate.language},
            member_mention_ids=record.member_mention_ids | {mention_id},
        )
    return sorted(
        records.values(), key=lambda r: (min(r.languages), r.canonical_name, r.dataset_id)
    )


def precision(store: ValidationStore) -> "Decimal":
    """Share of candidates that survived validation, as a percentage.

    Genuine mentions are the confirmed ones plus those removed during
    consolidation (merged duplicates and NON_DISTINCT exclusions): they did
    refer to datasets, which is what the automatic stage is measured on.
    """
    from decimal import Decimal

    counts = store.counts()
    total = len(store.candidates)
    decided = total - counts["pending"]
    if decided == 0:
        raise NoDecisions("no candidate has been decided yet")
    genuine = counts["confirmed"] + counts["merged"] + counts["non_distinct"]
    return Decimal(genuine) / Decimal(total) * 100


def pipeline_summary(store: ValidationStore) -> PipelineSummary:
    counts = store.counts()
    confirmed_or_merged = [
        mid
        for mid, state in store.states.items()
        if state in (CandidateState.CONFIRMED, CandidateState.MERGED)
    ]
    languages = {store.candidates[mid].language for mid in confirmed_or_merged}
    merged_away = counts["merged"] + counts["non_distinct"]
    return PipelineSummary(
        total=len(store.candidates),
        pending=counts["pending"],
        unconfirmable=counts["unconfirmable"],
        non_dataset=counts["non_dataset"],
        genuine=counts["confirmed"] + merged_away,
        merged_away=merged_away,
        unique_datasets=counts["confirmed"],
        languages_covered=len(languages),
    )


# -- ledger persistence --------------------------------------------------------


def append_decision(path: str | Path, decision: Decision) -> None:
    """Append one event and fsync before returning."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    line = json.dumps(decision.to_record(), sort_keys=True) + "\n"
    with path.open("a", encoding="utf-8") as handle:
        handle.write(line)
        handle.flush()
        os.fsync(handle.fileno())


def read_ledger(path: str | Path) -> list[Decision]:
    """Read all events; a torn final line (crash artifact) is dropped."""
    path = Path(path)
    if not path.exists():
        return []
    decisions: list[Decision] = []
    lines = path.read_text(encoding="utf-8").splitlines()
    for index, line in enumerate(lines):
        line = line.strip()
        if not line:
            continue
        try:
            decisions.append(Decision.from_record(json.loads(line)))
        except (ValueError, KeyError):
            if index == len(lines) - 1:
                break
            raise InvalidDecision(f"corrupt ledger line {index + 1}") from None
    return decisions


def replay(candidates: Iterable[Candidate], decisions: Sequence[Decision]) -> ValidationStore:
    store = ValidationStore(candidates)
    for decision in decisions:
        store.apply(decision)
    return store


def load_store(candidates_path: str | Path, ledger_path: str | Path) -> ValidationStore:
    from .discovery import read_candidate_records

    records = read_candidate_records(candidates_path)
    store = ValidationStore.from_records(records)
    for decision in read_ledger(ledger_path):
        store.apply(decision)
    return store


def write_datasets_csv(
    records: Sequence[DatasetRecord], path: str | Path
) -> None:
    import csv

    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["dataset_id", "canonical_name", "languages", "n_mentions", "emergence_year", "accessibility"]
        )
        for record in records:
            emergence_year = ""
            if record.emergence is not None and record.emergence.emergence_year is not None:
                emergence_year = str(record.emergence.emergence_year)
            accessibility = ""
            if record.accessibility is not None:
                accessibility = record.accessibility.status.value
            writer.writerow(
                [
                    record.dataset_id,
                    record.canonical_name,
                    ";".join(sorted(record.languages)),
                    len(record.member_mention_ids),
                    emergence_year,
                    accessibility,
                ]
            )
