"""Fixed comparison universe of languages plus label-normalization rules.

The registry holds the 200 highest-population languages (ISO 639-3 code,
canonical name, speaker population in millions) and an alias index. Raw
catalogue or literature labels are resolved against it through explicit,
auditable rules: spelling variants map onto a canonical code, while
underspecified umbrella labels are deliberately kept broad instead of being
guessed into a specific variety.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from enum import Enum
from pathlib import Path
from typing import Iterable


class RegistryError(Exception):
    """Base class for registry load failures."""


class MissingFile(RegistryError):
    pass


class MalformedRow(RegistryError):
    def __init__(self, line_number: int, detail: str):
        super().__init__(f"line {line_number}: {detail}")
        self.line_number = line_number


class DuplicateCode(RegistryError):
    def __init__(self, code: str):
        super().__init__(f"duplicate language code {code!r}")
        self.code = code


class NonPositivePopulation(RegistryError):
    def __init__(self, code: str):
        super().__init__(f"non-positive population for {code!r}")
        self.code = code


def fold_label(label: str) -> str:
    """Simple case mapping plus whitespace collapse, applied before any lookup."""
    return " ".join(label.strip().lower().split())


@dataclass(frozen=True)
class LanguageRecord:
    iso639_3: str
    canonical_name: str
    population_millions: Decimal
    aliases: frozenset[str] = frozenset()


class Registry:
    """Immutable-after-load language table with a case-folded alias index."""

    def __init__(self, records: Iterable[LanguageRecord]):
        self._by_code: dict[str, LanguageRecord] = {}
        self._alias_index: dict[str, str] = {}
        for record in records:
            if record.iso639_3 in self._by_code:
                raise DuplicateCode(record.iso639_3)
            if record.population_millions <= 0:
                raise NonPositivePopulation(record.iso639_3)
            self._by_code[record.iso639_3] = record
            for label in (record.canonical_name, *record.aliases):
                folded = fold_label(label)
                claimed = self._alias_index.get(folded)
                if claimed is not None and claimed != record.iso639_3:
                    raise RegistryError(
                        f"alias {label!r} claimed by both {claimed} and {record.iso639_3}"
                    )
                self._alias_index[folded] = record.iso639_3

    def __len__(self) -> int:
        return len(self._by_code)

    def __contains__(self, code: str) -> bool:
        return code in self._by_code

    def __iter__(self):
        return iter(self._by_code.values())

    def get(self, code: str) -> LanguageRecord | None:
        return self._by_code.get(code)

    def __getitem__(self, code: str) -> LanguageRecord:
        return self._by_code[code]

    def resolve_alias(self, label: str) -> str | None:
        return self._alias_index.get(fold_label(label))

    @property
    def codes(self) -> list[str]:
        return list(self._by_code)


def load_language_table(path: str | Path) -> Registry:
    """Parse the delimited language table (columns iso639_3,name,population_millions).

    The whole file is rejected on the first duplicate code, non-positive
    population, or malformed row; a header-only file yields an empty registry.
    """
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    records: list[LanguageRecord] = []
    seen: set[str] = set()
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        required = {"iso639_3", "name", "population_millions"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise MalformedRow(1, f"header must contain {sorted(required)}")
        for line_number, row in enumerate(reader, start=2):
            code = (row.get("iso639_3") or "").strip()
            name = (row.get("name") or "").strip()
            raw_population = (row.get("population_millions") or "").strip()
            if len(code) != 3 or not code.isalpha():
                raise MalformedRow(line_number, f"bad code {code!r}")
            if not name:
                raise MalformedRow(line_number, "empty name")
            try:
                population = Decimal(raw_population)
            except InvalidOperation:
                raise MalformedRow(line_number, f"bad population {raw_population!r}") from None
            if code in seen:
                raise DuplicateCode(code)
            if population <= 0:
                raise NonPositivePopulation(code)
            seen.add(code)
            aliases = tuple(
                alias.strip()
                for alias in (row.get("aliases") or "").split(";")
                if alias.strip()
            )
            records.append(LanguageRecord(code, name, population, frozenset(aliases)))
    return Registry(records)


class RuleAction(Enum):
    MAP_TO = "map_to"
    KEEP_BROAD = "keep_broad"


@dataclass(frozen=True)
class NormalizationRule:
    source_label: str
    action: RuleAction
    target: str | None = None
    note: str = ""


class Outcome(Enum):
    MAPPED = "mapped"
    BROAD = "broad"
    UNMAPPED = "unmapped"


@dataclass(frozen=True)
class NormalizationOutcome:
    kind: Outcome
    value: str  # iso639_3 when MAPPED, the raw label otherwise

    @property
    def is_mapped(self) -> bool:
        return self.kind is Outcome.MAPPED


class RuleSet:
    """Normalization rules indexed by case-folded source label."""

    def __init__(self, rules: Iterable[NormalizationRule]):
        self.rules = list(rules)
        self._by_label: dict[str, NormalizationRule] = {}
        for rule in self.rules:
            self._by_label.setdefault(fold_label(rule.source_label), rule)

    def lookup(self, label: str) -> NormalizationRule | None:
        return self._by_label.get(fold_label(label))

    def __len__(self) -> int:
        return len(self.rules)


def load_rules(path: str | Path) -> RuleSet:
    """Parse the rules file: `source_label<TAB>action<TAB>target<TAB>note` per line."""
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    rules: list[NormalizationRule] = []
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise MalformedRow(line_number, "expected at least source_label<TAB>action")
        source = parts[0].strip()
        action_text = parts[1].strip().lower()
        target = parts[2].strip() if len(parts) > 2 and parts[2].strip() not in ("", "-") else None
        note = parts[3].strip() if len(parts) > 3 else ""
        try:
            action = RuleAction(action_text)
        except ValueError:
            raise MalformedRow(line_number, f"unknown action {action_text!r}") from None
        if not source:
            raise MalformedRow(line_number, "empty source label")
        rules.append(NormalizationRule(source, action, target, note))
    return RuleSet(rules)


@dataclass(frozen=True)
class RuleError:
    kind: str  # UnknownTarget | DuplicateSource | MissingTarget
    source_label: str
    detail: str


def validate_rules(rules: RuleSet, registry: Registry) -> list[RuleError]:
    """Diagnostics over a rule set; an empty list means the rules are usable."""
    errors: list[RuleError] = []
    seen: dict[str, str] = {}
    for rule in rules.rules:
        folded = fold_label(rule.source_label)
        if folded in seen:
            errors.append(
                RuleError("DuplicateSource", rule.source_label,
                          f"also defined for {seen[folded]!r}")
            )
        else:
            seen[folded] = rule.source_label
        if rule.action is RuleAction.MAP_TO:
            if rule.target is None:
                errors.append(RuleError("MissingTarget", rule.source_label, "map_to without target"))
            elif rule.target not in registry:
                errors.append(
                    RuleError("UnknownTarget", rule.source_label,
                              f"target {rule.target!r} not in registry")
                )
    return errors


def normalize_label(raw: str, rules: RuleSet, registry: Registry) -> NormalizationOutcome:
    """Resolve a raw language label: case-fold, alias match, then rule lookup.

    Total over text; unknown labels come back UNMAPPED so callers can route
    them into an exceptions report instead of dropping them.
    """
    code = registry.resolve_alias(raw)
    if code is not None:
        return NormalizationOutcome(Outcome.MAPPED, code)
    rule = rules.lookup(raw)
    if rule is None:
        return NormalizationOutcome(Outcome.UNMAPPED, raw)
    if rule.action is RuleAction.KEEP_BROAD:
        return NormalizationOutcome(Outcome.BROAD, raw)
    assert rule.target is not None  # enforced by validate_rules before use
    return NormalizationOutcome(Outcome.MAPPED, rule.target)
