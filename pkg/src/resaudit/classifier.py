"""Zero-shot classification of citation contexts as dataset mentions.

Two backends share one verdict cache keyed by the context digest. The remote
backend posts a schema-constrained prompt to a chat-completion endpoint and
refuses to guess when the reply does not parse. The heuristic backend is a
pure function over the context text (cue phrases vs. an exclusion list with
exclusion precedence) so tests and offline runs stay deterministic; its
precision is documented as weaker than the remote model's, not equal.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable

import requests

from .discovery import CandidateMention, CitationContext, context_digest

PROMPT_VERSION = "mention_classifier_v1"
DEFAULT_MODEL = "Qwen2.5-72B"
ENDPOINT_ENV_VAR = "RESAUDIT_CLASSIFIER_ENDPOINT"
MODEL_ENV_VAR = "RESAUDIT_CLASSIFIER_MODEL"

# Cue phrases indicating the cited item is a data resource, and exclusion
# terms for other artifact kinds (model, toolkit, metric, library). Exclusions
# win when both match.
DATASET_CUES: tuple[str, ...] = (
    "corpus",
    "treebank",
    "dataset",
    "data set",
    "benchmark",
    "lexicon",
    "wordlist",
    "annotated by",
    "annotated with",
    "collected from",
    "released by",
    "gold standard",
    "parallel text",
    "speech recordings",
)
ARTIFACT_EXCLUSIONS: tuple[str, ...] = (
    "toolkit",
    "library",
    "framework",
    "metric",
    "tagger",
    "parser of",
    "software",
    "pretrained model",
    "language model",
    "embeddings model",
    "book",
    "dictionary published",
    "survey of",
)

_NAME_PATTERN = re.compile(
    r"\b((?:[A-Z][A-Za-z0-9]*[-']?){1,6}(?:\s+(?:[A-Z][A-Za-z0-9]*[-']?|of|for|the)){0,5})"
)
_STOPWORDS = {"We", "The", "In", "Our", "This", "These", "For", "Following", "Results"}


class ClassifierError(Exception):
    pass


class EndpointUnavailable(ClassifierError):
    pass


class SchemaViolation(ClassifierError):
    def __init__(self, raw_output: str):
        super().__init__(f"unparseable classifier output: {raw_output[:200]!r}")
        self.raw_output = raw_output


class ClassifierTimeout(ClassifierError):
    pass


class Backend(Enum):
    LLM = "LLM"
    HEURISTIC = "HEURISTIC"


@dataclass(frozen=True)
class ClassifierVerdict:
    is_dataset: bool
    extracted_name: str | None
    rationale: str | None
    backend: Backend
    context_digest: str
    confidence: float | None = None

    def to_record(self) -> dict:
        return {
            "is_dataset": self.is_dataset,
            "extracted_name": self.extracted_name,
            "rationale": self.rationale,
            "backend": self.backend.value,
            "context_digest": self.context_digest,
            "confidence": self.confidence,
        }

    @classmethod
    def from_record(cls, record: dict) -> "ClassifierVerdict":
        return cls(
            is_dataset=bool(record["is_dataset"]),
            extracted_name=record.get("extracted_name"),
            rationale=record.get("rationale"),
            backend=Backend(record.get("backend", "LLM")),
            context_digest=record["context_digest"],
            confidence=record.get("confidence"),
        )


@dataclass
class BackendConfig:
    endpoint: str = ""
    model: str = DEFAULT_MODEL
    prompt_version: str = PROMPT_VERSION
    temperature: float = 0.0
    timeout: float = 60.0
    bearer_token: str | None = None

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


def load_prompt_template(version: str = PROMPT_VERSION) -> str:
    return resources.files("resaudit.prompts").joinpath(f"{version}.txt").read_text("utf-8")


def render_prompt(template: str, language: str, context: str) -> str:
    return template.replace("{language}", language).replace("{context}", context)


class VerdictCache:
    """Directory of verdict records keyed by context digest; atomic writes."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _path(self, digest: str) -> Path:
        return self.directory / f"{digest}.json"

    def get(self, digest: str) -> ClassifierVerdict | None:
        path = self._path(digest)
        if not path.exists():
            return None
        return ClassifierVerdict.from_record(json.loads(path.read_text("utf-8")))

    def put(self, verdict: ClassifierVerdict) -> None:
        path = self._path(verdict.context_digest)
        with self._lock:
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(verdict.to_record(), sort_keys=True), encoding="utf-8")
            tmp.replace(path)


def _extract_name(text: str) -> str | None:
    candidates = []
    for match in _NAME_PATTERN.finditer(text):
        name = match.group(1).strip()
        first = name.split()[0]
        if first in _STOPWORDS:
            continue
        candidates.append(name)
    if not candidates:
        return None
    return max(candidates, key=len)


def classify_heuristic(text: str, language: str | None = None) -> ClassifierVerdict:
    """Pure cue-phrase classifier; identical text always yields the same verdict."""
    lowered = text.lower()
    excluded = next((term for term in ARTIFACT_EXCLUSIONS if term in lowered), None)
    cue = next((term for term in DATASET_CUES if term in lowered), None)
    if excluded is not None:
        return ClassifierVerdict(
            is_dataset=False,
            extracted_name=None,
            rationale=f"exclusion term {excluded!r}",
            backend=Backend.HEURISTIC,
            context_digest=context_digest(text),
        )
    if cue is not None:
        return ClassifierVerdict(
            is_dataset=True,
            extracted_name=_extract_name(text),
            rationale=f"cue phrase {cue!r}",
            backend=Backend.HEURISTIC,
            context_digest=context_digest(text),
        )
    return ClassifierVerdict(
        is_dataset=False,
        extracted_name=None,
        rationale="no dataset cue",
        backend=Backend.HEURISTIC,
        context_digest=context_digest(text),
    )


def _call_endpoint(config: BackendConfig, language: str, text: str) -> ClassifierVerdict:
    prompt = render_prompt(load_prompt_template(config.prompt_version), language, text)
    body = {
        "model": config.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": config.temperature,
    }
    headers = {"Content-Type": "application/json"}
    if config.bearer_token:
        headers["Authorization"] = f"Bearer {config.bearer_token}"
    try:
        response = requests.post(config.endpoint, json=body, headers=headers, timeout=config.timeout)
    except requests.Timeout as exc:
        raise ClassifierTimeout(str(exc)) from exc
    except requests.RequestException as exc:
        raise EndpointUnavailable(str(exc)) from exc
    if response.status_code >= 400:
        raise EndpointUnavailable(f"HTTP {response.status_code} from {config.endpoint}")
    try:
        content = response.json()["choices"][0]["message"]["content"]
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise SchemaViolation(response.text) from exc
    return _parse_answer(content, text)


def _parse_answer(content: str, text: str) -> ClassifierVerdict:
    """Strict schema: a JSON object with is_dataset and dataset_name keys."""
    snippet = content.strip()
    start, end = snippet.find("{"), snippet.rfind("}")
    if start == -1 or end == -1 or end <= start:
        raise SchemaViolation(content)
    try:
        payload = json.loads(snippet[start : end + 1])
    except ValueError:
        raise SchemaViolation(content) from None
    if not isinstance(payload, dict) or not isinstance(payload.get("is_dataset"), bool):
        raise SchemaViolation(content)
    name = payload.get("dataset_name")
    if name is not None and not isinstance(name, str):
        raise SchemaViolation(content)
    is_dataset = payload["is_dataset"]
    confidence = payload.get("confidence")
    if confidence is not None and not isinstance(confidence, (int, float)):
        confidence = None
    return ClassifierVerdict(
        is_dataset=is_dataset,
        extracted_name=name if is_dataset else None,
        rationale=None,
        backend=Backend.LLM,
        context_digest=context_digest(text),
        confidence=float(confidence) if confidence is not None else None,
    )


def classify_context(
    context: CitationContext,
    config: BackendConfig,
    cache: VerdictCache | None = None,
    language: str = "",
    use_heuristic: bool = False,
) -> ClassifierVerdict:
    """Classify one context, hitting the verdict cache before any remote call."""
    text = context.context_text
    if not text.strip():
        raise ValueError("context_text must be nonempty")
    digest = context_digest(text)
    if cache is not None:
        cached = cache.get(digest)
        if cached is not None:
            return cached
    if use_heuristic or not config.endpoint:
        verdict = classify_heuristic(text, language)
    else:
        verdict = _call_endpoint(config, language, text)
    if cache is not None:
        cache.put(verdict)
    return verdict


@dataclass
class BatchResult:
    verdicts: dict[str, ClassifierVerdict] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors


def classify_batch(
    mentions: Iterable[CandidateMention],
    config: BackendConfig,
    cache: VerdictCache | None = None,
    use_heuristic: bool = False,
    fallback_to_heuristic: bool = True,
) -> BatchResult:
    """Annotate a batch; per-mention failures are recorded, never fatal."""
    result = BatchResult()
    for mention in mentions:
        try:
            verdict = classify_context(
                mention.context, config, cache, mention.language, use_heuristic
            )
        except (EndpointUnavailable, ClassifierTimeout) as exc:
            if fallback_to_heuristic:
                verdict = classify_heuristic(mention.context.context_text, mention.language)
                if cache is not None:
                    cache.put(verdict)
            else:
                result.errors[mention.mention_id] = str(exc)
                continue
        except SchemaViolation as exc:
            result.errors[mention.mention_id] = str(exc)
            continue
        result.verdicts[mention.mention_id] = verdict
    return result
