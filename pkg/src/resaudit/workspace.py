"""Workspace layout, stage markers, and the single-run advisory lock.

A workspace keeps live-network state (cache/), human decisions (ledger/),
inputs, and derived reports in separate directories so each can be backed up
independently. Every pipeline stage records a digest of its inputs when it
completes; re-running a completed stage with unchanged inputs is a no-op.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterable


class Stage(Enum):
    INGEST = "ingest"
    RDI = "rdi"
    DISCOVER = "discover"
    CLASSIFY = "classify"
    SERVE = "serve"
    AUDIT = "audit"
    REPORT = "report"


STAGE_PREREQUISITES: dict[Stage, tuple[Stage, ...]] = {
    Stage.INGEST: (),
    Stage.RDI: (Stage.INGEST,),
    Stage.DISCOVER: (Stage.RDI,),
    Stage.CLASSIFY: (Stage.DISCOVER,),
    Stage.SERVE: (),
    Stage.AUDIT: (),
    Stage.REPORT: (),
}


class WorkspaceError(Exception):
    pass


class MissingPrerequisite(WorkspaceError):
    def __init__(self, stage: Stage, missing: str):
        super().__init__(f"stage {stage.value!r} requires {missing}")
        self.stage = stage
        self.missing = missing


class ConfigError(WorkspaceError):
    pass


class WorkspaceLocked(WorkspaceError):
    pass


def file_digest(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def combined_digest(paths: Iterable[Path]) -> str:
    digest = hashlib.sha256()
    for path in sorted(paths, key=str):
        digest.update(str(path.name).encode("utf-8"))
        if path.exists():
            digest.update(file_digest(path).encode("ascii"))
        else:
            digest.update(b"missing")
    return digest.hexdigest()


@dataclass
class Workspace:
    root: Path

    def __post_init__(self) -> None:
        self.root = Path(self.root)

    # -- layout ------------------------------------------------------------

    @property
    def inputs_dir(self) -> Path:
        return self.root / "inputs"

    @property
    def cache_dir(self) -> Path:
        return self.root / "cache"

    @property
    def api_cache_dir(self) -> Path:
        return self.cache_dir / "api"

    @property
    def verdict_cache_dir(self) -> Path:
        return self.cache_dir / "verdicts"

    @property
    def ledger_dir(self) -> Path:
        return self.root / "ledger"

    @property
    def ledger_path(self) -> Path:
        return self.ledger_dir / "decisions.log"

    @property
    def reports_dir(self) -> Path:
        return self.root / "reports"

    @property
    def candidates_dir(self) -> Path:
        return self.root / "candidates"

    @property
    def candidates_path(self) -> Path:
        return self.candidates_dir / "candidates.jsonl"

    @property
    def markers_dir(self) -> Path:
        return self.root / ".stages"

    @property
    def lock_path(self) -> Path:
        return self.root / ".lock"

    @property
    def config_path(self) -> Path:
        return self.root / "config.json"

    def input(self, name: str) -> Path:
        return self.inputs_dir / name

    def report(self, name: str) -> Path:
        return self.reports_dir / name

    def create(self) -> "Workspace":
        for directory in (
            self.inputs_dir,
            self.api_cache_dir,
            self.verdict_cache_dir,
            self.ledger_dir,
            self.reports_dir,
            self.candidates_dir,
            self.markers_dir,
        ):
            directory.mkdir(parents=True, exist_ok=True)
        return self

    # -- configuration ------------------------------------------------------

    def config(self) -> dict:
        if not self.config_path.exists():
            return {}
        try:
            return json.loads(self.config_path.read_text(encoding="utf-8"))
        except ValueError as exc:
            raise ConfigError(f"invalid config.json: {exc}") from exc

    def setting(self, key: str, flag_value=None, env_var: str | None = None, default=None):
        """Flags beat environment variables beat the config file."""
        if flag_value is not None:
            return flag_value
        if env_var and os.environ.get(env_var):
            return os.environ[env_var]
        return self.config().get(key, default)

    # -- stage markers --------------------------------------------------------

    def marker_path(self, stage: Stage) -> Path:
        return self.markers_dir / f"{stage.value}.json"

    def stage_complete(self, stage: Stage) -> bool:
        return self.marker_path(stage).exists()

    def stage_digest(self, stage: Stage) -> str | None:
        path = self.marker_path(stage)
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8")).get("input_digest")

    def mark_stage(self, stage: Stage, input_digest: str) -> None:
        self.markers_dir.mkdir(parents=True, exist_ok=True)
        payload = {"stage": stage.value, "input_digest": input_digest}
        tmp = self.marker_path(stage).with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        os.replace(tmp, self.marker_path(stage))

    def clear_stage(self, stage: Stage) -> None:
        marker = self.marker_path(stage)
        if marker.exists():
            marker.unlink()

    def check_prerequisites(self, stage: Stage) -> None:
        for prerequisite in STAGE_PREREQUISITES[stage]:
            if not self.stage_complete(prerequisite):
                raise MissingPrerequisite(stage, f"completed stage {prerequisite.value!r}")
        if stage in (Stage.AUDIT, Stage.REPORT) and not self.ledger_path.exists():
            raise MissingPrerequisite(stage, "a decision ledger (ledger/decisions.log)")
        if stage is Stage.SERVE and not self.candidates_path.exists():
            raise MissingPrerequisite(stage, "a candidates file (candidates/candidates.jsonl)")


class WorkspaceLock:
    """Advisory flock guaranteeing one pipeline run per workspace."""

    def __init__(self, workspace: Workspace):
        self.path = workspace.lock_path
        self._handle: IO[str] | None = None

    def __enter__(self) -> "WorkspaceLock":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = self.path.open("w")
        try:
            fcntl.flock(self._handle.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
        except OSError as exc:
            self._handle.close()
            self._handle = None
            raise WorkspaceLocked(f"workspace already in use ({self.path})") from exc
        self._handle.write(str(os.getpid()))
        self._handle.flush()
        return self

    def __exit__(self, *exc_info) -> None:
        if self._handle is not None:
            fcntl.flock(self._handle.fileno(), fcntl.LOCK_UN)
            self._handle.close()
            self._handle = None
