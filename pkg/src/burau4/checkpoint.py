"""Checkpointing for long sweeps: per-level rows keyed by a config hash.

A checkpoint file stores the finished levels of one run together with a
fingerprint of the run's configuration; resuming with a different
configuration is refused rather than silently mixed.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from typing import Optional

SCHEMA_VERSION = 1


class CheckpointMismatchError(RuntimeError):
    """The checkpoint on disk belongs to a differently-configured run."""


def fingerprint(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class Checkpoint:
    def __init__(self, path: Optional[str], config: dict):
        self.path = path
        self.fingerprint = fingerprint(config)
        self.rows: dict[int, dict] = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            if data.get("schema_version") != SCHEMA_VERSION:
                raise CheckpointMismatchError("unknown checkpoint schema")
            if data.get("fingerprint") != self.fingerprint:
                raise CheckpointMismatchError(
                    f"checkpoint {path} was written by a different configuration")
            self.rows = {int(k): v for k, v in data["rows"].items()}

    def done_levels(self) -> set[int]:
        return set(self.rows)

    def record(self, level: int, row) -> None:
        self.rows[level] = dataclasses.asdict(row) if dataclasses.is_dataclass(row) else row
        self._flush()

    def _flush(self) -> None:
        if not self.path:
            return
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump({"schema_version": SCHEMA_VERSION,
                       "fingerprint": self.fingerprint,
                       "rows": {str(k): v for k, v in sorted(self.rows.items())}},
                      fh, sort_keys=True)
        os.replace(tmp, self.path)
