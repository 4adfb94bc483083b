"""Run manifests: enough provenance to reproduce any CLI output byte-for-byte."""

from __future__ import annotations

import datetime
import hashlib
import json
from dataclasses import dataclass, asdict
from pathlib import Path

from . import __version__
from .kernels import active_backend


def config_digest(data: bytes) -> str:
    """sha256 hex digest; identical config bytes hash identically everywhere."""
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    config_hash: str
    seed: int | None
    tool_version: str
    timestamp: str
    backend: str

    @classmethod
    def create(cls, command: str, config_bytes: bytes,
               seed: int | None = None) -> "RunManifest":
        now = datetime.datetime.now(datetime.timezone.utc).replace(microsecond=0)
        return cls(command=command,
                   config_hash=config_digest(config_bytes),
                   seed=seed,
                   tool_version=__version__,
                   timestamp=now.isoformat(),
                   backend=active_backend())

    def write(self, path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2) + "\n",
                              encoding="utf-8")

    @classmethod
    def read(cls, path) -> "RunManifest":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(**doc)


def manifest_path_for(output_path) -> Path:
    return Path(str(output_path) + ".manifest.json")
