"""Run manifests: what was run, with which parameters, producing which files."""

from __future__ import annotations

import datetime
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

TOOL_VERSION = "0.1.0"


def sha256_of(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


@dataclass
class RunManifest:
    command: str
    parameters: dict
    tool_version: str = TOOL_VERSION
    started: str = field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc).isoformat()
    )
    finished: str | None = None
    outputs: list = field(default_factory=list)

    def add_output(self, path) -> None:
        self.outputs.append({"path": str(path), "sha256": sha256_of(path)})

    def write(self, path) -> None:
        self.finished = datetime.datetime.now(datetime.timezone.utc).isoformat()
        Path(path).write_text(
            json.dumps(
                {
                    "command": self.command,
                    "parameters": self.parameters,
                    "tool_version": self.tool_version,
                    "started": self.started,
                    "finished": self.finished,
                    "outputs": self.outputs,
                },
                indent=2,
                sort_keys=True,
            )
            + "\n"
        )

    def verify_outputs(self) -> bool:
        return all(sha256_of(o["path"]) == o["sha256"] for o in self.outputs)
