"""
Run manifests: the volatile metadata (timestamps, argv, seeds, hashes) kept
out of data files so those stay byte-identical across reruns. Each output
file <f> gets a sidecar <f>.manifest.json.
"""

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ._version import __version__


@dataclass(frozen=True)
class RunManifest:
    """What produced a set of outputs: command line, seeds, and input identities."""

    argv: tuple[str, ...]
    seeds: dict = field(default_factory=dict)
    input_hashes: dict = field(default_factory=dict)
    tool_version: str = __version__

    def as_fields(self) -> dict:
        fields = {"argv": list(self.argv), "tool_version": self.tool_version}
        if self.seeds:
            fields["seeds"] = dict(self.seeds)
        if self.input_hashes:
            fields["input_sha256"] = dict(self.input_hashes)
        return fields


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_sidecar(data_path, fields: dict) -> Path:
    """Write <data_path>.manifest.json describing an already-written file."""
    doc = dict(fields)
    doc.setdefault("tool_version", __version__)
    doc["output_sha256"] = file_sha256(data_path)
    doc["created_utc"] = datetime.now(timezone.utc).isoformat()
    path = Path(str(data_path) + ".manifest.json")
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path
