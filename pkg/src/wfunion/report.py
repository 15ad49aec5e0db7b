"""JSON report envelope shared by every command."""

from __future__ import annotations

import hashlib
import json
from importlib import metadata

SCHEMA = "wfunion-report/1"


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return "sha256:" + hashlib.sha256(data).hexdigest()


def envelope(command: str, body: dict, input_text: str | None = None,
             input_path: str | None = None, exit_status: int = 0) -> dict:
    return {
        "schema": SCHEMA,
        "tool": "wfunion",
        "version": tool_version(),
        "command": command,
        "input": None if input_text is None else {"path": input_path, "digest": digest(input_text)},
        "exit_status": exit_status,
        **body,
    }


def dumps(report: dict) -> str:
    # sorted keys and fixed separators keep equal reports byte-identical
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def strip_timing(report: dict) -> dict:
    """Copy without the wall-clock fields, for determinism comparisons."""
    out = {}
    for k, v in report.items():
        if k == "elapsed":
            continue
        out[k] = strip_timing(v) if isinstance(v, dict) else v
    return out
