"""Run configuration and deterministic CSV/JSON report writers.

Reports never contain timings or worker counts, so identical configurations
give byte-identical files; those go to stderr instead.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Iterable, Sequence

from . import __version__

TOOL = "disc-census"
JSON_SAFE_INT = 2**53


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    worker_count: int = 1
    out: str | None = None
    offline: bool = False

    def echo(self) -> dict:
        """The part of the configuration that determines the output."""
        return {"command": self.command, "params": to_jsonable(self.params), "seed": self.seed}

    @property
    def sha256(self) -> str:
        blob = json.dumps(self.echo(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def to_jsonable(x: Any) -> Any:
    """Plain JSON values. Integers beyond the float-exact range and fractions
    (as ``"p/q"``) become strings; callers stringify discriminant-like fields
    themselves so their type never depends on magnitude."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x if abs(x) < JSON_SAFE_INT else str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def json_report(config: RunConfig, result: dict, metrics: dict | None = None) -> str:
    doc = {
        "tool": TOOL,
        "version": __version__,
        "config": config.echo(),
        "config_sha256": config.sha256,
        "result": to_jsonable(result),
    }
    if metrics:
        doc["metrics"] = to_jsonable(metrics)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def csv_report(config: RunConfig, header: Sequence[str], rows: Iterable[Sequence], note: str = "") -> str:
    """CSV whose first line is a comment carrying the config hash; rows sorted."""
    buf = io.StringIO()
    comment = f"# {TOOL} {__version__} config_sha256={config.sha256} command={config.command}"
    buf.write(comment + (f" {note}" if note else "") + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(sorted(rows))
    return buf.getvalue()


def load_schema() -> dict:
    return json.loads(resources.files("disc_census").joinpath("data/report.schema.json").read_text())


def write_output(text: str, out: str | None, stream) -> None:
    if out is None or out == "-":
        stream.write(text)
        return
    with open(out, "w", newline="") as fh:
        fh.write(text)
