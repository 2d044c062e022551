"""Evaluation report container and serialization.

JSON is the canonical format: keys sorted, two-space indent, trailing
newline, infinite PSNR encoded as the string ``"inf"``. Emitting a parsed
report reproduces the original bytes, so reports can be stored, diffed and
re-rendered without loss. CSV and markdown render the per-model summary table
only (per-point and per-sample records live in the JSON).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

from .errors import ValidationError

__all__ = ["EvalReport", "emit_report", "report_from_json", "config_digest"]

_SUMMARY_COLUMNS = ("psnr_db", "ssim", "mae", "melr", "wasserstein")
_MD_HEADER = ("Model", "PSNR", "SSIM", "MAE", "MELR", "Wasserstein")


@dataclass
class EvalReport:
    """Per-model metric rows plus per-point distribution/power results."""

    rows: list[dict]
    per_point: list[dict]
    metadata: dict
    samples: list[dict] = field(default_factory=list)


def config_digest(obj) -> str:
    """Short stable digest of a JSON-able configuration object."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:12]


def _encode(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _jsonable(report: EvalReport) -> dict:
    doc = {
        "schema": "windeval-report-v1",
        "metadata": report.metadata,
        "rows": report.rows,
        "per_point": report.per_point,
    }
    if report.samples:
        doc["samples"] = report.samples
    return _encode(doc)


def _fmt_human(value) -> str:
    if value is None:
        return "-"
    if value == "inf" or (isinstance(value, float) and math.isinf(value)):
        return "inf"
    return f"{value:.4f}"


def _fmt_exact(value) -> str:
    if value is None:
        return ""
    if value == "inf" or (isinstance(value, float) and math.isinf(value)):
        return "inf"
    return repr(value)


def emit_report(report: EvalReport, format: str = "json") -> bytes:
    """Serialize a report as ``json``, ``csv`` or ``markdown``/``md``."""
    if format == "json":
        text = json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
        return text.encode("utf-8")
    if format == "csv":
        lines = ["model," + ",".join(_SUMMARY_COLUMNS)]
        for row in report.rows:
            cells = [row["model"]] + [_fmt_exact(row.get(c)) for c in _SUMMARY_COLUMNS]
            lines.append(",".join(cells))
        return ("\n".join(lines) + "\n").encode("utf-8")
    if format in ("markdown", "md"):
        lines = [
            "| " + " | ".join(_MD_HEADER) + " |",
            "|" + "|".join(" --- " for _ in _MD_HEADER) + "|",
        ]
        for row in report.rows:
            cells = [row["model"]] + [_fmt_human(row.get(c)) for c in _SUMMARY_COLUMNS]
            lines.append("| " + " | ".join(cells) + " |")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValidationError("invalid-config", f"unknown report format {format!r}")


def report_from_json(data: bytes | str) -> EvalReport:
    """Parse a JSON report; emitting it again is byte-identical."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValidationError("invalid-report", f"not a JSON report: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != "windeval-report-v1":
        raise ValidationError("invalid-report", "missing windeval report schema marker")
    return EvalReport(
        rows=doc.get("rows", []),
        per_point=doc.get("per_point", []),
        metadata=doc.get("metadata", {}),
        samples=doc.get("samples", []),
    )
