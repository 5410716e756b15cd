"""Analysis-report documents: schema, builders, canonical serialization.

The report is the wire format between analysis, the document store, the
REST server, and the review UI. One JSON document per change set, keyed
by (repo_id, change_set_id). Serialization is canonical — UTF-8, sorted
keys, LF line endings — so an unchanged analysis produces a
byte-identical document, which is what the determinism tests compare.

`schema_version` guards evolution; documents are validated against the
JSON schema below on every store.
"""

from __future__ import annotations

import copy
import json
from datetime import datetime, timezone

import jsonschema

from .align import AlignedDiff
from .detect import DetectorConfig, Refactoring
from .diffs import AlignedRow, ChurnCount
from .errors import ValidationError
from .metrics import DCCRecord, MoveDistance, SummaryStats
from .model import CodeElement, Signature
from .repo import FileChange, RevisionPair

SCHEMA_VERSION = 1

KEY_PATTERN = r"^[A-Za-z0-9._-]{1,128}$"

EVENT_KINDS = ["R_CLICK_LEFT", "R_CLICK_RIGHT", "GO_TO_SOURCE",
               "WINDOW_OPEN", "WINDOW_CLOSE"]

_ROW_STATUS = ["UNCHANGED", "MODIFIED", "ADDED", "REMOVED"]

_ROW = {
    "type": "object",
    "required": ["left", "right", "status"],
    "additionalProperties": False,
    "properties": {
        "left": {"type": ["string", "null"]},
        "right": {"type": ["string", "null"]},
        "status": {"enum": _ROW_STATUS},
    },
}

_FILE_ROW = {
    "type": "object",
    "required": ["left", "right", "status", "left_line", "right_line"],
    "additionalProperties": False,
    "properties": {
        "left": {"type": ["string", "null"]},
        "right": {"type": ["string", "null"]},
        "status": {"enum": _ROW_STATUS},
        "left_line": {"type": ["integer", "null"], "minimum": 1},
        "right_line": {"type": ["integer", "null"], "minimum": 1},
    },
}

_SIGNATURE = {
    "type": "object",
    "required": ["receiver", "parameters", "results"],
    "additionalProperties": False,
    "properties": {
        "receiver": {"type": ["string", "null"]},
        "parameters": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"},
                      "minItems": 2, "maxItems": 2},
        },
        "results": {"type": "array", "items": {"type": "string"}},
    },
}

_ELEMENT = {
    "type": "object",
    "required": ["kind", "name", "qualified_name", "file_path",
                 "start_line", "end_line"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["FILE", "TYPE_DECL", "FUNCTION"]},
        "name": {"type": "string"},
        "qualified_name": {"type": "string"},
        "file_path": {"type": "string"},
        "start_line": {"type": "integer", "minimum": 1},
        "end_line": {"type": "integer", "minimum": 1},
        "signature": {"anyOf": [_SIGNATURE, {"type": "null"}]},
    },
}

_ANCHOR = {
    "type": "object",
    "required": ["file_path", "line"],
    "additionalProperties": False,
    "properties": {
        "file_path": {"type": "string"},
        "line": {"type": "integer", "minimum": 1},
    },
}

_CHURN = {
    "type": "object",
    "required": ["added", "deleted", "total"],
    "additionalProperties": False,
    "properties": {
        "added": {"type": "integer", "minimum": 0},
        "deleted": {"type": "integer", "minimum": 0},
        "total": {"type": "integer", "minimum": 0},
    },
}

_REFACTORING_KINDS = [
    "MOVE_FUNCTION", "MOVE_AND_RENAME_FUNCTION", "MOVE_TYPE", "MOVE_FILE",
    "EXTRACT_FUNCTION", "INLINE_FUNCTION", "RENAME_FUNCTION", "RENAME_TYPE",
    "CHANGE_SIGNATURE", "PULL_UP", "PUSH_DOWN",
]

_REFACTORING = {
    "type": "object",
    "required": ["id", "kind", "description", "similarity", "pair_label",
                 "before_anchor", "after_anchor", "before_element",
                 "after_element", "aux_element", "aligned", "metrics"],
    "additionalProperties": False,
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "kind": {"enum": _REFACTORING_KINDS},
        "description": {"type": "string"},
        "similarity": {"type": "number", "minimum": 0, "maximum": 1},
        "pair_label": {"type": "string"},
        "before_anchor": {"anyOf": [_ANCHOR, {"type": "null"}]},
        "after_anchor": {"anyOf": [_ANCHOR, {"type": "null"}]},
        "before_element": {"anyOf": [_ELEMENT, {"type": "null"}]},
        "after_element": {"anyOf": [_ELEMENT, {"type": "null"}]},
        "aux_element": {"anyOf": [_ELEMENT, {"type": "null"}]},
        "aligned": {
            "type": "object",
            "required": ["rows", "extracted_rows", "signature_delta"],
            "additionalProperties": False,
            "properties": {
                "rows": {"type": "array", "items": _ROW},
                "extracted_rows": {
                    "anyOf": [{"type": "array", "items": _ROW}, {"type": "null"}]},
                "signature_delta": {
                    "anyOf": [
                        {
                            "type": "object",
                            "required": ["before", "after"],
                            "additionalProperties": False,
                            "properties": {"before": _SIGNATURE, "after": _SIGNATURE},
                        },
                        {"type": "null"},
                    ]
                },
            },
        },
        "metrics": {
            "type": "object",
            "required": ["plain", "enhanced", "move"],
            "additionalProperties": False,
            "properties": {
                "plain": _CHURN,
                "enhanced": _CHURN,
                "move": {
                    "anyOf": [
                        {
                            "type": "object",
                            "required": ["same_file", "distance_lines"],
                            "additionalProperties": False,
                            "properties": {
                                "same_file": {"type": "boolean"},
                                "distance_lines": {
                                    "type": ["integer", "null"], "minimum": 0},
                            },
                        },
                        {"type": "null"},
                    ]
                },
            },
        },
    },
}

_FILE = {
    "type": "object",
    "required": ["status", "path_before", "path_after", "binary", "rows"],
    "additionalProperties": False,
    "properties": {
        "status": {"enum": ["ADDED", "DELETED", "MODIFIED", "RENAMED"]},
        "path_before": {"type": ["string", "null"]},
        "path_after": {"type": ["string", "null"]},
        "binary": {"type": "boolean"},
        "rows": {"type": "array", "items": _FILE_ROW},
    },
}

_PAIR = {
    "type": "object",
    "required": ["label", "before", "after", "files", "refactorings", "timing"],
    "additionalProperties": False,
    "properties": {
        "label": {
            "type": "object",
            "required": ["kind", "index", "key"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["MAIN", "COMMIT"]},
                "index": {"type": ["integer", "null"], "minimum": 1},
                "key": {"type": "string"},
            },
        },
        "before": {
            "type": "object",
            "required": ["id", "short_label"],
            "additionalProperties": False,
            "properties": {
                "id": {"type": "string", "minLength": 1},
                "short_label": {"type": "string"},
            },
        },
        "after": {
            "type": "object",
            "required": ["id", "short_label"],
            "additionalProperties": False,
            "properties": {
                "id": {"type": "string", "minLength": 1},
                "short_label": {"type": "string"},
            },
        },
        "files": {"type": "array", "items": _FILE},
        "refactorings": {"type": "array", "items": _REFACTORING},
        "timing": {
            "type": "object",
            "required": ["wall_seconds"],
            "additionalProperties": False,
            "properties": {"wall_seconds": {"type": "number", "minimum": 0}},
        },
    },
}

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema_version", "repo_id", "change_set_id", "created_at",
                 "detector_config", "pairs", "summary"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "repo_id": {"type": "string", "pattern": KEY_PATTERN},
        "change_set_id": {"type": "string", "pattern": KEY_PATTERN},
        "created_at": {"type": "string", "minLength": 1},
        "detector_config": {
            "type": "object",
            "required": ["tau_match", "tau_extract", "min_extract_tokens",
                         "idf_smoothing"],
            "additionalProperties": False,
            "properties": {
                "tau_match": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                "tau_extract": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                "min_extract_tokens": {"type": "integer", "minimum": 1},
                "idf_smoothing": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "pairs": {"type": "array", "items": _PAIR},
        "summary": {"type": "object"},
    },
}

EVENT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["repo_id", "change_set_id", "refactoring_id", "event", "at"],
    "additionalProperties": False,
    "properties": {
        "repo_id": {"type": "string", "pattern": KEY_PATTERN},
        "change_set_id": {"type": "string", "pattern": KEY_PATTERN},
        "refactoring_id": {"type": "string", "minLength": 1},
        "event": {"enum": EVENT_KINDS},
        "at": {"type": "string", "minLength": 1},
    },
}

_report_validator = jsonschema.Draft7Validator(REPORT_SCHEMA)
_event_validator = jsonschema.Draft7Validator(EVENT_SCHEMA)


def _raise_first(errors_iter, prefix: str = "") -> None:
    found = sorted(errors_iter, key=lambda e: (len(e.absolute_path), str(e.absolute_path)))
    if not found:
        return
    err = found[0]
    path = ".".join(str(p) for p in err.absolute_path)
    if prefix:
        path = f"{prefix}.{path}" if path else prefix
    raise ValidationError(err.message, field_path=path or "$")


def validate_report(doc) -> None:
    """Raise ValidationError (with a dotted field path) unless the
    document conforms to the report schema."""
    if not isinstance(doc, dict):
        raise ValidationError("report document must be a JSON object", "$")
    _raise_first(_report_validator.iter_errors(doc))


def validate_event(doc, field_prefix: str = "") -> None:
    if not isinstance(doc, dict):
        raise ValidationError("event must be a JSON object", field_prefix or "$")
    _raise_first(_event_validator.iter_errors(doc), prefix=field_prefix)


def parse_timestamp(value: str) -> datetime:
    """ISO-8601, tolerating a trailing Z; naive stamps count as UTC."""
    try:
        stamp = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        raise ValidationError(f"bad timestamp {value!r}", "at") from None
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp


def now_utc() -> str:
    return datetime.now(timezone.utc).isoformat()


# ---------------------------------------------------------------- builders

def churn_doc(c: ChurnCount) -> dict:
    return {"added": c.added, "deleted": c.deleted, "total": c.total}


def signature_doc(sig: Signature) -> dict:
    return {
        "receiver": sig.receiver,
        "parameters": [[n, t] for n, t in sig.parameters],
        "results": list(sig.results),
    }


def element_doc(e: CodeElement | None) -> dict | None:
    if e is None:
        return None
    doc = {
        "kind": e.kind.value,
        "name": e.name,
        "qualified_name": e.qualified_name,
        "file_path": e.file_path,
        "start_line": e.start_line,
        "end_line": e.end_line,
        "signature": signature_doc(e.signature) if e.signature is not None else None,
    }
    return doc


def row_doc(row: AlignedRow) -> dict:
    return {"left": row.left, "right": row.right, "status": row.status.value}


def refactoring_doc(r: Refactoring, aligned: AlignedDiff,
                    dcc_rec: DCCRecord, move_rec: MoveDistance | None) -> dict:
    delta = None
    if aligned.signature_delta is not None:
        delta = {"before": signature_doc(aligned.signature_delta[0]),
                 "after": signature_doc(aligned.signature_delta[1])}
    move = None
    if move_rec is not None:
        move = {"same_file": move_rec.same_file,
                "distance_lines": move_rec.distance_lines}
    return {
        "id": r.id,
        "kind": r.kind.value,
        "description": r.description,
        "similarity": round(r.similarity, 6),
        "pair_label": r.pair_label.key,
        "before_anchor": {"file_path": r.before_anchor.file_path,
                          "line": r.before_anchor.line},
        "after_anchor": {"file_path": r.after_anchor.file_path,
                         "line": r.after_anchor.line},
        "before_element": element_doc(r.before_element),
        "after_element": element_doc(r.after_element),
        "aux_element": element_doc(r.aux_element),
        "aligned": {
            "rows": [row_doc(x) for x in aligned.rows],
            "extracted_rows": ([row_doc(x) for x in aligned.extracted_rows]
                               if aligned.extracted_rows is not None else None),
            "signature_delta": delta,
        },
        "metrics": {
            "plain": churn_doc(dcc_rec.plain),
            "enhanced": churn_doc(dcc_rec.enhanced),
            "move": move,
        },
    }


def file_doc(change: FileChange, rows: list[AlignedRow]) -> dict:
    """Side-by-side file view with 1-based line numbers on each side."""
    out_rows = []
    left_no = right_no = 0
    for row in rows:
        left_line = right_line = None
        if row.left is not None:
            left_no += 1
            left_line = left_no
        if row.right is not None:
            right_no += 1
            right_line = right_no
        out_rows.append({"left": row.left, "right": row.right,
                         "status": row.status.value,
                         "left_line": left_line, "right_line": right_line})
    return {
        "status": change.status.value,
        "path_before": change.path_before,
        "path_after": change.path_after,
        "binary": change.binary,
        "rows": out_rows,
    }


def pair_doc(pair: RevisionPair, files: list[dict], refactorings: list[dict],
             wall_seconds: float) -> dict:
    return {
        "label": {"kind": pair.label.kind, "index": pair.label.index,
                  "key": pair.label.key},
        "before": {"id": pair.before.id, "short_label": pair.before.short_label},
        "after": {"id": pair.after.id, "short_label": pair.after.short_label},
        "files": files,
        "refactorings": refactorings,
        "timing": {"wall_seconds": round(wall_seconds, 6)},
    }


def stats_doc(s: SummaryStats) -> dict:
    return {"count": s.count, "median": s.median, "q1": s.q1, "q3": s.q3}


def build_report(repo_id: str, change_set_id: str, cfg: DetectorConfig,
                 pairs: list[dict], summary: dict,
                 created_at: str | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "repo_id": repo_id,
        "change_set_id": change_set_id,
        "created_at": created_at or now_utc(),
        "detector_config": cfg.to_dict(),
        "pairs": pairs,
        "summary": summary,
    }
    validate_report(doc)
    return doc


# ------------------------------------------------------- canonical output

def canonical_json(doc) -> str:
    """Canonical document text: UTF-8-encodable, sorted keys, LF-only,
    trailing newline."""
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def comparison_form(doc: dict) -> dict:
    """The document with run-varying fields neutralized: created_at
    removed and every pair's wall_seconds zeroed. Two runs over the same
    repository state must agree on this form byte-for-byte."""
    out = copy.deepcopy(doc)
    out.pop("created_at", None)
    for pair in out.get("pairs", []):
        if isinstance(pair.get("timing"), dict):
            pair["timing"]["wall_seconds"] = 0.0
    return out
