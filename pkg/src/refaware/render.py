"""Static renderings of a report document: text table and archival HTML."""

from __future__ import annotations

import html


def _fmt_num(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float) and value == int(value):
        return str(int(value))
    return str(value)


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(r) for r in rows)
    return "\n".join(lines)


def summary_table(doc: dict) -> str:
    """Human-readable roll-up of one report document."""
    out = [
        f"report {doc['repo_id']}/{doc['change_set_id']}"
        f"  (created {doc['created_at']})",
        "",
    ]
    rows = []
    for pair in doc["pairs"]:
        label = pair["label"]["key"]
        for r in pair["refactorings"]:
            rows.append([
                label,
                r["kind"],
                r["description"],
                str(r["metrics"]["plain"]["total"]),
                str(r["metrics"]["enhanced"]["total"]),
                f"{r['similarity']:.3f}",
            ])
    if rows:
        out.append(_table(
            ["PAIR", "KIND", "DESCRIPTION", "PLAIN", "ENHANCED", "SIM"], rows))
    else:
        out.append("no refactorings detected")
    summary = doc.get("summary", {})
    dcc = summary.get("dcc_by_kind", {})
    if dcc:
        out.append("")
        stat_rows = []
        for kind, slots in sorted(dcc.items()):
            for name in ("plain", "enhanced"):
                s = slots[name]
                stat_rows.append([kind, name, str(s["count"]),
                                  _fmt_num(s["q1"]), _fmt_num(s["median"]),
                                  _fmt_num(s["q3"])])
        out.append(_table(["KIND", "VIEW", "N", "Q1", "MEDIAN", "Q3"], stat_rows))
    move = summary.get("move_distance")
    if move:
        s = move["same_file"]
        out.append("")
        out.append(f"same-file move distance: n={s['count']}"
                   f" median={_fmt_num(s['median'])}"
                   f"  (cross-file moves: {move['cross_file_count']})")
    out.append("")
    return "\n".join(out)


_CSS = """
body { font-family: ui-monospace, SFMono-Regular, Menlo, Consolas, monospace;
       margin: 2em; color: #1a1a1a; background: #fff; }
h1 { font-size: 1.3em; } h2 { font-size: 1.1em; margin-top: 2em; }
h3 { font-size: 1em; }
table.diff { border-collapse: collapse; width: 100%; margin: 0.6em 0; }
table.diff td { padding: 0 0.5em; white-space: pre; font-size: 0.85em;
                vertical-align: top; border: none; }
td.num { color: #888; text-align: right; user-select: none; width: 3em; }
tr.MODIFIED td.code { background: #fff3b0; }
tr.ADDED td.right.code { background: #d6f5d6; }
tr.REMOVED td.left.code { background: #ffd6d6; }
.meta { color: #555; font-size: 0.9em; }
.kind { display: inline-block; background: #2d5f8a; color: #fff;
        padding: 0.1em 0.5em; border-radius: 3px; font-size: 0.8em; }
.churn { margin: 0.3em 0; font-size: 0.9em; }
"""


def _esc(text) -> str:
    return html.escape(text if text is not None else "", quote=False)


def _rows_html(rows: list[dict]) -> str:
    parts = ["<table class=\"diff\">"]
    for row in rows:
        status = row["status"]
        left = _esc((row["left"] or "").rstrip("\r\n"))
        right = _esc((row["right"] or "").rstrip("\r\n"))
        parts.append(
            f"<tr class=\"{status}\">"
            f"<td class=\"left code\">{left}</td>"
            f"<td class=\"right code\">{right}</td></tr>")
    parts.append("</table>")
    return "\n".join(parts)


def html_report(doc: dict) -> str:
    """Self-contained, non-interactive HTML rendering for archival."""
    parts = [
        "<!DOCTYPE html>",
        "<html lang=\"en\"><head><meta charset=\"utf-8\">",
        f"<title>{_esc(doc['repo_id'])}/{_esc(doc['change_set_id'])}"
        " — refactoring report</title>",
        f"<style>{_CSS}</style></head><body>",
        f"<h1>{_esc(doc['repo_id'])}/{_esc(doc['change_set_id'])}</h1>",
        f"<p class=\"meta\">created {_esc(doc['created_at'])} ·"
        f" schema v{doc['schema_version']}</p>",
    ]
    for pair in doc["pairs"]:
        label = pair["label"]["key"]
        parts.append(
            f"<h2>{_esc(label)} — {_esc(pair['before']['short_label'])}"
            f" → {_esc(pair['after']['short_label'])}</h2>")
        if not pair["refactorings"]:
            parts.append("<p class=\"meta\">no refactorings detected</p>")
        for r in pair["refactorings"]:
            ba, aa = r["before_anchor"], r["after_anchor"]
            parts.append(
                f"<h3><span class=\"kind\">{_esc(r['kind'])}</span>"
                f" {_esc(r['description'])}</h3>")
            parts.append(
                f"<p class=\"meta\">{_esc(ba['file_path'])}:{ba['line']}"
                f" → {_esc(aa['file_path'])}:{aa['line']}"
                f" · similarity {r['similarity']:.3f}</p>")
            m = r["metrics"]
            parts.append(
                f"<p class=\"churn\">churn: plain {m['plain']['total']}"
                f" / aligned {m['enhanced']['total']}</p>")
            parts.append(_rows_html(r["aligned"]["rows"]))
            if r["aligned"]["extracted_rows"]:
                parts.append("<p class=\"meta\">extracted body</p>")
                parts.append(_rows_html(r["aligned"]["extracted_rows"]))
    parts.append("</body></html>")
    return "\n".join(parts) + "\n"
