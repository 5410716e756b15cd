"""Line diffs, aligned side-by-side rows, and churn counts.

The differ is a minimal LCS edit script grouped into zero-context hunks:
churn counts must equal the raw number of added/deleted lines, so hunks
never carry context. Whitespace is significant throughout; the detector,
not the differ, absorbs formatting noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class RowStatus(str, Enum):
    UNCHANGED = "UNCHANGED"
    MODIFIED = "MODIFIED"
    ADDED = "ADDED"
    REMOVED = "REMOVED"


@dataclass(frozen=True)
class Hunk:
    """A contiguous run of changed lines with zero context.

    ``before_start``/``after_start`` are 1-based. A zero-length side keeps
    the line number at which the change would apply.
    """

    before_start: int
    before_len: int
    after_start: int
    after_len: int
    deleted_lines: list[str] = field(default_factory=list)
    added_lines: list[str] = field(default_factory=list)

    def overlaps_before(self, start_line: int, end_line: int) -> bool:
        if self.before_len == 0:
            return False
        return self.before_start <= end_line and start_line <= self.before_start + self.before_len - 1

    def overlaps_after(self, start_line: int, end_line: int) -> bool:
        if self.after_len == 0:
            return False
        return self.after_start <= end_line and start_line <= self.after_start + self.after_len - 1


@dataclass(frozen=True)
class AlignedRow:
    """One side-by-side row; sides are None when the row is one-sided."""

    left: str | None
    right: str | None
    status: RowStatus


@dataclass
class ChurnCount:
    added: int = 0
    deleted: int = 0

    @property
    def total(self) -> int:
        return self.added + self.deleted


def split_lines(text: str) -> list[str]:
    """Split keeping line terminators, so joins reproduce the text exactly."""
    return text.splitlines(keepends=True)


def _lcs_table(a: list[str], b: list[str]) -> list[list[int]]:
    # suffix table: L[i][j] = LCS length of a[i:] vs b[j:]
    n, m = len(a), len(b)
    table = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row = table[i]
        nxt = table[i + 1]
        ai = a[i]
        for j in range(m - 1, -1, -1):
            if ai == b[j]:
                row[j] = nxt[j + 1] + 1
            else:
                down = nxt[j]
                right = row[j + 1]
                row[j] = down if down >= right else right
    return table


def _edit_script(a: list[str], b: list[str]) -> list[tuple[str, str]]:
    """Minimal edit script as (op, line) with op in {'=', '-', '+'}.

    On LCS ties the deletion is taken first, so deletions always precede
    insertions at each divergence point.
    """
    # trim the common prefix/suffix before running the quadratic table
    n, m = len(a), len(b)
    lo = 0
    while lo < n and lo < m and a[lo] == b[lo]:
        lo += 1
    hi = 0
    while hi < n - lo and hi < m - lo and a[n - 1 - hi] == b[m - 1 - hi]:
        hi += 1

    mid_a = a[lo:n - hi]
    mid_b = b[lo:m - hi]
    script: list[tuple[str, str]] = [("=", line) for line in a[:lo]]

    table = _lcs_table(mid_a, mid_b)
    i = j = 0
    na, mb = len(mid_a), len(mid_b)
    while i < na or j < mb:
        if i < na and j < mb and mid_a[i] == mid_b[j]:
            script.append(("=", mid_a[i]))
            i += 1
            j += 1
        elif j >= mb or (i < na and table[i + 1][j] >= table[i][j + 1]):
            script.append(("-", mid_a[i]))
            i += 1
        else:
            script.append(("+", mid_b[j]))
            j += 1

    script.extend(("=", line) for line in a[n - hi:])
    return script


def line_diff(before_text: str, after_text: str) -> list[Hunk]:
    """Minimal line-level diff of two texts, grouped into zero-context hunks."""
    a = split_lines(before_text)
    b = split_lines(after_text)
    if a == b:
        return []

    hunks: list[Hunk] = []
    before_line = after_line = 1
    deleted: list[str] = []
    added: list[str] = []
    hunk_before = hunk_after = 1

    def flush():
        nonlocal deleted, added
        if deleted or added:
            hunks.append(Hunk(
                before_start=hunk_before,
                before_len=len(deleted),
                after_start=hunk_after,
                after_len=len(added),
                deleted_lines=deleted,
                added_lines=added,
            ))
            deleted, added = [], []

    for op, line in _edit_script(a, b):
        if op == "=":
            flush()
            before_line += 1
            after_line += 1
        else:
            if not deleted and not added:
                hunk_before, hunk_after = before_line, after_line
            if op == "-":
                deleted.append(line)
                before_line += 1
            else:
                added.append(line)
                after_line += 1
    flush()
    return hunks


def apply_hunks(before_text: str, hunks: list[Hunk]) -> str:
    """Replay an edit script; used by tests to verify the round trip."""
    a = split_lines(before_text)
    out: list[str] = []
    pos = 0  # 0-based index into a
    for h in hunks:
        out.extend(a[pos:h.before_start - 1])
        out.extend(h.added_lines)
        pos = h.before_start - 1 + h.before_len
    out.extend(a[pos:])
    return "".join(out)


def align_rows(before_text: str, after_text: str) -> list[AlignedRow]:
    """Pair two texts line by line.

    Inside each hunk a run of k deletions followed by l insertions pairs
    positionally into min(k, l) MODIFIED rows; the leftovers stay one-sided.
    """
    rows: list[AlignedRow] = []
    a = split_lines(before_text)
    hunks = line_diff(before_text, after_text)
    pos = 0
    for h in hunks:
        for line in a[pos:h.before_start - 1]:
            rows.append(AlignedRow(line, line, RowStatus.UNCHANGED))
        pos = h.before_start - 1 + h.before_len
        paired = min(len(h.deleted_lines), len(h.added_lines))
        for t in range(paired):
            rows.append(AlignedRow(h.deleted_lines[t], h.added_lines[t], RowStatus.MODIFIED))
        for line in h.deleted_lines[paired:]:
            rows.append(AlignedRow(line, None, RowStatus.REMOVED))
        for line in h.added_lines[paired:]:
            rows.append(AlignedRow(None, line, RowStatus.ADDED))
    for line in a[pos:]:
        rows.append(AlignedRow(line, line, RowStatus.UNCHANGED))
    return rows


def rows_churn(rows: list[AlignedRow]) -> ChurnCount:
    """Churn of aligned rows: MODIFIED counts one added plus one deleted."""
    churn = ChurnCount()
    for row in rows:
        if row.status is RowStatus.MODIFIED:
            churn.added += 1
            churn.deleted += 1
        elif row.status is RowStatus.ADDED:
            churn.added += 1
        elif row.status is RowStatus.REMOVED:
            churn.deleted += 1
    return churn


def plain_churn(hunks: list[Hunk]) -> ChurnCount:
    """Added/deleted line totals over a hunk list."""
    churn = ChurnCount()
    for h in hunks:
        churn.added += len(h.added_lines)
        churn.deleted += len(h.deleted_lines)
    return churn
