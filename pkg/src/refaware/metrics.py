"""Review-effort metrics over detected refactorings."""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from .align import AlignedDiff, enhanced_churn
from .detect import Refactoring, RefactoringKind
from .diffs import ChurnCount, Hunk
from .errors import KindMismatch

_LINE_MOVE_KINDS = frozenset({
    RefactoringKind.MOVE_FUNCTION,
    RefactoringKind.MOVE_AND_RENAME_FUNCTION,
    RefactoringKind.MOVE_TYPE,
})


@dataclass
class MoveDistance:
    refactoring_id: str
    same_file: bool
    distance_lines: int | None  # None when the move crosses files


def move_distance(r: Refactoring) -> MoveDistance:
    """|after start line - before start line| for same-file moves."""
    if r.kind not in _LINE_MOVE_KINDS:
        raise KindMismatch(f"move distance is undefined for {r.kind.value}")
    same = r.before_element.file_path == r.after_element.file_path
    distance = abs(r.after_element.start_line - r.before_element.start_line) if same else None
    return MoveDistance(refactoring_id=r.id, same_file=same, distance_lines=distance)


@dataclass
class DCCRecord:
    refactoring_id: str
    kind: RefactoringKind
    plain: ChurnCount
    enhanced: ChurnCount

    @property
    def reduction(self) -> int:
        return self.plain.total - self.enhanced.total


def _span_churn(hunks: list[Hunk], start: int, end: int, side: str) -> ChurnCount:
    added = deleted = 0
    for h in hunks:
        hit = h.overlaps_after(start, end) if side == "after" else h.overlaps_before(start, end)
        if hit:
            added += len(h.added_lines)
            deleted += len(h.deleted_lines)
    return ChurnCount(added=added, deleted=deleted)


def plain_churn_for(r: Refactoring,
                    hunks_by_before_path: dict[str, list[Hunk]],
                    hunks_by_after_path: dict[str, list[Hunk]]) -> ChurnCount:
    """Raw-diff churn attributable to a refactoring: every hunk of the
    affected file diffs that overlaps one of its element spans, counted
    whole. Overlapping refactorings may each count the same hunk.
    """
    before_spans = [(r.before_element.file_path,
                     r.before_element.start_line, r.before_element.end_line)]
    after_spans = [(r.after_element.file_path,
                    r.after_element.start_line, r.after_element.end_line)]
    if r.aux_element is not None:
        span = (r.aux_element.file_path, r.aux_element.start_line, r.aux_element.end_line)
        if r.kind is RefactoringKind.EXTRACT_FUNCTION:
            after_spans.append(span)
        else:
            before_spans.append(span)

    added = deleted = 0
    seen: set[int] = set()  # a hunk reachable from both sides counts once
    for path, start, end in before_spans:
        for h in hunks_by_before_path.get(path, []):
            if h.overlaps_before(start, end) and id(h) not in seen:
                seen.add(id(h))
                added += len(h.added_lines)
                deleted += len(h.deleted_lines)
    for path, start, end in after_spans:
        for h in hunks_by_after_path.get(path, []):
            if h.overlaps_after(start, end) and id(h) not in seen:
                seen.add(id(h))
                added += len(h.added_lines)
                deleted += len(h.deleted_lines)
    return ChurnCount(added=added, deleted=deleted)


def dcc(r: Refactoring, aligned: AlignedDiff,
        hunks_by_before_path: dict[str, list[Hunk]],
        hunks_by_after_path: dict[str, list[Hunk]]) -> DCCRecord:
    return DCCRecord(
        refactoring_id=r.id,
        kind=r.kind,
        plain=plain_churn_for(r, hunks_by_before_path, hunks_by_after_path),
        enhanced=enhanced_churn(aligned),
    )


@dataclass
class SummaryStats:
    count: int
    median: float | None
    q1: float | None
    q3: float | None


def summarize(values: list[int | float]) -> SummaryStats:
    """Median and quartiles (inclusive method) of a sample; an empty
    sample yields count 0 and no statistics."""
    if not values:
        return SummaryStats(count=0, median=None, q1=None, q3=None)
    data = sorted(float(v) for v in values)
    med = statistics.median(data)
    if len(data) == 1:
        return SummaryStats(count=1, median=med, q1=data[0], q3=data[0])
    q1, _, q3 = statistics.quantiles(data, n=4, method="inclusive")
    return SummaryStats(count=len(data), median=med, q1=q1, q3=q3)


def summarize_by_kind(records: list[DCCRecord]) -> dict[str, dict[str, SummaryStats]]:
    by_kind: dict[str, dict[str, list[float]]] = {}
    for rec in records:
        slot = by_kind.setdefault(rec.kind.value, {"plain": [], "enhanced": []})
        slot["plain"].append(rec.plain.total)
        slot["enhanced"].append(rec.enhanced.total)
    return {kind: {name: summarize(vals) for name, vals in slots.items()}
            for kind, slots in sorted(by_kind.items())}
