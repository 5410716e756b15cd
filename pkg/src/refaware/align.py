"""Aligned views of a detected refactoring, and the churn they imply.

A raw line diff shows a moved function as a full deletion plus a full
insertion. Aligning the element's two bodies instead shows the lines
side by side, so only genuinely edited rows remain to review. For an
extraction (or inline) there is a second alignment: the lines that left
the source function against the body of the new helper, which makes any
edit applied during the extraction stand out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diffs import (AlignedRow, ChurnCount, RowStatus, align_rows, line_diff,
                    rows_churn)
from .errors import MissingBody
from .detect import Refactoring, RefactoringKind
from .model import Signature

_SIGNATURE_KINDS = frozenset({
    RefactoringKind.CHANGE_SIGNATURE,
    RefactoringKind.RENAME_FUNCTION,
    RefactoringKind.MOVE_AND_RENAME_FUNCTION,
})


@dataclass
class AlignedDiff:
    """Side-by-side rows for a refactoring.

    `rows` aligns the element's before body against its after body. For
    EXTRACT_FUNCTION / INLINE_FUNCTION the before side is the source
    function and the after side its post-refactoring form (the aux
    element provides whichever side the main elements don't), and
    `extracted_rows` aligns the transplanted region against the helper's
    body — rows with status MODIFIED there are the edits smuggled in
    with the refactoring.
    """

    refactoring: Refactoring
    rows: list[AlignedRow]
    extracted_rows: list[AlignedRow] | None = None
    signature_delta: tuple[Signature, Signature] | None = None

    @property
    def highlighted(self) -> list[AlignedRow]:
        found = [r for r in self.rows if r.status is RowStatus.MODIFIED]
        if self.extracted_rows:
            found.extend(r for r in self.extracted_rows
                         if r.status is RowStatus.MODIFIED)
        return found


def _body(element) -> str:
    if element is None or element.body_text is None:
        raise MissingBody("element has no body text to align")
    return element.body_text


def _lost_lines(before_text: str, after_text: str) -> str:
    return "".join(line for h in line_diff(before_text, after_text)
                   for line in h.deleted_lines)


def _gained_lines(before_text: str, after_text: str) -> str:
    return "".join(line for h in line_diff(before_text, after_text)
                   for line in h.added_lines)


def align_refactoring(r: Refactoring) -> AlignedDiff:
    """Build the aligned view for a refactoring record.

    Raises MissingBody when an element carries no body text (records
    reconstructed from a stored document without source content).
    """
    if r.kind is RefactoringKind.EXTRACT_FUNCTION:
        src_before = _body(r.before_element)
        src_after = _body(r.aux_element)
        region = _lost_lines(src_before, src_after)
        return AlignedDiff(
            refactoring=r,
            rows=align_rows(src_before, src_after),
            extracted_rows=align_rows(region, _body(r.after_element)),
        )
    if r.kind is RefactoringKind.INLINE_FUNCTION:
        target_before = _body(r.aux_element)
        target_after = _body(r.after_element)
        region = _gained_lines(target_before, target_after)
        return AlignedDiff(
            refactoring=r,
            rows=align_rows(target_before, target_after),
            extracted_rows=align_rows(_body(r.before_element), region),
        )
    delta = None
    if (r.kind in _SIGNATURE_KINDS
            and r.before_element.signature is not None
            and r.after_element.signature is not None):
        delta = (r.before_element.signature, r.after_element.signature)
    return AlignedDiff(
        refactoring=r,
        rows=align_rows(_body(r.before_element), _body(r.after_element)),
        signature_delta=delta,
    )


def enhanced_churn(aligned: AlignedDiff) -> ChurnCount:
    """Diff code churn after alignment: a MODIFIED row is reviewed on
    both sides, ADDED and REMOVED on one, UNCHANGED on none.

    For extractions and inlines the transplanted region is reviewed once,
    in the extracted-region view. The source view therefore charges only
    its other side — the call site that replaced (or was replaced by) the
    region — otherwise every transplanted line would be billed twice and
    the aligned view could show more churn than the raw diff does.
    """
    if aligned.extracted_rows is None:
        return rows_churn(aligned.rows)
    total = rows_churn(aligned.extracted_rows)
    if aligned.refactoring.kind is RefactoringKind.EXTRACT_FUNCTION:
        # main-view deleted side == the extracted region (left of
        # extracted_rows); charge only what appeared at the call site
        for row in aligned.rows:
            if row.status in (RowStatus.MODIFIED, RowStatus.ADDED):
                total.added += 1
    else:  # INLINE_FUNCTION: mirror image
        for row in aligned.rows:
            if row.status in (RowStatus.MODIFIED, RowStatus.REMOVED):
                total.deleted += 1
    return total
