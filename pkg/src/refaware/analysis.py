"""End-to-end analysis of a change set: pairs in, report document out."""

from __future__ import annotations

import time

from . import report as report_mod
from .align import align_refactoring
from .detect import DetectionResult, DetectorConfig, detect_changes
from .diffs import Hunk, align_rows, line_diff
from .metrics import dcc, move_distance, summarize, summarize_by_kind, _LINE_MOVE_KINDS
from .repo import FileChange, GitRepo, RevisionPair


def _file_rows(change: FileChange):
    if change.binary:
        return []
    return align_rows(change.content_before or "", change.content_after or "")


def _hunk_maps(changes: list[FileChange]) -> tuple[dict[str, list[Hunk]],
                                                   dict[str, list[Hunk]]]:
    by_before: dict[str, list[Hunk]] = {}
    by_after: dict[str, list[Hunk]] = {}
    for c in changes:
        if c.binary:
            continue
        hunks = line_diff(c.content_before or "", c.content_after or "")
        if c.path_before is not None:
            by_before.setdefault(c.path_before, []).extend(hunks)
        if c.path_after is not None:
            by_after.setdefault(c.path_after, []).extend(hunks)
    return by_before, by_after


def analyze_pair(pair: RevisionPair, changes: list[FileChange],
                 cfg: DetectorConfig) -> tuple[dict, list]:
    """One pair's report entry plus its DCC records (for the summary)."""
    start = time.perf_counter()
    result: DetectionResult = detect_changes(changes, pair.label, cfg)
    by_before, by_after = _hunk_maps(changes)

    refactoring_docs = []
    dcc_records = []
    for r in result.refactorings:
        aligned = align_refactoring(r)
        rec = dcc(r, aligned, by_before, by_after)
        move_rec = move_distance(r) if r.kind in _LINE_MOVE_KINDS else None
        dcc_records.append(rec)
        refactoring_docs.append(report_mod.refactoring_doc(r, aligned, rec, move_rec))

    file_docs = [report_mod.file_doc(c, _file_rows(c)) for c in changes]
    wall = time.perf_counter() - start
    return report_mod.pair_doc(pair, file_docs, refactoring_docs, wall), dcc_records


def _summary(pair_docs: list[dict], dcc_records: list) -> dict:
    move_distances = []
    cross_file_moves = 0
    for pd in pair_docs:
        for rd in pd["refactorings"]:
            move = rd["metrics"]["move"]
            if move is None:
                continue
            if move["same_file"]:
                move_distances.append(move["distance_lines"])
            else:
                cross_file_moves += 1
    dcc_summary = {
        kind: {name: report_mod.stats_doc(stats) for name, stats in slots.items()}
        for kind, slots in summarize_by_kind(dcc_records).items()
    }
    return {
        "refactoring_count": sum(len(pd["refactorings"]) for pd in pair_docs),
        "dcc_by_kind": dcc_summary,
        "move_distance": {
            "same_file": report_mod.stats_doc(summarize(move_distances)),
            "cross_file_count": cross_file_moves,
        },
    }


def analyze(repo_path: str, base: str, commits: list[str] | None = None,
            head: str | None = None, cfg: DetectorConfig | None = None,
            repo_id: str = "local", change_set_id: str = "change") -> dict:
    """Analyze a change set of a local repository into a report document.

    The change set is either an explicit commit list (oldest first) or
    everything on base..head first-parent. Wall time is measured per
    pair around detection and alignment, not around repository reads.
    """
    cfg = cfg or DetectorConfig()
    repo = GitRepo(repo_path)
    pairs = repo.enumerate_pairs(base, commits=commits, head=head)
    pair_docs = []
    all_dcc = []
    for pair in pairs:
        changes = repo.changed_files(pair)
        pd, dcc_records = analyze_pair(pair, changes, cfg)
        pair_docs.append(pd)
        all_dcc.extend(dcc_records)
    return report_mod.build_report(repo_id, change_set_id, cfg, pair_docs,
                                   _summary(pair_docs, all_dcc))
