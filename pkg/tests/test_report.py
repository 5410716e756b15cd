import json
from datetime import timedelta, timezone

import pytest

from refaware.align import align_refactoring
from refaware.detect import DetectorConfig, detect_changes
from refaware.diffs import align_rows, line_diff
from refaware.errors import ValidationError
from refaware.metrics import dcc
from refaware.repo import MAIN, ChangeStatus, FileChange, RevisionPair, RevisionRef
from refaware.report import (build_report, canonical_json, comparison_form,
                             churn_doc, file_doc, pair_doc, parse_timestamp,
                             refactoring_doc, validate_event, validate_report)

from test_detect import EXTRACT_AFTER, EXTRACT_BEFORE, modified
from test_metrics import hunk_maps


def sample_pair_doc():
    changes = [modified("a.go", EXTRACT_BEFORE, EXTRACT_AFTER)]
    result = detect_changes(changes, MAIN)
    hb, ha = hunk_maps(changes)
    ref_docs = []
    for r in result.refactorings:
        aligned = align_refactoring(r)
        ref_docs.append(refactoring_doc(r, aligned, dcc(r, aligned, hb, ha), None))
    files = [file_doc(c, align_rows(c.content_before, c.content_after))
             for c in changes]
    pair = RevisionPair(RevisionRef("a" * 40, "aaaaaaa"),
                        RevisionRef("b" * 40, "bbbbbbb"), MAIN)
    return pair_doc(pair, files, ref_docs, wall_seconds=0.25)


def sample_report(created_at="2024-05-01T12:00:00+00:00"):
    return build_report("demo", "change-1", DetectorConfig(),
                        [sample_pair_doc()], {"refactoring_count": 1},
                        created_at=created_at)


def valid_event(**overrides):
    doc = {
        "repo_id": "demo",
        "change_set_id": "change-1",
        "refactoring_id": "MAIN:EXTRACT_FUNCTION:a.go:3:a.go:8",
        "event": "R_CLICK_LEFT",
        "at": "2024-05-01T12:00:00Z",
    }
    doc.update(overrides)
    return doc


class TestReportValidation:
    def test_builder_output_validates(self):
        validate_report(sample_report())  # must not raise

    def test_rejects_non_object(self):
        with pytest.raises(ValidationError):
            validate_report([])

    def test_missing_field_names_path(self):
        doc = sample_report()
        del doc["pairs"][0]["timing"]
        with pytest.raises(ValidationError) as exc:
            validate_report(doc)
        assert "pairs.0" in exc.value.field_path

    def test_bad_kind_enum_names_deep_path(self):
        doc = sample_report()
        doc["pairs"][0]["refactorings"][0]["kind"] = "SHUFFLE_CODE"
        with pytest.raises(ValidationError) as exc:
            validate_report(doc)
        assert "refactorings.0.kind" in exc.value.field_path

    def test_unknown_top_level_key_rejected(self):
        doc = sample_report()
        doc["extra"] = 1
        with pytest.raises(ValidationError):
            validate_report(doc)

    def test_repo_id_charset_enforced(self):
        doc = sample_report()
        doc["repo_id"] = "has space"
        with pytest.raises(ValidationError) as exc:
            validate_report(doc)
        assert exc.value.field_path == "repo_id"

    def test_wrong_schema_version_rejected(self):
        doc = sample_report()
        doc["schema_version"] = 999
        with pytest.raises(ValidationError):
            validate_report(doc)


class TestEventValidation:
    def test_valid_event(self):
        validate_event(valid_event())

    @pytest.mark.parametrize("kind", ["R_CLICK_LEFT", "R_CLICK_RIGHT",
                                      "GO_TO_SOURCE", "WINDOW_OPEN",
                                      "WINDOW_CLOSE"])
    def test_all_event_kinds_accepted(self, kind):
        validate_event(valid_event(event=kind))

    def test_unknown_kind_rejected_with_prefixed_path(self):
        with pytest.raises(ValidationError) as exc:
            validate_event(valid_event(event="DOUBLE_CLICK"), field_prefix="events.0")
        assert exc.value.field_path == "events.0.event"

    def test_missing_timestamp(self):
        doc = valid_event()
        del doc["at"]
        with pytest.raises(ValidationError):
            validate_event(doc)


class TestTimestamps:
    def test_z_suffix_accepted(self):
        stamp = parse_timestamp("2024-05-01T12:00:00Z")
        assert stamp.tzinfo is not None
        assert stamp.utcoffset() == timedelta(0)

    def test_naive_counts_as_utc(self):
        stamp = parse_timestamp("2024-05-01T12:00:00")
        assert stamp.tzinfo is timezone.utc

    def test_offset_preserved_for_comparison(self):
        a = parse_timestamp("2024-05-01T14:00:00+02:00")
        b = parse_timestamp("2024-05-01T12:00:00Z")
        assert a == b

    def test_garbage_rejected(self):
        with pytest.raises(ValidationError):
            parse_timestamp("yesterday at noon")


class TestCanonicalJson:
    def test_sorted_keys_and_trailing_newline(self):
        text = canonical_json({"b": 1, "a": 2})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("}\n")

    def test_non_ascii_kept_verbatim(self):
        assert "é" in canonical_json({"name": "café"})

    def test_key_order_does_not_matter(self):
        doc1 = sample_report()
        doc2 = json.loads(json.dumps(doc1))  # fresh objects, same content
        assert canonical_json(doc1) == canonical_json(doc2)

    def test_round_trips_through_json(self):
        doc = sample_report()
        assert json.loads(canonical_json(doc)) == doc


class TestComparisonForm:
    def test_strips_created_at_and_zeroes_wall_seconds(self):
        doc = sample_report()
        form = comparison_form(doc)
        assert "created_at" not in form
        assert form["pairs"][0]["timing"]["wall_seconds"] == 0.0

    def test_does_not_mutate_the_input(self):
        doc = sample_report()
        comparison_form(doc)
        assert doc["created_at"] == "2024-05-01T12:00:00+00:00"
        assert doc["pairs"][0]["timing"]["wall_seconds"] == 0.25

    def test_two_timings_agree_after_neutralizing(self):
        a = sample_report(created_at="2024-05-01T12:00:00+00:00")
        b = sample_report(created_at="2025-01-01T00:00:00+00:00")
        b["pairs"][0]["timing"]["wall_seconds"] = 3.75
        assert canonical_json(comparison_form(a)) == canonical_json(comparison_form(b))


class TestFileDoc:
    def test_line_numbers_advance_per_side(self):
        change = modified("a.go", "a\nb\nc\n", "a\nX\nc\nd\n")
        rows = align_rows(change.content_before, change.content_after)
        doc = file_doc(change, rows)
        numbered = [(r["status"], r["left_line"], r["right_line"])
                    for r in doc["rows"]]
        assert numbered == [
            ("UNCHANGED", 1, 1),
            ("MODIFIED", 2, 2),
            ("UNCHANGED", 3, 3),
            ("ADDED", None, 4),
        ]

    def test_removed_row_has_no_right_number(self):
        change = modified("a.go", "a\nb\n", "a\n")
        rows = align_rows(change.content_before, change.content_after)
        doc = file_doc(change, rows)
        assert doc["rows"][-1]["status"] == "REMOVED"
        assert doc["rows"][-1]["right_line"] is None
        assert doc["rows"][-1]["left_line"] == 2

    def test_raw_line_text_kept_with_terminators(self):
        change = modified("a.go", "a\r\nb\n", "a\r\nB\n")
        rows = align_rows(change.content_before, change.content_after)
        doc = file_doc(change, rows)
        assert doc["rows"][0]["left"] == "a\r\n"
        assert doc["rows"][1]["right"] == "B\n"


class TestDocBuilders:
    def test_similarity_rounded_to_six_places(self):
        doc = sample_pair_doc()
        sim = doc["refactorings"][0]["similarity"]
        assert sim == round(sim, 6)

    def test_extract_doc_carries_aux_and_extracted_rows(self):
        doc = sample_pair_doc()
        ref = doc["refactorings"][0]
        assert ref["kind"] == "EXTRACT_FUNCTION"
        assert ref["aux_element"]["name"] == "process"
        assert ref["aligned"]["extracted_rows"]
        assert ref["metrics"]["move"] is None

    def test_churn_doc_includes_total(self):
        from refaware.diffs import ChurnCount
        assert churn_doc(ChurnCount(added=2, deleted=1)) == {
            "added": 2, "deleted": 1, "total": 3}

    def test_element_doc_has_no_body_text(self):
        # bodies live in the file rows; element docs must stay lean
        doc = sample_pair_doc()
        ref = doc["refactorings"][0]
        assert "body_text" not in ref["before_element"]
        assert "tokens" not in ref["before_element"]
