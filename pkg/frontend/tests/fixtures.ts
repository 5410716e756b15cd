import { vi } from "vitest";
import type {
  FileDiff,
  FileRow,
  Refactoring,
  Report,
  ReviewEvent,
} from "../src/types.js";

// Report fixtures shaped exactly like the server's documents: anchors
// always land on rendered rows, because the files are derived from the
// refactorings' anchors.

export function makeMoveRef(i: number): Refactoring {
  return {
    id: `r-${i}`,
    kind: "MOVE_FUNCTION",
    description: `f${i} moved from left.go:${i} to right.go:${i}`,
    similarity: 0.91,
    pair_label: "MAIN",
    before_anchor: { file_path: "left.go", line: i },
    after_anchor: { file_path: "right.go", line: i },
    before_element: {
      kind: "FUNCTION",
      name: `f${i}`,
      qualified_name: `left.go:f${i}`,
      file_path: "left.go",
      start_line: i,
      end_line: i,
      signature: null,
    },
    after_element: {
      kind: "FUNCTION",
      name: `f${i}`,
      qualified_name: `right.go:f${i}`,
      file_path: "right.go",
      start_line: i,
      end_line: i,
      signature: null,
    },
    aux_element: null,
    aligned: {
      rows: [
        { left: `func f${i}() {}\n`, right: `func f${i}() {}\n`, status: "UNCHANGED" },
      ],
      extracted_rows: null,
      signature_delta: null,
    },
    metrics: {
      plain: { added: 1, deleted: 1, total: 2 },
      enhanced: { added: 0, deleted: 0, total: 0 },
      move: { same_file: false, distance_lines: null },
    },
  };
}

export function makeExtractRef(i: number): Refactoring {
  const base = makeMoveRef(i);
  return {
    ...base,
    kind: "EXTRACT_FUNCTION",
    description: `helper${i} extracted from f${i}`,
    aligned: {
      rows: [
        { left: `\tx := a + b\n`, right: `\tx := helper${i}(a, b)\n`, status: "MODIFIED" },
        { left: `\treturn x\n`, right: `\treturn x\n`, status: "UNCHANGED" },
      ],
      extracted_rows: [
        { left: null, right: `func helper${i}(a, b int) int {\n`, status: "ADDED" },
        { left: `\tx := a + b\n`, right: `\tx := a + b\n`, status: "UNCHANGED" },
        { left: null, right: `}\n`, status: "ADDED" },
      ],
      signature_delta: null,
    },
    aux_element: {
      kind: "FUNCTION",
      name: `helper${i}`,
      qualified_name: `right.go:helper${i}`,
      file_path: "right.go",
      start_line: i,
      end_line: i + 2,
      signature: null,
    },
  };
}

function fileFor(
  path: string,
  side: "left" | "right",
  maxLine: number,
): FileDiff {
  const rows: FileRow[] = [];
  for (let line = 1; line <= maxLine; line++) {
    rows.push(
      side === "left"
        ? {
            left: `line ${line} of ${path}\n`,
            right: null,
            status: "REMOVED",
            left_line: line,
            right_line: null,
          }
        : {
            left: null,
            right: `line ${line} of ${path}\n`,
            status: "ADDED",
            left_line: null,
            right_line: line,
          },
    );
  }
  rows.push({
    left: "// tail\n",
    right: "// tail\n",
    status: "UNCHANGED",
    left_line: maxLine + 1,
    right_line: maxLine + 1,
  });
  return {
    status: "MODIFIED",
    path_before: path,
    path_after: path,
    binary: false,
    rows,
  };
}

/** One MAIN pair whose files cover every anchor the refactorings use. */
export function makeReport(refactorings: Refactoring[]): Report {
  const leftMax = new Map<string, number>();
  const rightMax = new Map<string, number>();
  for (const r of refactorings) {
    if (r.before_anchor) {
      const m = leftMax.get(r.before_anchor.file_path) ?? 0;
      leftMax.set(r.before_anchor.file_path, Math.max(m, r.before_anchor.line));
    }
    if (r.after_anchor) {
      const m = rightMax.get(r.after_anchor.file_path) ?? 0;
      rightMax.set(r.after_anchor.file_path, Math.max(m, r.after_anchor.line));
    }
  }
  const files: FileDiff[] = [];
  for (const [path, max] of leftMax) files.push(fileFor(path, "left", max));
  for (const [path, max] of rightMax) files.push(fileFor(path, "right", max));
  if (files.length === 0) files.push(fileFor("only.go", "right", 1));

  return {
    schema_version: 1,
    repo_id: "demo",
    change_set_id: "pr-1",
    created_at: "2026-08-01T00:00:00+00:00",
    detector_config: {
      tau_match: 0.5,
      tau_extract: 0.6,
      min_extract_tokens: 8,
      idf_smoothing: 1.0,
    },
    pairs: [
      {
        label: { kind: "MAIN", index: null, key: "MAIN" },
        before: { id: "a".repeat(40), short_label: "aaaaaaa" },
        after: { id: "b".repeat(40), short_label: "bbbbbbb" },
        files,
        refactorings,
        timing: { wall_seconds: 0.01 },
      },
    ],
    summary: {},
  };
}

export interface FakeApi {
  events: ReviewEvent[];
  fetchMock: ReturnType<typeof vi.fn>;
}

function jsonResponse(doc: unknown, status = 200): Response {
  return new Response(JSON.stringify(doc), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Stubs global fetch with the server's REST surface over one report. */
export function installFakeApi(report: Report): FakeApi {
  const events: ReviewEvent[] = [];
  const reportPath = `/api/v1/reports/${report.repo_id}/${report.change_set_id}`;
  const fetchMock = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    if (url === "/api/v1/events" && init?.method === "POST") {
      const body = JSON.parse(String(init.body));
      const batch: ReviewEvent[] = Array.isArray(body.events) ? body.events : [body];
      events.push(...batch);
      return jsonResponse({ stored: batch.length }, 201);
    }
    if (url === "/api/v1/reports") {
      return jsonResponse({
        reports: [
          { repo_id: report.repo_id, change_set_id: report.change_set_id },
        ],
      });
    }
    if (url === reportPath) {
      return jsonResponse(report);
    }
    return jsonResponse(
      { error: { code: "NOT_FOUND", message: `no route ${url}`, field_path: null } },
      404,
    );
  });
  vi.stubGlobal("fetch", fetchMock);
  return { events, fetchMock };
}
